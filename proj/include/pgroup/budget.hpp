#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pgroup {

/// Exhaustion limits. Every exhaustive routine checks its budget up front and
/// throws BudgetExceeded instead of silently truncating.
struct Budgets {
  /// Vectors of V scanned by form-level routines (p^dimV, or p^dimW for
  /// functional censuses).
  std::uint64_t form_scan = 10'000'000;
  /// Conjugators / elements scanned by element-level routines.
  std::uint64_t element_scan = 1'000'000;
  /// |GL(dimV, p)| admitted for an exhaustive isoclinism search.
  std::uint64_t gl_search = 25'000'000;
  /// Subspaces visited by one verification sweep.
  std::uint64_t sweep = 100'000;

  /// Defaults overridden by PGROUP_FORM_BUDGET, PGROUP_ELEMENT_BUDGET,
  /// PGROUP_GL_BUDGET and PGROUP_SWEEP_BUDGET when set.
  static Budgets from_env();
};

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t needed, std::uint64_t allowed)
      : std::runtime_error(what + ": needs " + std::to_string(needed) + ", budget " +
                           std::to_string(allowed) + " (raise via PGROUP_* environment variables)"),
        needed_(needed),
        allowed_(allowed) {}

  std::uint64_t needed() const noexcept { return needed_; }
  std::uint64_t allowed() const noexcept { return allowed_; }

 private:
  std::uint64_t needed_;
  std::uint64_t allowed_;
};

}  // namespace pgroup
