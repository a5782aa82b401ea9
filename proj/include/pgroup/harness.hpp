#pragma once

// Verification drivers. Each target sweeps a Grassmannian (or a family of
// groups) and compares two independent computations: the canonicalizer or
// classifier on one side, brute-force breadth scans on the other.

#include <string>
#include <vector>

#include <json.hpp>

#include "pgroup/budget.hpp"

namespace pgroup {

using Json = nlohmann::ordered_json;

struct ClaimRecord {
  std::string id;
  std::string claim;
  std::string anchor;
  bool evaluated = true;
  bool passed = false;
  Json counts = Json::object();
  /// Serialized counterexample for failed claims, null otherwise.
  Json witness = nullptr;
  double seconds = 0.0;
};

struct VerificationReport {
  std::string target;
  int p = 0;
  int n = 0;
  Budgets budgets;
  /// False when a sweep stopped at the sweep budget.
  bool complete = true;
  std::vector<ClaimRecord> claims;

  /// "verified", "failed" or "incomplete".
  std::string verdict() const;
  /// 0 verified, 1 failed, 2 incomplete.
  int exit_code() const;
  /// The "canonical" section is deterministic; "timing" is not.
  Json to_json(bool with_timing = true) const;
  std::string text_summary() const;
};

/// Targets: lemma4 (n = 4..6 at p = 2, n = 4..5 at p = 3, n = 4 at p = 5),
/// lemma7 (p = 3, 5), lemma10 (p = 2), theorem1 (p = 3, 5), theorem2 (p = 2),
/// structure (p = 2, 3, 5, 7). Throws std::invalid_argument otherwise.
VerificationReport verify(const std::string& target, int p, int n, const Budgets& budgets);

VerificationReport verify_lemma4(int p, int n, const Budgets& budgets);
VerificationReport verify_lemma7(int p, const Budgets& budgets);
VerificationReport verify_lemma10(const Budgets& budgets);
VerificationReport verify_theorem(int p, const Budgets& budgets);
VerificationReport verify_structure(int p, const Budgets& budgets);

/// The planes <ab + cd, ac + i1 bd + i2 cd> for all (i1, i2): rejected exactly
/// when i2^2 + 4 i1 is a square or zero, each rejection with a valid witness,
/// and each verdict matching the brute-force breadth scan. p odd.
ClaimRecord plane_family_claim(int p, const Budgets& budgets);

/// Two class-2 groups on the same commutator structure with different
/// cocycles (p = 2), checked isoclinic by a GL(4, 2) search on their
/// element-level commutator maps.
ClaimRecord distinct_cocycles_claim(const Budgets& budgets);

}  // namespace pgroup
