#pragma once

// Normal forms for central subspaces K of the free class-2 group on n
// generators (B = full_lambda2(n)), under base change of the generators.
//
// Lines: K = <mu> with mu of rank 2m as an alternating matrix. The quotient
// has type {1, p^(n-1)} iff m >= 2, and then K can be brought to
// <e01 + e23 + ... + e(2m-2)(2m-1)>.
//
// Planes (n = 4): K can be brought to <ab + cd, ac + r bd> (p odd, r the
// least non-residue) or <ab + cd, ac + bd + cd> (p = 2) exactly when K holds
// no decomposable bivector; otherwise a decomposable x ^ y in K is reported,
// i.e. a pair x, y that commutes in the quotient.

#include <optional>
#include <string>
#include <utility>

#include "pgroup/commutator_form.hpp"

namespace pgroup {

enum class CanonStatus { Canonical, Rejected };

struct CanonResult {
  CanonStatus status = CanonStatus::Rejected;
  Subspace input;
  std::optional<Subspace> canonical;
  /// New generators as columns, in the original coordinates.
  Mat transform;
  /// Induced map on W = Lambda^2 V taking `input` onto the current form.
  Mat theta;
  /// On rejection: x, y independent in V with x ^ y in input, nonzero.
  std::optional<std::pair<Vec, Vec>> witness;
  /// Number of hyperbolic blocks for lines (1 on rejection).
  int m_value = 0;
  std::string reason;

  bool accepted() const noexcept { return status == CanonStatus::Canonical; }
};

/// <e01 + e23 + ... > with m terms, in Lambda^2 GF(p)^n.
Subspace canonical_line(const PrimeField& F, int n, int m);
/// The plane normal form for n = 4.
Subspace canonical_plane(const PrimeField& F);

/// Throws std::invalid_argument unless B is full_lambda2(n), n >= 4 and
/// dim M = 1.
CanonResult canon_line(const AlternatingMap& B, const Subspace& M);
/// p = 2 is forwarded to canon_plane_two.
CanonResult canon_plane_odd(const AlternatingMap& B, const Subspace& N);
CanonResult canon_plane_two(const AlternatingMap& B, const Subspace& N);
/// Dispatch on dim K (1, or 2 with n = 4).
CanonResult canonicalize(const AlternatingMap& B, const Subspace& K);

/// True iff `bivector` is a nonzero x ^ y.
bool is_decomposable(const PrimeField& F, const Vec& bivector, int n);

/// Rechecks a result from scratch: transform invertible, theta equal to the
/// inverse of Lambda^2(transform), theta(input) equal to the canonical form;
/// or for rejections, witness independent with x ^ y in input \ {0}.
bool verify_canon_result(const CanonResult& r, std::string* problem = nullptr);

std::string format_canon_report(const CanonResult& r);

}  // namespace pgroup
