#pragma once

// Isoclinism of class-2 groups given by commutator maps B1, B2: a pair of
// isomorphisms phi : V1 -> V2, theta : W1 -> W2 with
//   theta(B1(x, y)) = B2(phi x, phi y).
// Both maps are assumed to come from special (stem) groups, so dimV and dimW
// are invariants.

#include <map>
#include <optional>
#include <string>

#include "pgroup/budget.hpp"
#include "pgroup/commutator_form.hpp"

namespace pgroup {

struct Fingerprint {
  int p = 0;
  int dim_v = 0;
  int dim_w = 0;
  int image_rank = 0;
  BreadthProfile breadths;
  /// Unordered pairs of distinct projective points {x, y} with B(x, y) = 0.
  std::uint64_t commuting_pairs = 0;
  /// Rank of the alternating matrix lambda o B -> number of projective
  /// functionals lambda on W with that rank.
  std::map<int, std::uint64_t> functional_ranks;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

Fingerprint fingerprint(const AlternatingMap& B, const Budgets& budgets = {});

/// Name of the first component where the fingerprints differ, or "".
std::string fingerprint_difference(const Fingerprint& a, const Fingerprint& b);

struct IsoclinismCertificate {
  Mat phi;
  Mat theta;
};

/// Checks invertibility and theta(B1(e_i, e_j)) = B2(phi e_i, phi e_j) for all i < j.
bool verify_certificate(const AlternatingMap& B1, const AlternatingMap& B2, const IsoclinismCertificate& cert);

/// The invertible theta making (phi, theta) an isoclinism B1 -> B2, if any.
/// theta is forced on the span of the B1-values and taken to map the
/// standard complement to the standard complement of the B2-values.
std::optional<Mat> solve_theta(const AlternatingMap& B1, const AlternatingMap& B2, const Mat& phi);

enum class Verdict { Isoclinic, NotIsoclinic, Inconclusive };

const char* to_string(Verdict v);

struct IsoclinismResult {
  Verdict verdict = Verdict::Inconclusive;
  std::optional<IsoclinismCertificate> certificate;
  std::string reason;
  /// Search-tree nodes (partial choices of phi) visited.
  std::uint64_t nodes = 0;
  /// Complete invertible phi reached.
  std::uint64_t candidates = 0;
};

/// Fingerprints first, then a depth-first sweep of GL(V) column by column,
/// pruned by breadth and by the linear constraints on theta. Visits at most
/// budgets.gl_search nodes; hitting that limit gives Inconclusive.
IsoclinismResult find_isoclinism(const AlternatingMap& B1, const AlternatingMap& B2,
                                 const Budgets& budgets = {});

/// Isoclinism classes of groups of conjugate type {1, p^3}.
enum class TheoremClass {
  Camina,          // Camina group with |G'| = p^3
  FullG3,          // the free class-2 exponent-p group on 4 generators
  QuotientM,       // its quotient by <[a,b][c,d]>
  QuotientN,       // its quotient by the anisotropic plane normal form
  Counterexample,  // none of the above
};

const char* to_string(TheoremClass c);
/// Roman numeral label "(i)".."(iv)", or "counterexample".
const char* roman_label(TheoremClass c);

/// heisenberg_ext(p, 3), full_lambda2(4) and its two quotients.
AlternatingMap theorem_representative(const PrimeField& F, TheoremClass c);

enum class Confirmation { Certificate, Search, InvariantsOnly };

const char* to_string(Confirmation c);

struct Classification {
  TheoremClass label = TheoremClass::Counterexample;
  Confirmation confirmation = Confirmation::InvariantsOnly;
  /// Isoclinism from the representative to the input.
  std::optional<IsoclinismCertificate> certificate;
  std::string detail;
};

/// Throws std::invalid_argument unless B has conjugate type {1, p^3}. The
/// label is read off (dimV, dimW, Camina) and then confirmed: by `hint` when it
/// is a valid certificate representative -> B, otherwise by find_isoclinism.
/// A failed confirmation turns the label into Counterexample.
Classification classify_against_theorem(const AlternatingMap& B, const Budgets& budgets = {},
                                        const std::optional<IsoclinismCertificate>& hint = std::nullopt);

}  // namespace pgroup
