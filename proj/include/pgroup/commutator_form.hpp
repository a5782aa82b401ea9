#pragma once

// Class-2 groups with Z(G) = G' represented by their commutator map
// B : V x V -> W, where V = G/Z(G) and W = G', both elementary abelian.
// Conjugacy class sizes follow from ranks: |x^G| = p^rank(B(x, .)).

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "pgroup/budget.hpp"
#include "pgroup/field.hpp"
#include "pgroup/linalg.hpp"
#include "pgroup/types.hpp"

namespace pgroup {

class AlternatingMap {
 public:
  /// `pair_values` has one row per pair i < j (lexicographic, see pair_index)
  /// holding B(e_i, e_j) in W coordinates.
  AlternatingMap(const PrimeField& F, int dim_v, int dim_w, const Mat& pair_values);

  static AlternatingMap zero(const PrimeField& F, int dim_v, int dim_w);

  const PrimeField& field() const noexcept { return field_; }
  int dim_v() const noexcept { return dim_v_; }
  int dim_w() const noexcept { return dim_w_; }
  const Mat& pair_values() const noexcept { return pairs_; }

  /// B(e_i, e_j) for any i, j.
  Vec value(int i, int j) const;
  /// B(x, y).
  Vec operator()(const Vec& x, const Vec& y) const;
  /// Matrix (dim_w x dim_v) of y -> B(x, y).
  Mat left_map(const Vec& x) const;
  /// Writes left_map(x) into `out` without reallocating when shapes agree.
  void left_map_into(const Vec& x, Mat& out) const;

  /// Dimension of the span of all values, i.e. log_p |G'|.
  int image_rank() const;
  bool spans_codomain() const { return image_rank() == dim_w_; }
  /// {x : B(x, .) = 0}; nonzero exactly when Z(G) is larger than G'.
  Subspace radical() const;

  friend bool operator==(const AlternatingMap& a, const AlternatingMap& b) {
    return a.field_ == b.field_ && a.dim_v_ == b.dim_v_ && a.dim_w_ == b.dim_w_ &&
           a.pairs_ == b.pairs_;
  }

 private:
  PrimeField field_;
  int dim_v_;
  int dim_w_;
  Mat pairs_;
  std::vector<Mat> slices_;  // slices_[i].col(j) = B(e_i, e_j)
};

/// Universal alternating map V x V -> Lambda^2 V: B(e_i, e_j) = e_ij. This is
/// the commutator structure of the Ito group G_r with r = n_gen - 1.
AlternatingMap full_lambda2(const PrimeField& F, int n_gen);

/// Commutator map of the unitriangular 3x3 group over GF(p^m):
/// ((a1, a3), (b1, b3)) -> a1 b3 - a3 b1, in GF(p)-coordinates. V has the
/// a1-coordinates first, then the a3-coordinates.
AlternatingMap heisenberg_ext(const ExtField& K);
AlternatingMap heisenberg_ext(int p, int m);

/// True iff `B` is literally full_lambda2(dim_v).
bool is_full_lambda2(const AlternatingMap& B);

int breadth(const AlternatingMap& B, const Vec& x);

/// Breadth value -> number of nonzero x in V with that breadth.
using BreadthProfile = std::map<int, std::uint64_t>;

/// Exhaustive census; scans projective points and scales by p - 1.
BreadthProfile breadth_profile(const AlternatingMap& B, const Budgets& budgets = {});

/// Distinct breadths over all of V (0 included for the identity).
std::set<int> breadth_set(const AlternatingMap& B, const Budgets& budgets = {});

/// Conjugacy class sizes {1} u {p^b(x)}.
std::set<std::uint64_t> conjugate_type(const AlternatingMap& B, const Budgets& budgets = {});

/// Class sizes {1, p^n} for the given n, for comparisons.
std::set<std::uint64_t> two_class_type(int p, int n);

/// True iff every nonzero x has breadth dim_w. A zero-dimensional W is
/// reported as false (abelian groups are not Camina).
bool is_camina(const AlternatingMap& B, const Budgets& budgets = {});

/// Coordinates of W/U: RREF of U completed by the standard basis vectors at
/// non-pivot indices. Returns the (dim_w - dim U) x dim_w projection matrix.
Mat quotient_projection(const Subspace& U);

/// B followed by W -> W/U.
AlternatingMap quotient(const AlternatingMap& B, const Subspace& U);

/// Thrown when a base change does not induce a well-defined map on W.
class InducedMapError : public std::runtime_error {
 public:
  InducedMapError(int i, int j)
      : std::runtime_error("base change induces no consistent map on W (pair " +
                           std::to_string(i) + "," + std::to_string(j) + ")"),
        i_(i),
        j_(j) {}
  int i() const noexcept { return i_; }
  int j() const noexcept { return j_; }

 private:
  int i_;
  int j_;
};

struct BaseChange {
  AlternatingMap form;  // B'(x, y) = B(phi x, phi y)
  Mat theta;            // theta(B(x, y)) = B'(x, y), invertible on W
};

/// Throws std::domain_error for singular phi and InducedMapError when the
/// assignment B(e_i, e_j) -> B(phi e_i, phi e_j) is not linear.
BaseChange base_change(const AlternatingMap& B, const Mat& phi);

/// One checked claim about a form or group.
struct Check {
  std::string name;
  std::string anchor;
  bool applicable = true;
  bool passed = true;
  std::string detail;
};

struct StructureReport {
  std::vector<Check> checks;
  bool all_passed() const {
    for (const auto& c : checks)
      if (c.applicable && !c.passed) return false;
    return true;
  }
};

/// Breadth bound on |G'|, generator and Omega_1(Z) bounds for two-class
/// groups, and the |G'| / [G:Z] dichotomy for type {1, p^3}, p odd. Sizes use
/// the exponent-p realization: [G:Z] = p^(dimV - dim radical),
/// |Z| = p^(dim radical + dimW).
StructureReport check_structure_constraints(const AlternatingMap& B, const Budgets& budgets = {});

}  // namespace pgroup
