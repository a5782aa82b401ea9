#pragma once

// Element-level arithmetic for class-2 groups built from an alternating map B
// and a bilinear cocycle f with f(x, y) - f(y, x) = B(x, y):
//
//   (v, w) * (v', w') = (v + v', w + w' + f(v, v')).
//
// This is deliberately independent of the rank computations in
// commutator_form and serves as the oracle for them.

#include <cstdint>
#include <set>
#include <vector>

#include "pgroup/budget.hpp"
#include "pgroup/commutator_form.hpp"

namespace pgroup {

enum class CocycleConvention {
  /// f = B/2 (odd p): the exponent-p group.
  Baer,
  /// f(e_i, e_j) = B(e_i, e_j) for i > j, 0 for i <= j.
  Collection,
  /// f(e_i, e_j) = B(e_i, e_j) for i < j, 0 for i >= j.
  Upper,
};

struct GroupElement {
  Vec v;
  Vec w;
  std::uint64_t model_id = 0;

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.model_id == b.model_id && a.v == b.v && a.w == b.w;
  }
};

class GroupModel {
 public:
  /// Baer cocycle for odd p, collection cocycle for p = 2.
  explicit GroupModel(AlternatingMap form);
  GroupModel(AlternatingMap form, CocycleConvention convention);
  /// Cocycle given on pairs i >= j: row i * dimV + j holds f(e_i, e_j); rows
  /// with i < j are ignored and derived from B. Diagonal rows set the p-th
  /// power map (squares at p = 2).
  GroupModel(AlternatingMap form, const Mat& lower_cocycle);

  /// The unitriangular group itself, with f((a1,a3),(b1,b3)) = a1 b3.
  static GroupModel heisenberg(const ExtField& K);

  const AlternatingMap& form() const noexcept { return form_; }
  const PrimeField& field() const noexcept { return form_.field(); }
  int dim_v() const noexcept { return form_.dim_v(); }
  int dim_w() const noexcept { return form_.dim_w(); }
  std::uint64_t id() const noexcept { return id_; }
  /// Full table, row i * dimV + j = f(e_i, e_j).
  const Mat& cocycle() const noexcept { return cocycle_; }
  /// True when the cocycle equals the default convention for p.
  bool has_default_cocycle() const;

  Vec cocycle_value(const Vec& x, const Vec& y) const;

  GroupElement identity() const;
  GroupElement element(const Vec& v, const Vec& w) const;
  GroupElement generator(int i) const;
  GroupElement central(const Vec& w) const;
  /// Element with index decomposed as vector_index(v) + p^dimV * vector_index(w).
  GroupElement element_at(std::uint64_t index) const;
  std::uint64_t index_of(const GroupElement& g) const;
  /// log_p |G|.
  int order_log_p() const noexcept { return dim_v() + dim_w(); }

  /// Throw std::invalid_argument when an operand belongs to another model.
  GroupElement multiply(const GroupElement& a, const GroupElement& b) const;
  GroupElement inverse(const GroupElement& a) const;
  /// [a, b] = a^-1 b^-1 a b.
  GroupElement commutator(const GroupElement& a, const GroupElement& b) const;
  GroupElement power(const GroupElement& a, std::uint64_t k) const;
  /// h^-1 g h.
  GroupElement conjugate(const GroupElement& g, const GroupElement& h) const;

 private:
  GroupModel(AlternatingMap form, Mat full_cocycle, int);
  void check(const GroupElement& g) const;

  AlternatingMap form_;
  Mat cocycle_;
  std::uint64_t id_;
};

Mat default_cocycle(const AlternatingMap& form);
Mat convention_cocycle(const AlternatingMap& form, CocycleConvention convention);

std::uint64_t element_order(const GroupModel& model, const GroupElement& g);

/// B(e_i, e_j) read off from element commutators [(e_i, 0), (e_j, 0)].
AlternatingMap commutator_form_of(const GroupModel& model);

/// Number of elements g with g^p = 1 (all elements scanned).
std::uint64_t count_solutions_of_xp(const GroupModel& model, const Budgets& budgets = {});

/// {h^-1 g h}, scanning conjugators h = (u, 0) over all u in V; central
/// factors of h do not change the conjugate. Returned as sorted element indices.
std::vector<std::uint64_t> conjugacy_class(const GroupModel& model, const GroupElement& g,
                                           const Budgets& budgets = {});

struct ElementLevelType {
  std::set<std::uint64_t> class_sizes;
  /// Every element was scanned (otherwise one element (v, 0) per coset of W).
  bool all_elements = true;
};

ElementLevelType conjugate_type_element_level(const GroupModel& model, const Budgets& budgets = {});

struct GroupStructure {
  int order_log_p = 0;
  int center_log_p = 0;
  int derived_log_p = 0;
  int frattini_log_p = 0;
  int min_generators = 0;  // log_p [G : Phi(G)]
  int omega1_center_log_p = 0;
  std::uint64_t exponent = 1;
  bool derived_elementary = false;
  bool central_quotient_elementary = false;
  /// Z(G) = G' = Phi(G).
  bool special = false;
};

/// All entries computed from element scans and subgroup closures.
GroupStructure structural_report(const GroupModel& model, const Budgets& budgets = {});

}  // namespace pgroup
