#include "pgroup/group_model.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <unordered_set>

namespace pgroup {

namespace {

std::uint64_t next_model_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1);
}

int row_of(int n, int i, int j) { return i * n + j; }

Mat full_from_lower(const AlternatingMap& form, const Mat& lower) {
  const int n = form.dim_v();
  const PrimeField& F = form.field();
  if (lower.rows() != n * n || lower.cols() != form.dim_w())
    throw std::invalid_argument("cocycle table has wrong shape");
  Mat full = F.reduced(lower);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      full.row(row_of(n, i, j)) =
          F.reduced(Vec(full.row(row_of(n, j, i)).transpose() + form.value(i, j))).transpose();
  return full;
}

std::uint64_t log_p_exact(std::uint64_t size, int p) {
  std::uint64_t k = 0;
  while (size > 1) {
    if (size % static_cast<std::uint64_t>(p) != 0)
      throw std::logic_error("subgroup order is not a power of p");
    size /= static_cast<std::uint64_t>(p);
    ++k;
  }
  return k;
}

}  // namespace

Mat convention_cocycle(const AlternatingMap& form, CocycleConvention convention) {
  const int n = form.dim_v();
  const PrimeField& F = form.field();
  Mat full = Mat::Zero(n * n, form.dim_w());
  switch (convention) {
    case CocycleConvention::Baer: {
      if (F.p() == 2) throw std::domain_error("the Baer cocycle needs p odd");
      const int half = F.inv(2);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j) full.row(row_of(n, i, j)) = F.reduced(Vec(half * form.value(i, j))).transpose();
      break;
    }
    case CocycleConvention::Collection:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) full.row(row_of(n, i, j)) = form.value(i, j).transpose();
      break;
    case CocycleConvention::Upper:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) full.row(row_of(n, i, j)) = form.value(i, j).transpose();
      break;
  }
  return full;
}

Mat default_cocycle(const AlternatingMap& form) {
  return convention_cocycle(form, form.field().p() == 2 ? CocycleConvention::Collection
                                                        : CocycleConvention::Baer);
}

GroupModel::GroupModel(AlternatingMap form, Mat full_cocycle, int)
    : form_(std::move(form)), cocycle_(std::move(full_cocycle)), id_(next_model_id()) {
  const int n = form_.dim_v();
  if (cocycle_.rows() != n * n || cocycle_.cols() != form_.dim_w())
    throw std::invalid_argument("cocycle table has wrong shape");
  const PrimeField& F = field();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Vec diff =
          F.reduced(Vec(cocycle_.row(row_of(n, i, j)).transpose() - cocycle_.row(row_of(n, j, i)).transpose()));
      if (diff != form_.value(i, j))
        throw std::invalid_argument("cocycle does not realize the commutator map");
    }
}

GroupModel::GroupModel(AlternatingMap form) : GroupModel(form, default_cocycle(form), 0) {}

GroupModel::GroupModel(AlternatingMap form, CocycleConvention convention)
    : GroupModel(form, convention_cocycle(form, convention), 0) {}

GroupModel::GroupModel(AlternatingMap form, const Mat& lower_cocycle)
    : GroupModel(form, full_from_lower(form, lower_cocycle), 0) {}

GroupModel GroupModel::heisenberg(const ExtField& K) {
  AlternatingMap form = heisenberg_ext(K);
  const int m = K.degree();
  const int n = 2 * m;
  Mat full = Mat::Zero(n * n, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) full.row(row_of(n, i, m + j)) = K.monomial(i + j).transpose();
  return GroupModel(std::move(form), std::move(full), 0);
}

bool GroupModel::has_default_cocycle() const { return cocycle_ == default_cocycle(form_); }

Vec GroupModel::cocycle_value(const Vec& x, const Vec& y) const {
  const int n = dim_v();
  Vec acc = Vec::Zero(dim_w());
  for (int i = 0; i < n; ++i) {
    if (x(i) == 0) continue;
    for (int j = 0; j < n; ++j) {
      if (y(j) == 0) continue;
      acc += (x(i) * y(j)) * cocycle_.row(row_of(n, i, j)).transpose();
    }
  }
  return field().reduced(acc);
}

GroupElement GroupModel::identity() const { return {Vec::Zero(dim_v()), Vec::Zero(dim_w()), id_}; }

GroupElement GroupModel::element(const Vec& v, const Vec& w) const {
  if (v.size() != dim_v() || w.size() != dim_w()) throw std::invalid_argument("element has wrong shape");
  return {field().reduced(v), field().reduced(w), id_};
}

GroupElement GroupModel::generator(int i) const {
  GroupElement g = identity();
  g.v(i) = 1;
  return g;
}

GroupElement GroupModel::central(const Vec& w) const { return element(Vec::Zero(dim_v()), w); }

GroupElement GroupModel::element_at(std::uint64_t index) const {
  const std::uint64_t q = checked_pow(field().p(), dim_v());
  return {vector_from_index(field(), dim_v(), index % q), vector_from_index(field(), dim_w(), index / q), id_};
}

std::uint64_t GroupModel::index_of(const GroupElement& g) const {
  check(g);
  return vector_index(field(), g.v) + checked_pow(field().p(), dim_v()) * vector_index(field(), g.w);
}

void GroupModel::check(const GroupElement& g) const {
  if (g.model_id != id_) throw std::invalid_argument("element belongs to a different group model");
}

GroupElement GroupModel::multiply(const GroupElement& a, const GroupElement& b) const {
  check(a);
  check(b);
  const PrimeField& F = field();
  return {F.reduced(Vec(a.v + b.v)), F.reduced(Vec(a.w + b.w + cocycle_value(a.v, b.v))), id_};
}

GroupElement GroupModel::inverse(const GroupElement& a) const {
  check(a);
  const PrimeField& F = field();
  // (v, w)^-1 = (-v, -w + f(v, v))
  return {F.reduced(Vec(-a.v)), F.reduced(Vec(-a.w + cocycle_value(a.v, a.v))), id_};
}

GroupElement GroupModel::commutator(const GroupElement& a, const GroupElement& b) const {
  return multiply(multiply(inverse(a), inverse(b)), multiply(a, b));
}

GroupElement GroupModel::conjugate(const GroupElement& g, const GroupElement& h) const {
  return multiply(multiply(inverse(h), g), h);
}

GroupElement GroupModel::power(const GroupElement& a, std::uint64_t k) const {
  GroupElement result = identity();
  GroupElement base = a;
  check(a);
  while (k > 0) {
    if (k & 1) result = multiply(result, base);
    base = multiply(base, base);
    k >>= 1;
  }
  return result;
}

std::uint64_t element_order(const GroupModel& model, const GroupElement& g) {
  const GroupElement e = model.identity();
  GroupElement x = g;
  const std::uint64_t limit = checked_pow(model.field().p(), model.order_log_p());
  for (std::uint64_t k = 1; k <= limit; ++k) {
    if (x == e) return k;
    x = model.multiply(x, g);
  }
  throw std::logic_error("element order exceeds group order");
}

AlternatingMap commutator_form_of(const GroupModel& model) {
  const int n = model.dim_v();
  Mat pairs(pair_count(n), model.dim_w());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const GroupElement c = model.commutator(model.generator(i), model.generator(j));
      if (!c.v.isZero()) throw std::logic_error("commutator outside the centre");
      pairs.row(pair_index(n, i, j)) = c.w.transpose();
    }
  return AlternatingMap(model.field(), n, model.dim_w(), pairs);
}

namespace {

std::uint64_t conjugator_count(const GroupModel& model, const Budgets& budgets) {
  std::uint64_t q = 0;
  try {
    q = checked_pow(model.field().p(), model.dim_v());
  } catch (const std::overflow_error&) {
    throw BudgetExceeded("conjugator scan", UINT64_MAX, budgets.element_scan);
  }
  if (q > budgets.element_scan) throw BudgetExceeded("conjugator scan", q, budgets.element_scan);
  return q;
}

std::uint64_t element_count_or_max(const GroupModel& model) {
  try {
    return checked_pow(model.field().p(), model.order_log_p());
  } catch (const std::overflow_error&) {
    return UINT64_MAX;
  }
}

}  // namespace

std::vector<std::uint64_t> conjugacy_class(const GroupModel& model, const GroupElement& g,
                                           const Budgets& budgets) {
  const std::uint64_t q = conjugator_count(model, budgets);
  std::vector<std::uint64_t> members;
  members.reserve(static_cast<std::size_t>(q));
  for (std::uint64_t u = 0; u < q; ++u) {
    const GroupElement h = model.element(vector_from_index(model.field(), model.dim_v(), u),
                                         Vec::Zero(model.dim_w()));
    members.push_back(model.index_of(model.conjugate(g, h)));
  }
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return members;
}

std::uint64_t count_solutions_of_xp(const GroupModel& model, const Budgets& budgets) {
  const std::uint64_t total = element_count_or_max(model);
  if (total > budgets.element_scan) throw BudgetExceeded("element scan", total, budgets.element_scan);
  std::uint64_t count = 0;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    const GroupElement g = model.element_at(idx);
    if (model.power(g, static_cast<std::uint64_t>(model.field().p())) == model.identity()) ++count;
  }
  return count;
}

ElementLevelType conjugate_type_element_level(const GroupModel& model, const Budgets& budgets) {
  const std::uint64_t q = conjugator_count(model, budgets);
  const std::uint64_t total = element_count_or_max(model);
  ElementLevelType result;
  result.all_elements = total <= budgets.element_scan;
  const std::uint64_t scan = result.all_elements ? total : q;
  for (std::uint64_t idx = 0; idx < scan; ++idx)
    result.class_sizes.insert(conjugacy_class(model, model.element_at(idx), budgets).size());
  return result;
}

namespace {

// Subgroup generated by `gens`, as a set of element indices.
std::unordered_set<std::uint64_t> closure(const GroupModel& model, const std::vector<GroupElement>& gens,
                                          std::uint64_t limit) {
  std::unordered_set<std::uint64_t> seen{model.index_of(model.identity())};
  std::deque<GroupElement> queue{model.identity()};
  while (!queue.empty()) {
    const GroupElement x = queue.front();
    queue.pop_front();
    for (const GroupElement& g : gens) {
      GroupElement y = model.multiply(x, g);
      if (seen.insert(model.index_of(y)).second) {
        if (seen.size() > limit) throw BudgetExceeded("subgroup closure", seen.size(), limit);
        queue.push_back(std::move(y));
      }
    }
  }
  return seen;
}

}  // namespace

GroupStructure structural_report(const GroupModel& model, const Budgets& budgets) {
  const PrimeField& F = model.field();
  const int p = F.p();
  const int n = model.dim_v();
  const int m = model.dim_w();
  const std::uint64_t q = conjugator_count(model, budgets);
  const std::uint64_t qw = checked_pow(p, m);
  if (qw > budgets.element_scan) throw BudgetExceeded("derived subgroup scan", qw, budgets.element_scan);

  std::vector<GroupElement> generators;
  for (int i = 0; i < n; ++i) generators.push_back(model.generator(i));
  for (int k = 0; k < m; ++k) generators.push_back(model.central(Vec::Unit(m, k)));

  GroupStructure s;
  s.order_log_p = model.order_log_p();

  // Center: (v, w) is central iff (v, 0) commutes with every generator.
  std::vector<bool> central_v(static_cast<std::size_t>(q), false);
  std::uint64_t central_count = 0;
  for (std::uint64_t u = 0; u < q; ++u) {
    const GroupElement g = model.element_at(u);
    bool central = true;
    for (const GroupElement& x : generators)
      if (!(model.commutator(g, x) == model.identity())) {
        central = false;
        break;
      }
    central_v[static_cast<std::size_t>(u)] = central;
    if (central) ++central_count;
  }
  s.center_log_p = static_cast<int>(log_p_exact(central_count, p)) + m;
  auto is_central = [&](const GroupElement& g) {
    return central_v[static_cast<std::size_t>(vector_index(F, g.v))];
  };

  std::vector<GroupElement> commutators;
  for (std::size_t i = 0; i < generators.size(); ++i)
    for (std::size_t j = i + 1; j < generators.size(); ++j)
      commutators.push_back(model.commutator(generators[i], generators[j]));
  const auto derived = closure(model, commutators, budgets.element_scan);
  s.derived_log_p = static_cast<int>(log_p_exact(derived.size(), p));

  std::vector<GroupElement> frattini_gens = commutators;
  for (const GroupElement& x : generators) frattini_gens.push_back(model.power(x, p));
  const auto frattini = closure(model, frattini_gens, budgets.element_scan);
  s.frattini_log_p = static_cast<int>(log_p_exact(frattini.size(), p));
  s.min_generators = s.order_log_p - s.frattini_log_p;

  s.derived_elementary = true;
  bool derived_central = true;
  for (std::uint64_t idx : derived) {
    const GroupElement x = model.element_at(idx);
    if (!(model.power(x, p) == model.identity())) s.derived_elementary = false;
    if (!is_central(x)) derived_central = false;
  }

  // Exponent, Omega_1(Z) and G/Z: a central factor (0, w) has order dividing
  // p and commutes with everything, so powers are governed by (v, 0).
  const std::uint64_t total = element_count_or_max(model);
  const bool scan_all = total <= budgets.element_scan;
  s.exponent = 1;
  s.central_quotient_elementary = true;
  std::uint64_t omega_v = 0;
  for (std::uint64_t idx = 0; idx < (scan_all ? total : q); ++idx) {
    const GroupElement g = model.element_at(idx);
    s.exponent = std::max(s.exponent, element_order(model, g));
    if (idx < q) {
      const GroupElement gp = model.power(g, p);
      if (!is_central(gp)) s.central_quotient_elementary = false;
      if (central_v[static_cast<std::size_t>(idx)] && gp == model.identity()) ++omega_v;
    }
  }
  for (int k = 0; k < m; ++k)
    s.exponent = std::max(s.exponent, element_order(model, model.central(Vec::Unit(m, k))));
  s.omega1_center_log_p = static_cast<int>(log_p_exact(omega_v, p)) + m;

  s.special = derived_central && s.center_log_p == s.derived_log_p &&
              s.derived_log_p == s.frattini_log_p &&
              std::all_of(derived.begin(), derived.end(), [&](std::uint64_t idx) { return frattini.count(idx) > 0; });
  return s;
}

}  // namespace pgroup
