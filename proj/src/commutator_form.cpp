#include "pgroup/commutator_form.hpp"

#include <sstream>

namespace pgroup {

AlternatingMap::AlternatingMap(const PrimeField& F, int dim_v, int dim_w, const Mat& pair_values)
    : field_(F), dim_v_(dim_v), dim_w_(dim_w), pairs_(F.reduced(pair_values)) {
  if (dim_v < 0 || dim_w < 0 || dim_v > kMaxDim || dim_w > kMaxDim)
    throw std::invalid_argument("alternating map dimensions out of range");
  if (pairs_.rows() != pair_count(dim_v) || pairs_.cols() != dim_w)
    throw std::invalid_argument("pair value table has shape " + std::to_string(pairs_.rows()) +
                                "x" + std::to_string(pairs_.cols()) + ", expected " +
                                std::to_string(pair_count(dim_v)) + "x" + std::to_string(dim_w));
  slices_.assign(dim_v, Mat::Zero(dim_w, dim_v));
  for (int i = 0; i < dim_v; ++i)
    for (int j = i + 1; j < dim_v; ++j) {
      const auto row = pairs_.row(pair_index(dim_v, i, j)).transpose();
      slices_[i].col(j) = row;
      slices_[j].col(i) = F.reduced(Mat(-row));
    }
}

AlternatingMap AlternatingMap::zero(const PrimeField& F, int dim_v, int dim_w) {
  return AlternatingMap(F, dim_v, dim_w, Mat::Zero(pair_count(dim_v), dim_w));
}

Vec AlternatingMap::value(int i, int j) const { return slices_[i].col(j); }

Vec AlternatingMap::operator()(const Vec& x, const Vec& y) const {
  return field_.reduced(Vec(left_map(x) * y));
}

Mat AlternatingMap::left_map(const Vec& x) const {
  Mat out;
  left_map_into(x, out);
  return out;
}

void AlternatingMap::left_map_into(const Vec& x, Mat& out) const {
  out.setZero(dim_w_, dim_v_);
  for (int i = 0; i < dim_v_; ++i)
    if (x(i) != 0) out += x(i) * slices_[i];
  out = field_.reduced(out);
}

int AlternatingMap::image_rank() const { return rank(field_, pairs_); }

Subspace AlternatingMap::radical() const {
  // x is in the radical iff B(x, e_j) = 0 for all j; stack the maps x -> B(x, e_j).
  Mat system(static_cast<Eigen::Index>(dim_v_) * dim_w_, dim_v_);
  for (int j = 0; j < dim_v_; ++j)
    for (int i = 0; i < dim_v_; ++i) system.block(j * dim_w_, i, dim_w_, 1) = slices_[i].col(j);
  return kernel(field_, system);
}

AlternatingMap full_lambda2(const PrimeField& F, int n_gen) {
  if (n_gen < 2) throw std::invalid_argument("full_lambda2 needs at least 2 generators");
  const int w = pair_count(n_gen);
  return AlternatingMap(F, n_gen, w, Mat::Identity(w, w));
}

AlternatingMap heisenberg_ext(const ExtField& K) {
  const int m = K.degree();
  const PrimeField& F = K.base();
  Mat pairs = Mat::Zero(pair_count(2 * m), m);
  // B(e_i, e_{m+j}) = x^i * x^j for the a1-basis e_i and a3-basis e_{m+j}.
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) pairs.row(pair_index(2 * m, i, m + j)) = K.monomial(i + j).transpose();
  return AlternatingMap(F, 2 * m, m, pairs);
}

AlternatingMap heisenberg_ext(int p, int m) { return heisenberg_ext(ExtField(PrimeField(p), m)); }

bool is_full_lambda2(const AlternatingMap& B) {
  const int w = pair_count(B.dim_v());
  return B.dim_w() == w && B.pair_values() == Mat::Identity(w, w);
}

int breadth(const AlternatingMap& B, const Vec& x) {
  if (x.size() != B.dim_v()) throw std::invalid_argument("vector is not in V");
  return rank(B.field(), B.left_map(B.field().reduced(x)));
}

namespace {

void require_scan(const AlternatingMap& B, const Budgets& budgets) {
  std::uint64_t needed = 0;
  try {
    needed = checked_pow(B.field().p(), B.dim_v());
  } catch (const std::overflow_error&) {
    throw BudgetExceeded("form-level scan", UINT64_MAX, budgets.form_scan);
  }
  if (needed > budgets.form_scan) throw BudgetExceeded("form-level scan", needed, budgets.form_scan);
}

template <typename Fn>
void for_each_projective_breadth(const AlternatingMap& B, const Budgets& budgets, Fn&& fn) {
  require_scan(B, budgets);
  Mat work;
  for (const Vec& x : projective_points(B.field(), B.dim_v())) {
    B.left_map_into(x, work);
    fn(x, echelonize(B.field(), work));
  }
}

}  // namespace

BreadthProfile breadth_profile(const AlternatingMap& B, const Budgets& budgets) {
  BreadthProfile profile;
  const std::uint64_t scale = static_cast<std::uint64_t>(B.field().p() - 1);
  for_each_projective_breadth(B, budgets, [&](const Vec&, int b) { profile[b] += scale; });
  return profile;
}

std::set<int> breadth_set(const AlternatingMap& B, const Budgets& budgets) {
  std::set<int> out{0};
  for (const auto& [b, count] : breadth_profile(B, budgets)) out.insert(b);
  return out;
}

std::set<std::uint64_t> conjugate_type(const AlternatingMap& B, const Budgets& budgets) {
  std::set<std::uint64_t> sizes;
  for (int b : breadth_set(B, budgets)) sizes.insert(checked_pow(B.field().p(), b));
  return sizes;
}

std::set<std::uint64_t> two_class_type(int p, int n) { return {1, checked_pow(p, n)}; }

bool is_camina(const AlternatingMap& B, const Budgets& budgets) {
  if (B.dim_w() == 0) return false;
  const BreadthProfile profile = breadth_profile(B, budgets);
  return profile.size() == 1 && profile.begin()->first == B.dim_w();
}

Mat quotient_projection(const Subspace& U) {
  const PrimeField& F = U.field();
  const int d = U.ambient_dim();
  std::vector<bool> is_pivot(d, false);
  for (int c : U.pivots()) is_pivot[c] = true;
  Mat P = Mat::Zero(d - U.dim(), d);
  int row = 0;
  for (int j = 0; j < d; ++j) {
    if (is_pivot[j]) continue;
    // coordinate j of w - sum_k w[piv_k] u_k
    P(row, j) = 1;
    for (int k = 0; k < U.dim(); ++k) P(row, U.pivots()[k]) = F.neg(U.basis()(k, j));
    ++row;
  }
  return P;
}

AlternatingMap quotient(const AlternatingMap& B, const Subspace& U) {
  if (U.ambient_dim() != B.dim_w() || !(U.field() == B.field()))
    throw std::invalid_argument("quotient subspace does not live in W");
  const Mat P = quotient_projection(U);
  return AlternatingMap(B.field(), B.dim_v(), B.dim_w() - U.dim(), Mat(B.pair_values() * P.transpose()));
}

BaseChange base_change(const AlternatingMap& B, const Mat& phi) {
  const PrimeField& F = B.field();
  const int n = B.dim_v();
  const int w = B.dim_w();
  if (phi.rows() != n || phi.cols() != n) throw std::invalid_argument("base change has wrong shape");
  if (!is_invertible(F, F.reduced(phi))) throw std::domain_error("base change is singular");

  const Mat ext = exterior_square(F, F.reduced(phi));
  AlternatingMap changed(F, n, w, Mat(ext.transpose() * B.pair_values()));

  // Pick pairs whose values form a basis of span(B); theta is fixed there and
  // extended by the identity on the standard complement.
  std::vector<int> chosen;
  Mat basis(0, w);
  for (int q = 0; q < pair_count(n) && static_cast<int>(chosen.size()) < w; ++q) {
    Mat trial(basis.rows() + 1, w);
    trial << basis, B.pair_values().row(q);
    if (rank(F, trial) == trial.rows()) {
      basis = trial;
      chosen.push_back(q);
    }
  }
  const Echelon span_rref = rref(F, basis);
  std::vector<bool> is_pivot(w, false);
  for (int c : span_rref.pivots) is_pivot[c] = true;
  Mat source(w, w);
  Mat target(w, w);
  int col = 0;
  for (std::size_t k = 0; k < chosen.size(); ++k, ++col) {
    source.col(col) = B.pair_values().row(chosen[k]).transpose();
    target.col(col) = changed.pair_values().row(chosen[k]).transpose();
  }
  for (int j = 0; j < w; ++j) {
    if (is_pivot[j]) continue;
    source.col(col) = Vec::Unit(w, j);
    target.col(col) = Vec::Unit(w, j);
    ++col;
  }
  Mat theta = F.reduced(Mat(target * inverse(F, source)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const int q = pair_index(n, i, j);
      const Vec mapped = F.reduced(Vec(theta * B.pair_values().row(q).transpose()));
      if (mapped != Vec(changed.pair_values().row(q).transpose())) throw InducedMapError(i, j);
    }
  if (!is_invertible(F, theta)) throw InducedMapError(-1, -1);
  return {std::move(changed), std::move(theta)};
}

StructureReport check_structure_constraints(const AlternatingMap& B, const Budgets& budgets) {
  StructureReport report;
  const int p = B.field().p();
  const BreadthProfile profile = breadth_profile(B, budgets);
  const int max_b = profile.empty() ? 0 : profile.rbegin()->first;
  const int derived = B.image_rank();
  const int rad = B.radical().dim();
  const int center_index = B.dim_v() - rad;

  std::set<int> nonzero_breadths;
  for (const auto& [b, count] : profile)
    if (b > 0) nonzero_breadths.insert(b);
  const bool two_class = nonzero_breadths.size() == 1;
  const int n = two_class ? *nonzero_breadths.begin() : 0;

  {
    Check c{"breadth_bound", "|G'| <= p^(b(b+1)/2), b the maximal breadth", true, true, {}};
    c.passed = 2 * derived <= max_b * (max_b + 1);
    c.detail = "dim G' = " + std::to_string(derived) + ", b = " + std::to_string(max_b);
    report.checks.push_back(c);
  }
  {
    Check c{"generator_bound", "type {1,p^n} needs at least n generators", true, true, {}};
    c.applicable = two_class;
    const int generators = B.dim_v() + (B.dim_w() - derived);
    c.passed = !two_class || generators >= n;
    c.detail = "d(G) = " + std::to_string(generators) + ", n = " + std::to_string(n);
    report.checks.push_back(c);
  }
  {
    Check c{"omega1_center_bound", "type {1,p^n} needs |Omega_1(Z)| >= p^n", true, true, {}};
    c.applicable = two_class;
    const int omega = B.dim_w() + (p == 2 ? 0 : rad);
    c.passed = !two_class || omega >= n;
    c.detail = "log_p |Omega_1(Z)| >= " + std::to_string(omega) + ", n = " + std::to_string(n);
    report.checks.push_back(c);
  }
  {
    Check c{"p3_dichotomy",
            "type {1,p^3}, p odd: |G'| = p^3 with [G:Z] >= p^4, or |G'| >= p^4 with [G:Z] = p^4", true, true, {}};
    c.applicable = two_class && n == 3 && p != 2;
    c.passed = !c.applicable || (derived == 3 && center_index >= 4) || (derived >= 4 && center_index == 4);
    c.detail = "dim G' = " + std::to_string(derived) + ", log_p [G:Z] = " + std::to_string(center_index);
    report.checks.push_back(c);
  }
  return report;
}

}  // namespace pgroup
