#include "pgroup/linalg.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace pgroup {

Echelon rref(const PrimeField& F, const Mat& m) {
  Mat work = F.reduced(m);
  Echelon e;
  const int r = echelonize(F, work, &e.pivots);
  e.rows = work.topRows(r);
  return e;
}

bool try_inverse(const PrimeField& F, const Mat& m, Mat& inverse) {
  if (m.rows() != m.cols()) return false;
  const auto n = m.rows();
  Mat aug(n, 2 * n);
  aug << F.reduced(m), Mat::Identity(n, n);
  std::vector<int> pivots;
  const int r = echelonize(F, aug, &pivots);
  if (r < n || pivots.back() >= n) return false;
  inverse = aug.rightCols(n);
  return true;
}

Mat inverse(const PrimeField& F, const Mat& m) {
  Mat inv;
  if (!try_inverse(F, m, inv)) throw std::domain_error("matrix is singular over GF(p)");
  return inv;
}

bool is_invertible(const PrimeField& F, const Mat& m) {
  return m.rows() == m.cols() && rank(F, m) == m.rows();
}

// ---------------------------------------------------------------------------
// Subspace

Subspace::Subspace(const PrimeField& F, int ambient_dim)
    : field_(F), ambient_(ambient_dim), basis_(0, ambient_dim) {}

Subspace::Subspace(const PrimeField& F, int ambient_dim, const Mat& generators)
    : field_(F), ambient_(ambient_dim) {
  if (generators.cols() != ambient_dim)
    throw std::invalid_argument("subspace generators have wrong ambient dimension");
  Echelon e = rref(F, generators);
  basis_ = std::move(e.rows);
  pivots_ = std::move(e.pivots);
}

Subspace Subspace::zero(const PrimeField& F, int ambient_dim) { return Subspace(F, ambient_dim); }

Subspace Subspace::full(const PrimeField& F, int ambient_dim) {
  return Subspace(F, ambient_dim, Mat::Identity(ambient_dim, ambient_dim));
}

Subspace Subspace::span_of(const PrimeField& F, const std::vector<Vec>& vectors, int ambient_dim) {
  Mat gens(static_cast<Eigen::Index>(vectors.size()), ambient_dim);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != ambient_dim)
      throw std::invalid_argument("vector has wrong ambient dimension");
    gens.row(static_cast<Eigen::Index>(i)) = vectors[i].transpose();
  }
  return Subspace(F, ambient_dim, gens);
}

bool Subspace::contains(const Vec& v) const {
  if (v.size() != ambient_) throw std::invalid_argument("vector has wrong ambient dimension");
  // Reduce v against the RREF basis; it lies in the span iff nothing is left.
  Vec r = field_.reduced(v);
  for (int i = 0; i < dim(); ++i) {
    const int c = r(pivots_[i]);
    if (c == 0) continue;
    for (int j = 0; j < ambient_; ++j) r(j) = field_.sub(r(j), field_.mul(c, basis_(i, j)));
  }
  return (r.array() == 0).all();
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw std::invalid_argument("ambient dimensions differ");
  for (int i = 0; i < other.dim(); ++i)
    if (!contains(Vec(other.basis_.row(i).transpose()))) return false;
  return true;
}

Subspace Subspace::image(const Mat& A) const {
  if (A.cols() != ambient_) throw std::invalid_argument("map has wrong source dimension");
  const int target = static_cast<int>(A.rows());
  if (dim() == 0) return Subspace(field_, target);
  Mat rows = field_.reduced(Mat(basis_ * A.transpose()));
  return Subspace(field_, target, rows);
}

Vec Subspace::vector_at(std::uint64_t coefficient_index) const {
  Vec v = Vec::Zero(ambient_);
  for (int i = 0; i < dim(); ++i) {
    const int c = static_cast<int>(coefficient_index % field_.p());
    coefficient_index /= field_.p();
    if (c != 0) v += c * basis_.row(i).transpose();
  }
  return field_.reduced(v);
}

std::string Subspace::to_spec() const {
  std::string out;
  for (int i = 0; i < dim(); ++i) {
    if (i > 0) out += ';';
    out += format_vector(basis_.row(i).transpose());
  }
  return out;
}

bool operator<(const Subspace& a, const Subspace& b) {
  if (a.ambient_ != b.ambient_) return a.ambient_ < b.ambient_;
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  if (a.pivots_ != b.pivots_) return a.pivots_ < b.pivots_;
  return std::lexicographical_compare(a.basis_.data(), a.basis_.data() + a.basis_.size(),
                                      b.basis_.data(), b.basis_.data() + b.basis_.size());
}

std::size_t Subspace::hash() const noexcept {
  std::size_t h = static_cast<std::size_t>(ambient_) * 1000003u + static_cast<std::size_t>(dim());
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < ambient_; ++j) h = h * 31u + static_cast<std::size_t>(basis_(i, j));
  return h;
}

// ---------------------------------------------------------------------------
// Parsing

Vec parse_vector(const PrimeField& F, std::string_view text, int dim) {
  std::vector<long long> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string_view token = text.substr(pos, comma - pos);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    long long value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size())
      throw std::invalid_argument("bad vector entry '" + std::string(token) + "'");
    values.push_back(value);
    pos = comma + 1;
  }
  if (static_cast<int>(values.size()) != dim)
    throw std::invalid_argument("vector '" + std::string(text) + "' has " +
                                std::to_string(values.size()) + " entries, expected " +
                                std::to_string(dim));
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v(i) = F.reduce(values[i]);
  return v;
}

Subspace parse_subspace_spec(const PrimeField& F, std::string_view spec, int ambient_dim) {
  std::vector<Vec> vectors;
  std::size_t pos = 0;
  while (pos < spec.size()) {
    const std::size_t semi = std::min(spec.find(';', pos), spec.size());
    std::string_view part = spec.substr(pos, semi - pos);
    if (part.find_first_not_of(' ') != std::string_view::npos)
      vectors.push_back(parse_vector(F, part, ambient_dim));
    pos = semi + 1;
  }
  return Subspace::span_of(F, vectors, ambient_dim);
}

std::string format_vector(const Vec& v) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(v(i));
  }
  return out;
}

// ---------------------------------------------------------------------------

Subspace kernel(const PrimeField& F, const Mat& m) {
  const int cols = static_cast<int>(m.cols());
  Echelon e = rref(F, m);
  std::vector<bool> is_pivot(cols, false);
  for (int c : e.pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vec v = Vec::Zero(cols);
    v(free) = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
      v(e.pivots[r]) = F.neg(e.rows(static_cast<Eigen::Index>(r), free));
    basis.push_back(v);
  }
  return Subspace::span_of(F, basis, cols);
}

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("count exceeds 64-bit range");
  return r;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("count exceeds 64-bit range");
  return r;
}

}  // namespace

std::uint64_t checked_pow(int p, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r = checked_mul(r, static_cast<std::uint64_t>(p));
  return r;
}

std::uint64_t gaussian_binomial(int d, int k, int p) {
  if (k < 0 || k > d) throw std::invalid_argument("gaussian_binomial requires 0 <= k <= d");
  // Pascal-type recurrence [d,k] = [d-1,k-1] + p^k [d-1,k], all exact.
  std::vector<std::uint64_t> row(k + 1, 0);
  row[0] = 1;
  for (int n = 1; n <= d; ++n) {
    for (int j = std::min(n, k); j >= 1; --j)
      row[j] = checked_add(row[j - 1], checked_mul(checked_pow(p, j), row[j]));
  }
  return row[k];
}

std::uint64_t gl_order(int n, int p) {
  const std::uint64_t q = checked_pow(p, n);
  std::uint64_t order = 1;
  for (int i = 0; i < n; ++i) order = checked_mul(order, q - checked_pow(p, i));
  return order;
}

Vec vector_from_index(const PrimeField& F, int dim, std::uint64_t index) {
  Vec v(dim);
  for (int i = 0; i < dim; ++i) {
    v(i) = static_cast<int>(index % F.p());
    index /= F.p();
  }
  return v;
}

std::uint64_t vector_index(const PrimeField& F, const Vec& v) {
  std::uint64_t idx = 0;
  for (Eigen::Index i = v.size() - 1; i >= 0; --i) idx = idx * F.p() + F.reduce(v(i));
  return idx;
}

std::vector<Vec> projective_points(const PrimeField& F, int dim) {
  std::vector<Vec> points;
  const std::uint64_t total = checked_pow(F.p(), dim);
  points.reserve(static_cast<std::size_t>((total - 1) / (F.p() - 1)));
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    Vec v = vector_from_index(F, dim, idx);
    int lead = 0;
    while (v(lead) == 0) ++lead;
    if (v(lead) == 1) points.push_back(v);
  }
  return points;
}

// ---------------------------------------------------------------------------
// SubspaceEnumerator

SubspaceEnumerator::SubspaceEnumerator(const PrimeField& F, int d, int k)
    : field_(F), d_(d), k_(k), total_(gaussian_binomial(d, k, F.p())) {
  if (d > kMaxDim) throw std::invalid_argument("ambient dimension too large");
  pivots_.resize(k);
  for (int i = 0; i < k; ++i) pivots_[i] = i;
  reset_free();
}

void SubspaceEnumerator::reset_free() {
  free_.clear();
  for (int r = 0; r < k_; ++r) {
    for (int c = pivots_[r] + 1; c < d_; ++c) {
      if (std::find(pivots_.begin(), pivots_.end(), c) == pivots_.end()) free_.emplace_back(r, c);
    }
  }
  values_.assign(free_.size(), 0);
}

bool SubspaceEnumerator::next_pivots() {
  int i = k_ - 1;
  while (i >= 0 && pivots_[i] == d_ - k_ + i) --i;
  if (i < 0) return false;
  ++pivots_[i];
  for (int j = i + 1; j < k_; ++j) pivots_[j] = pivots_[j - 1] + 1;
  return true;
}

Subspace SubspaceEnumerator::current() const {
  Mat basis = Mat::Zero(k_, d_);
  for (int r = 0; r < k_; ++r) basis(r, pivots_[r]) = 1;
  for (std::size_t f = 0; f < free_.size(); ++f) basis(free_[f].first, free_[f].second) = values_[f];
  return Subspace(field_, d_, basis);
}

void SubspaceEnumerator::advance() {
  if (done_) return;
  for (std::size_t f = 0; f < values_.size(); ++f) {
    if (++values_[f] < field_.p()) return;
    values_[f] = 0;
  }
  if (!next_pivots()) {
    done_ = true;
    return;
  }
  reset_free();
}

void for_each_subspace(const PrimeField& F, int d, int k,
                       const std::function<void(const Subspace&)>& fn) {
  for (SubspaceEnumerator it(F, d, k); !it.done(); it.advance()) fn(it.current());
}

std::vector<Subspace> enumerate_subspaces(const PrimeField& F, int d, int k) {
  SubspaceEnumerator it(F, d, k);
  std::vector<Subspace> out;
  out.reserve(static_cast<std::size_t>(it.size()));
  for (; !it.done(); it.advance()) out.push_back(it.current());
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Depth-first sweep over columns; `echelon` holds an RREF of the chosen
// columns so independence of the next candidate is a single reduction.
struct InvertibleSweep {
  const PrimeField& F;
  int n;
  std::uint64_t q;
  const std::function<bool(const Mat&)>& visit;
  Mat current;
  std::uint64_t visited = 0;
  bool stopped = false;

  bool independent(int col, const Vec& v) const {
    Mat cols(n, col + 1);
    cols.leftCols(col) = current.leftCols(col);
    cols.col(col) = v;
    return rank(F, cols) == col + 1;
  }

  void recurse(int col) {
    if (col == n) {
      ++visited;
      if (!visit(current)) stopped = true;
      return;
    }
    for (std::uint64_t idx = 1; idx < q && !stopped; ++idx) {
      Vec v = vector_from_index(F, n, idx);
      if (!independent(col, v)) continue;
      current.col(col) = v;
      recurse(col + 1);
    }
  }
};

}  // namespace

std::uint64_t for_each_invertible(const PrimeField& F, int n,
                                  const std::function<bool(const Mat&)>& visit) {
  InvertibleSweep sweep{F, n, checked_pow(F.p(), n), visit, Mat::Zero(n, n)};
  sweep.recurse(0);
  return sweep.visited;
}

Vec random_vector(const PrimeField& F, int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(0, F.p() - 1);
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = dist(rng);
  return v;
}

Mat random_invertible(const PrimeField& F, int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(0, F.p() - 1);
  for (;;) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = dist(rng);
    if (is_invertible(F, m)) return m;
  }
}

Vec wedge(const PrimeField& F, const Vec& x, const Vec& y) {
  const int n = static_cast<int>(x.size());
  Vec w(pair_count(n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      w(pair_index(n, i, j)) = F.reduce(static_cast<long long>(x(i)) * y(j) -
                                        static_cast<long long>(x(j)) * y(i));
  return w;
}

Mat exterior_square(const PrimeField& F, const Mat& phi) {
  const int n = static_cast<int>(phi.rows());
  Mat out(pair_count(n), pair_count(n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      out.col(pair_index(n, i, j)) = wedge(F, phi.col(i), phi.col(j));
  return out;
}

Mat bivector_matrix(const PrimeField& F, const Vec& bivector, int n) {
  Mat a = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      a(i, j) = F.reduce(bivector(pair_index(n, i, j)));
      a(j, i) = F.neg(a(i, j));
    }
  return a;
}

}  // namespace pgroup
