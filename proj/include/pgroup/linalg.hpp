#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "pgroup/field.hpp"
#include "pgroup/types.hpp"

namespace pgroup {

/// In-place Gauss-Jordan elimination over GF(p). On return the first `rank`
/// rows of `m` are in reduced row echelon form and the rest are zero.
/// Returns the rank; pivot columns are appended to `pivots` when given.
template <typename Derived>
int echelonize(const PrimeField& F, Eigen::MatrixBase<Derived>& m,
               std::vector<int>* pivots = nullptr) {
  const auto rows = m.rows();
  const auto cols = m.cols();
  int r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index sel = -1;
    for (Eigen::Index i = r; i < rows; ++i) {
      if (m(i, c) != 0) {
        sel = i;
        break;
      }
    }
    if (sel < 0) continue;
    if (sel != r) m.row(sel).swap(m.row(r));
    const int inv = F.inv(m(r, c));
    if (inv != 1)
      for (Eigen::Index j = c; j < cols; ++j) m(r, j) = F.mul(m(r, j), inv);
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      const int factor = m(i, c);
      for (Eigen::Index j = c; j < cols; ++j) m(i, j) = F.sub(m(i, j), F.mul(factor, m(r, j)));
    }
    if (pivots) pivots->push_back(static_cast<int>(c));
    ++r;
  }
  return r;
}

/// Row rank over GF(p). Entries must already be canonical residues.
template <typename Derived>
int rank(const PrimeField& F, const Eigen::MatrixBase<Derived>& m) {
  typename Derived::PlainObject work = m;
  return echelonize(F, work);
}

/// Reduced row echelon form with zero rows dropped.
struct Echelon {
  Mat rows;
  std::vector<int> pivots;
};

Echelon rref(const PrimeField& F, const Mat& m);

/// Inverse over GF(p); std::nullopt-like signalling via bool.
bool try_inverse(const PrimeField& F, const Mat& m, Mat& inverse);
Mat inverse(const PrimeField& F, const Mat& m);  // throws std::domain_error if singular
bool is_invertible(const PrimeField& F, const Mat& m);

/// Canonical representation of a subspace of GF(p)^d: its RREF basis.
/// Two values compare equal iff they are the same subspace.
class Subspace {
 public:
  /// Span of the rows of `generators` (any number, any dependence).
  Subspace(const PrimeField& F, int ambient_dim, const Mat& generators);

  static Subspace zero(const PrimeField& F, int ambient_dim);
  static Subspace full(const PrimeField& F, int ambient_dim);
  static Subspace span_of(const PrimeField& F, const std::vector<Vec>& vectors, int ambient_dim);

  const PrimeField& field() const noexcept { return field_; }
  int ambient_dim() const noexcept { return ambient_; }
  int dim() const noexcept { return static_cast<int>(basis_.rows()); }
  const Mat& basis() const noexcept { return basis_; }
  const std::vector<int>& pivots() const noexcept { return pivots_; }
  Vec basis_vector(int i) const { return basis_.row(i).transpose(); }

  bool contains(const Vec& v) const;
  bool contains(const Subspace& other) const;
  /// Image under x -> A x, with A of shape (d' x d).
  Subspace image(const Mat& A) const;
  /// Vectors of the subspace, by coefficient index over the basis.
  Vec vector_at(std::uint64_t coefficient_index) const;

  /// Semicolon-separated rows of comma-separated residues.
  std::string to_spec() const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.field_ == b.field_ && a.ambient_ == b.ambient_ && a.pivots_ == b.pivots_ &&
           a.basis_ == b.basis_;
  }
  friend bool operator<(const Subspace& a, const Subspace& b);

  std::size_t hash() const noexcept;

 private:
  Subspace(const PrimeField& F, int ambient_dim);

  PrimeField field_;
  int ambient_;
  Mat basis_;
  std::vector<int> pivots_;
};

struct SubspaceHash {
  std::size_t operator()(const Subspace& s) const noexcept { return s.hash(); }
};

/// Parses "1,0,2;0,1,1" into the span of the listed vectors of GF(p)^ambient.
/// An empty string denotes the zero subspace. Throws std::invalid_argument.
Subspace parse_subspace_spec(const PrimeField& F, std::string_view spec, int ambient_dim);
Vec parse_vector(const PrimeField& F, std::string_view text, int dim);
std::string format_vector(const Vec& v);

/// Right kernel {v : m v = 0} as a subspace of GF(p)^cols.
Subspace kernel(const PrimeField& F, const Mat& m);

/// Number of k-dimensional subspaces of GF(p)^d. Throws std::overflow_error.
std::uint64_t gaussian_binomial(int d, int k, int p);

/// |GL(n, p)|. Throws std::overflow_error.
std::uint64_t gl_order(int n, int p);

/// p^e with overflow check.
std::uint64_t checked_pow(int p, int e);

/// Vector with base-p digits of `index`, coordinate 0 least significant.
Vec vector_from_index(const PrimeField& F, int dim, std::uint64_t index);
std::uint64_t vector_index(const PrimeField& F, const Vec& v);

/// Representatives of the projective points of GF(p)^d (first nonzero
/// coordinate equal to 1), in increasing vector_index order.
std::vector<Vec> projective_points(const PrimeField& F, int dim);

/// Streams every k-dimensional subspace of GF(p)^d exactly once. Order: pivot
/// patterns lexicographically, then free entries as a base-p odometer with
/// the last free entry most significant.
class SubspaceEnumerator {
 public:
  SubspaceEnumerator(const PrimeField& F, int d, int k);

  /// Total count; equals gaussian_binomial(d, k, p).
  std::uint64_t size() const noexcept { return total_; }
  bool done() const noexcept { return done_; }
  /// Current subspace; valid while !done().
  Subspace current() const;
  void advance();

 private:
  bool next_pivots();
  void reset_free();

  PrimeField field_;
  int d_;
  int k_;
  std::uint64_t total_;
  bool done_ = false;
  std::vector<int> pivots_;
  std::vector<std::pair<int, int>> free_;  // (row, column) of free entries
  std::vector<int> values_;
};

void for_each_subspace(const PrimeField& F, int d, int k,
                       const std::function<void(const Subspace&)>& fn);
std::vector<Subspace> enumerate_subspaces(const PrimeField& F, int d, int k);

/// Visits every invertible n x n matrix, choosing columns in increasing
/// vector_index order (a lexicographic sweep of GL(n, p)). The visitor returns
/// false to stop. Returns the number of matrices visited.
std::uint64_t for_each_invertible(const PrimeField& F, int n,
                                  const std::function<bool(const Mat&)>& visit);

Mat random_invertible(const PrimeField& F, int n, std::mt19937_64& rng);
Vec random_vector(const PrimeField& F, int n, std::mt19937_64& rng);

/// Index of the basis bivector e_i ^ e_j (i < j) in lexicographic pair order.
constexpr int pair_index(int n, int i, int j) noexcept {
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}
constexpr int pair_count(int n) noexcept { return n * (n - 1) / 2; }

/// Coordinates of x ^ y in the pair basis.
Vec wedge(const PrimeField& F, const Vec& x, const Vec& y);

/// Matrix of the induced map on the exterior square: column (i,j) holds the
/// coordinates of phi(e_i) ^ phi(e_j).
Mat exterior_square(const PrimeField& F, const Mat& phi);

/// Alternating n x n matrix of a bivector given in pair coordinates.
Mat bivector_matrix(const PrimeField& F, const Vec& bivector, int n);

}  // namespace pgroup
