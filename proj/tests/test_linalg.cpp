#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "pgroup/linalg.hpp"

using namespace pgroup;

namespace {

long long det_laplace(const std::vector<std::vector<long long>>& a) {
  const std::size_t n = a.size();
  if (n == 1) return a[0][0];
  long long total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<long long>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<long long> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(a[r][k]);
      minor.push_back(row);
    }
    total += (c % 2 ? -1 : 1) * a[0][c] * det_laplace(minor);
  }
  return total;
}

// Largest k with a nonzero k x k minor.
int rank_by_minors(const Mat& m, int p) {
  const int rows = static_cast<int>(m.rows()), cols = static_cast<int>(m.cols());
  for (int k = std::min(rows, cols); k >= 1; --k) {
    std::vector<int> rsel(rows, 0), csel(cols, 0);
    std::fill(rsel.begin(), rsel.begin() + k, 1);
    do {
      std::fill(csel.begin(), csel.end(), 0);
      std::fill(csel.begin(), csel.begin() + k, 1);
      do {
        std::vector<std::vector<long long>> sub;
        for (int r = 0; r < rows; ++r) {
          if (!rsel[r]) continue;
          std::vector<long long> row;
          for (int c = 0; c < cols; ++c)
            if (csel[c]) row.push_back(m(r, c));
          sub.push_back(row);
        }
        if (((det_laplace(sub) % p) + p) % p != 0) return k;
      } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
  }
  return 0;
}

// The subspace as the sorted list of its vector indices, built by brute-force
// span closure; independent of echelon forms.
std::vector<std::uint64_t> span_set(const PrimeField& F, const std::vector<Vec>& gens, int d) {
  std::set<std::uint64_t> seen{0};
  std::vector<Vec> frontier{Vec::Zero(d)};
  while (!frontier.empty()) {
    Vec v = frontier.back();
    frontier.pop_back();
    for (const Vec& g : gens) {
      Vec w = F.reduced(Vec(v + g));
      if (seen.insert(vector_index(F, w)).second) frontier.push_back(w);
    }
  }
  return {seen.begin(), seen.end()};
}

}  // namespace

TEST_CASE("rank examples") {
  const PrimeField F3(3), F2(2);
  CHECK(rank(F3, Mat::Zero(3, 3)) == 0);
  CHECK(rank(F2, Mat::Identity(4, 4)) == 4);
  Mat m(2, 2);
  m << 1, 2, 2, 1;
  CHECK(rank(F3, m) == 1);
}

TEST_CASE("Gaussian elimination agrees with minor expansion up to 4x4") {
  std::mt19937_64 rng(7);
  for (int p : {2, 3, 5}) {
    const PrimeField F(p);
    std::uniform_int_distribution<int> dim(1, 4), entry(0, p - 1);
    for (int trial = 0; trial < 300; ++trial) {
      Mat m(dim(rng), dim(rng));
      for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = trial % 3 == 0 && c == 0 ? 0 : entry(rng);
      CAPTURE(m);
      CHECK(rank(F, m) == rank_by_minors(m, p));
      CHECK(rank(F, m) <= std::min(m.rows(), m.cols()));
    }
  }
}

TEST_CASE("kernel and rank-nullity") {
  const PrimeField F3(3), F2(2);
  CHECK(kernel(F3, Mat::Identity(3, 3)).dim() == 0);
  CHECK(kernel(F2, Mat::Zero(4, 4)).dim() == 4);
  std::mt19937_64 rng(11);
  for (int p : {2, 3, 5, 7}) {
    const PrimeField F(p);
    std::uniform_int_distribution<int> dim(1, 6), entry(0, p - 1);
    for (int trial = 0; trial < 200; ++trial) {
      Mat m(dim(rng), dim(rng));
      for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = entry(rng);
      const Subspace K = kernel(F, m);
      CHECK(K.dim() + rank(F, m) == m.cols());
      for (int k = 0; k < K.dim(); ++k) CHECK(F.reduced(Vec(m * K.basis_vector(k))).isZero());
    }
  }
}

TEST_CASE("inverse") {
  const PrimeField F(5);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Mat a = random_invertible(F, 4, rng);
    CHECK(F.reduced(Mat(a * inverse(F, a))) == Mat(Mat::Identity(4, 4)));
  }
  Mat singular(2, 2);
  singular << 1, 2, 2, 4;
  CHECK_FALSE(is_invertible(F, singular));
  CHECK_THROWS_AS(inverse(F, singular), std::domain_error);
}

TEST_CASE("Gaussian binomials") {
  CHECK(gaussian_binomial(4, 2, 3) == 130);
  CHECK(gaussian_binomial(6, 1, 3) == 364);
  CHECK(gaussian_binomial(6, 2, 2) == 651);
  CHECK(gaussian_binomial(6, 2, 3) == 11011);
  for (int d = 0; d <= 6; ++d) CHECK(gaussian_binomial(d, 0, 7) == 1);
  CHECK(gl_order(4, 2) == 20160);
  CHECK(gl_order(4, 3) == 24261120);
  CHECK_THROWS_AS(gaussian_binomial(60, 30, 23), std::overflow_error);
}

TEST_CASE("enumeration yields each subspace once, counted by the Gaussian binomial") {
  for (int p : {2, 3, 5})
    for (int d = 0; d <= 6; ++d)
      for (int k = 0; k <= std::min(2, d); ++k) {
        if (p == 5 && d == 6 && k == 2) continue;  // 508431 subspaces; covered below at smaller d
        const PrimeField F(p);
        std::set<Subspace> seen;
        std::uint64_t count = 0;
        for_each_subspace(F, d, k, [&](const Subspace& s) {
          CHECK(s.dim() == k);
          seen.insert(s);
          ++count;
        });
        CAPTURE(p);
        CAPTURE(d);
        CAPTURE(k);
        CHECK(count == gaussian_binomial(d, k, p));
        CHECK(seen.size() == count);
      }
}

TEST_CASE("counts match direct enumeration with deduplication") {
  SUBCASE("lines of GF(3)^6") {
    const PrimeField F(3);
    std::set<std::vector<std::uint64_t>> lines;
    for (std::uint64_t i = 1; i < 729; ++i) lines.insert(span_set(F, {vector_from_index(F, 6, i)}, 6));
    CHECK(lines.size() == 364);
    CHECK(enumerate_subspaces(F, 6, 1).size() == 364);
  }
  SUBCASE("planes of GF(2)^6") {
    const PrimeField F(2);
    std::set<std::vector<std::uint64_t>> planes;
    for (std::uint64_t i = 1; i < 64; ++i)
      for (std::uint64_t j = i + 1; j < 64; ++j) {
        auto s = span_set(F, {vector_from_index(F, 6, i), vector_from_index(F, 6, j)}, 6);
        if (s.size() == 4) planes.insert(s);
      }
    CHECK(planes.size() == 651);
    std::set<std::vector<std::uint64_t>> enumerated;
    for (const Subspace& s : enumerate_subspaces(F, 6, 2))
      enumerated.insert(span_set(F, {s.basis_vector(0), s.basis_vector(1)}, 6));
    CHECK(enumerated == planes);
  }
  SUBCASE("planes of GF(3)^4") {
    const PrimeField F(3);
    std::set<std::vector<std::uint64_t>> planes;
    for (std::uint64_t i = 1; i < 81; ++i)
      for (std::uint64_t j = i + 1; j < 81; ++j) {
        auto s = span_set(F, {vector_from_index(F, 4, i), vector_from_index(F, 4, j)}, 4);
        if (s.size() == 9) planes.insert(s);
      }
    CHECK(planes.size() == 130);
  }
}

TEST_CASE("enumeration order is reproducible") {
  const PrimeField F(3);
  const auto a = enumerate_subspaces(F, 4, 2);
  const auto b = enumerate_subspaces(F, 4, 2);
  CHECK(a == b);
  CHECK(a.front().pivots() == std::vector<int>{0, 1});
}

TEST_CASE("subspace canonical form does not depend on the basis") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const int p = std::array<int, 3>{2, 3, 5}[trial % 3];
    const PrimeField F(p);
    const int d = 3 + trial % 4;
    const int k = 1 + trial % 3;
    Mat gens(k, d);
    for (int r = 0; r < k; ++r) gens.row(r) = random_vector(F, d, rng).transpose();
    const Subspace s(F, d, gens);
    // A second basis: random invertible combination of the rows, plus a
    // redundant row.
    const Mat c = random_invertible(F, k, rng);
    Mat other(k + 1, d);
    other.topRows(k) = F.reduced(Mat(c * gens));
    other.row(k) = F.reduced(Vec(gens.row(0).transpose() * 2 + gens.row(k - 1).transpose())).transpose();
    CHECK(Subspace(F, d, other) == s);
    CHECK(Subspace(F, d, other).hash() == s.hash());
  }
}

TEST_CASE("subspace membership, image and text syntax") {
  const PrimeField F(3);
  const Subspace s = parse_subspace_spec(F, "1,0,0,0,0,1;0,1,0,0,2,0", 6);
  CHECK(s.dim() == 2);
  CHECK(s.to_spec() == "1,0,0,0,0,1;0,1,0,0,2,0");
  Vec v(6);
  v << 2, 1, 0, 0, 2, 2;
  CHECK(s.contains(v));
  CHECK(parse_subspace_spec(F, "", 6).dim() == 0);
  CHECK_THROWS_AS(parse_subspace_spec(F, "1,0", 6), std::invalid_argument);
  CHECK_THROWS_AS(parse_subspace_spec(F, "1,x,0,0,0,0", 6), std::invalid_argument);
  CHECK(s.image(Mat::Identity(6, 6)) == s);
  CHECK(Subspace::full(F, 3).contains(s.image(Mat::Zero(3, 6))));
}

TEST_CASE("GL(n, p) sweep visits |GL(n, p)| matrices") {
  CHECK(for_each_invertible(PrimeField(2), 3, [](const Mat&) { return true; }) == 168);
  CHECK(for_each_invertible(PrimeField(3), 2, [](const Mat&) { return true; }) == 48);
  CHECK(for_each_invertible(PrimeField(2), 4, [](const Mat&) { return true; }) == 20160);
  std::uint64_t seen = 0;
  for_each_invertible(PrimeField(2), 4, [&](const Mat& m) {
    CHECK(is_invertible(PrimeField(2), m));
    return ++seen < 10;
  });
  CHECK(seen == 10);
}

TEST_CASE("exterior square") {
  const PrimeField F(3);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Mat a = random_invertible(F, 4, rng), b = random_invertible(F, 4, rng);
    // Functoriality: Lambda^2(ab) = Lambda^2(a) Lambda^2(b).
    CHECK(exterior_square(F, F.reduced(Mat(a * b))) ==
          F.reduced(Mat(exterior_square(F, a) * exterior_square(F, b))));
    const Vec x = random_vector(F, 4, rng), y = random_vector(F, 4, rng);
    CHECK(wedge(F, x, y) == F.reduced(Vec(-wedge(F, y, x))));
    CHECK(wedge(F, x, x).isZero());
  }
  CHECK(pair_index(4, 0, 1) == 0);
  CHECK(pair_index(4, 1, 2) == 3);
  CHECK(pair_index(4, 2, 3) == 5);
}
