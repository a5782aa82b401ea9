#include "pgroup/canonicalize.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "pgroup/io.hpp"

namespace pgroup {

namespace {

// Tracks the accumulated base change. Substitutions are given as matrices
// whose columns are the new generators in the current ones; the subspace is
// always recomputed from the input rather than updated in place.
class Reduction {
 public:
  Reduction(const PrimeField& F, int n, const Subspace& input)
      : F_(F), n_(n), input_(input), phi_(Mat::Identity(n, n)) {}

  const Mat& phi() const { return phi_; }

  Mat theta() const { return inverse(F_, exterior_square(F_, phi_)); }
  Subspace current() const { return input_.image(theta()); }

  void substitute(const Mat& psi) { phi_ = F_.reduced(Mat(phi_ * psi)); }
  /// Substitution given by the old generators written in the new ones.
  void substitute_inverse(const Mat& q) { substitute(inverse(F_, q)); }

  Vec original(const Vec& x) const { return F_.reduced(Vec(phi_ * x)); }

  CanonResult accept(const Subspace& canonical, int m, std::string reason) const {
    const Subspace now = current();
    if (!(now == canonical)) throw std::logic_error("reduction did not reach the normal form: " + reason);
    return {CanonStatus::Canonical, input_, canonical, phi_, theta(), std::nullopt, m, std::move(reason)};
  }

  /// x, y in current coordinates.
  CanonResult reject(const Vec& x, const Vec& y, std::string reason) const {
    return {CanonStatus::Rejected, input_, std::nullopt, phi_, theta(),
            std::make_pair(original(x), original(y)), 1, std::move(reason)};
  }

 private:
  PrimeField F_;
  int n_;
  Subspace input_;
  Mat phi_;
};

Vec unit(int n, int i) { return Vec::Unit(n, i); }

Mat swap_matrix(int n, int i, int j) {
  Mat s = Mat::Identity(n, n);
  if (i != j) {
    s(i, i) = s(j, j) = 0;
    s(i, j) = s(j, i) = 1;
  }
  return s;
}

// A pair of vectors spanning the row space of a rank-2 alternating matrix.
std::pair<Vec, Vec> factor_decomposable(const PrimeField& F, const Vec& bivector, int n) {
  const Echelon e = rref(F, bivector_matrix(F, bivector, n));
  if (e.rows.rows() != 2) throw std::logic_error("bivector is not decomposable");
  return {e.rows.row(0).transpose(), e.rows.row(1).transpose()};
}

std::optional<Vec> find_decomposable(const Subspace& K, int n) {
  const std::uint64_t count = checked_pow(K.field().p(), K.dim());
  for (std::uint64_t idx = 1; idx < count; ++idx) {
    const Vec v = K.vector_at(idx);
    if (is_decomposable(K.field(), v, n)) return v;
  }
  return std::nullopt;
}

void require_full(const AlternatingMap& B, const Subspace& K, int dim) {
  if (!is_full_lambda2(B)) throw std::invalid_argument("canonicalization needs the full exterior-square map");
  if (!(K.field() == B.field()) || K.ambient_dim() != B.dim_w())
    throw std::invalid_argument("subspace does not live in W");
  if (K.dim() != dim) throw std::invalid_argument("expected a subspace of dimension " + std::to_string(dim));
}

int coeff(const Vec& v, int n, int i, int j) { return v(pair_index(n, i, j)); }

constexpr int A = 0, Bg = 1, C = 2, D = 3;

}  // namespace

bool is_decomposable(const PrimeField& F, const Vec& bivector, int n) {
  return rank(F, bivector_matrix(F, bivector, n)) == 2;
}

Subspace canonical_line(const PrimeField& F, int n, int m) {
  if (m < 1 || 2 * m > n) throw std::invalid_argument("need 1 <= m <= n/2");
  Vec v = Vec::Zero(pair_count(n));
  for (int s = 0; s < m; ++s) v(pair_index(n, 2 * s, 2 * s + 1)) = 1;
  return Subspace::span_of(F, {v}, pair_count(n));
}

Subspace canonical_plane(const PrimeField& F) {
  Vec v1 = Vec::Zero(6), v2 = Vec::Zero(6);
  v1(pair_index(4, A, Bg)) = 1;
  v1(pair_index(4, C, D)) = 1;
  v2(pair_index(4, A, C)) = 1;
  if (F.p() == 2) {
    v2(pair_index(4, Bg, D)) = 1;
    v2(pair_index(4, C, D)) = 1;
  } else {
    v2(pair_index(4, Bg, D)) = smallest_nonsquare(F);
  }
  return Subspace::span_of(F, {v1, v2}, 6);
}

CanonResult canon_line(const AlternatingMap& B, const Subspace& M) {
  const int n = B.dim_v();
  if (n < 4) throw std::invalid_argument("line reduction needs n >= 4");
  require_full(B, M, 1);
  const PrimeField& F = B.field();
  Reduction red(F, n, M);

  int t = 0;
  for (;; ++t) {
    Vec mu = red.current().basis_vector(0);
    int pi = -1, pj = -1;
    for (int i = 2 * t; i < n && pi < 0; ++i)
      for (int j = i + 1; j < n; ++j)
        if (coeff(mu, n, i, j) != 0) {
          pi = i;
          pj = j;
          break;
        }
    if (pi < 0) break;

    red.substitute(swap_matrix(n, 2 * t, pi));
    red.substitute(swap_matrix(n, 2 * t + 1, pj));

    mu = red.current().basis_vector(0);
    Mat scale = Mat::Identity(n, n);
    scale(2 * t + 1, 2 * t + 1) = coeff(mu, n, 2 * t, 2 * t + 1);
    red.substitute(scale);

    mu = red.current().basis_vector(0);
    const int lead = coeff(mu, n, 2 * t, 2 * t + 1);
    Mat row_a = Mat::Identity(n, n);
    for (int j = 2 * t + 2; j < n; ++j) row_a(j, 2 * t + 1) = F.div(coeff(mu, n, 2 * t, j), lead);
    red.substitute(row_a);

    mu = red.current().basis_vector(0);
    Mat row_b = Mat::Identity(n, n);
    for (int j = 2 * t + 2; j < n; ++j)
      row_b(j, 2 * t) = F.neg(F.div(coeff(mu, n, 2 * t + 1, j), coeff(mu, n, 2 * t, 2 * t + 1)));
    red.substitute(row_b);
  }

  if (t == 1)
    return red.reject(unit(n, 0), unit(n, 1),
                      "the line is spanned by a decomposable bivector; the two generators commute");
  return red.accept(canonical_line(F, n, t), t, "reduced to " + std::to_string(t) + " hyperbolic blocks");
}

CanonResult canon_plane_two(const AlternatingMap& B, const Subspace& N) {
  if (B.field().p() != 2) throw std::invalid_argument("this reduction is for p = 2");
  return canon_plane_odd(B, N);
}

CanonResult canon_plane_odd(const AlternatingMap& B, const Subspace& N) {
  if (B.dim_v() != 4) throw std::invalid_argument("plane reduction needs n = 4");
  require_full(B, N, 2);
  const PrimeField& F = B.field();
  const int p = F.p();
  constexpr int n = 4;
  Reduction red(F, n, N);

  auto ab = [](const Vec& v) { return v(pair_index(n, A, Bg)); };
  auto ac = [](const Vec& v) { return v(pair_index(n, A, C)); };
  auto ad = [](const Vec& v) { return v(pair_index(n, A, D)); };
  auto bc = [](const Vec& v) { return v(pair_index(n, Bg, C)); };
  auto bd = [](const Vec& v) { return v(pair_index(n, Bg, D)); };
  auto cd = [](const Vec& v) { return v(pair_index(n, C, D)); };

  if (N.contains(unit(6, pair_index(n, C, D))))
    return red.reject(unit(n, C), unit(n, D), "[c,d] lies in the subspace; c and d commute");

  // Bring the subspace to echelon pivots {ab, ac}.
  {
    std::array<int, 4> perm{0, 1, 2, 3};
    bool found = false;
    do {
      Mat psi = Mat::Zero(n, n);
      for (int k = 0; k < n; ++k) psi(perm[k], k) = 1;
      Reduction trial = red;
      trial.substitute(psi);
      if (trial.current().pivots() == std::vector<int>{0, 1}) {
        red = trial;
        found = true;
        break;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (!found) {
      const auto omega = find_decomposable(N, n);
      if (!omega) throw std::logic_error("no generator ordering gives pivots {ab, ac}");
      auto [x, y] = factor_decomposable(F, *omega, n);
      return red.reject(x, y, "the subspace holds a decomposable bivector");
    }
  }

  // Clear the ad-coordinates: b -> b + i1 d, c -> c + j1 d.
  {
    const Subspace cur = red.current();
    Mat psi = Mat::Identity(n, n);
    psi(D, Bg) = ad(cur.basis_vector(0));
    psi(D, C) = ad(cur.basis_vector(1));
    red.substitute(psi);
  }
  // v1 = ab + i1 bc + i2 bd + i3 cd: a -> a - i1 c - i2 d.
  {
    const Vec v1 = red.current().basis_vector(0);
    Mat psi = Mat::Identity(n, n);
    psi(C, A) = F.neg(bc(v1));
    psi(D, A) = F.neg(bd(v1));
    red.substitute(psi);
  }
  // v1 = ab + i cd.
  {
    const Vec v1 = red.current().basis_vector(0);
    if (cd(v1) == 0) return red.reject(unit(n, A), unit(n, Bg), "[a,b] lies in the subspace; a and b commute");
    Mat psi = Mat::Identity(n, n);
    psi(D, D) = cd(v1);
    red.substitute(psi);
  }
  // v2 = ac + j1 bc + j2 bd + j3 cd.
  {
    const Vec v2 = red.current().basis_vector(1);
    const int j1 = bc(v2), j2 = bd(v2), j3 = cd(v2);
    if (j2 == 0) {
      Vec x = unit(n, A);
      x(Bg) = j1;
      x(D) = F.neg(j3);
      return red.reject(x, unit(n, C), "ab^j1 d^-j3 commutes with c");
    }
    Mat psi = Mat::Identity(n, n);
    psi(C, D) = F.div(j1, j2);
    red.substitute(psi);
  }

  // <ab + cd, ac + i1 bd + i2 cd>.
  const Subspace cur = red.current();
  const Vec v1 = cur.basis_vector(0);
  const Vec v2 = cur.basis_vector(1);
  if (ab(v1) != 1 || cd(v1) != 1 || ac(v2) != 1 || bc(v2) != 0 || ab(v2) != 0)
    throw std::logic_error("unexpected intermediate form");
  const int i1 = bd(v2), i2 = cd(v2);

  if (p == 2) {
    if (i1 == 0) {
      Vec y = unit(n, A);
      y(D) = F.neg(i2);
      return red.reject(unit(n, C), y, "i1 = 0: c commutes with a d^-i2");
    }
    if (i2 == 0) {
      Vec x = unit(n, A), y = unit(n, Bg);
      x(D) = F.neg(1);
      y(C) = 1;
      return red.reject(x, y, "i2 = 0: a d^-1 commutes with b c");
    }
    return red.accept(canonical_plane(F), 0, "i1 = i2 = 1");
  }

  const int disc = F.add(F.mul(i2, i2), F.mul(4, i1));
  if (disc == 0 || is_square(F, disc)) {
    // k^2 + i2 k - i1 = 0 makes k v1 + v2 decomposable.
    for (int k = 0; k < p; ++k)
      if (F.sub(F.add(F.mul(k, k), F.mul(i2, k)), i1) == 0) {
        const Vec omega = F.reduced(Vec(k * v1 + v2));
        auto [x, y] = factor_decomposable(F, omega, n);
        return red.reject(x, y, "i2^2 + 4 i1 is a square modulo p");
      }
    throw std::logic_error("square discriminant without a root");
  }

  const int r = smallest_nonsquare(F);
  if (i2 != 0) {
    // a = l a' + t d', c = t b' + l c' with t = i2/2, l^2 = (i2^2 + 4 i1)/(4r).
    const int l = sqrt_by_search(F, F.div(disc, F.mul(4, r)));
    const int t = F.div(i2, 2);
    Mat q = Mat::Identity(n, n);
    q(A, A) = l;
    q(D, A) = t;
    q(Bg, C) = t;
    q(C, C) = l;
    red.substitute_inverse(q);
    return red.accept(canonical_plane(F), 0, "i2 != 0, scaled by l^2 = (i2^2 + 4 i1)/(4r)");
  }
  if (i1 != r) {
    // c = l^-1 c', d = l d' with l^2 = r / i1.
    const int l = sqrt_by_search(F, F.div(r, i1));
    Mat q = Mat::Identity(n, n);
    q(C, C) = F.inv(l);
    q(D, D) = l;
    red.substitute_inverse(q);
  }
  return red.accept(canonical_plane(F), 0, "i2 = 0, scaled by l^2 = r / i1");
}

CanonResult canonicalize(const AlternatingMap& B, const Subspace& K) {
  if (K.dim() == 1) return canon_line(B, K);
  if (K.dim() == 2 && B.dim_v() == 4) return canon_plane_odd(B, K);
  throw std::invalid_argument("only lines, and planes for n = 4, have normal forms here");
}

bool verify_canon_result(const CanonResult& r, std::string* problem) {
  auto fail = [&](const std::string& why) {
    if (problem) *problem = why;
    return false;
  };
  const PrimeField& F = r.input.field();
  const int dim_w = r.input.ambient_dim();
  int n = 0;
  while (pair_count(n) < dim_w) ++n;
  if (pair_count(n) != dim_w) return fail("ambient dimension is not n(n-1)/2");

  if (r.accepted()) {
    if (!r.canonical) return fail("missing canonical subspace");
    Mat theta_inv;
    if (!try_inverse(F, r.transform, theta_inv)) return fail("transform is singular");
    if (r.theta != inverse(F, exterior_square(F, r.transform)))
      return fail("theta is not induced by the transform");
    if (!(r.input.image(r.theta) == *r.canonical)) return fail("theta does not map the input to the normal form");
    const Subspace expected = r.input.dim() == 1 ? canonical_line(F, n, r.m_value) : canonical_plane(F);
    if (!(*r.canonical == expected)) return fail("reported subspace is not the normal form");
    return true;
  }
  if (!r.witness) return fail("rejection without witness");
  const auto& [x, y] = *r.witness;
  Mat xy(2, n);
  xy.row(0) = x.transpose();
  xy.row(1) = y.transpose();
  if (rank(F, xy) != 2) return fail("witness vectors are dependent");
  const Vec w = wedge(F, x, y);
  if (w.isZero()) return fail("witness commutes trivially");
  if (!r.input.contains(w)) return fail("x ^ y is not in the subspace");
  return true;
}

std::string format_canon_report(const CanonResult& r) {
  std::ostringstream os;
  os << "status " << (r.accepted() ? "canonical" : "rejected") << '\n';
  os << "input " << r.input.to_spec() << '\n';
  if (r.canonical) os << "canonical " << r.canonical->to_spec() << '\n';
  if (r.input.dim() == 1) os << "m " << r.m_value << '\n';
  os << "reason " << r.reason << '\n';
  if (r.accepted()) {
    os << "transform\n" << format_matrix(r.transform);
    os << "theta\n" << format_matrix(r.theta);
  }
  if (r.witness) {
    os << "witness_x " << format_vector(r.witness->first) << '\n';
    os << "witness_y " << format_vector(r.witness->second) << '\n';
  }
  return os.str();
}

}  // namespace pgroup
