#include "pgroup/field.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

namespace pgroup {

namespace {

constexpr std::uint64_t kMaxExtOrder = 59049;  // 3^10

struct ModulusEntry {
  int p;
  int m;
  std::array<int, 10> coeffs;  // m + 1 significant entries, constant term first
};

// Smallest monic irreducible per (p, m) with p^m <= 729, m >= 2.
constexpr ModulusEntry kModulusTable[] = {
    {2, 2, {1, 1, 1}},
    {2, 3, {1, 1, 0, 1}},
    {2, 4, {1, 1, 0, 0, 1}},
    {2, 5, {1, 0, 1, 0, 0, 1}},
    {2, 6, {1, 1, 0, 0, 0, 0, 1}},
    {2, 7, {1, 1, 0, 0, 0, 0, 0, 1}},
    {2, 8, {1, 1, 0, 1, 1, 0, 0, 0, 1}},
    {2, 9, {1, 1, 0, 0, 0, 0, 0, 0, 0, 1}},
    {3, 2, {1, 0, 1}},
    {3, 3, {1, 2, 0, 1}},
    {3, 4, {2, 1, 0, 0, 1}},
    {3, 5, {1, 2, 0, 0, 0, 1}},
    {3, 6, {2, 1, 0, 0, 0, 0, 1}},
    {5, 2, {2, 0, 1}},
    {5, 3, {1, 1, 0, 1}},
    {5, 4, {2, 0, 0, 0, 1}},
    {7, 2, {1, 0, 1}},
    {7, 3, {2, 0, 0, 1}},
    {11, 2, {1, 0, 1}},
    {13, 2, {2, 0, 1}},
    {17, 2, {3, 0, 1}},
    {19, 2, {1, 0, 1}},
    {23, 2, {1, 0, 1}},
};

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

// Remainder of a modulo a nonzero b.
Poly poly_mod(const PrimeField& F, Poly a, const Poly& b) {
  trim(a);
  const int db = degree(b);
  const int lead_inv = F.inv(b.back());
  while (degree(a) >= db) {
    const int shift = degree(a) - db;
    const int c = F.mul(a.back(), lead_inv);
    for (int i = 0; i <= db; ++i) a[shift + i] = F.sub(a[shift + i], F.mul(c, b[i]));
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const PrimeField& F, const Poly& a, const Poly& b, const Poly& f) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  return poly_mod(F, std::move(r), f);
}

Poly poly_gcd(const PrimeField& F, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// x^(p^k) mod f, by k successive p-th powers.
Poly frobenius_power(const PrimeField& F, const Poly& f, int k) {
  Poly x = poly_mod(F, Poly{0, 1}, f);
  for (int step = 0; step < k; ++step) {
    Poly result{1};
    Poly base = x;
    for (int e = F.p(); e > 0; e >>= 1) {
      if (e & 1) result = poly_mulmod(F, result, base, f);
      base = poly_mulmod(F, base, base, f);
    }
    x = std::move(result);
  }
  return x;
}

int eval(const PrimeField& F, std::span<const int> poly, int x) {
  int acc = 0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = F.add(F.mul(acc, x), *it);
  return acc;
}

std::uint64_t checked_order(int p, int m) {
  std::uint64_t q = 1;
  for (int i = 0; i < m; ++i) {
    q *= static_cast<std::uint64_t>(p);
    if (q > kMaxExtOrder)
      throw std::invalid_argument("extension field order exceeds 3^10: p=" + std::to_string(p) +
                                  " m=" + std::to_string(m));
  }
  return q;
}

}  // namespace

bool is_prime(long long n) noexcept {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(int p) : p_(p) {
  if (p >= (1 << 15) || !is_prime(p))
    throw std::invalid_argument("not a supported prime: " + std::to_string(p));
}

int PrimeField::inv(int a) const {
  a = reduce(a);
  if (a == 0) throw std::domain_error("inverse of zero in GF(" + std::to_string(p_) + ")");
  return pow(a, static_cast<std::uint64_t>(p_ - 2));
}

int PrimeField::pow(int a, std::uint64_t e) const noexcept {
  long long base = reduce(a);
  long long result = 1 % p_;
  while (e > 0) {
    if (e & 1) result = result * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return static_cast<int>(result);
}

bool is_square(const PrimeField& field, int x) {
  if (field.p() == 2) throw std::domain_error("is_square is unsupported for p = 2");
  x = field.reduce(x);
  if (x == 0) return true;
  return field.pow(x, static_cast<std::uint64_t>((field.p() - 1) / 2)) == 1;
}

int smallest_nonsquare(const PrimeField& field) {
  if (field.p() == 2) throw std::domain_error("smallest_nonsquare is unsupported for p = 2");
  for (int x = 2; x < field.p(); ++x)
    if (!is_square(field, x)) return x;
  throw std::logic_error("no quadratic non-residue found");
}

int sqrt_by_search(const PrimeField& field, int x) {
  x = field.reduce(x);
  for (int y = 0; y < field.p(); ++y)
    if (field.mul(y, y) == x) return y;
  return -1;
}

bool is_irreducible(const PrimeField& F, std::span<const int> poly) {
  Poly f(poly.begin(), poly.end());
  for (int& c : f) c = F.reduce(c);
  trim(f);
  const int m = degree(f);
  if (m < 1) return false;
  if (m == 1) return true;
  if (m <= 3) {
    for (int x = 0; x < F.p(); ++x)
      if (eval(F, f, x) == 0) return false;
    return true;
  }
  // Ben-Or: f has no factor of degree k iff gcd(f, x^(p^k) - x) = 1.
  for (int k = 1; k <= m / 2; ++k) {
    Poly g = frobenius_power(F, f, k);
    if (g.size() < 2) g.resize(2, 0);
    g[1] = F.sub(g[1], 1);
    trim(g);
    if (g.empty()) return false;
    if (degree(poly_gcd(F, f, g)) > 0) return false;
  }
  return true;
}

Poly default_modulus(const PrimeField& field, int m) {
  if (m < 1) throw std::invalid_argument("extension degree must be >= 1");
  if (m == 1) return {0, 1};
  for (const auto& e : kModulusTable)
    if (e.p == field.p() && e.m == m) return Poly(e.coeffs.begin(), e.coeffs.begin() + m + 1);
  const std::uint64_t q = checked_order(field.p(), m);
  for (std::uint64_t n = 0; n < q; ++n) {
    Poly f(m + 1, 0);
    std::uint64_t rest = n;
    for (int i = 0; i < m; ++i) {
      f[i] = static_cast<int>(rest % field.p());
      rest /= field.p();
    }
    f[m] = 1;
    if (is_irreducible(field, f)) return f;
  }
  throw std::logic_error("no irreducible polynomial found");
}

ExtField::ExtField(PrimeField base, int m) : ExtField(base, default_modulus(base, m)) {}

ExtField::ExtField(PrimeField base, Poly modulus)
    : base_(base), m_(static_cast<int>(modulus.size()) - 1), modulus_(std::move(modulus)) {
  if (m_ < 1 || m_ > kMaxDim) throw std::invalid_argument("bad extension degree");
  for (int& c : modulus_) c = base_.reduce(c);
  if (modulus_.back() != 1) throw std::invalid_argument("modulus must be monic");
  if (!is_irreducible(base_, modulus_)) throw std::invalid_argument("modulus is reducible");
  order_ = checked_order(base_.p(), m_);
}

ExtField::Element ExtField::one() const { return monomial(0); }

ExtField::Element ExtField::monomial(int k) const {
  Element x = zero();
  if (k < m_) {
    x(k) = 1;
    return x;
  }
  x(0) = 1;
  Element xpow = zero();
  if (m_ > 1) {
    xpow(1) = 1;
  } else {
    xpow(0) = base_.neg(modulus_[0]);
  }
  for (int i = 0; i < k; ++i) x = mul(x, xpow);
  return x;
}

ExtField::Element ExtField::element(std::uint64_t index) const {
  Element e = zero();
  for (int i = 0; i < m_; ++i) {
    e(i) = static_cast<int>(index % base_.p());
    index /= base_.p();
  }
  return e;
}

std::uint64_t ExtField::index(const Element& e) const {
  std::uint64_t idx = 0;
  for (int i = m_ - 1; i >= 0; --i) idx = idx * base_.p() + base_.reduce(e(i));
  return idx;
}

ExtField::Element ExtField::add(const Element& a, const Element& b) const {
  return base_.reduced(a + b);
}

ExtField::Element ExtField::sub(const Element& a, const Element& b) const {
  return base_.reduced(a - b);
}

ExtField::Element ExtField::mul(const Element& a, const Element& b) const {
  std::vector<long long> prod(2 * m_ - 1, 0);
  for (int i = 0; i < m_; ++i) {
    if (a(i) == 0) continue;
    for (int j = 0; j < m_; ++j) prod[i + j] += static_cast<long long>(a(i)) * b(j);
  }
  for (auto& c : prod) c = base_.reduce(c);
  // Reduce by the monic modulus from the top down.
  for (int k = 2 * m_ - 2; k >= m_; --k) {
    const long long c = prod[k];
    if (c == 0) continue;
    for (int t = 0; t < m_; ++t) prod[k - m_ + t] = base_.reduce(prod[k - m_ + t] - c * modulus_[t]);
    prod[k] = 0;
  }
  Element r(m_);
  for (int i = 0; i < m_; ++i) r(i) = static_cast<int>(prod[i]);
  return r;
}

ExtField::Element ExtField::pow(const Element& a, std::uint64_t e) const {
  Element result = one();
  Element base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

ExtField::Element ExtField::inv(const Element& a) const {
  if ((a.array() == 0).all()) throw std::domain_error("inverse of zero in extension field");
  return pow(a, order_ - 2);
}

}  // namespace pgroup
