#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "pgroup/types.hpp"

namespace pgroup {

/// GF(p) with residues stored canonically in [0, p).
class PrimeField {
 public:
  /// Throws std::invalid_argument unless p is a prime below 2^15.
  explicit PrimeField(int p);

  int p() const noexcept { return p_; }

  int reduce(long long v) const noexcept {
    long long r = v % p_;
    return static_cast<int>(r < 0 ? r + p_ : r);
  }
  int add(int a, int b) const noexcept { return reduce(a + b); }
  int sub(int a, int b) const noexcept { return reduce(a - b); }
  int neg(int a) const noexcept { return reduce(-a); }
  int mul(int a, int b) const noexcept { return reduce(static_cast<long long>(a) * b); }
  /// Throws std::domain_error on zero.
  int inv(int a) const;
  int div(int a, int b) const { return mul(a, inv(b)); }
  int pow(int a, std::uint64_t e) const noexcept;

  /// Entrywise reduction of an integer Eigen expression into canonical residues.
  template <typename Derived>
  typename Derived::PlainObject reduced(const Eigen::MatrixBase<Derived>& m) const {
    const int p = p_;
    return m.unaryExpr([p](int v) { return ((v % p) + p) % p; });
  }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  int p_;
};

bool is_prime(long long n) noexcept;

/// Euler's criterion. p = 2 is rejected (every element is a square there).
bool is_square(const PrimeField& field, int x);

/// Least positive quadratic non-residue mod p, p odd.
int smallest_nonsquare(const PrimeField& field);

/// Exhaustive search for some y with y*y == x; -1 when none exists.
int sqrt_by_search(const PrimeField& field, int x);

/// Polynomials over GF(p) as coefficient lists, lowest degree first.
using Poly = std::vector<int>;

bool is_irreducible(const PrimeField& field, std::span<const int> poly);

/// Built-in modulus for GF(p^m): the smallest monic irreducible of degree m
/// in the order that reads coefficients as base-p digits, constant term least
/// significant. Tabulated for p^m <= 3^6, searched otherwise.
Poly default_modulus(const PrimeField& field, int m);

/// GF(p^m) as GF(p)[x]/(modulus). Elements are coefficient vectors of length m.
class ExtField {
 public:
  using Element = Vec;

  ExtField(PrimeField base, int m);
  /// Throws std::invalid_argument if the modulus is not monic irreducible.
  ExtField(PrimeField base, Poly modulus);

  const PrimeField& base() const noexcept { return base_; }
  int degree() const noexcept { return m_; }
  const Poly& modulus() const noexcept { return modulus_; }
  std::uint64_t order() const noexcept { return order_; }

  Element zero() const { return Element::Zero(m_); }
  Element one() const;
  /// x^k reduced; the basis element x^k for k < m.
  Element monomial(int k) const;
  /// Enumeration index <-> element, base-p digits with x^0 least significant.
  Element element(std::uint64_t index) const;
  std::uint64_t index(const Element& e) const;

  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element mul(const Element& a, const Element& b) const;
  /// Throws std::domain_error on zero.
  Element inv(const Element& a) const;
  Element pow(const Element& a, std::uint64_t e) const;

 private:
  PrimeField base_;
  int m_;
  Poly modulus_;
  std::uint64_t order_;
};

}  // namespace pgroup
