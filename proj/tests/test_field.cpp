#include <doctest.h>

#include <set>

#include "pgroup/field.hpp"

using namespace pgroup;

TEST_CASE("prime field arithmetic") {
  const PrimeField f3(3), f5(5);
  CHECK(f3.inv(2) == 2);
  CHECK(f5.add(3, 4) == 2);
  CHECK(f5.sub(1, 3) == 3);
  CHECK(f5.neg(0) == 0);
  CHECK(f5.mul(4, 4) == 1);
  CHECK(f5.div(1, 2) == 3);
  CHECK(f5.pow(2, 4) == 1);
  CHECK(f5.reduce(-7) == 3);
  CHECK_THROWS_AS(f5.inv(0), std::domain_error);
  CHECK_THROWS_AS(PrimeField(4), std::invalid_argument);
  CHECK_THROWS_AS(PrimeField(1), std::invalid_argument);
}

TEST_CASE("inverse table is complete for small primes") {
  for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23}) {
    const PrimeField F(p);
    for (int x = 1; x < p; ++x) CHECK(F.mul(x, F.inv(x)) == 1);
  }
}

TEST_CASE("quadratic residues") {
  CHECK_FALSE(is_square(PrimeField(3), 2));
  CHECK(is_square(PrimeField(5), 4));
  CHECK_FALSE(is_square(PrimeField(7), 3));
  CHECK_THROWS_AS(is_square(PrimeField(2), 1), std::domain_error);

  CHECK(smallest_nonsquare(PrimeField(3)) == 2);
  CHECK(smallest_nonsquare(PrimeField(5)) == 2);
  CHECK(smallest_nonsquare(PrimeField(7)) == 3);
  CHECK_THROWS_AS(smallest_nonsquare(PrimeField(2)), std::domain_error);
}

TEST_CASE("Euler criterion agrees with squaring every element") {
  for (int p : {3, 5, 7, 11, 13, 17, 19, 23}) {
    const PrimeField F(p);
    std::set<int> squares;
    for (int y = 0; y < p; ++y) squares.insert(y * y % p);
    for (int x = 0; x < p; ++x) {
      CAPTURE(p);
      CAPTURE(x);
      CHECK(is_square(F, x) == (squares.count(x) > 0));
      const int r = sqrt_by_search(F, x);
      if (squares.count(x))
        CHECK(F.mul(r, r) == x);
      else
        CHECK(r == -1);
    }
  }
}

TEST_CASE("GF(8) with x^3 + x + 1") {
  const ExtField K(PrimeField(2), Poly{1, 1, 0, 1});
  const Vec x = K.monomial(1);
  const Vec x2 = K.monomial(2);
  Vec expected(3);
  expected << 1, 1, 0;  // x + 1
  CHECK(K.mul(x, x2) == expected);
  CHECK(K.order() == 8);
}

TEST_CASE("irreducibility") {
  const PrimeField F2(2), F3(3);
  const Poly reducible{1, 0, 1};  // (x + 1)^2 over GF(2)
  CHECK_FALSE(is_irreducible(F2, reducible));
  CHECK_THROWS_AS(ExtField(F2, reducible), std::invalid_argument);
  // x^4 + x^2 + 1 = (x^2 + x + 1)^2 over GF(2): no roots but reducible.
  CHECK_FALSE(is_irreducible(F2, Poly{1, 0, 1, 0, 1}));
  CHECK(is_irreducible(F3, Poly{1, 0, 1}));
  CHECK_THROWS_AS(ExtField(F3, Poly{1, 0, 2}), std::invalid_argument);  // not monic
}

TEST_CASE("every nonzero element of GF(p^m) is invertible, p^m <= 343") {
  for (int p : {2, 3, 5, 7})
    for (int m = 1; m <= 8; ++m) {
      std::uint64_t order = 1;
      for (int k = 0; k < m; ++k) order *= static_cast<std::uint64_t>(p);
      if (order > 343) break;
      const ExtField K(PrimeField(p), m);
      CAPTURE(p);
      CAPTURE(m);
      CHECK(is_irreducible(PrimeField(p), K.modulus()));
      std::set<std::uint64_t> seen;
      for (std::uint64_t i = 1; i < order; ++i) {
        const Vec a = K.element(i);
        CHECK(K.index(a) == i);
        CHECK(K.mul(a, K.inv(a)) == K.one());
        seen.insert(K.index(K.inv(a)));
      }
      CHECK(seen.size() == order - 1);
      CHECK_THROWS_AS(K.inv(K.zero()), std::domain_error);
    }
}

TEST_CASE("extension field axioms on samples") {
  const ExtField K(PrimeField(3), 3);
  for (std::uint64_t a = 0; a < 27; a += 5)
    for (std::uint64_t b = 0; b < 27; b += 4)
      for (std::uint64_t c = 0; c < 27; c += 7) {
        const Vec x = K.element(a), y = K.element(b), z = K.element(c);
        CHECK(K.mul(x, K.add(y, z)) == K.add(K.mul(x, y), K.mul(x, z)));
        CHECK(K.mul(K.mul(x, y), z) == K.mul(x, K.mul(y, z)));
        CHECK(K.mul(x, y) == K.mul(y, x));
      }
  CHECK(K.pow(K.monomial(1), 26) == K.one());
}
