#include <doctest.h>

#include <random>

#include "pgroup/canonicalize.hpp"
#include "pgroup/isoclinism.hpp"

using namespace pgroup;

namespace {

// B2(u, v) = theta B1(phi^-1 u, phi^-1 v), so (phi, theta) is an isoclinism B1 -> B2.
AlternatingMap transport(const AlternatingMap& B1, const Mat& phi, const Mat& theta) {
  const PrimeField& F = B1.field();
  const int n = B1.dim_v();
  const Mat psi = inverse(F, phi);
  Mat pairs(pair_count(n), B1.dim_w());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      pairs.row(pair_index(n, i, j)) =
          F.reduced(Vec(theta * B1(Vec(psi.col(i)), Vec(psi.col(j))))).transpose();
  return AlternatingMap(F, n, B1.dim_w(), pairs);
}

// Certificate condition checked entry by entry on all pairs of vectors of a small V.
bool certificate_holds(const AlternatingMap& B1, const AlternatingMap& B2, const IsoclinismCertificate& c) {
  const PrimeField& F = B1.field();
  const std::uint64_t size = checked_pow(F.p(), B1.dim_v());
  for (std::uint64_t a = 0; a < size; ++a)
    for (std::uint64_t b = 0; b < size; b += 7) {
      const Vec x = vector_from_index(F, B1.dim_v(), a), y = vector_from_index(F, B1.dim_v(), b);
      const Vec lhs = F.reduced(Vec(c.theta * B1(x, y)));
      const Vec rhs = B2(F.reduced(Vec(c.phi * x)), F.reduced(Vec(c.phi * y)));
      if (lhs != rhs) return false;
    }
  return is_invertible(F, c.phi) && is_invertible(F, c.theta);
}

const TheoremClass kClasses[] = {TheoremClass::Camina, TheoremClass::FullG3, TheoremClass::QuotientM,
                                 TheoremClass::QuotientN};

}  // namespace

TEST_CASE("fingerprints are invariant under isoclinism") {
  std::mt19937_64 rng(21);
  for (int p : {2, 3}) {
    const PrimeField F(p);
    for (TheoremClass c : kClasses) {
      const AlternatingMap rep = theorem_representative(F, c);
      const Fingerprint base = fingerprint(rep);
      for (int t = 0; t < 100; ++t) {
        const AlternatingMap moved = transport(rep, random_invertible(F, rep.dim_v(), rng),
                                               random_invertible(F, rep.dim_w(), rng));
        REQUIRE(fingerprint(moved) == base);
      }
    }
  }
}

TEST_CASE("fingerprint values") {
  const PrimeField F(3);
  const Fingerprint g3 = fingerprint(full_lambda2(F, 4));
  CHECK(g3.image_rank == 6);
  CHECK(g3.breadths == BreadthProfile{{3, 80}});
  // Any two distinct points of P^3 span a plane that does not commute.
  CHECK(g3.commuting_pairs == 0);
  const Fingerprint camina = fingerprint(heisenberg_ext(3, 3));
  CHECK(camina.breadths == BreadthProfile{{3, 728}});
  const Fingerprint m = fingerprint(theorem_representative(F, TheoremClass::QuotientM));
  const Fingerprint n = fingerprint(theorem_representative(F, TheoremClass::QuotientN));
  CHECK(fingerprint_difference(m, n) == "dimW");
  CHECK(fingerprint_difference(m, m).empty());

  // Lines of rank 2 and rank 4 give quotients with the same dimensions.
  const Fingerprint decomposable =
      fingerprint(quotient(full_lambda2(F, 4), parse_subspace_spec(F, "1,0,0,0,0,0", 6)));
  CHECK_FALSE(fingerprint_difference(m, decomposable).empty());
}

TEST_CASE("certificates") {
  const PrimeField F(3);
  const AlternatingMap B = theorem_representative(F, TheoremClass::QuotientN);
  const IsoclinismCertificate id{Mat::Identity(4, 4), Mat::Identity(4, 4)};
  CHECK(verify_certificate(B, B, id));
  CHECK_FALSE(verify_certificate(B, B, {Mat::Identity(4, 4), Mat::Zero(4, 4)}));
  Mat swap = Mat::Identity(4, 4);
  swap.row(0).swap(swap.row(1));
  CHECK_FALSE(verify_certificate(B, B, {Mat::Identity(4, 4), swap}));

  const auto theta = solve_theta(B, B, Mat::Identity(4, 4));
  REQUIRE(theta.has_value());
  CHECK(*theta == Mat::Identity(4, 4));
}

TEST_CASE("solve_theta on the full exterior square is Lambda^2 phi") {
  const PrimeField F(5);
  std::mt19937_64 rng(22);
  const AlternatingMap B = full_lambda2(F, 4);
  for (int t = 0; t < 20; ++t) {
    const Mat phi = random_invertible(F, 4, rng);
    const auto theta = solve_theta(B, B, phi);
    REQUIRE(theta.has_value());
    CHECK(*theta == exterior_square(F, phi));
  }
}

TEST_CASE("solve_theta rejects phi with no consistent theta") {
  const PrimeField F(3);
  Mat pairs = Mat::Zero(6, 1);
  pairs(pair_index(4, 0, 1), 0) = 1;
  const AlternatingMap B(F, 4, 1, pairs);
  Mat phi = Mat::Identity(4, 4);
  phi.col(1).swap(phi.col(2));
  CHECK_FALSE(solve_theta(B, B, phi).has_value());
}

TEST_CASE("search finds hidden isoclinisms") {
  std::mt19937_64 rng(23);
  for (int p : {2, 3}) {
    const PrimeField F(p);
    for (TheoremClass c : {TheoremClass::QuotientM, TheoremClass::QuotientN}) {
      const AlternatingMap rep = theorem_representative(F, c);
      for (int t = 0; t < 3; ++t) {
        const AlternatingMap moved =
            transport(rep, random_invertible(F, 4, rng), random_invertible(F, rep.dim_w(), rng));
        const IsoclinismResult r = find_isoclinism(rep, moved);
        REQUIRE(r.verdict == Verdict::Isoclinic);
        REQUIRE(r.certificate.has_value());
        CHECK(verify_certificate(rep, moved, *r.certificate));
        CHECK(certificate_holds(rep, moved, *r.certificate));
      }
    }
  }
}

TEST_CASE("Camina representative against a transported copy") {
  std::mt19937_64 rng(24);
  const PrimeField F(2);
  const AlternatingMap rep = theorem_representative(F, TheoremClass::Camina);
  const AlternatingMap moved = transport(rep, random_invertible(F, 6, rng), random_invertible(F, 3, rng));
  const IsoclinismResult r = find_isoclinism(rep, moved);
  REQUIRE(r.verdict == Verdict::Isoclinic);
  CHECK(certificate_holds(rep, moved, *r.certificate));
}

TEST_CASE("non-isoclinic pairs") {
  const PrimeField F(3);
  const AlternatingMap m = theorem_representative(F, TheoremClass::QuotientM);
  const AlternatingMap n = theorem_representative(F, TheoremClass::QuotientN);
  CHECK(find_isoclinism(m, n).verdict == Verdict::NotIsoclinic);
  CHECK(find_isoclinism(full_lambda2(F, 4), full_lambda2(PrimeField(5), 4)).verdict == Verdict::NotIsoclinic);
  const AlternatingMap decomposable = quotient(full_lambda2(F, 4), parse_subspace_spec(F, "1,0,0,0,0,0", 6));
  const IsoclinismResult r = find_isoclinism(m, decomposable);
  CHECK(r.verdict == Verdict::NotIsoclinic);
  CHECK(r.reason.find("fingerprints differ") == 0);
}

TEST_CASE("tiny search budget is inconclusive") {
  std::mt19937_64 rng(25);
  const PrimeField F(3);
  const AlternatingMap rep = theorem_representative(F, TheoremClass::QuotientN);
  const AlternatingMap moved = transport(rep, random_invertible(F, 4, rng), random_invertible(F, 4, rng));
  Budgets tiny;
  tiny.gl_search = 2;
  const IsoclinismResult r = find_isoclinism(rep, moved, tiny);
  if (r.verdict == Verdict::Isoclinic) {
    // The first branch happened to succeed; the certificate must still be real.
    CHECK(verify_certificate(rep, moved, *r.certificate));
  } else {
    CHECK(r.verdict == Verdict::Inconclusive);
    CHECK_FALSE(r.certificate.has_value());
  }
  tiny.gl_search = 0;
  CHECK(find_isoclinism(rep, moved, tiny).verdict == Verdict::Inconclusive);
}

TEST_CASE("classification against the four classes") {
  const PrimeField F3(3);
  CHECK(classify_against_theorem(heisenberg_ext(3, 3)).label == TheoremClass::Camina);
  CHECK(classify_against_theorem(full_lambda2(PrimeField(5), 4)).label == TheoremClass::FullG3);
  const Classification n = classify_against_theorem(theorem_representative(F3, TheoremClass::QuotientN));
  CHECK(n.label == TheoremClass::QuotientN);
  CHECK(n.confirmation == Confirmation::Search);
  REQUIRE(n.certificate.has_value());

  const PrimeField F2(2);
  const Classification two = classify_against_theorem(theorem_representative(F2, TheoremClass::QuotientN));
  CHECK(two.label == TheoremClass::QuotientN);
  CHECK(std::string(roman_label(two.label)) == "(iv)");

  std::mt19937_64 rng(26);
  const AlternatingMap rep = theorem_representative(F3, TheoremClass::QuotientM);
  const Mat phi = random_invertible(F3, 4, rng), theta = random_invertible(F3, 5, rng);
  const Classification hinted =
      classify_against_theorem(transport(rep, phi, theta), {}, IsoclinismCertificate{phi, theta});
  CHECK(hinted.label == TheoremClass::QuotientM);
  CHECK(hinted.confirmation == Confirmation::Certificate);

  CHECK_THROWS_AS(classify_against_theorem(full_lambda2(F3, 3)), std::invalid_argument);
  CHECK_THROWS_AS(theorem_representative(F3, TheoremClass::Counterexample), std::invalid_argument);
}

TEST_CASE("labels") {
  CHECK(std::string(to_string(Verdict::Isoclinic)) == "isoclinic");
  CHECK(std::string(roman_label(TheoremClass::Camina)) == "(i)");
  CHECK(std::string(to_string(Confirmation::InvariantsOnly)) == "invariants-only");
}
