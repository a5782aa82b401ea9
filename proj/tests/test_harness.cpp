#include <doctest.h>

#include "pgroup/harness.hpp"

using namespace pgroup;

namespace {

const ClaimRecord* find_claim(const VerificationReport& r, const std::string& id) {
  for (const auto& c : r.claims)
    if (c.id == id) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("lemma4 at p = 2, n = 4") {
  const VerificationReport r = verify("lemma4", 2, 4, Budgets{});
  CHECK(r.verdict() == "verified");
  CHECK(r.exit_code() == 0);
  const ClaimRecord* count = find_claim(r, "line-count");
  REQUIRE(count != nullptr);
  CHECK(count->passed);
  for (const auto& c : r.claims) {
    CHECK(c.evaluated);
    CHECK(c.passed);
    CHECK_FALSE(c.anchor.empty());
    CHECK(c.witness.is_null());
  }
}

TEST_CASE("reports are deterministic apart from timing") {
  const VerificationReport a = verify("lemma10", 2, 4, Budgets{});
  const VerificationReport b = verify("lemma10", 2, 4, Budgets{});
  CHECK(a.verdict() == "verified");
  CHECK(a.to_json(false).dump() == b.to_json(false).dump());
  CHECK_FALSE(a.to_json(false).contains("timing"));
  CHECK(a.to_json(true).contains("timing"));
  CHECK(a.to_json(true)["canonical"] == a.to_json(false)["canonical"]);
}

TEST_CASE("small sweep budget gives an incomplete report") {
  Budgets small;
  small.sweep = 10;
  const VerificationReport r = verify("lemma10", 2, 4, small);
  CHECK_FALSE(r.complete);
  CHECK(r.verdict() == "incomplete");
  CHECK(r.exit_code() == 2);
  CHECK(r.text_summary().find("incomplete") != std::string::npos);
}

TEST_CASE("a failed claim fails the report") {
  VerificationReport r;
  r.target = "manual";
  ClaimRecord ok;
  ok.id = "ok";
  ok.passed = true;
  ClaimRecord bad;
  bad.id = "bad";
  bad.passed = false;
  bad.witness = Json::array({1, 2});
  r.claims = {ok};
  CHECK(r.exit_code() == 0);
  ClaimRecord skipped;
  skipped.id = "skipped";
  skipped.evaluated = false;
  r.claims.push_back(skipped);
  CHECK(r.verdict() == "incomplete");
  r.claims.push_back(bad);
  CHECK(r.verdict() == "failed");
  CHECK(r.exit_code() == 1);
  CHECK(r.text_summary().find("witness [1,2]") != std::string::npos);
}

TEST_CASE("theorem2 and structure at p = 2") {
  const VerificationReport t = verify("theorem2", 2, 4, Budgets{});
  CHECK(t.verdict() == "verified");
  CHECK(find_claim(t, "distinct-cocycles-isoclinic") != nullptr);
  const VerificationReport s = verify("structure", 2, 4, Budgets{});
  CHECK(s.verdict() == "verified");
}

TEST_CASE("plane family claim") {
  for (int p : {3, 5, 7}) {
    const ClaimRecord c = plane_family_claim(p, Budgets{});
    CHECK(c.passed);
    CHECK(c.counts.contains("cases"));
  }
}

TEST_CASE("unsupported targets") {
  CHECK_THROWS_AS(verify("lemma4", 7, 4, Budgets{}), std::invalid_argument);
  CHECK_THROWS_AS(verify("lemma7", 2, 4, Budgets{}), std::invalid_argument);
  CHECK_THROWS_AS(verify("lemma10", 3, 4, Budgets{}), std::invalid_argument);
  CHECK_THROWS_AS(verify("theorem1", 2, 4, Budgets{}), std::invalid_argument);
  CHECK_THROWS_AS(verify("theorem2", 3, 4, Budgets{}), std::invalid_argument);
  CHECK_THROWS_AS(verify("bogus", 3, 4, Budgets{}), std::invalid_argument);
}
