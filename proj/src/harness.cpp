#include "pgroup/harness.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>
#include <unordered_set>

#include "pgroup/canonicalize.hpp"
#include "pgroup/commutator_form.hpp"
#include "pgroup/group_model.hpp"
#include "pgroup/isoclinism.hpp"

namespace pgroup {

namespace {

using Clock = std::chrono::steady_clock;

class Timer {
 public:
  Timer() : start_(Clock::now()) {}
  double seconds() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

 private:
  Clock::time_point start_;
};

ClaimRecord make_claim(std::string id, std::string claim, std::string anchor) {
  ClaimRecord c;
  c.id = std::move(id);
  c.claim = std::move(claim);
  c.anchor = std::move(anchor);
  return c;
}

Json vector_json(const Vec& v) {
  Json out = Json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json matrix_json(const Mat& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

Json canon_json(const CanonResult& r) {
  Json out;
  out["input"] = r.input.to_spec();
  out["status"] = r.accepted() ? "canonical" : "rejected";
  out["reason"] = r.reason;
  if (r.canonical) out["canonical"] = r.canonical->to_spec();
  if (r.witness) out["witness"] = {vector_json(r.witness->first), vector_json(r.witness->second)};
  return out;
}

// Keeps the first few offenders of a claim.
struct Offenders {
  std::size_t count = 0;
  Json examples = Json::array();
  void add(Json j) {
    if (count++ < 5) examples.push_back(std::move(j));
  }
};

void close_claim(ClaimRecord& c, bool passed, const Offenders& bad, const Timer& t) {
  c.passed = passed && bad.count == 0;
  if (bad.count > 0) c.witness = {{"offenders", bad.count}, {"examples", bad.examples}};
  c.seconds = t.seconds();
}

bool brute_two_class(const AlternatingMap& B, const Subspace& K, int n, const Budgets& budgets) {
  return conjugate_type(quotient(B, K), budgets) == two_class_type(B.field().p(), n);
}

struct SweepEntry {
  Subspace subspace;
  CanonResult canon;
  bool brute;
};

// Canonicalizer and brute-force verdict for every k-subspace of W, up to the
// sweep budget.
std::vector<SweepEntry> sweep(const AlternatingMap& B, int k, int target_breadth, const Budgets& budgets,
                              bool& complete) {
  SubspaceEnumerator it(B.field(), B.dim_w(), k);
  std::vector<SweepEntry> out;
  out.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(it.size(), budgets.sweep)));
  for (; !it.done(); it.advance()) {
    if (out.size() >= budgets.sweep) {
      complete = false;
      break;
    }
    Subspace K = it.current();
    CanonResult r = canonicalize(B, K);
    const bool brute = brute_two_class(B, K, target_breadth, budgets);
    out.push_back({std::move(K), std::move(r), brute});
  }
  return out;
}

ClaimRecord count_claim(const std::string& id, const std::string& what, std::uint64_t scanned,
                        std::uint64_t expected, bool complete) {
  ClaimRecord c = make_claim(id, "the sweep visits all " + what,
                             "number of k-subspaces of GF(p)^d is the Gaussian binomial [d choose k]_p");
  c.counts = {{"scanned", scanned}, {"gaussian_binomial", expected}};
  c.evaluated = complete;
  c.passed = !complete || scanned == expected;
  return c;
}

ClaimRecord agreement_claim(const std::vector<SweepEntry>& entries, int n, int p, const Timer& t) {
  ClaimRecord c = make_claim("accept-sets-agree",
                             "the canonicalizer accepts exactly the subspaces whose quotient has type {1, p^" +
                                 std::to_string(n) + "}",
                             "quotient has conjugate type {1, p^" + std::to_string(n) +
                                 "} iff every non-central element commutes only with its own powers modulo the centre");
  std::uint64_t canon_ok = 0, brute_ok = 0;
  Offenders bad;
  for (const SweepEntry& e : entries) {
    canon_ok += e.canon.accepted();
    brute_ok += e.brute;
    if (e.canon.accepted() != e.brute) {
      Json j = canon_json(e.canon);
      j["brute_force_two_class"] = e.brute;
      bad.add(std::move(j));
    }
  }
  c.counts = {{"scanned", entries.size()},
              {"accepted_by_canonicalizer", canon_ok},
              {"accepted_by_breadth_scan", brute_ok},
              {"mismatches", bad.count}};
  (void)p;
  close_claim(c, true, bad, t);
  return c;
}

ClaimRecord results_verified_claim(const std::vector<SweepEntry>& entries, const Timer& t) {
  ClaimRecord c = make_claim("results-verified",
                             "every accepted subspace is mapped onto its normal form by the returned base change, "
                             "and every rejection carries a commuting pair x, y with x ^ y in the subspace",
                             "base change of generators acts on the commutator subgroup through Lambda^2");
  Offenders bad;
  std::map<int, std::uint64_t> by_m;
  std::uint64_t witnesses = 0;
  for (const SweepEntry& e : entries) {
    std::string why;
    if (!verify_canon_result(e.canon, &why)) {
      Json j = canon_json(e.canon);
      j["problem"] = why;
      bad.add(std::move(j));
    }
    if (e.canon.accepted())
      ++by_m[e.canon.m_value];
    else
      ++witnesses;
  }
  Json m = Json::object();
  for (const auto& [k, v] : by_m) m[std::to_string(k)] = v;
  c.counts = {{"accepted_by_normal_form_parameter", m}, {"rejections_with_witness", witnesses}, {"failures", bad.count}};
  close_claim(c, true, bad, t);
  return c;
}

Json budgets_json(const Budgets& b) {
  return {{"form_scan", b.form_scan}, {"element_scan", b.element_scan}, {"gl_search", b.gl_search}, {"sweep", b.sweep}};
}

VerificationReport new_report(std::string target, int p, int n, const Budgets& budgets) {
  VerificationReport r;
  r.target = std::move(target);
  r.p = p;
  r.n = n;
  r.budgets = budgets;
  return r;
}

}  // namespace

std::string VerificationReport::verdict() const {
  for (const auto& c : claims)
    if (c.evaluated && !c.passed) return "failed";
  if (!complete) return "incomplete";
  for (const auto& c : claims)
    if (!c.evaluated) return "incomplete";
  return "verified";
}

int VerificationReport::exit_code() const {
  const std::string v = verdict();
  return v == "verified" ? 0 : v == "failed" ? 1 : 2;
}

Json VerificationReport::to_json(bool with_timing) const {
  Json canonical;
  canonical["target"] = target;
  canonical["p"] = p;
  canonical["n"] = n;
  canonical["budgets"] = budgets_json(budgets);
  canonical["complete"] = complete;
  Json list = Json::array();
  for (const auto& c : claims) {
    Json j;
    j["id"] = c.id;
    j["claim"] = c.claim;
    j["anchor"] = c.anchor;
    j["evaluated"] = c.evaluated;
    j["passed"] = c.passed;
    j["counts"] = c.counts;
    j["witness"] = c.witness;
    list.push_back(std::move(j));
  }
  canonical["claims"] = std::move(list);
  canonical["verdict"] = verdict();
  Json out;
  out["canonical"] = std::move(canonical);
  if (with_timing) {
    Json timing;
    double total = 0;
    for (const auto& c : claims) {
      timing["claims"][c.id] = c.seconds;
      total += c.seconds;
    }
    timing["total_seconds"] = total;
    out["timing"] = std::move(timing);
  }
  return out;
}

std::string VerificationReport::text_summary() const {
  std::ostringstream os;
  os << "verify " << target << "  p=" << p << "  n=" << n << (complete ? "" : "  (incomplete: sweep budget)")
     << '\n';
  for (const auto& c : claims) {
    os << (c.evaluated ? (c.passed ? "  PASS  " : "  FAIL  ") : "  SKIP  ") << c.id << "  " << c.counts.dump()
       << '\n';
    if (!c.witness.is_null()) os << "        witness " << c.witness.dump() << '\n';
  }
  os << "verdict: " << verdict() << '\n';
  return os.str();
}

VerificationReport verify_lemma4(int p, int n, const Budgets& budgets) {
  const bool ok = (p == 2 && n >= 4 && n <= 6) || (p == 3 && n >= 4 && n <= 5) || (p == 5 && n == 4);
  if (!ok) throw std::invalid_argument("lemma4 supports p = 2 (n = 4..6), p = 3 (n = 4..5), p = 5 (n = 4)");
  const PrimeField F(p);
  const AlternatingMap B = full_lambda2(F, n);
  VerificationReport report = new_report("lemma4", p, n, budgets);

  Timer t;
  std::vector<SweepEntry> entries = sweep(B, 1, n - 1, budgets, report.complete);
  report.claims.push_back(
      count_claim("line-count", "lines of Lambda^2 V", entries.size(), gaussian_binomial(pair_count(n), 1, p),
                  report.complete));
  report.claims.push_back(agreement_claim(entries, n - 1, p, t));

  {
    Timer t2;
    ClaimRecord c = make_claim("rejected-are-decomposable",
                               "the rejected lines are exactly the lines <x ^ y>, one for each plane <x, y> of V",
                               "a bivector of rank 2 gives a commuting pair; rank >= 4 leaves only powers");
    std::unordered_set<Subspace, SubspaceHash> decomposable;
    for_each_subspace(F, n, 2, [&](const Subspace& P) {
      decomposable.insert(Subspace::span_of(F, {wedge(F, P.basis_vector(0), P.basis_vector(1))}, pair_count(n)));
    });
    Offenders bad;
    std::uint64_t rejected = 0;
    for (const SweepEntry& e : entries) {
      const bool dec = decomposable.count(e.subspace) > 0;
      rejected += !e.canon.accepted();
      if (dec == e.canon.accepted()) bad.add(canon_json(e.canon));
    }
    const std::uint64_t planes = gaussian_binomial(n, 2, p);
    c.counts = {{"rejected", rejected},
                {"planes_of_V", planes},
                {"distinct_decomposable_lines", decomposable.size()},
                {"mismatches", bad.count}};
    c.evaluated = report.complete;
    close_claim(c, !report.complete || (rejected == planes && decomposable.size() == planes), bad, t2);
    if (!report.complete) c.passed = bad.count == 0;
    report.claims.push_back(std::move(c));
  }
  {
    Timer t3;
    report.claims.push_back(results_verified_claim(entries, t3));
  }
  if (n >= 6) {
    Timer t4;
    ClaimRecord c = make_claim("normal-forms-distinct",
                               "the normal forms with m = 2 and m = 3 blocks are not related by base change",
                               "the rank of the spanning bivector is invariant under GL(V)");
    const Subspace m2 = canonical_line(F, n, 2);
    const Subspace m3 = canonical_line(F, n, 3);
    std::mt19937_64 rng(0x5eed);
    Offenders bad;
    const int trials = 1000;
    for (int k = 0; k < trials; ++k) {
      const Mat phi = random_invertible(F, n, rng);
      if (m2.image(exterior_square(F, phi)) == m3) bad.add(matrix_json(phi));
    }
    const std::string diff = fingerprint_difference(fingerprint(quotient(B, m2), budgets),
                                                    fingerprint(quotient(B, m3), budgets));
    c.counts = {{"random_base_changes", trials},
                {"mapping_m2_to_m3", bad.count},
                {"quotient_fingerprints_differ_in", diff.empty() ? Json(nullptr) : Json(diff)}};
    close_claim(c, true, bad, t4);
    report.claims.push_back(std::move(c));
  }
  return report;
}

ClaimRecord plane_family_claim(int p, const Budgets& budgets) {
  Timer t;
  const PrimeField F(p);
  if (p == 2) throw std::invalid_argument("the discriminant family needs p odd");
  ClaimRecord c = make_claim(
      "plane-family",
      "<ab + cd, ac + i1 bd + i2 cd> is rejected exactly when i2^2 + 4 i1 is a square or zero, "
      "with a valid commuting witness",
      "x(ab + cd) + y(ac + i1 bd + i2 cd) is decomposable iff x^2 + i2 xy - i1 y^2 = 0");
  const AlternatingMap B = full_lambda2(F, 4);
  Offenders bad;
  std::uint64_t cases = 0, square = 0, rejected = 0;
  for (int i1 = 0; i1 < p; ++i1)
    for (int i2 = 0; i2 < p; ++i2) {
      ++cases;
      Vec v1 = Vec::Zero(6), v2 = Vec::Zero(6);
      v1(pair_index(4, 0, 1)) = 1;
      v1(pair_index(4, 2, 3)) = 1;
      v2(pair_index(4, 0, 2)) = 1;
      v2(pair_index(4, 1, 3)) = i1;
      v2(pair_index(4, 2, 3)) = i2;
      const Subspace N = Subspace::span_of(F, {v1, v2}, 6);
      const int disc = F.add(F.mul(i2, i2), F.mul(4, i1));
      const bool is_sq = disc == 0 || is_square(F, disc);
      square += is_sq;
      const CanonResult r = canon_plane_odd(B, N);
      rejected += !r.accepted();
      const bool brute = brute_two_class(B, N, 3, budgets);
      std::string why;
      const bool valid = verify_canon_result(r, &why);
      if (r.accepted() == is_sq || brute != r.accepted() || !valid) {
        Json j = canon_json(r);
        j["i1"] = i1;
        j["i2"] = i2;
        j["discriminant_square"] = is_sq;
        j["brute_force_two_class"] = brute;
        if (!valid) j["problem"] = why;
        bad.add(std::move(j));
      }
    }
  c.counts = {{"p", p}, {"cases", cases}, {"square_or_zero_discriminant", square}, {"rejected", rejected},
              {"mismatches", bad.count}};
  close_claim(c, true, bad, t);
  return c;
}

VerificationReport verify_lemma7(int p, const Budgets& budgets) {
  if (p != 3 && p != 5) throw std::invalid_argument("lemma7 supports p = 3 and p = 5");
  const PrimeField F(p);
  const AlternatingMap B = full_lambda2(F, 4);
  VerificationReport report = new_report("lemma7", p, 4, budgets);
  Timer t;
  std::vector<SweepEntry> entries = sweep(B, 2, 3, budgets, report.complete);
  report.claims.push_back(
      count_claim("plane-count", "planes of Lambda^2 V", entries.size(), gaussian_binomial(6, 2, p), report.complete));
  report.claims.push_back(agreement_claim(entries, 3, p, t));
  {
    Timer t2;
    ClaimRecord c = results_verified_claim(entries, t2);
    const Subspace target = canonical_plane(F);
    c.claim += "; the normal form is " + target.to_spec() + " (r = " + std::to_string(smallest_nonsquare(F)) + ")";
    report.claims.push_back(std::move(c));
  }
  report.claims.push_back(plane_family_claim(p, budgets));
  return report;
}

VerificationReport verify_lemma10(const Budgets& budgets) {
  const PrimeField F(2);
  const AlternatingMap B = full_lambda2(F, 4);
  VerificationReport report = new_report("lemma10", 2, 4, budgets);
  Timer t;
  std::vector<SweepEntry> entries = sweep(B, 2, 3, budgets, report.complete);
  report.claims.push_back(
      count_claim("plane-count", "planes of Lambda^2 V", entries.size(), gaussian_binomial(6, 2, 2), report.complete));
  report.claims.push_back(agreement_claim(entries, 3, 2, t));
  {
    Timer t2;
    report.claims.push_back(results_verified_claim(entries, t2));
  }
  {
    Timer t3;
    ClaimRecord c = make_claim("accept-set-is-orbit",
                               "the accepted planes form the GL(4,2)-orbit of <ab + cd, ac + bd + cd>",
                               "over GF(2) the only anisotropic plane class is the one with i1 = i2 = 1");
    const Subspace target = canonical_plane(F);
    std::unordered_set<Subspace, SubspaceHash> orbit;
    const std::uint64_t visited = for_each_invertible(F, 4, [&](const Mat& phi) {
      orbit.insert(target.image(exterior_square(F, phi)));
      return true;
    });
    Offenders bad;
    std::uint64_t accepted = 0;
    for (const SweepEntry& e : entries) {
      accepted += e.canon.accepted();
      if (e.canon.accepted() != (orbit.count(e.subspace) > 0)) bad.add(canon_json(e.canon));
    }
    c.counts = {{"group_order", gl_order(4, 2)}, {"matrices_visited", visited}, {"orbit_size", orbit.size()},
                {"accepted", accepted}, {"mismatches", bad.count}};
    close_claim(c, visited == gl_order(4, 2) && (!report.complete || accepted == orbit.size()), bad, t3);
    c.evaluated = report.complete;
    report.claims.push_back(std::move(c));
  }
  return report;
}

ClaimRecord distinct_cocycles_claim(const Budgets& budgets) {
  Timer t;
  const PrimeField F(2);
  ClaimRecord c = make_claim("distinct-cocycles-isoclinic",
                             "two groups on the same commutator structure with different squaring maps are isoclinic",
                             "isoclinism only sees the commutator map, not the power map");
  const AlternatingMap B = full_lambda2(F, 4);
  const GroupModel g1(B, CocycleConvention::Collection);

  // Second member: generators relabelled by a fixed random base change, the
  // opposite cocycle convention, and nonzero squares on every generator.
  std::mt19937_64 rng(0xc0c1);
  const Mat phi = random_invertible(F, 4, rng);
  const AlternatingMap B2 = base_change(B, phi).form;
  Mat lower = convention_cocycle(B2, CocycleConvention::Upper);
  for (int i = 0; i < 4; ++i) lower.row(i * 4 + i) = Vec::Unit(6, (i + 2) % 6).transpose();
  const GroupModel g2(B2, lower);

  const std::uint64_t inv1 = count_solutions_of_xp(g1, budgets);
  const std::uint64_t inv2 = count_solutions_of_xp(g2, budgets);
  const AlternatingMap f1 = commutator_form_of(g1);
  const AlternatingMap f2 = commutator_form_of(g2);
  const IsoclinismResult found = find_isoclinism(f1, f2, budgets);
  const bool cert_ok = found.certificate && verify_certificate(f1, f2, *found.certificate);
  c.counts = {{"order", checked_pow(2, g1.order_log_p())},
              {"elements_with_square_one", {inv1, inv2}},
              {"cocycles_differ", g1.cocycle() != g2.cocycle()},
              {"verdict", to_string(found.verdict)},
              {"search_nodes", found.nodes},
              {"certificate_verified", cert_ok}};
  if (found.certificate) c.counts["certificate"] = {{"phi", matrix_json(found.certificate->phi)},
                                                    {"theta", matrix_json(found.certificate->theta)}};
  c.passed = g1.cocycle() != g2.cocycle() && found.verdict == Verdict::Isoclinic && cert_ok;
  if (!c.passed) c.witness = {{"reason", found.reason}};
  c.seconds = t.seconds();
  return c;
}

VerificationReport verify_theorem(int p, const Budgets& budgets) {
  const bool odd = p != 2;
  if (odd && p != 3 && p != 5) throw std::invalid_argument("theorem1 supports p = 3 and p = 5");
  const PrimeField F(p);
  const AlternatingMap B = full_lambda2(F, 4);
  VerificationReport report = new_report(odd ? "theorem1" : "theorem2", p, 4, budgets);
  const auto type3 = two_class_type(p, 3);

  {
    Timer t;
    ClaimRecord c = make_claim("quotients-classified",
                               "every quotient of the 4-generator group by K, dim K <= 2, of type {1, p^3} is "
                               "isoclinic to representative (ii), (iii) or (iv)",
                               "|Z(G)| >= p^4 forces the kernel to have order at most p^2");
    std::map<std::string, std::uint64_t> labels;
    std::map<std::string, std::uint64_t> confirmations;
    std::uint64_t scanned = 0, two_class = 0, structure_failures = 0;
    Offenders bad;
    const std::uint64_t expected = 1 + gaussian_binomial(6, 1, p) + gaussian_binomial(6, 2, p);
    for (int k = 0; k <= 2 && report.complete; ++k) {
      for (SubspaceEnumerator it(F, 6, k); !it.done(); it.advance()) {
        if (scanned >= budgets.sweep) {
          report.complete = false;
          break;
        }
        ++scanned;
        const Subspace K = it.current();
        const AlternatingMap Q = quotient(B, K);
        if (conjugate_type(Q, budgets) != type3) continue;
        ++two_class;
        std::optional<IsoclinismCertificate> hint;
        if (k == 0) {
          hint = IsoclinismCertificate{Mat::Identity(4, 4), Mat::Identity(6, 6)};
        } else {
          const CanonResult r = canonicalize(B, K);
          if (r.accepted()) {
            const AlternatingMap rep = quotient(B, *r.canonical);
            if (auto theta = solve_theta(rep, Q, r.transform)) hint = IsoclinismCertificate{r.transform, *theta};
          }
        }
        const Classification cl = classify_against_theorem(Q, budgets, hint);
        ++labels[roman_label(cl.label)];
        ++confirmations[to_string(cl.confirmation)];
        const TheoremClass expected_label =
            k == 0 ? TheoremClass::FullG3 : k == 1 ? TheoremClass::QuotientM : TheoremClass::QuotientN;
        if (cl.label != expected_label || cl.confirmation == Confirmation::InvariantsOnly)
          bad.add({{"kernel", K.to_spec()}, {"label", roman_label(cl.label)}, {"detail", cl.detail}});
        if (!check_structure_constraints(Q, budgets).all_passed()) ++structure_failures;
      }
    }
    Json lj = Json::object();
    for (const auto& [k, v] : labels) lj[k] = v;
    Json cj = Json::object();
    for (const auto& [k, v] : confirmations) cj[k] = v;
    c.counts = {{"kernels_scanned", scanned},       {"kernels_expected", expected},
                {"quotients_of_type_p3", two_class}, {"labels", lj},
                {"confirmed_by", cj},               {"structure_check_failures", structure_failures},
                {"unconfirmed_or_counterexample", bad.count}};
    close_claim(c, structure_failures == 0 && (!report.complete || scanned == expected), bad, t);
    report.claims.push_back(std::move(c));
  }
  {
    Timer t;
    ClaimRecord c = make_claim("camina-representative",
                               "the unitriangular group over GF(p^3) is classified (i)",
                               "Camina group of class 2 with |G'| = p^3");
    const AlternatingMap H = heisenberg_ext(p, 3);
    const Classification cl = classify_against_theorem(H, budgets);
    c.counts = {{"label", roman_label(cl.label)}, {"confirmed_by", to_string(cl.confirmation)},
                {"camina", is_camina(H, budgets)}};
    c.passed = cl.label == TheoremClass::Camina && cl.confirmation != Confirmation::InvariantsOnly;
    if (!c.passed) c.witness = {{"detail", cl.detail}};
    c.seconds = t.seconds();
    report.claims.push_back(std::move(c));
  }
  {
    Timer t;
    ClaimRecord c = make_claim("representatives-distinct",
                               "the four representatives are pairwise not isoclinic",
                               "dimV, dimW and the Camina property are isoclinism invariants");
    const std::vector<TheoremClass> classes = {TheoremClass::Camina, TheoremClass::FullG3, TheoremClass::QuotientM,
                                               TheoremClass::QuotientN};
    std::vector<Fingerprint> fps;
    Json dims = Json::object();
    for (TheoremClass cls : classes) {
      const AlternatingMap rep = theorem_representative(F, cls);
      fps.push_back(fingerprint(rep, budgets));
      dims[roman_label(cls)] = {{"dimV", rep.dim_v()}, {"dimW", rep.dim_w()}};
    }
    Offenders bad;
    for (std::size_t i = 0; i < fps.size(); ++i)
      for (std::size_t j = i + 1; j < fps.size(); ++j)
        if (fingerprint_difference(fps[i], fps[j]).empty())
          bad.add({roman_label(classes[i]), roman_label(classes[j])});
    c.counts = {{"dimensions", dims}, {"inseparable_pairs", bad.count}};
    close_claim(c, true, bad, t);
    report.claims.push_back(std::move(c));
  }
  if (!odd) report.claims.push_back(distinct_cocycles_claim(budgets));
  return report;
}

VerificationReport verify_structure(int p, const Budgets& budgets) {
  if (p != 2 && p != 3 && p != 5 && p != 7) throw std::invalid_argument("structure supports p = 2, 3, 5, 7");
  const PrimeField F(p);
  VerificationReport report = new_report("structure", p, 0, budgets);
  std::vector<std::pair<std::string, AlternatingMap>> forms;
  for (int r = 1; r <= 3; ++r) forms.emplace_back("G_" + std::to_string(r), full_lambda2(F, r + 1));
  for (int m = 1; m <= 3; ++m) forms.emplace_back("H(p^" + std::to_string(m) + ")", heisenberg_ext(p, m));
  forms.emplace_back("G_3/M", theorem_representative(F, TheoremClass::QuotientM));
  forms.emplace_back("G_3/N", theorem_representative(F, TheoremClass::QuotientN));

  Timer t;
  ClaimRecord c = make_claim("structure-constraints",
                             "breadth bound on |G'|, generator and Omega_1(Z) bounds, and the p^3 dichotomy hold "
                             "on every constructed group",
                             "|G'| <= p^(b(b+1)/2); type {1,p^n} needs n generators and |Omega_1(Z)| >= p^n");
  Offenders bad;
  Json per = Json::object();
  for (const auto& [name, B] : forms) {
    const StructureReport sr = check_structure_constraints(B, budgets);
    Json checks = Json::object();
    for (const Check& ch : sr.checks) {
      checks[ch.name] = !ch.applicable ? "n/a" : ch.passed ? "pass" : "fail";
      if (ch.applicable && !ch.passed) bad.add({{"group", name}, {"check", ch.name}, {"detail", ch.detail}});
    }
    // Element-level cross-check of the Omega_1(Z) bound where affordable.
    try {
      const GroupStructure gs = structural_report(GroupModel(B), budgets);
      checks["element_level_omega1_center_log_p"] = gs.omega1_center_log_p;
      const auto sizes = conjugate_type(B, budgets);
      if (sizes.size() == 2) {
        const int n = static_cast<int>(std::round(std::log(static_cast<double>(*sizes.rbegin())) / std::log(p)));
        if (gs.omega1_center_log_p < n || gs.min_generators < n)
          bad.add({{"group", name}, {"check", "element_level_bounds"}});
      }
    } catch (const BudgetExceeded&) {
      checks["element_level_omega1_center_log_p"] = "over budget";
    }
    per[name] = std::move(checks);
  }
  c.counts = {{"groups", per}, {"failures", bad.count}};
  close_claim(c, true, bad, t);
  report.claims.push_back(std::move(c));
  return report;
}

VerificationReport verify(const std::string& target, int p, int n, const Budgets& budgets) {
  if (target == "lemma4") return verify_lemma4(p, n, budgets);
  if (target == "lemma7") return verify_lemma7(p, budgets);
  if (target == "lemma10") {
    if (p != 2) throw std::invalid_argument("lemma10 is the p = 2 case");
    return verify_lemma10(budgets);
  }
  if (target == "theorem1") {
    if (p == 2) throw std::invalid_argument("theorem1 is for odd p; use theorem2 for p = 2");
    return verify_theorem(p, budgets);
  }
  if (target == "theorem2") {
    if (p != 2) throw std::invalid_argument("theorem2 is the p = 2 case");
    return verify_theorem(2, budgets);
  }
  if (target == "structure") return verify_structure(p, budgets);
  throw std::invalid_argument("unknown target '" + target + "'");
}

}  // namespace pgroup
