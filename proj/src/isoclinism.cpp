#include "pgroup/isoclinism.hpp"

#include <algorithm>
#include <functional>

#include "pgroup/canonicalize.hpp"

namespace pgroup {

namespace {

std::uint64_t scan_size(int p, int dim, std::uint64_t budget, const char* what) {
  std::uint64_t q = 0;
  try {
    q = checked_pow(p, dim);
  } catch (const std::overflow_error&) {
    throw BudgetExceeded(what, UINT64_MAX, budget);
  }
  if (q > budget) throw BudgetExceeded(what, q, budget);
  return q;
}

// Pairs (i, j), i < j, ordered by j and then i, so that every pair is
// determined once the first j + 1 columns of phi are fixed.
std::vector<std::pair<int, int>> colex_pairs(int n) {
  std::vector<std::pair<int, int>> out;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) out.emplace_back(i, j);
  return out;
}

// Completes the columns of `m` (independent) to a basis by standard vectors.
Mat complete_basis(const PrimeField& F, const Mat& m, int dim) {
  const Echelon e = rref(F, Mat(m.transpose()));
  Mat out(dim, dim);
  out.leftCols(m.cols()) = m;
  int col = static_cast<int>(m.cols());
  for (int c = 0; c < dim; ++c)
    if (std::find(e.pivots.begin(), e.pivots.end(), c) == e.pivots.end()) out.col(col++) = Vec::Unit(dim, c);
  return out;
}

}  // namespace

Fingerprint fingerprint(const AlternatingMap& B, const Budgets& budgets) {
  const PrimeField& F = B.field();
  const int p = F.p();
  Fingerprint fp;
  fp.p = p;
  fp.dim_v = B.dim_v();
  fp.dim_w = B.dim_w();
  fp.image_rank = B.image_rank();
  fp.breadths = breadth_profile(B, budgets);

  scan_size(p, B.dim_v(), budgets.form_scan, "commuting-pair census");
  std::uint64_t ordered = 0;
  for (const Vec& x : projective_points(F, B.dim_v())) {
    const int k = B.dim_v() - breadth(B, x);
    ordered += (checked_pow(p, k) - 1) / static_cast<std::uint64_t>(p - 1) - 1;
  }
  fp.commuting_pairs = ordered / 2;

  scan_size(p, B.dim_w(), budgets.form_scan, "functional census");
  const int n = B.dim_v();
  for (const Vec& lambda : projective_points(F, B.dim_w())) {
    Mat a = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        a(i, j) = F.reduce(lambda.dot(B.value(i, j)));
        a(j, i) = F.neg(a(i, j));
      }
    ++fp.functional_ranks[rank(F, a)];
  }
  return fp;
}

std::string fingerprint_difference(const Fingerprint& a, const Fingerprint& b) {
  if (a.p != b.p) return "p";
  if (a.dim_v != b.dim_v) return "dimV";
  if (a.dim_w != b.dim_w) return "dimW";
  if (a.image_rank != b.image_rank) return "image rank";
  if (a.breadths != b.breadths) return "breadth profile";
  if (a.commuting_pairs != b.commuting_pairs) return "commuting pairs";
  if (a.functional_ranks != b.functional_ranks) return "functional rank census";
  return "";
}

bool verify_certificate(const AlternatingMap& B1, const AlternatingMap& B2, const IsoclinismCertificate& cert) {
  const PrimeField& F = B1.field();
  if (!(F == B2.field()) || B1.dim_v() != B2.dim_v() || B1.dim_w() != B2.dim_w()) return false;
  const int n = B1.dim_v();
  if (cert.phi.rows() != n || cert.phi.cols() != n) return false;
  if (cert.theta.rows() != B1.dim_w() || cert.theta.cols() != B1.dim_w()) return false;
  if (!is_invertible(F, cert.phi) || !is_invertible(F, cert.theta)) return false;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Vec lhs = F.reduced(Vec(cert.theta * B1.value(i, j)));
      if (lhs != B2(cert.phi.col(i), cert.phi.col(j))) return false;
    }
  return true;
}

std::optional<Mat> solve_theta(const AlternatingMap& B1, const AlternatingMap& B2, const Mat& phi) {
  const PrimeField& F = B1.field();
  const int n = B1.dim_v();
  const int dw = B1.dim_w();
  if (B2.dim_v() != n || B2.dim_w() != dw || !is_invertible(F, phi)) return std::nullopt;

  std::vector<Vec> xs, ys;
  Mat basis(dw, 0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Vec x = B1.value(i, j);
      Mat trial(dw, basis.cols() + 1);
      trial << basis, x;
      if (rank(F, trial) > basis.cols()) {
        basis = trial;
        ys.push_back(B2(phi.col(i), phi.col(j)));
      }
    }
  const int r = static_cast<int>(basis.cols());
  Mat y(dw, r);
  for (int k = 0; k < r; ++k) y.col(k) = ys[static_cast<std::size_t>(k)];
  if (rank(F, y) != r) return std::nullopt;

  const Mat x_full = complete_basis(F, basis, dw);
  const Mat y_full = complete_basis(F, y, dw);
  const Mat theta = F.reduced(Mat(y_full * inverse(F, x_full)));
  IsoclinismCertificate cert{phi, theta};
  if (!verify_certificate(B1, B2, cert)) return std::nullopt;
  return theta;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Isoclinic: return "isoclinic";
    case Verdict::NotIsoclinic: return "not-isoclinic";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

class PhiSearch {
 public:
  PhiSearch(const AlternatingMap& B1, const AlternatingMap& B2, const Budgets& budgets)
      : B1_(B1), B2_(B2), F_(B1.field()), n_(B1.dim_v()), dw_(B1.dim_w()), limit_(budgets.gl_search) {
    // Greedy basis of B1-values in colex order; every other pair is a fixed
    // combination of earlier basis pairs.
    levels_.resize(static_cast<std::size_t>(n_));
    Mat basis(dw_, 0);
    for (const auto& [i, j] : colex_pairs(n_)) {
      const Vec x = B1.value(i, j);
      Mat trial(dw_, basis.cols() + 1);
      trial << basis, x;
      if (rank(F_, trial) > basis.cols()) {
        basis = trial;
        levels_[static_cast<std::size_t>(j)].push_back({i, j, static_cast<int>(basis.cols()) - 1, Vec()});
      } else {
        // Solve basis * c = x.
        Mat aug(dw_, basis.cols() + 1);
        aug << basis, x;
        const Subspace ker = kernel(F_, aug);
        Vec c;
        for (int k = 0; k < ker.dim(); ++k) {
          const Vec v = ker.basis_vector(k);
          if (v(basis.cols()) != 0) {
            const int s = F_.neg(F_.inv(v(basis.cols())));
            c = F_.reduced(Vec(s * v.head(basis.cols())));
            break;
          }
        }
        levels_[static_cast<std::size_t>(j)].push_back({i, j, -1, c});
      }
    }
    rank_ = static_cast<int>(basis.cols());

    // Candidates for column j: vectors of V2 with the breadth of e_j under B1.
    const std::uint64_t q = checked_pow(F_.p(), n_);
    std::map<int, std::vector<Vec>> by_breadth;
    for (std::uint64_t idx = 1; idx < q; ++idx) {
      Vec v = vector_from_index(F_, n_, idx);
      by_breadth[breadth(B2, v)].push_back(std::move(v));
    }
    for (int j = 0; j < n_; ++j) candidates_.push_back(by_breadth[breadth(B1, Vec::Unit(n_, j))]);
  }

  /// nullopt: exhausted. Throws Aborted when the node limit is reached.
  struct Aborted {};

  std::optional<IsoclinismCertificate> run() {
    phi_ = Mat::Zero(n_, n_);
    y_ = Mat::Zero(dw_, rank_);
    return descend(0);
  }

  std::uint64_t nodes() const { return nodes_; }
  std::uint64_t complete() const { return complete_; }

 private:
  struct Constraint {
    int i;
    int j;
    int pivot;  // column of y_ for basis pairs, -1 otherwise
    Vec coeffs;
  };

  std::optional<IsoclinismCertificate> descend(int j) {
    if (j == n_) {
      ++complete_;
      if (auto theta = solve_theta(B1_, B2_, phi_)) return IsoclinismCertificate{phi_, *theta};
      return std::nullopt;
    }
    for (const Vec& cand : candidates_[static_cast<std::size_t>(j)]) {
      if (++nodes_ > limit_) throw Aborted{};
      phi_.col(j) = cand;
      if (rank(F_, Mat(phi_.leftCols(j + 1))) != j + 1) continue;
      if (!consistent(j)) continue;
      if (auto cert = descend(j + 1)) return cert;
    }
    phi_.col(j).setZero();
    return std::nullopt;
  }

  bool consistent(int j) {
    int filled = 0;
    for (const Constraint& c : levels_[static_cast<std::size_t>(j)]) {
      const Vec value = B2_(phi_.col(c.i), phi_.col(c.j));
      if (c.pivot >= 0) {
        y_.col(c.pivot) = value;
        filled = c.pivot + 1;
      } else if (F_.reduced(Vec(y_.leftCols(c.coeffs.size()) * c.coeffs)) != value) {
        return false;
      }
    }
    if (filled > 0 && rank(F_, Mat(y_.leftCols(filled))) != filled) return false;
    return true;
  }

  const AlternatingMap& B1_;
  const AlternatingMap& B2_;
  PrimeField F_;
  int n_;
  int dw_;
  std::uint64_t limit_;
  int rank_ = 0;
  std::vector<std::vector<Constraint>> levels_;
  std::vector<std::vector<Vec>> candidates_;
  Mat phi_;
  Mat y_;
  std::uint64_t nodes_ = 0;
  std::uint64_t complete_ = 0;
};

}  // namespace

IsoclinismResult find_isoclinism(const AlternatingMap& B1, const AlternatingMap& B2, const Budgets& budgets) {
  IsoclinismResult result;
  if (!(B1.field() == B2.field()) || B1.dim_v() != B2.dim_v() || B1.dim_w() != B2.dim_w()) {
    result.verdict = Verdict::NotIsoclinic;
    result.reason = "p, dimV or dimW differ";
    return result;
  }
  if (B1.image_rank() != B2.image_rank()) {
    result.verdict = Verdict::NotIsoclinic;
    result.reason = "derived subgroups differ in order";
    return result;
  }
  try {
    const std::string diff = fingerprint_difference(fingerprint(B1, budgets), fingerprint(B2, budgets));
    if (!diff.empty()) {
      result.verdict = Verdict::NotIsoclinic;
      result.reason = "fingerprints differ in " + diff;
      return result;
    }
  } catch (const BudgetExceeded&) {
    // Fall through to the search, which has its own limit.
  }

  try {
    scan_size(B1.field().p(), B1.dim_v(), budgets.form_scan, "candidate columns");
    PhiSearch search(B1, B2, budgets);
    try {
      auto cert = search.run();
      result.nodes = search.nodes();
      result.candidates = search.complete();
      if (cert) {
        result.verdict = Verdict::Isoclinic;
        result.certificate = std::move(cert);
        result.reason = "certificate found";
      } else {
        result.verdict = Verdict::NotIsoclinic;
        result.reason = "exhaustive search over GL(V) found no isoclinism";
      }
    } catch (const PhiSearch::Aborted&) {
      result.nodes = search.nodes();
      result.candidates = search.complete();
      result.verdict = Verdict::Inconclusive;
      result.reason = "fingerprints agree; search stopped at the node budget";
    }
  } catch (const BudgetExceeded& e) {
    result.verdict = Verdict::Inconclusive;
    result.reason = std::string("fingerprints agree; ") + e.what();
  }
  return result;
}

const char* to_string(TheoremClass c) {
  switch (c) {
    case TheoremClass::Camina: return "camina";
    case TheoremClass::FullG3: return "full";
    case TheoremClass::QuotientM: return "quotient-M";
    case TheoremClass::QuotientN: return "quotient-N";
    case TheoremClass::Counterexample: return "counterexample";
  }
  return "?";
}

const char* roman_label(TheoremClass c) {
  switch (c) {
    case TheoremClass::Camina: return "(i)";
    case TheoremClass::FullG3: return "(ii)";
    case TheoremClass::QuotientM: return "(iii)";
    case TheoremClass::QuotientN: return "(iv)";
    case TheoremClass::Counterexample: return "counterexample";
  }
  return "?";
}

const char* to_string(Confirmation c) {
  switch (c) {
    case Confirmation::Certificate: return "certificate";
    case Confirmation::Search: return "search";
    case Confirmation::InvariantsOnly: return "invariants-only";
  }
  return "?";
}

AlternatingMap theorem_representative(const PrimeField& F, TheoremClass c) {
  switch (c) {
    case TheoremClass::Camina: return heisenberg_ext(F.p(), 3);
    case TheoremClass::FullG3: return full_lambda2(F, 4);
    case TheoremClass::QuotientM: return quotient(full_lambda2(F, 4), canonical_line(F, 4, 2));
    case TheoremClass::QuotientN: return quotient(full_lambda2(F, 4), canonical_plane(F));
    case TheoremClass::Counterexample: break;
  }
  throw std::invalid_argument("no representative for this class");
}

Classification classify_against_theorem(const AlternatingMap& B, const Budgets& budgets,
                                        const std::optional<IsoclinismCertificate>& hint) {
  const PrimeField& F = B.field();
  if (conjugate_type(B, budgets) != two_class_type(F.p(), 3))
    throw std::invalid_argument("conjugate type is not {1, p^3}");

  Classification out;
  const bool camina = is_camina(B, budgets);
  if (camina && B.dim_w() == 3)
    out.label = TheoremClass::Camina;
  else if (B.dim_v() == 4 && B.dim_w() == 6)
    out.label = TheoremClass::FullG3;
  else if (B.dim_v() == 4 && B.dim_w() == 5)
    out.label = TheoremClass::QuotientM;
  else if (B.dim_v() == 4 && B.dim_w() == 4)
    out.label = TheoremClass::QuotientN;
  else {
    out.detail = "dimV = " + std::to_string(B.dim_v()) + ", dimW = " + std::to_string(B.dim_w()) +
                 (camina ? ", Camina" : ", not Camina");
    return out;
  }

  const AlternatingMap rep = theorem_representative(F, out.label);
  if (hint && verify_certificate(rep, B, *hint)) {
    out.confirmation = Confirmation::Certificate;
    out.certificate = hint;
    out.detail = "supplied certificate verified";
    return out;
  }
  const IsoclinismResult found = find_isoclinism(rep, B, budgets);
  switch (found.verdict) {
    case Verdict::Isoclinic:
      out.confirmation = Confirmation::Search;
      out.certificate = found.certificate;
      out.detail = "certificate found after " + std::to_string(found.nodes) + " nodes";
      break;
    case Verdict::NotIsoclinic:
      out.detail = std::string(roman_label(out.label)) + " invariants match but " + found.reason;
      out.label = TheoremClass::Counterexample;
      break;
    case Verdict::Inconclusive:
      out.confirmation = Confirmation::InvariantsOnly;
      out.detail = found.reason;
      break;
  }
  return out;
}

}  // namespace pgroup
