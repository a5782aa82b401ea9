// pgroup: construct class-2 p-groups, inspect their conjugacy classes,
// canonicalize central subspaces and run the verification sweeps.
//
// Exit codes: 0 success / verified / isoclinic, 1 negative result,
// 2 inconclusive or incomplete, 64 usage or parse error.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "pgroup/canonicalize.hpp"
#include "pgroup/commutator_form.hpp"
#include "pgroup/group_model.hpp"
#include "pgroup/harness.hpp"
#include "pgroup/io.hpp"
#include "pgroup/isoclinism.hpp"

namespace {

using namespace pgroup;

constexpr int kUsage = 64;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string format_type(const std::set<std::uint64_t>& sizes) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (auto s : sizes) {
    os << (first ? "" : ", ") << s;
    first = false;
  }
  os << '}';
  return os.str();
}

std::string power(int p, int e) { return std::to_string(p) + "^" + std::to_string(e); }

GroupModel load_group(const std::string& path) {
  try {
    return parse_group(read_text_file(path));
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(path + ": " + e.what());
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
}

struct ConstructOptions {
  std::string kind;
  int p = 0;
  int r = 0;
  int m = 0;
  std::string file;
  std::string out;
  std::string quotient_spec;
  std::string cocycle = "default";
  std::string squares;
};

int run_construct(const ConstructOptions& o, const Budgets& budgets) {
  std::optional<GroupModel> model;
  if (o.kind == "from-file") {
    if (o.file.empty()) throw UsageError("from-file needs --file");
    model.emplace(load_group(o.file));
  } else {
    if (o.p < 2 || !is_prime(o.p)) throw UsageError("--p must be a prime");
    const PrimeField F(o.p);
    if (o.kind == "g_r") {
      if (o.r < 1) throw UsageError("g_r needs --r >= 1");
      model.emplace(full_lambda2(F, o.r + 1));
    } else if (o.kind == "heisenberg") {
      if (o.m < 1) throw UsageError("heisenberg needs --m >= 1");
      if (checked_pow(o.p, o.m) > 59049) throw UsageError("p^m must not exceed 3^10");
      model.emplace(GroupModel::heisenberg(ExtField(F, o.m)));
    } else {
      throw UsageError("unknown kind '" + o.kind + "' (g_r, heisenberg, from-file)");
    }
  }

  AlternatingMap form = model->form();
  if (!o.quotient_spec.empty()) {
    try {
      form = quotient(form, parse_subspace_spec(form.field(), o.quotient_spec, form.dim_w()));
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--quotient: ") + e.what());
    }
  }
  const bool custom = o.cocycle != "default" || !o.squares.empty() || !o.quotient_spec.empty();
  if (custom) {
    CocycleConvention conv = form.field().p() == 2 ? CocycleConvention::Collection : CocycleConvention::Baer;
    if (o.cocycle == "baer")
      conv = CocycleConvention::Baer;
    else if (o.cocycle == "collection")
      conv = CocycleConvention::Collection;
    else if (o.cocycle == "upper")
      conv = CocycleConvention::Upper;
    else if (o.cocycle != "default")
      throw UsageError("--cocycle must be baer, collection or upper");
    if (conv == CocycleConvention::Baer && form.field().p() == 2) throw UsageError("baer cocycle needs p odd");
    Mat lower = convention_cocycle(form, conv);
    if (!o.squares.empty()) {
      const int n = form.dim_v();
      std::vector<std::string> parts;
      std::stringstream ss(o.squares);
      for (std::string item; std::getline(ss, item, ';');) parts.push_back(item);
      if (static_cast<int>(parts.size()) != n) throw UsageError("--squares needs one W-vector per generator");
      for (int i = 0; i < n; ++i) {
        try {
          lower.row(i * n + i) = parse_vector(form.field(), parts[static_cast<std::size_t>(i)], form.dim_w()).transpose();
        } catch (const std::invalid_argument& e) {
          throw UsageError(std::string("--squares: ") + e.what());
        }
      }
    }
    model.emplace(form, lower);
  }

  const GroupModel& G = *model;
  const int p = G.field().p();
  std::cout << "order      " << power(p, G.order_log_p()) << '\n';
  std::cout << "dimV       " << G.dim_v() << '\n';
  std::cout << "dimW       " << G.dim_w() << '\n';
  std::cout << "|G'|       " << power(p, G.form().image_rank()) << '\n';
  try {
    const GroupStructure s = structural_report(G, budgets);
    std::cout << "|Z(G)|     " << power(p, s.center_log_p) << '\n';
    std::cout << "special    " << (s.special ? "yes" : "no") << '\n';
    std::cout << "exponent   " << s.exponent << '\n';
    std::cout << "generators " << s.min_generators << '\n';
  } catch (const BudgetExceeded& e) {
    std::cout << "structure  skipped (" << e.what() << ")\n";
  }
  std::cout << "type       " << format_type(conjugate_type(G.form(), budgets)) << '\n';
  std::cout << "camina     " << (is_camina(G.form(), budgets) ? "yes" : "no") << '\n';
  if (!o.out.empty()) {
    write_text_file(o.out, write_group(G));
    std::cout << "written    " << o.out << '\n';
  }
  return 0;
}

int run_conjtype(const std::string& path, const Budgets& budgets) {
  const GroupModel G = load_group(path);
  std::cout << "type " << format_type(conjugate_type(G.form(), budgets)) << '\n';
  for (const auto& [b, count] : breadth_profile(G.form(), budgets))
    std::cout << "breadth " << b << ": " << count << '\n';
  return 0;
}

int run_camina(const std::string& path, const Budgets& budgets) {
  const GroupModel G = load_group(path);
  const bool camina = is_camina(G.form(), budgets);
  std::cout << (camina ? "camina" : "not camina") << '\n';
  return camina ? 0 : 1;
}

int run_canonicalize(const std::string& path, const std::string& spec) {
  const GroupModel G = load_group(path);
  Subspace K = Subspace::zero(G.field(), G.dim_w());
  try {
    K = parse_subspace_spec(G.field(), spec, G.dim_w());
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--subspace: ") + e.what());
  }
  CanonResult r = [&] {
    try {
      return canonicalize(G.form(), K);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  std::cout << format_canon_report(r);
  return r.accepted() ? 0 : 1;
}

int run_isoclinic(const std::string& a, const std::string& b, const Budgets& budgets) {
  const GroupModel ga = load_group(a);
  const GroupModel gb = load_group(b);
  const IsoclinismResult res = find_isoclinism(ga.form(), gb.form(), budgets);
  std::cout << to_string(res.verdict) << ": " << res.reason << '\n';
  if (res.certificate) {
    std::cout << "phi\n" << format_matrix(res.certificate->phi);
    std::cout << "theta\n" << format_matrix(res.certificate->theta);
  }
  switch (res.verdict) {
    case Verdict::Isoclinic: return 0;
    case Verdict::NotIsoclinic: return 1;
    case Verdict::Inconclusive: return 2;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Class-2 p-groups of conjugate type {1, p^3}: construction, canonical forms, verification"};
  app.require_subcommand(1);

  Budgets budgets = Budgets::from_env();
  auto add_budgets = [&](CLI::App* sub) {
    sub->add_option("--form-budget", budgets.form_scan, "max vectors in form-level scans");
    sub->add_option("--element-budget", budgets.element_scan, "max elements in element-level scans");
    sub->add_option("--gl-budget", budgets.gl_search, "max search nodes for isoclinism");
    sub->add_option("--sweep-budget", budgets.sweep, "max subspaces per sweep");
  };

  ConstructOptions co;
  auto* construct = app.add_subcommand("construct", "build a group and print its invariants");
  construct->add_option("kind", co.kind, "g_r | heisenberg | from-file")->required();
  construct->add_option("--p", co.p, "prime");
  construct->add_option("--r", co.r, "G_r has r + 1 generators");
  construct->add_option("--m", co.m, "extension degree for heisenberg");
  construct->add_option("--file", co.file, "input group file for from-file");
  construct->add_option("--out", co.out, "write the group file here");
  construct->add_option("--quotient", co.quotient_spec, "central subspace to factor out");
  construct->add_option("--cocycle", co.cocycle, "baer | collection | upper");
  construct->add_option("--squares", co.squares, "f(e_i, e_i) for each generator, ';'-separated W-vectors");
  add_budgets(construct);

  std::string file_a, file_b, spec, target;
  auto* conjtype = app.add_subcommand("conjtype", "conjugate type and breadth profile");
  conjtype->add_option("file", file_a)->required();
  add_budgets(conjtype);

  auto* camina = app.add_subcommand("camina", "Camina test");
  camina->add_option("file", file_a)->required();
  add_budgets(camina);

  auto* canon = app.add_subcommand("canonicalize", "normal form of a central subspace of the free group");
  canon->add_option("file", file_a)->required();
  canon->add_option("--subspace", spec, "rows separated by ';', entries by ','")->required();

  auto* iso = app.add_subcommand("isoclinic", "isoclinism test for two group files");
  iso->add_option("a", file_a)->required();
  iso->add_option("b", file_b)->required();
  add_budgets(iso);

  int vp = 3, vn = 4;
  bool json = false, no_timing = false;
  std::string report_path;
  auto* verify = app.add_subcommand("verify", "run a verification sweep");
  verify->add_option("target", target, "lemma4 | lemma7 | lemma10 | theorem1 | theorem2 | structure")->required();
  verify->add_option("--p", vp, "prime");
  verify->add_option("--n", vn, "number of generators (lemma4)");
  verify->add_flag("--json", json, "print the JSON report instead of the text summary");
  verify->add_flag("--no-timing", no_timing, "omit the timing section from JSON");
  verify->add_option("--report", report_path, "also write the JSON report to this file");
  add_budgets(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*construct) return run_construct(co, budgets);
    if (*conjtype) return run_conjtype(file_a, budgets);
    if (*camina) return run_camina(file_a, budgets);
    if (*canon) return run_canonicalize(file_a, spec);
    if (*iso) return run_isoclinic(file_a, file_b, budgets);
    if (*verify) {
      VerificationReport report = [&] {
        try {
          return pgroup::verify(target, vp, vn, budgets);
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
      }();
      const std::string dumped = report.to_json(!no_timing).dump(2);
      if (!report_path.empty()) write_text_file(report_path, dumped + "\n");
      if (json)
        std::cout << dumped << '\n';
      else
        std::cout << report.text_summary();
      return report.exit_code();
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kUsage;
}
