#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bifree/incidence.hpp"
#include "bifree/lr_diagrams.hpp"
#include "bifree/moment_cumulant.hpp"
#include "bifree/verification.hpp"
#include "examples.hpp"
#include "scenario.hpp"

using namespace bifree;
using nlohmann::json;

namespace {

json report_json(const Report& r) {
  json records = json::array();
  for (const auto& rec : r.records) {
    records.push_back({{"key", rec.key}, {"lhs", rec.lhs}, {"rhs", rec.rhs}, {"equal", rec.equal}});
  }
  return {{"suite", r.suite},         {"seed", r.seed},          {"params", r.params},
          {"records", records},       {"count", r.records.size()}, {"mismatches", r.mismatches()},
          {"passed", r.passed()}};
}

std::string canonical_suite(const std::string& name) {
  if (name == "bimult") return "moments";
  if (name == "vanishing") return "cumulants";
  if (name == "series") return "additivity";
  return name;
}

struct Common {
  std::string chi;
  std::string eps;
  std::string pi;
  std::string sigma;
  std::string scenario;
  std::size_t max_n = 0;
  std::size_t depth = 0;
  std::size_t window = 0;
  std::uint64_t seed = 7;
  std::size_t budget = 5000;
  bool json = false;
};

SuiteOptions suite_options(const Common& c, const cli::Scenario* s) {
  SuiteOptions o;
  o.max_n = c.max_n;
  o.seed = c.seed;
  o.depth = c.depth;
  o.window = c.window;
  o.budget = c.budget;
  if (s != nullptr) {
    if (o.max_n == 0 && s->max_n) o.max_n = *s->max_n;
    if (s->seed) o.seed = *s->seed;
    if (s->budget) o.budget = *s->budget;
    if (o.depth == 0 && s->depth) o.depth = *s->depth;
    if (o.window == 0 && s->window) o.window = *s->window;
  }
  return o;
}

int cmd_bnc_enumerate(const Common& c) {
  const SideMap chi = SideMap::parse(c.chi);
  const auto all = enumerate_bnc(chi);
  if (c.json) {
    json out = json::array();
    for (const auto& p : all) out.push_back(p.str());
    std::cout << json{{"chi", chi.str()}, {"partitions", out}}.dump(2) << '\n';
  } else {
    for (const auto& p : all) std::cout << p.str() << '\n';
  }
  return 0;
}

int cmd_bnc_binary(const Common& c, const std::string& op) {
  const SideMap chi = SideMap::parse(c.chi);
  const auto a = BncPartition::parse(c.pi, chi);
  const auto b = BncPartition::parse(c.sigma, chi);
  if (op == "join") std::cout << join_bnc(a, b).str() << '\n';
  if (op == "meet") std::cout << meet_bnc(a, b).str() << '\n';
  if (op == "refines") std::cout << (refines(a, b) ? "true" : "false") << '\n';
  return 0;
}

int cmd_mobius(const Common& c) {
  const SideMap chi = SideMap::parse(c.chi);
  const auto sigma = BncPartition::parse(c.sigma, chi);
  const auto pi = BncPartition::parse(c.pi, chi);
  if (!refines(sigma, pi)) {
    std::cerr << "error: " << sigma.str() << " does not refine " << pi.str() << "; mu is zero off the order\n";
    return 2;
  }
  std::cout << mobius_bnc(sigma, pi).get_str() << '\n';
  return 0;
}

int cmd_kreweras(const Common& c) {
  const SideMap chi = SideMap::parse(c.chi);
  std::cout << kreweras(BncPartition::parse(c.pi, chi)).str() << '\n';
  return 0;
}

int cmd_lr_enumerate(const Common& c, long stratum_k, bool lateral) {
  const SideMap chi = SideMap::parse(c.chi);
  const ShadingMap eps = ShadingMap::parse(c.eps);
  json out = json::array();
  if (lateral) {
    const std::size_t lo = stratum_k < 0 ? 0 : static_cast<std::size_t>(stratum_k);
    const std::size_t hi = stratum_k < 0 ? chi.size() : lo;
    for (std::size_t k = lo; k <= hi; ++k) {
      for (const auto& w : weighted_lateral_stratum(chi, eps, k)) {
        if (c.json) {
          out.push_back({{"diagram", w.diagram.str()}, {"stratum", k}, {"coefficient", w.coefficient}});
        } else {
          std::cout << k << '\t' << w.coefficient << '\t' << w.diagram.str() << '\n';
        }
      }
    }
  } else {
    auto ds = enumerate_lr(chi, eps);
    if (stratum_k >= 0) ds = stratum(ds, static_cast<std::size_t>(stratum_k));
    for (const auto& d : ds) {
      if (c.json) {
        out.push_back({{"diagram", d.str()}, {"stratum", d.top_count()}});
      } else {
        std::cout << d.top_count() << '\t' << d.str() << '\n';
      }
    }
  }
  if (c.json) std::cout << json{{"chi", chi.str()}, {"eps", eps.str()}, {"diagrams", out}}.dump(2) << '\n';
  return 0;
}

int cmd_lr_two_sums(const Common& c) {
  const SideMap chi = SideMap::parse(c.chi);
  const auto r = two_sums_check(BncPartition::parse(c.pi, chi), ShadingMap::parse(c.eps));
  if (c.json) {
    std::cout << json{{"lhs", r.lhs}, {"rhs", r.rhs}, {"equal", r.equal}}.dump(2) << '\n';
  } else {
    std::cout << "lhs " << r.lhs << "\nrhs " << r.rhs << "\nequal " << (r.equal ? "yes" : "no") << '\n';
  }
  return r.equal ? 0 : 1;
}

// Tuple from the scenario, or random operators on B (+) B over M_2 when no scenario is given.
OperatorTuple tuple_for(const Common& c, std::string& origin) {
  if (!c.scenario.empty()) {
    const auto s = cli::load_scenario(c.scenario);
    const auto r = cli::realize(s);
    std::vector<Side> sides;
    std::vector<Op> ops;
    for (const auto* g : cli::scenario_tuple(s, r)) {
      sides.push_back(g->side);
      ops.push_back(g->op);
    }
    origin = "scenario " + c.scenario;
    return OperatorTuple(SideMap(sides), ops, r.b_dim);
  }
  if (c.chi.empty()) throw CLI::ValidationError("--chi", "required without --scenario");
  const SideMap chi = SideMap::parse(c.chi);
  Bimodule x(2, 1);
  std::mt19937_64 rng(c.seed);
  std::vector<Op> ops;
  for (auto side : chi.sides()) ops.push_back(random_side_operator(x, side, rng));
  origin = "random operators on B(+)B over M_2, seed " + std::to_string(c.seed);
  return OperatorTuple(x, chi, ops);
}

int cmd_epi(const Common& c, bool cumulant) {
  std::string origin;
  const OperatorTuple t = tuple_for(c, origin);
  const auto pi = c.pi.empty() ? BncPartition::one(t.chi()) : BncPartition::parse(c.pi, t.chi());
  const BElem v = cumulant ? kappa_pi(pi, t) : e_pi(pi, t);
  if (c.json) {
    json out = {{"chi", t.chi().str()}, {"pi", pi.str()}, {"operators", origin}, {"value", v.str()}};
    if (!cumulant) out["expression"] = e_pi_trace(pi);
    std::cout << out.dump(2) << '\n';
  } else {
    if (!cumulant) std::cout << "expression " << e_pi_trace(pi) << '\n';
    std::cout << "operators " << origin << '\n' << (cumulant ? "kappa " : "E ") << v.str() << '\n';
  }
  return 0;
}

int cmd_verify(const Common& c, const std::string& target, bool mismatches_only) {
  std::vector<Report> reports;
  if (!c.scenario.empty()) {
    const auto s = cli::load_scenario(c.scenario);
    const auto r = cli::realize(s);
    reports.push_back(verify_generators(canonical_suite(target), r.generators, r.b_dim, suite_options(c, &s)));
  } else if (target == "all") {
    for (const auto& s : suites()) reports.push_back(s.run(suite_options(c, nullptr)));
  } else {
    reports.push_back(find_suite(canonical_suite(target)).run(suite_options(c, nullptr)));
  }
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.passed();
  if (c.json) {
    json out = json::array();
    for (const auto& r : reports) out.push_back(report_json(r));
    std::cout << json{{"reports", out}, {"passed", ok}}.dump(2) << '\n';
  } else {
    for (const auto& r : reports) std::cout << r.text(mismatches_only);
    std::cout << (ok ? "PASS" : "FAIL") << '\n';
  }
  return ok ? 0 : 1;
}

int cmd_examples(const std::string& name, std::uint64_t seed) {
  bool ok = true;
  bool found = false;
  for (const auto& e : cli::examples()) {
    if (name != "all" && e.name != name) continue;
    found = true;
    std::cout << "== " << e.name << ": " << e.summary << '\n';
    ok = e.run(std::cout, seed) && ok;
  }
  if (!found) {
    std::cerr << "error: unknown example '" << name << "'; available:";
    for (const auto& e : cli::examples()) std::cerr << ' ' << e.name;
    std::cerr << '\n';
    return 2;
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bi-free probability with amalgamation: lattices, moments, cumulants and operator models"};
  app.require_subcommand(1);
  Common c;
  auto add_chi = [&](CLI::App* s, bool required) {
    auto* o = s->add_option("--chi", c.chi, "side map over {l,r}, e.g. llrlr");
    if (required) o->required();
  };

  auto* bnc = app.add_subcommand("bnc", "bi-non-crossing partitions");
  bnc->require_subcommand(1);
  auto* bnc_enum = bnc->add_subcommand("enumerate", "list BNC(chi)");
  add_chi(bnc_enum, true);
  bnc_enum->add_flag("--json", c.json, "machine-readable output");
  std::string bnc_op;
  for (const char* op : {"join", "meet", "refines"}) {
    auto* s = bnc->add_subcommand(op, std::string(op) + " of --pi and --sigma");
    add_chi(s, true);
    s->add_option("--pi", c.pi, "partition, e.g. 1,3|2")->required();
    s->add_option("--sigma", c.sigma, "partition")->required();
    s->callback([&bnc_op, op] { bnc_op = op; });
  }

  auto* mob = app.add_subcommand("mobius", "mu(sigma, pi) on BNC(chi)");
  add_chi(mob, true);
  mob->add_option("--sigma", c.sigma, "lower partition")->required();
  mob->add_option("--pi", c.pi, "upper partition")->required();

  auto* kre = app.add_subcommand("kreweras", "Kreweras complement on BNC(chi)");
  add_chi(kre, true);
  kre->add_option("--pi", c.pi, "partition")->required();

  auto* lr = app.add_subcommand("lr", "shaded LR diagrams");
  lr->require_subcommand(1);
  auto* lr_enum = lr->add_subcommand("enumerate", "list LR(chi, eps)");
  add_chi(lr_enum, true);
  lr_enum->add_option("--eps", c.eps, "shading, e.g. 1,1,2")->required();
  long stratum_k = -1;
  bool lateral = false;
  lr_enum->add_option("--stratum", stratum_k, "only diagrams with k strings at the top");
  lr_enum->add_flag("--lat", lateral, "lateral closure with expansion coefficients");
  lr_enum->add_flag("--json", c.json, "machine-readable output");
  auto* lr_two = lr->add_subcommand("two-sums", "both sides of the two-sums identity");
  add_chi(lr_two, true);
  lr_two->add_option("--eps", c.eps, "shading, e.g. 1,2,1")->required();
  lr_two->add_option("--pi", c.pi, "partition refining the shading")->required();
  lr_two->add_flag("--json", c.json, "machine-readable output");

  auto* epi = app.add_subcommand("epi", "E_pi of a tuple");
  auto* kap = app.add_subcommand("kappa", "kappa_pi of a tuple");
  for (auto* s : {epi, kap}) {
    add_chi(s, false);
    s->add_option("--pi", c.pi, "partition (default: one block)");
    s->add_option("--scenario", c.scenario, "scenario file with an operator tuple")->check(CLI::ExistingFile);
    s->add_option("--seed", c.seed, "seed for random operators");
    s->add_flag("--json", c.json);
  }

  auto* ver = app.add_subcommand("verify", "run a verification suite");
  std::string target;
  bool mismatches_only = false;
  std::string names = "all";
  for (const auto& s : suites()) names += "|" + s.name;
  ver->add_option("suite", target, names + " (aliases: bimult, vanishing, series)")->required();
  ver->add_option("--scenario", c.scenario, "run on the scenario's operators")->check(CLI::ExistingFile);
  ver->add_option("--max-n", c.max_n, "largest arity or order");
  ver->add_option("--depth", c.depth, "free product depth");
  ver->add_option("--window", c.window, "Haar window");
  ver->add_option("--seed", c.seed, "seed for random instances");
  ver->add_option("--budget", c.budget, "words per order");
  ver->add_flag("--json", c.json, "machine-readable report");
  ver->add_flag("--mismatches-only", mismatches_only, "print failing records only");

  auto* ex = app.add_subcommand("examples", "replay the worked examples");
  std::string example = "all";
  ex->add_option("name", example, "example name or all");
  ex->add_option("--seed", c.seed, "seed for random operators");

  CLI11_PARSE(app, argc, argv);

  try {
    if (bnc->parsed()) return bnc_enum->parsed() ? cmd_bnc_enumerate(c) : cmd_bnc_binary(c, bnc_op);
    if (mob->parsed()) return cmd_mobius(c);
    if (kre->parsed()) return cmd_kreweras(c);
    if (lr->parsed()) return lr_enum->parsed() ? cmd_lr_enumerate(c, stratum_k, lateral) : cmd_lr_two_sums(c);
    if (epi->parsed()) return cmd_epi(c, false);
    if (kap->parsed()) return cmd_epi(c, true);
    if (ver->parsed()) return cmd_verify(c, target, mismatches_only);
    if (ex->parsed()) return cmd_examples(example, c.seed);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
