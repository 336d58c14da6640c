#include "examples.hpp"

#include <random>

#include "bifree/incidence.hpp"
#include "bifree/lr_diagrams.hpp"
#include "bifree/moment_cumulant.hpp"

namespace bifree::cli {

namespace {

bool expect(std::ostream& out, const std::string& label, const std::string& got, const std::string& want) {
  const bool ok = got == want;
  out << (ok ? "ok  " : "FAIL") << ' ' << label << ": " << got;
  if (!ok) out << " (expected " << want << ")";
  out << '\n';
  return ok;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i == 0 ? "" : sep) + parts[i];
  return s;
}

std::vector<Op> random_ops(const Bimodule& x, const SideMap& chi, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Op> ops;
  for (auto s : chi.sides()) ops.push_back(random_side_operator(x, s, rng));
  return ops;
}

std::string diagram_list(const std::vector<LRDiagram>& ds) {
  std::vector<std::string> parts;
  for (const auto& d : ds) parts.push_back("[" + d.str() + "]");
  return join(parts, " ");
}

bool side_permutation_example(std::ostream& out, std::uint64_t) {
  const auto s = side_permutation(SideMap::parse("llrlr"));
  std::vector<std::string> images;
  for (int v : s.images()) images.push_back(std::to_string(v));
  return expect(out, "s_chi for llrlr", join(images, ","), "1,2,4,5,3");
}

bool bnc_example(std::ostream& out, std::uint64_t) {
  const SideMap chi = SideMap::parse("llrlr");
  bool ok = expect(out, "1,3|2,4,5 bi-non-crossing over llrlr",
                   is_bi_noncrossing(SetPartition::parse("1,3|2,4,5"), chi) ? "true" : "false", "true");
  ok &= expect(out, "|BNC(llrlr)|", std::to_string(enumerate_bnc(chi).size()), "42");
  return ok;
}

bool nine_node_example(std::ostream& out, std::uint64_t seed) {
  const SideMap chi = SideMap::parse("lrllrrlrr");
  const auto pi = BncPartition::parse("1,2|3,5,9|4,7|6,8", chi);
  bool ok = expect(out, "nested expression", e_pi_trace(pi), "E(T_1T_2 L_{E(T_3 L_{E(T_4T_7)} T_5 R_{E(T_6T_8)} T_9)})");
  Bimodule x(2, 1);
  const auto ops = random_ops(x, chi, seed);
  auto T = [&](int k) { return ops[static_cast<std::size_t>(k) - 1]; };
  const BElem inner = expectation_of_word(
      {T(3), left_mult(expectation_of_word({T(4), T(7)}, 2)), T(5), right_mult(expectation_of_word({T(6), T(8)}, 2)), T(9)},
      2);
  const BElem direct = expectation_of_word({T(1), T(2), left_mult(inner)}, 2);
  ok &= expect(out, "recursion value on random operators (seed " + std::to_string(seed) + ")",
               e_pi(pi, OperatorTuple(x, chi, ops)).str(), direct.str());
  const auto sub = restrict(pi, {6, 8});
  ok &= expect(out, "restriction to {6,8}", sub.str() + " over " + sub.chi().str(), "1,2 over rr");
  return ok;
}

bool two_node_example(std::ostream& out, std::uint64_t) {
  const auto ds = enumerate_lr(SideMap::parse("lr"), ShadingMap::parse("1,2"));
  bool ok = expect(out, "LR(lr; 1,2)", std::to_string(ds.size()) + " diagrams", "4 diagrams");
  out << "     " << diagram_list(ds) << '\n';
  const auto zero = stratum(ds, 0);
  ok &= expect(out, "LR_0", diagram_list(zero), "[1|2]");
  if (zero.size() == 1) ok &= expect(out, "LR_0 diagram as a partition", lr0_to_partition(zero[0]).str(), "1|2");
  return ok;
}

bool three_node_example(std::ostream& out, std::uint64_t) {
  const auto ds = enumerate_lr(SideMap::parse("rlr"), ShadingMap::parse("1,1,2"));
  bool ok = expect(out, "LR(rlr; 1,1,2)", std::to_string(ds.size()) + " diagrams", "8 diagrams");
  out << "     " << diagram_list(ds) << '\n';
  const auto zero = stratum(ds, 0);
  std::vector<std::string> parts;
  for (const auto& d : zero) parts.push_back(lr0_to_partition(d).str());
  ok &= expect(out, "LR_0 as partitions", join(parts, " "), "1|2|3 1,2|3");
  return ok;
}

bool decomposition_example(std::ostream& out, std::uint64_t seed) {
  const SideMap chi = SideMap::parse("lrlllrrl");
  Bimodule x(2, 1);
  OperatorTuple t(x, chi, random_ops(x, chi, seed));
  bool ok = true;
  for (Phi phi : {Phi::Moment, Phi::Cumulant}) {
    const std::string tag = phi_name(phi);
    const auto left = BncPartition::parse("1,3,4|2,6|5,7,8", chi);
    const auto o3 = check_property_iii(phi, left, t, {{1, 3, 4}, {5, 7, 8}, {2, 6}});
    ok &= expect(out, tag + " interval factorization V=1,3,4|5,7,8|2,6", o3.equal ? "equal" : "differ", "equal");
    const auto right = BncPartition::parse("1,2,6|3,7|4,5,8", chi);
    for (const std::vector<int>& v : {std::vector<int>{3, 4, 5, 7, 8}, std::vector<int>{4, 5, 8}}) {
      const auto o4 = check_property_iv(phi, right, t, v);
      std::vector<std::string> s;
      for (int e : v) s.push_back(std::to_string(e));
      ok &= expect(out, tag + " nesting V=" + join(s, ","), o4.equal ? "equal" : "differ", "equal");
    }
  }
  return ok;
}

bool small_cumulant_example(std::ostream& out, std::uint64_t seed) {
  Bimodule x(2, 1);
  const SideMap ll = SideMap::parse("ll");
  const auto ops = random_ops(x, ll, seed);
  OperatorTuple t(x, ll, ops);
  const BElem direct =
      expectation_of_word({ops[0], ops[1]}, 2) - expectation_of_word({ops[0], left_mult(expectation(x, ops[1]))}, 2);
  bool ok = expect(out, "kappa(T_1,T_2) over ll", kappa(t).str(), direct.str());
  std::mt19937_64 rng(seed + 1);
  const BElem b = random_belem(2, rng);
  ok &= expect(out, "kappa(T_1, L_b) over ll", kappa(t.with_op(2, left_mult(b))).is_zero() ? "0" : "nonzero", "0");
  const SideMap lr = SideMap::parse("lr");
  const auto ops2 = random_ops(x, lr, seed);
  OperatorTuple t2(x, lr, ops2);
  const BElem rhs = universal_rhs(ShadingMap::parse("1,2"), t2);
  const BElem want = expectation_of_word({ops2[0], left_mult(expectation(x, ops2[1]))}, 2);
  ok &= expect(out, "universal polynomial over lr with shading 1,2", rhs.str(), want.str());
  return ok;
}

bool mobius_example(std::ostream& out, std::uint64_t) {
  const SideMap chi = SideMap::parse("llrlr");
  const auto sigma = BncPartition::parse("1|2|3|4|5", chi);
  const auto pi = BncPartition::parse("1,3|2,4,5", chi);
  const auto lattice = lattice_for(chi);
  const auto row = mobius_recursive_row(*lattice, lattice->index_of(sigma));
  return expect(out, "mu(0, 1,3|2,4,5) over llrlr", mobius_bnc(sigma, pi).get_str(),
                row[lattice->index_of(pi)].get_str());
}

}  // namespace

const std::vector<Example>& examples() {
  static const std::vector<Example> all = {
      {"side-permutation", "reading order of llrlr", side_permutation_example},
      {"bnc", "membership and size of BNC(llrlr)", bnc_example},
      {"mobius", "product formula against recursive inversion on one pair", mobius_example},
      {"nine-node", "nested moment expression of a nine-node partition", nine_node_example},
      {"two-node-lr", "LR diagrams over lr with two shades", two_node_example},
      {"three-node-lr", "LR diagrams over rlr with shades 1,1,2", three_node_example},
      {"decompositions", "interval factorization and nesting on eight nodes", decomposition_example},
      {"small-cumulants", "two-node cumulants, vanishing and universal polynomial", small_cumulant_example},
  };
  return all;
}

}  // namespace bifree::cli
