#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bifree/moment_cumulant.hpp"
#include "support.hpp"

using namespace bifree;

namespace {

std::vector<Op> random_ops(const Bimodule& x, const SideMap& chi, std::mt19937_64& rng) {
  std::vector<Op> ops;
  for (auto s : chi.sides()) ops.push_back(random_side_operator(x, s, rng));
  return ops;
}

// Nested moment for left operators: evaluate an interval block, fold it into its left neighbour
// as T_k L_b (or L_b T_{l+1} when it starts the word), and recurse.
BElem left_nested_moment(const SetPartition& p, std::vector<Op> ops, std::size_t d) {
  if (p.block_count() <= 1) return expectation_of_word(ops, d);
  const auto labels = oracle::labels_of(p);
  const std::size_t n = labels.size();
  for (std::size_t a = n; a-- > 0;) {
    std::size_t b = a;
    while (b + 1 < n && labels[b + 1] == labels[a]) ++b;
    const bool interval = std::count(labels.begin(), labels.end(), labels[a]) == static_cast<long>(b - a + 1);
    if (!interval || (a == 0 && b == n - 1)) continue;
    const BElem inner = expectation_of_word(std::vector<Op>(ops.begin() + static_cast<long>(a), ops.begin() + static_cast<long>(b) + 1), d);
    std::vector<int> rest;
    std::vector<Op> rest_ops;
    for (std::size_t k = 0; k < n; ++k) {
      if (k >= a && k <= b) continue;
      rest.push_back(labels[k]);
      Op t = ops[k];
      if (a > 0 && k == a - 1) t = compose({t, left_mult(inner)});
      if (a == 0 && k == b + 1) t = compose({left_mult(inner), t});
      rest_ops.push_back(t);
    }
    return left_nested_moment(SetPartition::from_labels(rest), rest_ops, d);
  }
  throw std::logic_error("no interval block");
}

BElem b_sample(std::mt19937_64& rng) { return random_belem(2, rng); }

}  // namespace

TEST_CASE("nested expression of the nine-node example") {
  const SideMap chi = SideMap::parse("lrllrrlrr");
  CHECK(e_pi_trace(BncPartition::parse("1,2|3,5,9|4,7|6,8", chi)) ==
        "E(T_1T_2 L_{E(T_3 L_{E(T_4T_7)} T_5 R_{E(T_6T_8)} T_9)})");
  CHECK(e_pi_trace(BncPartition::one(SideMap::parse("lrl"))) == "E(T_1T_2T_3)");
}

TEST_CASE("full partition gives the plain expectation") {
  std::mt19937_64 rng(1);
  const Bimodule x(2, 1);
  for (int trial = 0; trial < 40; ++trial) {
    const auto chi = gen::side_map(rng, 1 + rng() % 5);
    const auto ops = random_ops(x, chi, rng);
    CHECK(e_pi(BncPartition::one(chi), OperatorTuple(x, chi, ops)) == expectation_of_word(ops, 2));
  }
}

TEST_CASE("left tuples follow the nested operator-valued moment") {
  std::mt19937_64 rng(2);
  const Bimodule x(2, 1);
  for (std::size_t n = 1; n <= 5; ++n) {
    const SideMap chi = SideMap::constant(Side::Left, n);
    const auto ops = random_ops(x, chi, rng);
    const OperatorTuple t(x, chi, ops);
    for (const auto& p : enumerate_bnc(chi)) {
      CHECK(e_pi(p, t) == left_nested_moment(p.partition(), ops, 2));
    }
  }
}

TEST_CASE("moments and cumulants round trip") {
  std::mt19937_64 rng(3);
  const Bimodule x(2, 1);
  for (int trial = 0; trial < 25; ++trial) {
    const auto chi = gen::side_map(rng, 1 + rng() % 4);
    const OperatorTuple t(x, chi, random_ops(x, chi, rng));
    const MomentTable table(t);
    for (const auto& p : enumerate_bnc(chi)) {
      CHECK(moment_from_cumulants(p, t) == table.moment(p));
      CHECK(kappa_pi(p, t) == table.cumulant(p));
      CHECK(table.moment(p) == e_pi(p, t));
    }
    CHECK(kappa(t) == table.cumulant(BncPartition::one(chi)));
  }
}

TEST_CASE("two-point cumulant") {
  std::mt19937_64 rng(4);
  const Bimodule x(2, 1);
  for (const char* c : {"ll", "lr", "rl", "rr"}) {
    const SideMap chi = SideMap::parse(c);
    const auto ops = random_ops(x, chi, rng);
    const OperatorTuple t(x, chi, ops);
    CHECK(kappa(t) == expectation_of_word(ops, 2) - e_pi(BncPartition::zero(chi), t));
  }
  const SideMap ll = SideMap::parse("ll");
  const auto ops = random_ops(x, ll, rng);
  const BElem direct = expectation_of_word(ops, 2) - expectation_of_word({ops[0], left_mult(expectation(x, ops[1]))}, 2);
  CHECK(kappa(OperatorTuple(x, ll, ops)) == direct);
}

TEST_CASE("cumulants vanish with a multiplication entry") {
  std::mt19937_64 rng(5);
  const Bimodule x(2, 1);
  for (int trial = 0; trial < 40; ++trial) {
    const auto chi = gen::side_map(rng, 2 + rng() % 3);
    const OperatorTuple t(x, chi, random_ops(x, chi, rng));
    const std::size_t k = 1 + rng() % chi.size();
    const Op m = chi.side(k) == Side::Left ? make_lb(x, b_sample(rng)) : make_rb(x, b_sample(rng));
    CHECK(kappa(t.with_op(k, m)).is_zero());
  }
}

TEST_CASE("constant shading reduces the universal polynomial to the plain moment") {
  std::mt19937_64 rng(6);
  const Bimodule x(2, 1);
  for (int trial = 0; trial < 15; ++trial) {
    const auto chi = gen::side_map(rng, 1 + rng() % 4);
    const auto ops = random_ops(x, chi, rng);
    const OperatorTuple t(x, chi, ops);
    CHECK(universal_rhs(ShadingMap(std::vector<int>(chi.size(), 1)), t) == expectation_of_word(ops, 2));
    const auto lattice = lattice_for(chi);
    const auto one = SetPartition::coarsest(chi.size());
    for (std::size_t p = 0; p < lattice->size(); ++p) {
      CHECK(universal_coefficient(*lattice, p, one) == (p == lattice->one_index() ? 1 : 0));
    }
  }
}

TEST_CASE("singleton groups leave cumulants unchanged") {
  std::mt19937_64 rng(7);
  const Bimodule x(2, 1);
  for (int trial = 0; trial < 15; ++trial) {
    const auto chi = gen::side_map(rng, 1 + rng() % 4);
    const OperatorTuple t(x, chi, random_ops(x, chi, rng));
    std::vector<int> ends;
    for (std::size_t k = 1; k <= chi.size(); ++k) ends.push_back(static_cast<int>(k));
    const auto& p = gen::element(enumerate_bnc(chi), rng);
    CHECK(product_cumulant_rhs(p, ends, t) == kappa_pi(p, t));
    CHECK(grouped_products(t, ends).size() == t.size());
  }
}

TEST_CASE("series with identity insertions are plain moments and cumulants") {
  std::mt19937_64 rng(8);
  const Bimodule x(2, 1);
  for (int trial = 0; trial < 10; ++trial) {
    const auto chi = gen::side_map(rng, 1 + rng() % 4);
    const auto ops = random_ops(x, chi, rng);
    std::vector<SeriesLetter> word;
    for (std::size_t k = 0; k < ops.size(); ++k) word.push_back({ops[k], chi.side(k + 1)});
    const std::vector<BElem> ones(ops.size() - 1, b_identity(2));
    CHECK(moment_series(word, ones, 2) == expectation_of_word(ops, 2));
    CHECK(cumulant_series(word, ones, 2) == kappa(OperatorTuple(x, chi, ops)));
  }
}

TEST_CASE("sliding properties hold on random instances") {
  std::mt19937_64 rng(9);
  const Bimodule x(2, 1);
  for (int trial = 0; trial < 40; ++trial) {
    const auto chi = gen::side_map(rng, 1 + rng() % 4);
    const OperatorTuple t(x, chi, random_ops(x, chi, rng));
    const auto p = gen::element(enumerate_bnc(chi), rng);
    for (Phi phi : {Phi::Moment, Phi::Cumulant}) {
      CHECK(check_property_i(phi, p, t, b_sample(rng)).equal);
      if (chi.size() >= 2) {
        const std::size_t q = 2 + rng() % (chi.size() - 1);
        CHECK(check_property_ii(phi, p, t, q, b_sample(rng)).equal);
      }
    }
  }
}

TEST_CASE("merging adjacent same-side entries") {
  std::mt19937_64 rng(10);
  const Bimodule x(2, 1);
  for (int trial = 0; trial < 30; ++trial) {
    const auto chi = gen::side_map(rng, 2 + rng() % 3);
    const std::size_t q = 1 + rng() % (chi.size() - 1);
    if (chi.side(q) != chi.side(q + 1)) continue;
    const OperatorTuple t(x, chi, random_ops(x, chi, rng));
    CHECK(check_cumulant_two_block_form(t, q).equal);
    for (const auto& p : enumerate_bnc(chi)) {
      if (p.partition().same_block(static_cast<int>(q), static_cast<int>(q + 1))) {
        CHECK(check_moment_collapse(p, t, q).equal);
      }
    }
    for (const auto& p : enumerate_bnc(chi.without(q))) CHECK(check_cumulant_expansion(p, t, q).equal);
  }
}

TEST_CASE("interval test") {
  const SideMap chi = SideMap::parse("lrlllrrl");
  CHECK(is_chi_interval(chi, {1, 3, 4}));
  CHECK(is_chi_interval(chi, {5, 7, 8}));
  CHECK_FALSE(is_chi_interval(chi, {1, 4}));
}

TEST_CASE("tuples validate sides") {
  std::mt19937_64 rng(11);
  const Bimodule x(2, 1);
  const Op r = make_operator(x, Matrix::unit(x.dim_total(), 0, 5));
  if (!is_left_operator(x, r)) CHECK_THROWS(OperatorTuple(x, SideMap::parse("l"), {r}));
  CHECK_THROWS(OperatorTuple(SideMap::parse("ll"), {identity_op()}, 2));
}
