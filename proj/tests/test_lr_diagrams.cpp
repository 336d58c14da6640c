#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "bifree/incidence.hpp"
#include "bifree/lr_diagrams.hpp"
#include "support.hpp"

using namespace bifree;

namespace {

std::vector<ShadingMap> all_shadings(std::size_t n, int labels) {
  std::vector<ShadingMap> out;
  std::vector<int> s(n, 1);
  while (true) {
    out.emplace_back(s);
    std::size_t k = 0;
    while (k < n && s[k] == labels) s[k++] = 1;
    if (k == n) break;
    ++s[k];
  }
  return out;
}

}  // namespace

TEST_CASE("two-node diagrams") {
  const auto ds = enumerate_lr(SideMap::parse("lr"), ShadingMap::parse("1,2"));
  std::vector<std::string> names;
  for (const auto& d : ds) names.push_back(d.str());
  CHECK(names == std::vector<std::string>{"1|2", "1|2^", "1^|2", "1^|2^ top:1,2"});
  const auto same = enumerate_lr(SideMap::parse("lr"), ShadingMap::parse("1,1"));
  CHECK(same.size() == 4);
  CHECK(stratum(same, 0).size() == 2);
}

TEST_CASE("each stratum is well formed and the strata cover 2^n diagrams") {
  for (std::size_t n = 1; n <= 5; ++n) {
    for (const auto& chi : gen::all_side_maps(n)) {
      for (const auto& eps : all_shadings(n, 2)) {
        const auto ds = enumerate_lr(chi, eps);
        REQUIRE(ds.size() == (std::size_t{1} << n));
        CHECK(std::set<LRDiagram>(ds.begin(), ds.end()).size() == ds.size());
        std::size_t total = 0;
        for (std::size_t k = 0; k <= n; ++k) {
          for (const auto& d : stratum(ds, k)) {
            CHECK(d.top_count() == k);
            // Strings are single-shade and bi-non-crossing.
            for (const auto& blk : d.strings().blocks()) {
              for (int e : blk) CHECK(eps.shade(static_cast<std::size_t>(e)) == eps.shade(static_cast<std::size_t>(blk.front())));
            }
            CHECK(oracle::bi_noncrossing(d.strings(), chi));
          }
          total += stratum(ds, k).size();
        }
        CHECK(total == ds.size());
      }
    }
  }
}

TEST_CASE("bottom stratum maps injectively into bi-non-crossing refinements of the shading") {
  for (std::size_t n = 1; n <= 5; ++n) {
    for (const auto& chi : gen::all_side_maps(n)) {
      for (const auto& eps : all_shadings(n, 3)) {
        const auto eps_partition = SetPartition::from_labels(eps.shades());
        const auto zero = stratum(enumerate_lr(chi, eps), 0);
        std::set<SetPartition> got;
        for (const auto& d : zero) {
          const auto p = lr0_to_partition(d);
          CHECK(p.chi() == chi);
          CHECK(oracle::bi_noncrossing(p.partition(), chi));
          CHECK(oracle::finer(p.partition(), eps_partition));
          got.insert(p.partition());
        }
        REQUIRE(got.size() == zero.size());
      }
    }
  }
}

TEST_CASE("the bottom stratum misses nested same-shade blocks") {
  // One shade over lll: 1,3|2 is bi-non-crossing and below the shading but has no diagram.
  const SideMap chi = SideMap::parse("lll");
  std::set<std::string> got;
  for (const auto& d : stratum(enumerate_lr(chi, ShadingMap::parse("1,1,1")), 0)) got.insert(lr0_to_partition(d).str());
  CHECK(got == std::set<std::string>{"1,2,3", "1,2|3", "1|2,3", "1|2|3"});
  CHECK(enumerate_bnc(chi).size() == 5);
  // With the middle node on another shade the nested block returns.
  std::set<std::string> mixed;
  for (const auto& d : stratum(enumerate_lr(chi, ShadingMap::parse("1,2,1")), 0)) mixed.insert(lr0_to_partition(d).str());
  CHECK(mixed == std::set<std::string>{"1,3|2", "1|2|3"});
}

TEST_CASE("three-node bottom stratum") {
  std::set<std::string> got;
  for (const auto& d : stratum(enumerate_lr(SideMap::parse("rlr"), ShadingMap::parse("1,1,2")), 0)) {
    got.insert(lr0_to_partition(d).str());
  }
  CHECK(got == std::set<std::string>{"1,2|3", "1|2|3"});
}

TEST_CASE("lateral order on the bottom stratum matches lateral order of partitions") {
  for (std::size_t n = 1; n <= 5; ++n) {
    std::mt19937_64 rng(n);
    for (int trial = 0; trial < 12; ++trial) {
      const auto chi = gen::side_map(rng, n);
      const auto eps = gen::shading(rng, n, 2);
      const auto zero = stratum(enumerate_lr(chi, eps), 0);
      for (const auto& a : zero) {
        for (const auto& b : zero) {
          CHECK(is_lateral_refinement(a, b) == is_lateral_refinement(lr0_to_partition(a), lr0_to_partition(b)));
        }
      }
    }
  }
}

TEST_CASE("two sums agree with a brute-force Mobius sum") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    const auto chi = gen::side_map(rng, n);
    const auto eps = gen::shading(rng, n, 3);
    const auto eps_partition = SetPartition::from_labels(eps.shades());
    std::vector<BncPartition> below;
    for (const auto& p : enumerate_bnc(chi)) {
      if (oracle::finer(p.partition(), eps_partition)) below.push_back(p);
    }
    const auto pi = gen::element(below, rng);
    Rational sum = 0;
    for (const auto& s : below) {
      if (refines(pi, s)) sum += mobius_bnc(pi, s);
    }
    const auto r = two_sums_check(pi, eps);
    CHECK(r.equal);
    CHECK(Rational(r.rhs) == sum);
    CHECK(r.lhs == r.rhs);
  }
}

TEST_CASE("lateral refinements") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    const auto chi = gen::side_map(rng, n);
    const auto eps = gen::shading(rng, n, 2);
    const auto d = gen::element(enumerate_lr(chi, eps), rng);
    const auto refs = lateral_refinements(d);
    CHECK(std::find(refs.begin(), refs.end(), d) != refs.end());
    for (const auto& r : refs) {
      CHECK(is_lateral_refinement(r, d));
      CHECK(is_lateral_refinement(r.strings(), d.strings()));
    }
  }
  const auto all = enumerate_lr(SideMap::parse("llr"), ShadingMap::parse("1,1,1"));
  const auto closed = lateral_closure(all);
  for (const auto& d : all) CHECK(std::find(closed.begin(), closed.end(), d) != closed.end());
}

TEST_CASE("weighted strata contain each diagram of the stratum with coefficient one") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + rng() % 4;
    const auto chi = gen::side_map(rng, n);
    const auto eps = gen::shading(rng, n, 2);
    const auto ds = enumerate_lr(chi, eps);
    for (std::size_t k = 0; k <= n; ++k) {
      const auto weighted = weighted_lateral_stratum(chi, eps, k);
      for (const auto& d : stratum(ds, k)) {
        const auto it = std::find_if(weighted.begin(), weighted.end(), [&](const WeightedDiagram& w) { return w.diagram == d; });
        CHECK(it != weighted.end());
      }
      for (const auto& w : weighted) CHECK(w.diagram.top_count() == k);
    }
  }
}
