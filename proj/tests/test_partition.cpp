#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "bifree/partition.hpp"
#include "support.hpp"

using namespace bifree;

TEST_CASE("side permutation reads lefts down then rights up") {
  CHECK(side_permutation(SideMap::parse("llrlr")).images() == std::vector<int>{1, 2, 4, 5, 3});
  for (std::size_t n = 1; n <= 6; ++n) {
    for (const auto& chi : gen::all_side_maps(n)) {
      const auto s = side_permutation(chi);
      REQUIRE(s.images() == oracle::reading_order(chi));
      for (int k = 1; k <= static_cast<int>(n); ++k) CHECK(s.inverse(s(k)) == k);
    }
  }
}

TEST_CASE("parsing and canonical form") {
  const auto p = SetPartition::parse("4,2|3,1|5");
  CHECK(p.str() == "1,3|2,4|5");
  CHECK(SetPartition::parse("2,1|4|3", 4).str() == "1,2|3|4");
  CHECK_THROWS(SetPartition::parse("1,2", 4));
  CHECK(SideMap::parse("lrr").str() == "lrr");
  CHECK(ShadingMap::parse("1,2,1").shades() == std::vector<int>{1, 2, 1});
  CHECK_THROWS(SideMap::parse("lxr"));
  CHECK_THROWS(SetPartition::parse("1,2|2,3"));
  CHECK_THROWS(BncPartition::parse("1,3|2,4", SideMap::parse("llll")));
}

TEST_CASE("enumeration matches brute force over every side map") {
  for (std::size_t n = 0; n <= 7; ++n) {
    for (const auto& chi : gen::all_side_maps(n)) {
      const auto got = enumerate_bnc(chi);
      std::vector<SetPartition> parts;
      for (const auto& p : got) parts.push_back(p.partition());
      std::sort(parts.begin(), parts.end());
      REQUIRE(parts == oracle::all_bnc(chi));
      CHECK(got.size() == oracle::catalan_number(n));
    }
  }
  CHECK(catalan(8) == 1430);
}

TEST_CASE("membership agrees with the crossing oracle") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const auto chi = gen::side_map(rng, 1 + rng() % 7);
    const auto p = gen::element(oracle::all_partitions(chi.size()), rng);
    CHECK(is_bi_noncrossing(p, chi) == oracle::bi_noncrossing(p, chi));
  }
  CHECK(is_bi_noncrossing(SetPartition::parse("1,3|2,4,5"), SideMap::parse("llrlr")));
  CHECK_FALSE(is_noncrossing(SetPartition::parse("1,3|2,4")));
}

TEST_CASE("meet and join are the lattice bounds") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 150; ++trial) {
    const auto chi = gen::side_map(rng, 1 + rng() % 6);
    const auto all = enumerate_bnc(chi);
    const auto& a = gen::element(all, rng);
    const auto& b = gen::element(all, rng);
    const auto j = join_bnc(a, b);
    const auto m = meet_bnc(a, b);
    REQUIRE(refines(a, j));
    REQUIRE(refines(b, j));
    REQUIRE(refines(m, a));
    REQUIRE(refines(m, b));
    for (const auto& c : all) {
      if (refines(a, c) && refines(b, c)) CHECK(refines(j, c));
      if (refines(c, a) && refines(c, b)) CHECK(refines(c, m));
    }
  }
}

TEST_CASE("Kreweras complement matches the interleaving oracle") {
  // K(pi) is the coarsest partition of the primed points keeping 1 1' 2 2' ... n n' crossing-free.
  auto complement = [](const SetPartition& p) {
    const std::size_t n = p.size();
    const auto lp = oracle::labels_of(p);
    SetPartition best;
    std::size_t best_blocks = n + 1;
    for (const auto& s : oracle::all_partitions(n)) {
      const auto ls = oracle::labels_of(s);
      std::vector<int> mixed;
      for (std::size_t i = 0; i < n; ++i) {
        mixed.push_back(lp[i]);
        mixed.push_back(static_cast<int>(n) + ls[i]);
      }
      if (oracle::crossing_free(mixed) && s.block_count() < best_blocks) {
        best = s;
        best_blocks = s.block_count();
      }
    }
    return best;
  };
  for (std::size_t n = 1; n <= 6; ++n) {
    for (const auto& p : enumerate_nc(n)) {
      const auto k = kreweras_nc(p);
      REQUIRE(k == complement(p));
      CHECK(p.block_count() + k.block_count() == n + 1);
    }
  }
}

TEST_CASE("Kreweras complement on BNC is a bijection with the block count identity") {
  for (std::size_t n = 1; n <= 6; ++n) {
    for (const auto& chi : gen::all_side_maps(n)) {
      std::set<SetPartition> images;
      for (const auto& p : enumerate_bnc(chi)) {
        const auto k = kreweras(p);
        REQUIRE(k.chi() == chi);
        REQUIRE(is_bi_noncrossing(k.partition(), chi));
        CHECK(p.block_count() + k.block_count() == n + 1);
        images.insert(k.partition());
      }
      CHECK(images.size() == oracle::catalan_number(n));
    }
  }
  CHECK(kreweras(BncPartition::zero(SideMap::parse("lrl"))) == BncPartition::one(SideMap::parse("lrl")));
}

TEST_CASE("restriction, collapse and grouped embedding") {
  const SideMap chi = SideMap::parse("lrllrrlrr");
  const auto pi = BncPartition::parse("1,2|3,5,9|4,7|6,8", chi);
  const auto sub = restrict(pi, {3, 4, 5, 7, 9});
  CHECK(sub.str() == "1,3,5|2,4");
  CHECK(sub.chi().str() == "llrlr");
  CHECK_THROWS(restrict(pi, {3, 4}));

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto c = gen::side_map(rng, 2 + rng() % 5);
    const auto p = gen::element(enumerate_bnc(c), rng);
    const std::size_t q = 1 + rng() % (c.size() - 1);
    if (c.side(q) != c.side(q + 1)) continue;
    const auto col = collapse(p, q);
    CHECK(col.chi() == c.without(q));
    // Oracle: relabel q+1.. down by one and merge the whole blocks of q and q+1.
    for (int a = 1; a <= static_cast<int>(c.size()); ++a) {
      for (int b = 1; b <= static_cast<int>(c.size()); ++b) {
        const int ia = a <= static_cast<int>(q) ? a : a - 1;
        const int ib = b <= static_cast<int>(q) ? b : b - 1;
        auto label = [&](int x) {
          const int l = p.partition().block_of(x);
          return l == p.partition().block_of(static_cast<int>(q)) ? p.partition().block_of(static_cast<int>(q) + 1) : l;
        };
        const bool together = label(a) == label(b);
        CHECK(col.partition().same_block(ia, ib) == together);
      }
    }
  }

  const auto small = BncPartition::parse("1,3|2", SideMap::parse("lrl"));
  const auto hat = hat_embed(small, {2, 3, 5});
  CHECK(hat.chi().str() == "llrll");
  CHECK(hat.str() == "1,2,4,5|3");
}

TEST_CASE("lateral refinement splits blocks into consecutive runs") {
  auto oracle_lateral = [](const SetPartition& a, const SetPartition& b) {
    if (!oracle::finer(a, b)) return false;
    for (const auto& blk : b.blocks()) {
      std::set<int> closed;
      int current = a.block_of(blk.front());
      for (int e : blk) {
        if (a.block_of(e) != current) {
          closed.insert(current);
          current = a.block_of(e);
          if (closed.count(current)) return false;
        }
      }
    }
    return true;
  };
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto all = oracle::all_partitions(n);
    for (const auto& a : all) {
      for (const auto& b : all) CHECK(is_lateral_refinement(a, b) == oracle_lateral(a, b));
    }
  }
  CHECK(is_lateral_refinement(SetPartition::parse("1,2|3"), SetPartition::parse("1,2,3")));
  CHECK_FALSE(is_lateral_refinement(SetPartition::parse("1,3|2"), SetPartition::parse("1,2,3")));
}
