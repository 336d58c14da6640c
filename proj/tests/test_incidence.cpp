#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "bifree/incidence.hpp"
#include "support.hpp"

using namespace bifree;

namespace {

// mu(s, s) = 1 and mu(s, p) = -sum_{s <= r < p} mu(s, r), over the brute-force element list.
std::map<std::pair<SetPartition, SetPartition>, Rational> brute_mobius(const SideMap& chi) {
  const auto all = oracle::all_bnc(chi);
  std::map<std::pair<SetPartition, SetPartition>, Rational> mu;
  for (const auto& s : all) {
    std::vector<SetPartition> above;
    for (const auto& p : all) {
      if (oracle::finer(s, p)) above.push_back(p);
    }
    std::sort(above.begin(), above.end(),
              [](const SetPartition& a, const SetPartition& b) { return a.block_count() > b.block_count(); });
    for (const auto& p : above) {
      Rational v = p == s ? Rational(1) : Rational(0);
      if (!(p == s)) {
        for (const auto& r : above) {
          if (!(r == p) && oracle::finer(r, p)) v -= mu.at({s, r});
        }
      }
      mu[{s, p}] = v;
    }
  }
  return mu;
}

}  // namespace

TEST_CASE("product formula matches brute-force recursive inversion") {
  for (std::size_t n = 1; n <= 5; ++n) {
    for (const auto& chi : gen::all_side_maps(n)) {
      const auto mu = brute_mobius(chi);
      const Lattice lattice(chi);
      for (const auto& [pair, value] : mu) {
        const BncPartition s(pair.first, chi);
        const BncPartition p(pair.second, chi);
        REQUIRE(mobius_bnc(s, p) == value);
        CHECK(lattice.mobius(lattice.index_of(s), lattice.index_of(p)) == value);
      }
    }
  }
}

TEST_CASE("mobius from the bottom factors over blocks") {
  // mu(0, pi) = prod over blocks V of (-1)^{|V|-1} Catalan(|V|-1).
  for (std::size_t n = 1; n <= 6; ++n) {
    std::mt19937_64 rng(n);
    for (int trial = 0; trial < 6; ++trial) {
      const auto chi = gen::side_map(rng, n);
      for (const auto& p : enumerate_bnc(chi)) {
        Rational want = 1;
        for (const auto& b : p.blocks()) {
          const auto c = static_cast<long>(oracle::catalan_number(b.size() - 1));
          want *= (b.size() % 2 == 1 ? c : -c);
        }
        CHECK(mobius_bnc(BncPartition::zero(chi), p) == want);
      }
    }
  }
  CHECK(mobius_bnc(BncPartition::zero(SideMap::parse("llrlr")), BncPartition::parse("1,3|2,4,5", SideMap::parse("llrlr"))) == -2);
  CHECK(mobius_bnc(BncPartition::zero(SideMap::parse("lrlrlr")), BncPartition::one(SideMap::parse("lrlrlr"))) == -42);
}

TEST_CASE("zeta and mobius are mutually inverse") {
  for (std::size_t n = 0; n <= 5; ++n) {
    for (const auto& chi : gen::all_side_maps(n)) {
      const auto lattice = lattice_for(chi);
      const auto delta = delta_function(lattice);
      CHECK(convolve(mobius_function(lattice), zeta_function(lattice)) == delta);
      CHECK(convolve(zeta_function(lattice), mobius_function(lattice)) == delta);
    }
  }
}

TEST_CASE("recursive row equals the product formula") {
  const auto lattice = lattice_for(SideMap::parse("lrrlll"));
  for (std::size_t s = 0; s < lattice->size(); ++s) {
    const auto row = mobius_recursive_row(*lattice, s);
    for (std::size_t p = 0; p < lattice->size(); ++p) CHECK(row[p] == lattice->mobius(s, p));
  }
}

TEST_CASE("lattice bookkeeping") {
  const SideMap chi = SideMap::parse("rlrl");
  const auto lattice = lattice_for(chi);
  CHECK(lattice.get() == lattice_for(chi).get());
  CHECK(lattice->size() == 14);
  CHECK(lattice->at(lattice->zero_index()) == BncPartition::zero(chi));
  CHECK(lattice->at(lattice->one_index()) == BncPartition::one(chi));
  std::size_t comparable = 0;
  for (std::size_t i = 0; i < lattice->size(); ++i) {
    for (std::size_t j = 0; j < lattice->size(); ++j) {
      CHECK(lattice->leq(i, j) == refines(lattice->at(i), lattice->at(j)));
      CHECK((lattice->pair_id(i, j) >= 0) == lattice->leq(i, j));
      comparable += lattice->leq(i, j) ? 1 : 0;
      CHECK(lattice->at(lattice->join(i, j)) == join_bnc(lattice->at(i), lattice->at(j)));
    }
  }
  CHECK(lattice->pair_count() == comparable);
  CHECK(delta(lattice->at(0), lattice->at(0)) == 1);
  CHECK(zeta(lattice->at(lattice->zero_index()), lattice->at(lattice->one_index())) == 1);
  CHECK(zeta(lattice->at(lattice->one_index()), lattice->at(lattice->zero_index())) == 0);
}

TEST_CASE("partial Mobius inversion holds for random summable data") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const auto chi = gen::side_map(rng, 2 + rng() % 4);
    const auto lattice = lattice_for(chi);
    std::vector<Rational> g(lattice->size());
    for (auto& v : g) {
      v = Rational(static_cast<long>(rng() % 11) - 5, 1 + static_cast<long>(rng() % 3));
      v.canonicalize();
    }
    std::vector<Rational> f(lattice->size());
    for (std::size_t p = 0; p < lattice->size(); ++p) {
      for (std::size_t r : lattice->down_set(p)) f[p] += g[r];
    }
    for (std::size_t s = 0; s < lattice->size(); ++s) {
      for (std::size_t p : lattice->up_set(s)) CHECK(partial_mobius_inversion_check(*lattice, f, g, s, p));
    }
  }
}
