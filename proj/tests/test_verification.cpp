#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bifree/verification.hpp"

using namespace bifree;

TEST_CASE("report text layout and status") {
  Report r;
  r.suite = "demo";
  r.seed = 3;
  r.params = "max_n 2";
  CHECK_FALSE(r.passed());
  r.add("first", "1", "1", true);
  r.add("second", "1", "2", false);
  CHECK(r.mismatches() == 1);
  CHECK_FALSE(r.passed());
  CHECK(r.text() == "# suite demo seed 3 max_n 2\nok\tfirst\t1\t1\nFAIL\tsecond\t1\t2\n# 2 records, 1 mismatches\n");
  CHECK(r.text(true) == "# suite demo seed 3 max_n 2\nFAIL\tsecond\t1\t2\n# 2 records, 1 mismatches\n");
  Report s;
  s.add("x", b_identity(1), b_identity(1));
  CHECK(s.passed());
  r.append(s, "sub ");
  CHECK(r.records.back().key == "sub x");
}

TEST_CASE("suite registry") {
  CHECK(suites().size() == 12);
  for (std::size_t i = 0; i < suites().size(); ++i) CHECK(suites()[i].criterion == static_cast<int>(i + 1));
  CHECK(find_suite("haar").name == "haar");
  CHECK_THROWS_AS(find_suite("nope"), std::invalid_argument);
}

TEST_CASE("small suites pass and are deterministic") {
  SuiteOptions o;
  o.max_n = 3;
  for (const auto& s : suites()) {
    const Report a = s.run(o);
    CHECK_MESSAGE(a.passed(), s.name);
    CHECK(a.text() == s.run(o).text());
  }
}

TEST_CASE("a family paired with itself is not bi-free") {
  std::mt19937_64 rng(1);
  const Bimodule x(2, 1);
  const Op a = random_side_operator(x, Side::Left, rng);
  const Op b = random_side_operator(x, Side::Right, rng);
  const std::vector<Generator> gens{{"a", Side::Left, 1, a}, {"b", Side::Right, 1, b}, {"a2", Side::Left, 2, a},
                                    {"b2", Side::Right, 2, b}};
  CHECK(bifreeness_report(gens, 2, {3, 5000, false, true}).mismatches() > 0);
}

TEST_CASE("Haar conjugation needs opposite shifts on the right") {
  std::mt19937_64 rng(2);
  const auto pair = random_pair_of_faces(Bimodule(2, 1), 1, 1, rng);
  CHECK(conjugation_check(pair, 6, 7, 3, HaarRight::Opposite).passed());
  CHECK(conjugation_check(pair, 6, 7, 3, HaarRight::Same).mismatches() > 0);
}

TEST_CASE("commuting faces") {
  std::mt19937_64 rng(3);
  const auto free_faces = free_commuting_faces(1, rng);
  CHECK_NOTHROW(check_commuting_faces_hypotheses(free_faces));
  const auto ok = commuting_faces_check(free_faces, 3, 5000);
  CHECK(ok.left_only.passed());
  CHECK(ok.bifree.passed());
  const auto dependent = dependent_commuting_faces(1, rng);
  const auto bad = commuting_faces_check(dependent, 3, 5000);
  CHECK(bad.left_only.mismatches() > 0);
  CHECK(bad.bifree.mismatches() > 0);
}

TEST_CASE("supplied generators") {
  std::mt19937_64 rng(4);
  const FreeProduct fp({Bimodule(2, 1), Bimodule(2, 1)}, 4);
  std::vector<Generator> gens;
  for (std::size_t k = 1; k <= 2; ++k) {
    gens.push_back({"l" + std::to_string(k), Side::Left, static_cast<int>(k),
                    fp.lambda(k, random_side_operator(fp.component(k), Side::Left, rng))});
    gens.push_back({"r" + std::to_string(k), Side::Right, static_cast<int>(k),
                    fp.rho(k, random_side_operator(fp.component(k), Side::Right, rng))});
  }
  SuiteOptions o;
  o.max_n = 3;
  for (const char* s : {"bifree", "moments", "cumulants", "products"}) CHECK_MESSAGE(verify_generators(s, gens, 2, o).passed(), s);
  CHECK_THROWS_AS(verify_generators("lattice", gens, 2, o), std::invalid_argument);
}
