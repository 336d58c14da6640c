#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bifree/base_algebra.hpp"
#include "bifree/matrix.hpp"

using namespace bifree;

namespace {

Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

// Rank by plain Gaussian elimination on a copy.
std::size_t rank_of(Matrix m) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.rows() && m(pivot, c) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(rank, k), m(pivot, k));
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == rank || m(r, c) == 0) continue;
      const Rational f = m(r, c) / m(rank, c);
      for (std::size_t k = 0; k < m.cols(); ++k) m(r, k) -= f * m(rank, k);
    }
    ++rank;
  }
  return rank;
}

}  // namespace

TEST_CASE("matrix arithmetic") {
  Matrix a(2, 2);
  a(0, 0) = 1;
  a(0, 1) = q(1, 2);
  a(1, 0) = -3;
  a(1, 1) = 2;
  Matrix b = Matrix::identity(2) * q(2);
  b(0, 1) = 1;
  const Matrix ab = a * b;
  CHECK(ab.str() == "[[2,2],[-6,1]]");
  CHECK((a + b - b) == a);
  CHECK(commutator(a, Matrix::identity(2)).is_zero());
  CHECK(Matrix::unit(3, 1, 2)(1, 2) == 1);
  CHECK(a.apply({q(2), q(4)}) == std::vector<Rational>{q(4), q(2)});
  CHECK(parse_rational("-6/4") == q(-3, 2));
  CHECK(to_string(q(-3, 2)) == "-3/2");
  CHECK_THROWS(parse_rational("1/2/3"));
  CHECK_THROWS(parse_rational("x"));
}

TEST_CASE("nullspace has the complementary dimension and is annihilated") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t rows = 1 + rng() % 5;
    const std::size_t cols = 1 + rng() % 6;
    Matrix m = random_integer_matrix(rows, cols, rng, -1, 1);
    const auto basis = nullspace(m);
    CHECK(basis.size() == cols - rank_of(m));
    for (const auto& v : basis) {
      for (const auto& x : m.apply(v)) CHECK(x == 0);
    }
  }
}

TEST_CASE("bimodule actions commute and respect products") {
  std::mt19937_64 rng(4);
  const Bimodule x(2, 2);
  CHECK(x.dim_total() == 12);
  for (int trial = 0; trial < 20; ++trial) {
    const BElem b = random_belem(2, rng);
    const BElem c = random_belem(2, rng);
    CHECK(x.left_action(b) * x.right_action(c) == x.right_action(c) * x.left_action(b));
    CHECK(x.left_action(b * c) == x.left_action(b) * x.left_action(c));
    CHECK(x.right_action(b * c) == x.right_action(c) * x.right_action(b));
  }
  const Matrix p = x.projection();
  CHECK(p.rows() == 4);
  CHECK(p.cols() == x.dim_total());
  // p(L_b xi) = b in coordinates.
  const BElem b = random_belem(2, rng);
  const auto image = p.apply(x.left_action(b).apply(x.coordinates(x.xi())));
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < 2; ++c) CHECK(image[r * 2 + c] == b(r, c));
  }
  for (std::size_t i = 0; i < x.dim_total(); ++i) {
    CHECK(x.coordinates(x.basis_vector(i)) == x.coordinates(x.from_coordinates(x.coordinates(x.basis_vector(i)))));
  }
}

TEST_CASE("expectation of multiplication operators") {
  std::mt19937_64 rng(6);
  const Bimodule x(2, 1);
  const BElem b = random_belem(2, rng);
  const BElem c = random_belem(2, rng);
  CHECK(expectation(left_mult(b), 2) == b);
  CHECK(expectation(right_mult(b), 2) == b);
  CHECK(expectation(x, make_lb(x, b)) == b);
  // L_b L_c xi = bc and R_b R_c xi = cb.
  CHECK(expectation(compose({left_mult(b), left_mult(c)}), 2) == b * c);
  CHECK(expectation(compose({right_mult(b), right_mult(c)}), 2) == c * b);
  CHECK(expectation_of_word({left_mult(b), right_mult(c)}, 2) == b * c);
  CHECK(expectation(identity_op(), 2) == b_identity(2));
  const Op combo = linear_combination({{q(2), left_mult(b)}, {q(-1), right_mult(c)}});
  CHECK(expectation(combo, 2) == b * q(2) - c);
}

TEST_CASE("commutant dimensions and random side operators") {
  // L_l(B (+) B^m) is the commutant of the right action: ((m+1) d)^2 dimensional.
  for (std::size_t d : {1, 2}) {
    for (std::size_t m : {0, 1, 2}) {
      const Bimodule x(d, m);
      const std::size_t want = (m + 1) * d * (m + 1) * d;
      CHECK(commutant_basis(x, Side::Left).size() == want);
      CHECK(commutant_basis(x, Side::Right).size() == want);
    }
  }
  std::mt19937_64 rng(8);
  const Bimodule x(2, 1);
  for (int trial = 0; trial < 10; ++trial) {
    const Op l = random_side_operator(x, Side::Left, rng);
    const Op r = random_side_operator(x, Side::Right, rng);
    CHECK(is_left_operator(x, l));
    CHECK(is_right_operator(x, r));
    const Matrix ml = operator_matrix(x, l);
    CHECK(operator_matrix(x, make_operator(x, ml)) == ml);
  }
  CHECK(is_left_operator(x, make_lb(x, random_belem(2, rng))));
  CHECK(is_right_operator(x, make_rb(x, random_belem(2, rng))));
}

TEST_CASE("faces are validated") {
  std::mt19937_64 rng(10);
  const Bimodule x(2, 1);
  auto pair = random_pair_of_faces(x, 2, 1, rng);
  CHECK(pair.left_gens.size() == 2);
  CHECK_NOTHROW(validate_pair(pair));
  Matrix bad = Matrix::unit(x.dim_total(), 0, 5);
  if (!is_left_operator(x, make_operator(x, bad))) {
    pair.left_gens.push_back(make_operator(x, bad));
    CHECK_THROWS_AS(validate_pair(pair), std::invalid_argument);
  }
}

TEST_CASE("cell vectors") {
  const BElem one = b_identity(2);
  CellVector v = CellVector::xi(2);
  CHECK(v.b_part() == one);
  CellVector w = CellVector::single(2, 3, one);
  CellVector s = v + w;
  CHECK(s.at(3) == one);
  CHECK((s - w) == v);
  CHECK((q(0) * s).is_zero());
  CHECK(s.at(7) == b_zero(2));
}
