#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "bifree/matrix.hpp"
#include "bifree/partition.hpp"

namespace bifree {

// Raised when an operator would need a coordinate outside a truncated space.
class TruncationError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

BElem b_identity(std::size_t d);
BElem b_zero(std::size_t d);
BElem random_belem(std::size_t d, std::mt19937_64& rng, int lo = -2, int hi = 2);

// A vector of X = B (+) copies of B, stored sparsely as cell key -> B-coefficient.
// Cell 0 is always the specified copy of B, so p(v) is the coefficient at key 0.
class CellVector {
 public:
  explicit CellVector(std::size_t d = 1) : d_(d) {}
  static CellVector xi(std::size_t d);
  static CellVector single(std::size_t d, std::uint64_t key, const BElem& b);

  std::size_t b_dim() const { return d_; }
  const std::map<std::uint64_t, BElem>& cells() const { return cells_; }
  BElem at(std::uint64_t key) const;
  BElem b_part() const { return at(0); }
  void add(std::uint64_t key, const BElem& b);
  bool is_zero() const { return cells_.empty(); }

  CellVector& operator+=(const CellVector& other);
  CellVector& operator-=(const CellVector& other);
  CellVector& operator*=(const Rational& s);
  friend CellVector operator+(CellVector a, const CellVector& b) { return a += b; }
  friend CellVector operator-(CellVector a, const CellVector& b) { return a -= b; }
  friend CellVector operator*(const Rational& s, CellVector a) { return a *= s; }
  friend bool operator==(const CellVector& a, const CellVector& b) { return a.d_ == b.d_ && a.cells_ == b.cells_; }

  std::string str() const;

 private:
  std::size_t d_;
  std::map<std::uint64_t, BElem> cells_;
};

// A linear operator acting on cell vectors of some space.
class Operator {
 public:
  virtual ~Operator() = default;
  virtual CellVector apply(const CellVector& v) const = 0;
};

using Op = std::shared_ptr<const Operator>;

Op identity_op();
// L_b and R_b on any space whose cells are copies of B with the regular actions.
Op left_mult(const BElem& b);
Op right_mult(const BElem& b);
// The product factors[0] * factors[1] * ...; the last factor acts first.
Op compose(const std::vector<Op>& factors);
Op linear_combination(const std::vector<std::pair<Rational, Op>>& terms);

BElem expectation(const Op& t, std::size_t d);
// E(T_1 ... T_m) for the word (T_1, ..., T_m).
BElem expectation_of_word(const std::vector<Op>& word, std::size_t d);

// X = B (+) X0 with X0 a direct sum of `copies` regular B-B-bimodules.
// Coordinates: cell-major, then the d x d coefficient row-major.
class Bimodule {
 public:
  Bimodule(std::size_t b_dim, std::size_t copies);

  std::size_t b_dim() const { return d_; }
  std::size_t copies() const { return copies_; }
  std::size_t dim_total() const { return (copies_ + 1) * d_ * d_; }
  CellVector xi() const { return CellVector::xi(d_); }

  Matrix left_action(const BElem& b) const;
  Matrix right_action(const BElem& b) const;
  Matrix projection() const;

  std::vector<Rational> coordinates(const CellVector& v) const;
  CellVector from_coordinates(const std::vector<Rational>& x) const;
  CellVector basis_vector(std::size_t index) const;

  friend bool operator==(const Bimodule& a, const Bimodule& b) { return a.d_ == b.d_ && a.copies_ == b.copies_; }

 private:
  std::size_t d_;
  std::size_t copies_;
};

class MatrixOperator : public Operator {
 public:
  MatrixOperator(const Bimodule& x, Matrix m);
  CellVector apply(const CellVector& v) const override;
  const Matrix& matrix() const { return m_; }
  const Bimodule& bimodule() const { return x_; }

 private:
  Bimodule x_;
  Matrix m_;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> columns_;
};

Op make_operator(const Bimodule& x, Matrix m);
Op make_lb(const Bimodule& x, const BElem& b);
Op make_rb(const Bimodule& x, const BElem& b);
BElem expectation(const Bimodule& x, const Op& t);
// Dense matrix of an operator on x; throws TruncationError when a column leaves the space.
Matrix operator_matrix(const Bimodule& x, const Op& t);

// Commutation with the opposite-side B-action, tested on the basis vectors the operator can reach.
bool is_left_operator(const Bimodule& x, const Op& t);
bool is_right_operator(const Bimodule& x, const Op& t);
bool is_side_operator(const Bimodule& x, const Op& t, Side side);

// Basis of L_l(X) (side = Left: commutant of all R_b) or L_r(X), from the exact null space.
std::vector<Matrix> commutant_basis(const Bimodule& x, Side side);
Op random_side_operator(const Bimodule& x, Side side, std::mt19937_64& rng);

struct PairOfBFaces {
  Bimodule bimodule;
  std::vector<Op> left_gens;
  std::vector<Op> right_gens;
};

PairOfBFaces random_pair_of_faces(const Bimodule& x, std::size_t left_count, std::size_t right_count,
                                  std::mt19937_64& rng);
// Throws std::invalid_argument naming the first generator outside its face.
void validate_pair(const PairOfBFaces& pair);

}  // namespace bifree
