#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "bifree/rational.hpp"

namespace bifree {

// Dense matrix over exact rationals, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);

  static Matrix identity(std::size_t n);
  static Matrix unit(std::size_t n, std::size_t r, std::size_t c);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const;
  bool is_square() const { return rows_ == cols_; }

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(const Rational& s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const Rational& s) { return a *= s; }
  friend Matrix operator*(const Rational& s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);

  std::vector<Rational> apply(const std::vector<Rational>& v) const;

  // "[[a,b],[c,d]]" with entries as "p/q".
  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Matrix commutator(const Matrix& a, const Matrix& b);

// Basis of the right null space {x : A x = 0}, each vector scaled to integers.
std::vector<std::vector<Rational>> nullspace(const Matrix& a);

// Entries drawn uniformly from [lo, hi].
Matrix random_integer_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng, int lo = -2,
                             int hi = 2);

// Elements of B = M_d(Q) are plain d x d matrices.
using BElem = Matrix;

}  // namespace bifree
