#include "bifree/base_algebra.hpp"

#include <mutex>
#include <sstream>
#include <tuple>

namespace bifree {

BElem b_identity(std::size_t d) { return Matrix::identity(d); }

BElem b_zero(std::size_t d) { return Matrix(d, d); }

BElem random_belem(std::size_t d, std::mt19937_64& rng, int lo, int hi) { return random_integer_matrix(d, d, rng, lo, hi); }

CellVector CellVector::xi(std::size_t d) { return single(d, 0, b_identity(d)); }

CellVector CellVector::single(std::size_t d, std::uint64_t key, const BElem& b) {
  CellVector v(d);
  v.add(key, b);
  return v;
}

BElem CellVector::at(std::uint64_t key) const {
  auto it = cells_.find(key);
  return it == cells_.end() ? b_zero(d_) : it->second;
}

void CellVector::add(std::uint64_t key, const BElem& b) {
  if (b.rows() != d_ || b.cols() != d_) throw std::invalid_argument("coefficient dimension mismatch");
  if (b.is_zero()) return;
  auto it = cells_.find(key);
  if (it == cells_.end()) {
    cells_.emplace(key, b);
    return;
  }
  it->second += b;
  if (it->second.is_zero()) cells_.erase(it);
}

CellVector& CellVector::operator+=(const CellVector& other) {
  if (other.d_ != d_) throw std::invalid_argument("vector dimension mismatch");
  for (const auto& [key, b] : other.cells_) add(key, b);
  return *this;
}

CellVector& CellVector::operator-=(const CellVector& other) {
  if (other.d_ != d_) throw std::invalid_argument("vector dimension mismatch");
  for (const auto& [key, b] : other.cells_) add(key, b * Rational(-1));
  return *this;
}

CellVector& CellVector::operator*=(const Rational& s) {
  if (s == 0) {
    cells_.clear();
    return *this;
  }
  for (auto& [key, b] : cells_) b *= s;
  return *this;
}

std::string CellVector::str() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [key, b] : cells_) {
    if (!first) os << ", ";
    first = false;
    os << key << ": " << b.str();
  }
  os << '}';
  return os.str();
}

namespace {

class IdentityOperator : public Operator {
 public:
  CellVector apply(const CellVector& v) const override { return v; }
};

class LeftMultOperator : public Operator {
 public:
  explicit LeftMultOperator(BElem b) : b_(std::move(b)) {}
  CellVector apply(const CellVector& v) const override {
    CellVector out(v.b_dim());
    for (const auto& [key, x] : v.cells()) out.add(key, b_ * x);
    return out;
  }

 private:
  BElem b_;
};

class RightMultOperator : public Operator {
 public:
  explicit RightMultOperator(BElem b) : b_(std::move(b)) {}
  CellVector apply(const CellVector& v) const override {
    CellVector out(v.b_dim());
    for (const auto& [key, x] : v.cells()) out.add(key, x * b_);
    return out;
  }

 private:
  BElem b_;
};

class ProductOperator : public Operator {
 public:
  explicit ProductOperator(std::vector<Op> factors) : factors_(std::move(factors)) {}
  CellVector apply(const CellVector& v) const override {
    CellVector out = v;
    for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) out = (*it)->apply(out);
    return out;
  }
  const std::vector<Op>& factors() const { return factors_; }

 private:
  std::vector<Op> factors_;
};

class SumOperator : public Operator {
 public:
  explicit SumOperator(std::vector<std::pair<Rational, Op>> terms) : terms_(std::move(terms)) {}
  CellVector apply(const CellVector& v) const override {
    CellVector out(v.b_dim());
    for (const auto& [c, op] : terms_) out += c * op->apply(v);
    return out;
  }

 private:
  std::vector<std::pair<Rational, Op>> terms_;
};

}  // namespace

Op identity_op() { return std::make_shared<IdentityOperator>(); }

Op left_mult(const BElem& b) { return std::make_shared<LeftMultOperator>(b); }

Op right_mult(const BElem& b) { return std::make_shared<RightMultOperator>(b); }

Op compose(const std::vector<Op>& factors) {
  std::vector<Op> flat;
  for (const auto& f : factors) {
    if (!f) throw std::invalid_argument("null operator in product");
    if (auto p = std::dynamic_pointer_cast<const ProductOperator>(f)) {
      flat.insert(flat.end(), p->factors().begin(), p->factors().end());
    } else {
      flat.push_back(f);
    }
  }
  if (flat.size() == 1) return flat.front();
  return std::make_shared<ProductOperator>(std::move(flat));
}

Op linear_combination(const std::vector<std::pair<Rational, Op>>& terms) { return std::make_shared<SumOperator>(terms); }

BElem expectation(const Op& t, std::size_t d) { return t->apply(CellVector::xi(d)).b_part(); }

BElem expectation_of_word(const std::vector<Op>& word, std::size_t d) {
  CellVector v = CellVector::xi(d);
  for (auto it = word.rbegin(); it != word.rend(); ++it) v = (*it)->apply(v);
  return v.b_part();
}

Bimodule::Bimodule(std::size_t b_dim, std::size_t copies) : d_(b_dim), copies_(copies) {
  if (b_dim == 0) throw std::invalid_argument("B must have positive dimension");
}

Matrix Bimodule::left_action(const BElem& b) const {
  if (b.rows() != d_ || b.cols() != d_) throw std::invalid_argument("B-element dimension mismatch");
  const std::size_t dd = d_ * d_;
  Matrix m(dim_total(), dim_total());
  // (b x)_{rc} = sum_k b_{rk} x_{kc}
  for (std::size_t cell = 0; cell <= copies_; ++cell) {
    for (std::size_t r = 0; r < d_; ++r) {
      for (std::size_t c = 0; c < d_; ++c) {
        for (std::size_t k = 0; k < d_; ++k) m(cell * dd + r * d_ + c, cell * dd + k * d_ + c) = b(r, k);
      }
    }
  }
  return m;
}

Matrix Bimodule::right_action(const BElem& b) const {
  if (b.rows() != d_ || b.cols() != d_) throw std::invalid_argument("B-element dimension mismatch");
  const std::size_t dd = d_ * d_;
  Matrix m(dim_total(), dim_total());
  // (x b)_{rc} = sum_k x_{rk} b_{kc}
  for (std::size_t cell = 0; cell <= copies_; ++cell) {
    for (std::size_t r = 0; r < d_; ++r) {
      for (std::size_t c = 0; c < d_; ++c) {
        for (std::size_t k = 0; k < d_; ++k) m(cell * dd + r * d_ + c, cell * dd + r * d_ + k) = b(k, c);
      }
    }
  }
  return m;
}

Matrix Bimodule::projection() const {
  Matrix m(d_ * d_, dim_total());
  for (std::size_t i = 0; i < d_ * d_; ++i) m(i, i) = 1;
  return m;
}

std::vector<Rational> Bimodule::coordinates(const CellVector& v) const {
  if (v.b_dim() != d_) throw std::invalid_argument("vector over a different B");
  std::vector<Rational> x(dim_total());
  const std::size_t dd = d_ * d_;
  for (const auto& [key, b] : v.cells()) {
    if (key > copies_) throw std::invalid_argument("vector has a cell outside the bimodule");
    for (std::size_t r = 0; r < d_; ++r) {
      for (std::size_t c = 0; c < d_; ++c) x[key * dd + r * d_ + c] = b(r, c);
    }
  }
  return x;
}

CellVector Bimodule::from_coordinates(const std::vector<Rational>& x) const {
  if (x.size() != dim_total()) throw std::invalid_argument("coordinate vector length mismatch");
  CellVector v(d_);
  const std::size_t dd = d_ * d_;
  for (std::size_t cell = 0; cell <= copies_; ++cell) {
    BElem b(d_, d_);
    for (std::size_t r = 0; r < d_; ++r) {
      for (std::size_t c = 0; c < d_; ++c) b(r, c) = x[cell * dd + r * d_ + c];
    }
    v.add(cell, b);
  }
  return v;
}

CellVector Bimodule::basis_vector(std::size_t index) const {
  std::vector<Rational> x(dim_total());
  x.at(index) = 1;
  return from_coordinates(x);
}

MatrixOperator::MatrixOperator(const Bimodule& x, Matrix m) : x_(x), m_(std::move(m)) {
  if (m_.rows() != x_.dim_total() || m_.cols() != x_.dim_total()) {
    throw std::invalid_argument("operator matrix is " + std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()) +
                                ", bimodule has dimension " + std::to_string(x_.dim_total()));
  }
  columns_.resize(m_.cols());
  for (std::size_t j = 0; j < m_.cols(); ++j) {
    for (std::size_t i = 0; i < m_.rows(); ++i) {
      if (m_(i, j) != 0) columns_[j].emplace_back(i, m_(i, j));
    }
  }
}

CellVector MatrixOperator::apply(const CellVector& v) const {
  auto x = x_.coordinates(v);
  std::vector<Rational> y(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] == 0) continue;
    for (const auto& [i, a] : columns_[j]) y[i] += a * x[j];
  }
  return x_.from_coordinates(y);
}

Op make_operator(const Bimodule& x, Matrix m) { return std::make_shared<MatrixOperator>(x, std::move(m)); }

Op make_lb(const Bimodule& x, const BElem& b) { return make_operator(x, x.left_action(b)); }

Op make_rb(const Bimodule& x, const BElem& b) { return make_operator(x, x.right_action(b)); }

BElem expectation(const Bimodule& x, const Op& t) { return t->apply(x.xi()).b_part(); }

Matrix operator_matrix(const Bimodule& x, const Op& t) {
  Matrix m(x.dim_total(), x.dim_total());
  for (std::size_t j = 0; j < x.dim_total(); ++j) {
    auto col = x.coordinates(t->apply(x.basis_vector(j)));
    for (std::size_t i = 0; i < col.size(); ++i) m(i, j) = col[i];
  }
  return m;
}

bool is_side_operator(const Bimodule& x, const Op& t, Side side) {
  const std::size_t d = x.b_dim();
  for (std::size_t j = 0; j < x.dim_total(); ++j) {
    CellVector v = x.basis_vector(j);
    CellVector tv(d);
    try {
      tv = t->apply(v);
    } catch (const TruncationError&) {
      continue;
    }
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < d; ++c) {
        Op act = side == Side::Left ? right_mult(Matrix::unit(d, r, c)) : left_mult(Matrix::unit(d, r, c));
        if (t->apply(act->apply(v)) != act->apply(tv)) return false;
      }
    }
  }
  return true;
}

bool is_left_operator(const Bimodule& x, const Op& t) { return is_side_operator(x, t, Side::Left); }

bool is_right_operator(const Bimodule& x, const Op& t) { return is_side_operator(x, t, Side::Right); }

std::vector<Matrix> commutant_basis(const Bimodule& x, Side side) {
  static std::mutex mutex;
  static std::map<std::tuple<std::size_t, std::size_t, Side>, std::vector<Matrix>> cache;
  const auto key = std::make_tuple(x.b_dim(), x.copies(), side);
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const std::size_t n = x.dim_total();
  const std::size_t d = x.b_dim();
  std::vector<Matrix> actions;
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      BElem e = Matrix::unit(d, r, c);
      actions.push_back(side == Side::Left ? x.right_action(e) : x.left_action(e));
    }
  }
  // Unknown T flattened row-major; equations (T A - A T)_{ik} = 0 for each action A.
  Matrix eq(actions.size() * n * n, n * n);
  std::size_t row = 0;
  for (const auto& a : actions) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k, ++row) {
        for (std::size_t j = 0; j < n; ++j) {
          if (a(j, k) != 0) eq(row, i * n + j) += a(j, k);
          if (a(i, j) != 0) eq(row, j * n + k) -= a(i, j);
        }
      }
    }
  }
  std::vector<Matrix> basis;
  for (const auto& v : nullspace(eq)) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m(i, j) = v[i * n + j];
    }
    basis.push_back(std::move(m));
  }
  std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(key, basis).first->second;
}

Op random_side_operator(const Bimodule& x, Side side, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coeff(-2, 2);
  Matrix m(x.dim_total(), x.dim_total());
  for (const auto& b : commutant_basis(x, side)) {
    int c = coeff(rng);
    if (c != 0) m += b * Rational(c);
  }
  return make_operator(x, std::move(m));
}

PairOfBFaces random_pair_of_faces(const Bimodule& x, std::size_t left_count, std::size_t right_count,
                                  std::mt19937_64& rng) {
  PairOfBFaces pair{x, {}, {}};
  for (std::size_t i = 0; i < left_count; ++i) pair.left_gens.push_back(random_side_operator(x, Side::Left, rng));
  for (std::size_t i = 0; i < right_count; ++i) pair.right_gens.push_back(random_side_operator(x, Side::Right, rng));
  return pair;
}

void validate_pair(const PairOfBFaces& pair) {
  for (std::size_t i = 0; i < pair.left_gens.size(); ++i) {
    if (!is_left_operator(pair.bimodule, pair.left_gens[i])) {
      throw std::invalid_argument("left generator " + std::to_string(i) + " does not commute with the right B-action");
    }
  }
  for (std::size_t i = 0; i < pair.right_gens.size(); ++i) {
    if (!is_right_operator(pair.bimodule, pair.right_gens[i])) {
      throw std::invalid_argument("right generator " + std::to_string(i) + " does not commute with the left B-action");
    }
  }
}

}  // namespace bifree
