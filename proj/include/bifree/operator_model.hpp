#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "bifree/base_algebra.hpp"
#include "bifree/lr_diagrams.hpp"
#include "bifree/moment_cumulant.hpp"

namespace bifree {

// Tensor words packed 6 bits per letter, first letter in the lowest bits; 0 is the empty word.
namespace words {
inline constexpr int kBits = 6;
inline constexpr std::uint64_t kMask = 63;
inline constexpr std::size_t kMaxLetters = 10;

std::size_t length(std::uint64_t w);
int first(std::uint64_t w);
int last(std::uint64_t w);
std::uint64_t drop_first(std::uint64_t w);
std::uint64_t drop_last(std::uint64_t w);
std::uint64_t push_front(std::uint64_t w, int letter);
std::uint64_t push_back(std::uint64_t w, int letter);
std::vector<int> letters(std::uint64_t w);
}  // namespace words

// Free product with amalgamation over B of the components, truncated to tensor words of length <= depth.
// Component k (1-based) contributes one letter per copy of B in its X0.
class FreeProduct {
 public:
  FreeProduct(std::vector<Bimodule> components, std::size_t depth);

  std::size_t b_dim() const { return d_; }
  std::size_t depth() const { return depth_; }
  std::size_t component_count() const { return components_.size(); }
  const Bimodule& component(std::size_t k) const { return components_.at(k - 1); }

  int letter(std::size_t k, std::size_t copy) const;
  std::size_t component_of(int letter) const { return letter_component_.at(static_cast<std::size_t>(letter)); }
  std::size_t copy_of(int letter) const { return letter_copy_.at(static_cast<std::size_t>(letter)); }

  // lambda_k(T) for a left operator T on component k; rho_k(T) for a right operator.
  Op lambda(std::size_t k, const Op& t) const;
  Op rho(std::size_t k, const Op& t) const;
  Op lift(std::size_t k, Side side, const Op& t) const { return side == Side::Left ? lambda(k, t) : rho(k, t); }

  // The empty word and every alternating word of length <= depth.
  std::vector<std::uint64_t> basis_words() const;
  std::size_t dim_total() const { return basis_words().size() * d_ * d_; }
  std::string word_str(std::uint64_t w) const;

 private:
  std::vector<Bimodule> components_;
  std::size_t depth_;
  std::size_t d_;
  std::vector<std::size_t> offset_;
  std::vector<std::size_t> letter_component_;
  std::vector<std::size_t> letter_copy_;
};

// Restriction of two operators to vectors reachable from xi: compares them on every basis word.
// Columns that would leave the truncation are skipped.
bool agree_on_basis(const FreeProduct& fp, const Op& a, const Op& b);

// Component operators T_k on X_{eps(k)} acting on side chi(k) of the free product.
struct ComponentTuple {
  SideMap chi;
  ShadingMap eps;  // component index per position
  std::vector<Op> ops;
};

OperatorTuple lift_tuple(const FreeProduct& fp, const ComponentTuple& t);
// E_D(mu_1(T_1), ..., mu_n(T_n)) as a vector of the free product.
CellVector e_d(const FreeProduct& fp, const LRDiagram& d, const ComponentTuple& t);

struct VectorOutcome {
  CellVector lhs;
  CellVector rhs;
  bool equal;
};

// mu_1(T_1) ... mu_n(T_n) xi against the weighted sum of E_D over the lateral strata.
VectorOutcome expansion_check(const FreeProduct& fp, const ComponentTuple& t);

// The window B delta_{-m} (+) ... (+) B delta_m of l^2(Z, B) with specified part B delta_0.
class HaarModel {
 public:
  HaarModel(std::size_t b_dim, std::size_t window);

  std::size_t window() const { return m_; }
  const Bimodule& bimodule() const { return x_; }
  std::uint64_t cell(int j) const;
  int index(std::uint64_t cell) const;
  // U delta_j = delta_{j+1}; throws TruncationError past the window.
  Op u() const { return u_; }
  Op u_inverse() const { return u_inv_; }
  // U^{e_1} U^{e_2} ... as one operator (each e_i = +1 or -1).
  Op word(const std::vector<int>& exponents) const;

 private:
  std::size_t m_;
  Bimodule x_;
  Op u_;
  Op u_inv_;
};

// B-valued group algebra of the free group on g1, g2: vectors are finitely supported sums of
// delta_h b over reduced words h, packed 3 bits per letter (g1, g1^-1, g2, g2^-1 = 1, 2, 3, 4).
class FreeGroupAlgebra {
 public:
  static constexpr std::size_t kMaxLength = 20;

  explicit FreeGroupAlgebra(std::size_t b_dim) : d_(b_dim) {}
  std::size_t b_dim() const { return d_; }

  static int inverse(int letter) { return letter % 2 == 1 ? letter + 1 : letter - 1; }
  static std::uint64_t multiply(std::uint64_t g, std::uint64_t h);
  static std::uint64_t element(const std::vector<int>& letters);

  // delta_h b -> delta_{gh} b and delta_h b -> delta_{hg} b.
  Op left_translation(std::uint64_t g) const;
  Op right_translation(std::uint64_t g) const;

 private:
  std::size_t d_;
};

}  // namespace bifree
