#pragma once

#include <cstddef>
#include <memory>
#include <unordered_map>
#include <vector>

#include "bifree/partition.hpp"
#include "bifree/rational.hpp"

namespace bifree {

// BNC(chi) with its order relation and Mobius values on every comparable pair.
class Lattice {
 public:
  static constexpr std::size_t kMaxArity = 8;

  explicit Lattice(SideMap chi);

  const SideMap& chi() const { return chi_; }
  std::size_t size() const { return elements_.size(); }
  const BncPartition& at(std::size_t i) const { return elements_.at(i); }
  const std::vector<BncPartition>& elements() const { return elements_; }
  std::size_t index_of(const BncPartition& p) const;
  std::size_t zero_index() const { return zero_; }
  std::size_t one_index() const { return one_; }

  bool leq(std::size_t i, std::size_t j) const { return leq_[i * size() + j] != 0; }
  // Elements above i (including i), ascending by index.
  const std::vector<std::size_t>& up_set(std::size_t i) const { return up_.at(i); }
  // Elements below j (including j), ascending by index.
  const std::vector<std::size_t>& down_set(std::size_t j) const { return down_.at(j); }

  // Position of the comparable pair (i, j) in a dense pair table, or -1.
  long pair_id(std::size_t i, std::size_t j) const;
  std::size_t pair_count() const { return pair_offset_.back(); }

  // Product-formula Mobius value; zero for incomparable pairs.
  const Rational& mobius(std::size_t i, std::size_t j) const;
  std::size_t join(std::size_t i, std::size_t j) const;

 private:
  SideMap chi_;
  std::vector<BncPartition> elements_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<char> leq_;
  std::vector<std::vector<std::size_t>> up_;
  std::vector<std::vector<std::size_t>> down_;
  std::vector<std::size_t> pair_offset_;
  std::vector<Rational> mobius_;
  std::size_t zero_ = 0;
  std::size_t one_ = 0;
};

// Shared, immutable lattice per side map.
std::shared_ptr<const Lattice> lattice_for(const SideMap& chi);

// Scalar function on comparable pairs (sigma, pi), sigma <= pi, of one BNC(chi).
class IntervalFunction {
 public:
  explicit IntervalFunction(std::shared_ptr<const Lattice> lattice);

  const Lattice& lattice() const { return *lattice_; }
  const std::shared_ptr<const Lattice>& lattice_ptr() const { return lattice_; }
  Rational operator()(std::size_t i, std::size_t j) const;
  Rational value(const BncPartition& sigma, const BncPartition& pi) const;
  void set(std::size_t i, std::size_t j, Rational v);

  friend bool operator==(const IntervalFunction& a, const IntervalFunction& b);

 private:
  std::shared_ptr<const Lattice> lattice_;
  std::vector<Rational> values_;
};

Rational delta(const BncPartition& sigma, const BncPartition& pi);
Rational zeta(const BncPartition& sigma, const BncPartition& pi);

IntervalFunction delta_function(std::shared_ptr<const Lattice> lattice);
IntervalFunction zeta_function(std::shared_ptr<const Lattice> lattice);
IntervalFunction mobius_function(std::shared_ptr<const Lattice> lattice);
IntervalFunction convolve(const IntervalFunction& f, const IntervalFunction& g);

// Product formula through the NC interval factorization.
Rational mobius_bnc(const BncPartition& sigma, const BncPartition& pi);
// mu(s, s) = 1, mu(s, p) = -sum_{s <= r < p} mu(s, r); evaluated on a whole row.
std::vector<Rational> mobius_recursive_row(const Lattice& lattice, std::size_t sigma);

// Given f(pi) = sum_{rho <= pi} g(rho) (checked), compares
// sum_{sigma <= tau <= pi} f(tau) mu(tau, pi) with sum_{omega v sigma = pi} g(omega).
bool partial_mobius_inversion_check(const Lattice& lattice, const std::vector<Rational>& f,
                                    const std::vector<Rational>& g, std::size_t sigma, std::size_t pi);

}  // namespace bifree
