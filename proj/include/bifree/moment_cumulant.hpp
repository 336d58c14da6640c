#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "bifree/base_algebra.hpp"
#include "bifree/incidence.hpp"
#include "bifree/partition.hpp"

namespace bifree {

// (T_1, ..., T_n) with T_k acting on the side chi(k); all operators act on one space over M_d(Q).
class OperatorTuple {
 public:
  OperatorTuple(SideMap chi, std::vector<Op> ops, std::size_t b_dim);
  // Also checks T_k in L_{chi(k)}(x).
  OperatorTuple(const Bimodule& x, SideMap chi, std::vector<Op> ops);

  const SideMap& chi() const { return chi_; }
  const std::vector<Op>& ops() const { return ops_; }
  const Op& op(std::size_t k) const { return ops_.at(k - 1); }
  std::size_t size() const { return ops_.size(); }
  std::size_t b_dim() const { return d_; }

  OperatorTuple restricted(const std::vector<int>& subset) const;
  OperatorTuple with_op(std::size_t k, Op t) const;
  // T_q T_{q+1} merged into one entry; requires chi(q) = chi(q+1).
  OperatorTuple merged(std::size_t q) const;

 private:
  SideMap chi_;
  std::vector<Op> ops_;
  std::size_t d_;
};

struct EvalOptions {
  // Evaluate both L and R insertions at every suffix step and require equal results.
  bool check_lr_choice = true;
};

BElem e_pi(const BncPartition& pi, const OperatorTuple& t, const EvalOptions& options = {});
// The nested expression produced by the recursion on formal symbols T_1, ..., T_n.
std::string e_pi_trace(const BncPartition& pi);

// E_sigma and kappa_sigma = sum_{rho <= sigma} E_rho mu(rho, sigma) for every sigma in BNC(chi).
class MomentTable {
 public:
  explicit MomentTable(const OperatorTuple& t, const EvalOptions& options = {});

  const Lattice& lattice() const { return *lattice_; }
  const BElem& moment(std::size_t i) const { return moments_.at(i); }
  const BElem& cumulant(std::size_t i) const { return cumulants_.at(i); }
  const BElem& moment(const BncPartition& p) const { return moments_.at(lattice_->index_of(p)); }
  const BElem& cumulant(const BncPartition& p) const { return cumulants_.at(lattice_->index_of(p)); }

 private:
  std::shared_ptr<const Lattice> lattice_;
  std::vector<BElem> moments_;
  std::vector<BElem> cumulants_;
};

BElem kappa_pi(const BncPartition& pi, const OperatorTuple& t, const EvalOptions& options = {});
// sum_{sigma <= pi} kappa_sigma.
BElem moment_from_cumulants(const BncPartition& pi, const OperatorTuple& t, const EvalOptions& options = {});
// kappa_{1_chi}
BElem kappa(const OperatorTuple& t, const EvalOptions& options = {});

// sum_{sigma : pi <= sigma <= eps} mu(pi, sigma); zero when pi does not refine eps.
Rational universal_coefficient(const Lattice& lattice, std::size_t pi, const SetPartition& eps);
// sum_pi coefficient(pi) E_pi(T_1, ..., T_n).
BElem universal_rhs(const ShadingMap& eps, const OperatorTuple& t, const EvalOptions& options = {});

// Products of consecutive entries over the groups ending at group_ends; each group must stay on one side.
OperatorTuple grouped_products(const OperatorTuple& t, const std::vector<int>& group_ends);
// sum over sigma in BNC(chi_hat) with sigma v 0_hat = pi_hat of kappa_sigma(T_1, ..., T_n).
BElem product_cumulant_rhs(const BncPartition& pi, const std::vector<int>& group_ends, const OperatorTuple& t,
                           const EvalOptions& options = {});

struct SeriesLetter {
  Op z;
  Side side;
};

// E_{1}(z_1 C_{b_1}, ..., z_{n-1} C_{b_{n-1}}, z_n) with C = L on left letters and R on right letters.
BElem moment_series(const std::vector<SeriesLetter>& word, const std::vector<BElem>& b, std::size_t b_dim);
BElem cumulant_series(const std::vector<SeriesLetter>& word, const std::vector<BElem>& b, std::size_t b_dim);

// sum_{pi in BNC(chi)} kappa_pi(first) kappa_{K(pi)}(second); scalar base algebra only.
Rational multiplicative_convolution_rhs(const OperatorTuple& first, const OperatorTuple& second);
// kappa_{1_chi}(z_1, ..., z_n) with z_k = first_k second_k on left positions and second_k first_k on right ones.
Rational multiplicative_convolution_lhs(const OperatorTuple& first, const OperatorTuple& second);

enum class Phi { Moment, Cumulant };

const char* phi_name(Phi phi);
BElem phi_value(Phi phi, const BncPartition& pi, const OperatorTuple& t, const EvalOptions& options = {});

struct PropertyOutcome {
  BElem lhs;
  BElem rhs;
  // Second right-hand side where the property has two forms; equal to rhs otherwise.
  BElem rhs_alt;
  bool equal = false;
};

// Sliding b from T_n onto the last entry of the opposite side.
PropertyOutcome check_property_i(Phi phi, const BncPartition& pi, const OperatorTuple& t, const BElem& b);
// Sliding b from the front of T_p onto the previous entry of the same side.
PropertyOutcome check_property_ii(Phi phi, const BncPartition& pi, const OperatorTuple& t, std::size_t p,
                                  const BElem& b);
// Factorization over chi-intervals V_1, ..., V_m listed in chi-order.
PropertyOutcome check_property_iii(Phi phi, const BncPartition& pi, const OperatorTuple& t,
                                   const std::vector<std::vector<int>>& intervals);
// Nesting an inner chi-interval V into its complement W at theta and at gamma.
PropertyOutcome check_property_iv(Phi phi, const BncPartition& pi, const OperatorTuple& t, const std::vector<int>& v);

bool is_chi_interval(const SideMap& chi, const std::vector<int>& subset);

// E_pi(T) = E_{pi collapsed at q}(T with T_q T_{q+1} merged) for q ~ q+1 in pi.
PropertyOutcome check_moment_collapse(const BncPartition& pi, const OperatorTuple& t, std::size_t q);
// kappa_pi(merged) = sum_{sigma collapsing to pi} kappa_sigma(T), pi over chi without q.
PropertyOutcome check_cumulant_expansion(const BncPartition& pi, const OperatorTuple& t, std::size_t q);
// kappa(merged) = kappa_{1}(T) + sum over two-block sigma separating q and q+1 of kappa_sigma(T).
PropertyOutcome check_cumulant_two_block_form(const OperatorTuple& t, std::size_t q);

}  // namespace bifree
