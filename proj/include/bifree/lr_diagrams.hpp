#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bifree/partition.hpp"

namespace bifree {

// A shaded LR diagram: its strings as blocks of {1..n} plus the left-to-right order of the strings
// reaching the top. Strings are numbered by their smallest node.
class LRDiagram {
 public:
  LRDiagram() = default;
  LRDiagram(SideMap chi, ShadingMap eps, SetPartition strings, std::vector<int> top_order);

  const SideMap& chi() const { return chi_; }
  const ShadingMap& eps() const { return eps_; }
  std::size_t size() const { return chi_.size(); }
  const SetPartition& strings() const { return strings_; }
  std::size_t string_count() const { return strings_.block_count(); }
  // String indices reaching the top, from left to right.
  const std::vector<int>& top_order() const { return top_order_; }
  std::size_t top_count() const { return top_order_.size(); }
  bool reaches_top(std::size_t string) const;
  std::vector<char> top_flags() const;

  // "1,2^|3" marks strings reaching the top with '^'; with two or more, the top order follows.
  std::string str() const;
  friend bool operator==(const LRDiagram& a, const LRDiagram& b) {
    return a.chi_ == b.chi_ && a.eps_ == b.eps_ && a.strings_ == b.strings_ && a.top_order_ == b.top_order_;
  }
  friend bool operator<(const LRDiagram& a, const LRDiagram& b);

 private:
  SideMap chi_;
  ShadingMap eps_;
  SetPartition strings_;
  std::vector<int> top_order_;
};

inline constexpr std::size_t kDefaultLrLimit = 12;

// All 2^n diagrams of LR(chi, eps), built by adding nodes n, n-1, ..., 1 on top.
std::vector<LRDiagram> enumerate_lr(const SideMap& chi, const ShadingMap& eps, std::size_t limit = kDefaultLrLimit);
std::vector<LRDiagram> stratum(const std::vector<LRDiagram>& diagrams, std::size_t k);
BncPartition lr0_to_partition(const LRDiagram& d);

// Every diagram obtained from d by cutting spines between consecutive ribs (d included).
std::vector<LRDiagram> lateral_refinements(const LRDiagram& d);
bool is_lateral_refinement(const LRDiagram& fine, const LRDiagram& coarse);
std::vector<LRDiagram> lateral_closure(const std::vector<LRDiagram>& diagrams);

struct WeightedDiagram {
  LRDiagram diagram;
  long coefficient;  // sum over D' in LR_k with D' >=_lat D of (-1)^{|D| - |D'|}
};

// LR^lat_k(chi, eps) with the expansion coefficient of each diagram, in sorted order.
std::vector<WeightedDiagram> weighted_lateral_stratum(const SideMap& chi, const ShadingMap& eps, std::size_t k);

struct TwoSums {
  long lhs;
  long rhs;
  bool equal;
};

// Signed count over LR_0(chi, eps) above pi laterally, against sum_{pi <= sigma <= eps} mu(pi, sigma).
TwoSums two_sums_check(const BncPartition& pi, const ShadingMap& eps);

}  // namespace bifree
