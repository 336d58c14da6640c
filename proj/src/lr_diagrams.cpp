#include "bifree/lr_diagrams.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

#include "bifree/incidence.hpp"

namespace bifree {

LRDiagram::LRDiagram(SideMap chi, ShadingMap eps, SetPartition strings, std::vector<int> top_order)
    : chi_(std::move(chi)), eps_(std::move(eps)), strings_(std::move(strings)), top_order_(std::move(top_order)) {
  if (chi_.size() != eps_.size() || chi_.size() != strings_.size()) {
    throw std::invalid_argument("diagram side map, shading and strings differ in length");
  }
  for (const auto& b : strings_.blocks()) {
    for (int e : b) {
      if (eps_.shade(static_cast<std::size_t>(e)) != eps_.shade(static_cast<std::size_t>(b.front()))) {
        throw std::invalid_argument("string through " + std::to_string(b.front()) + " is not monochromatic");
      }
    }
  }
  std::set<int> seen;
  for (int s : top_order_) {
    if (s < 0 || static_cast<std::size_t>(s) >= strings_.block_count() || !seen.insert(s).second) {
      throw std::invalid_argument("invalid top order");
    }
  }
}

bool LRDiagram::reaches_top(std::size_t string) const {
  return std::find(top_order_.begin(), top_order_.end(), static_cast<int>(string)) != top_order_.end();
}

std::vector<char> LRDiagram::top_flags() const {
  std::vector<char> flags(string_count(), 0);
  for (int s : top_order_) flags[static_cast<std::size_t>(s)] = 1;
  return flags;
}

std::string LRDiagram::str() const {
  std::string out;
  auto flags = top_flags();
  for (std::size_t i = 0; i < string_count(); ++i) {
    if (i > 0) out += '|';
    const auto& b = strings_.block(i);
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (j > 0) out += ',';
      out += std::to_string(b[j]);
    }
    if (flags[i]) out += '^';
  }
  if (top_order_.size() >= 2) {
    out += " top:";
    for (std::size_t i = 0; i < top_order_.size(); ++i) {
      out += (i == 0 ? "" : ",") + std::to_string(strings_.block(static_cast<std::size_t>(top_order_[i])).front());
    }
  }
  return out;
}

bool operator<(const LRDiagram& a, const LRDiagram& b) {
  if (!(a.strings_ == b.strings_)) return a.strings_ < b.strings_;
  auto fa = a.top_flags();
  auto fb = b.top_flags();
  if (fa != fb) return fa < fb;
  return a.top_order_ < b.top_order_;
}

namespace {

struct Build {
  std::vector<int> string_of;  // node -> raw string id (index 0 unused)
  std::vector<int> shade;      // raw string id -> shade
  std::deque<int> top;         // raw ids at the top, left to right
};

LRDiagram finish(const SideMap& chi, const ShadingMap& eps, const Build& b) {
  const std::size_t n = chi.size();
  std::vector<int> labels(n);
  for (std::size_t k = 1; k <= n; ++k) labels[k - 1] = b.string_of[k];
  SetPartition strings = SetPartition::from_labels(labels);
  std::vector<int> order;
  for (int raw : b.top) {
    auto it = std::find(labels.begin(), labels.end(), raw);
    order.push_back(strings.block_of(static_cast<int>(it - labels.begin()) + 1));
  }
  return LRDiagram(chi, eps, std::move(strings), std::move(order));
}

}  // namespace

std::vector<LRDiagram> enumerate_lr(const SideMap& chi, const ShadingMap& eps, std::size_t limit) {
  const std::size_t n = chi.size();
  if (eps.size() != n) throw std::invalid_argument("shading length differs from the side map length");
  if (n > limit) {
    throw std::out_of_range("LR enumeration limited to n <= " + std::to_string(limit) + " (2^n diagrams)");
  }
  std::vector<Build> level(1);
  level[0].string_of.assign(n + 1, -1);
  for (std::size_t k = n; k >= 1; --k) {
    const Side side = chi.side(k);
    const int shade = eps.shade(k);
    std::vector<Build> next;
    next.reserve(level.size() * 2);
    for (const auto& d : level) {
      int adjacent = -1;
      if (!d.top.empty()) adjacent = side == Side::Left ? d.top.front() : d.top.back();
      const bool join = adjacent >= 0 && d.shade[static_cast<std::size_t>(adjacent)] == shade;
      for (bool extend : {false, true}) {
        Build e = d;
        if (join) {
          e.string_of[k] = adjacent;
          if (!extend) {
            if (side == Side::Left) {
              e.top.pop_front();
            } else {
              e.top.pop_back();
            }
          }
        } else {
          const int id = static_cast<int>(e.shade.size());
          e.shade.push_back(shade);
          e.string_of[k] = id;
          if (extend) {
            if (side == Side::Left) {
              e.top.push_front(id);
            } else {
              e.top.push_back(id);
            }
          }
        }
        next.push_back(std::move(e));
      }
    }
    level = std::move(next);
  }
  std::vector<LRDiagram> out;
  out.reserve(level.size());
  for (const auto& d : level) out.push_back(finish(chi, eps, d));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LRDiagram> stratum(const std::vector<LRDiagram>& diagrams, std::size_t k) {
  std::vector<LRDiagram> out;
  for (const auto& d : diagrams) {
    if (d.top_count() == k) out.push_back(d);
  }
  return out;
}

BncPartition lr0_to_partition(const LRDiagram& d) {
  if (d.top_count() != 0) throw std::invalid_argument("diagram " + d.str() + " has strings reaching the top");
  return BncPartition(d.strings(), d.chi());
}

std::vector<LRDiagram> lateral_refinements(const LRDiagram& d) {
  const std::size_t n = d.size();
  std::vector<int> cut_after;  // node e such that a cut may fall between e and its successor
  for (const auto& b : d.strings().blocks()) {
    for (std::size_t j = 0; j + 1 < b.size(); ++j) cut_after.push_back(b[j]);
  }
  std::vector<LRDiagram> out;
  const std::size_t g = cut_after.size();
  for (unsigned long mask = 0; mask < (1ul << g); ++mask) {
    std::vector<char> cut(n + 1, 0);
    for (std::size_t i = 0; i < g; ++i) {
      if (mask >> i & 1) cut[static_cast<std::size_t>(cut_after[i])] = 1;
    }
    std::vector<int> labels(n);
    int next = 0;
    for (const auto& b : d.strings().blocks()) {
      int label = next++;
      for (std::size_t j = 0; j < b.size(); ++j) {
        labels[static_cast<std::size_t>(b[j]) - 1] = label;
        if (j + 1 < b.size() && cut[static_cast<std::size_t>(b[j])]) label = next++;
      }
    }
    SetPartition fine = SetPartition::from_labels(labels);
    std::vector<int> order;
    for (int s : d.top_order()) {
      order.push_back(fine.block_of(d.strings().block(static_cast<std::size_t>(s)).front()));
    }
    out.emplace_back(d.chi(), d.eps(), std::move(fine), std::move(order));
  }
  return out;
}

bool is_lateral_refinement(const LRDiagram& fine, const LRDiagram& coarse) {
  if (fine.chi() != coarse.chi() || !(fine.eps() == coarse.eps())) {
    throw std::invalid_argument("diagrams over different side maps or shadings");
  }
  if (!is_lateral_refinement(fine.strings(), coarse.strings())) return false;
  std::vector<int> mapped;
  for (int s : coarse.top_order()) {
    mapped.push_back(fine.strings().block_of(coarse.strings().block(static_cast<std::size_t>(s)).front()));
  }
  return mapped == fine.top_order();
}

std::vector<LRDiagram> lateral_closure(const std::vector<LRDiagram>& diagrams) {
  std::set<LRDiagram> all;
  for (const auto& d : diagrams) {
    for (auto& r : lateral_refinements(d)) all.insert(std::move(r));
  }
  return {all.begin(), all.end()};
}

std::vector<WeightedDiagram> weighted_lateral_stratum(const SideMap& chi, const ShadingMap& eps, std::size_t k) {
  std::map<LRDiagram, long> coefficient;
  for (const auto& coarse : stratum(enumerate_lr(chi, eps), k)) {
    for (auto& fine : lateral_refinements(coarse)) {
      const long sign = (fine.string_count() - coarse.string_count()) % 2 == 0 ? 1 : -1;
      coefficient[std::move(fine)] += sign;
    }
  }
  std::vector<WeightedDiagram> out;
  for (auto& [d, c] : coefficient) out.push_back({d, c});
  return out;
}

TwoSums two_sums_check(const BncPartition& pi, const ShadingMap& eps) {
  const SideMap& chi = pi.chi();
  if (eps.size() != chi.size()) throw std::invalid_argument("shading length differs from the side map length");
  const SetPartition eps_p = SetPartition::from_labels(eps.shades());
  if (!refines(pi.partition(), eps_p)) {
    throw std::domain_error("partition " + pi.str() + " does not refine the shading " + eps.str());
  }
  long lhs = 0;
  for (const auto& d : stratum(enumerate_lr(chi, eps), 0)) {
    if (!is_lateral_refinement(pi.partition(), d.strings())) continue;
    lhs += (pi.block_count() - d.string_count()) % 2 == 0 ? 1 : -1;
  }
  auto lattice = lattice_for(chi);
  const std::size_t i = lattice->index_of(pi);
  Rational rhs = 0;
  for (auto s : lattice->up_set(i)) {
    if (refines(lattice->at(s).partition(), eps_p)) rhs += lattice->mobius(i, s);
  }
  if (rhs.get_den() != 1) throw std::logic_error("non-integral Mobius sum");
  const long r = rhs.get_num().get_si();
  return {lhs, r, lhs == r};
}

}  // namespace bifree
