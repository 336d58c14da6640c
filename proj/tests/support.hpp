#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "bifree/partition.hpp"

namespace oracle {

using bifree::SetPartition;
using bifree::Side;
using bifree::SideMap;

// Lefts increasing, then rights decreasing; out[k-1] is the k-th node read.
inline std::vector<int> reading_order(const SideMap& chi) {
  std::vector<int> out;
  for (std::size_t k = 1; k <= chi.size(); ++k) {
    if (chi.side(k) == Side::Left) out.push_back(static_cast<int>(k));
  }
  for (std::size_t k = chi.size(); k >= 1; --k) {
    if (chi.side(k) == Side::Right) out.push_back(static_cast<int>(k));
  }
  return out;
}

inline std::vector<int> labels_of(const SetPartition& p) {
  std::vector<int> labels(p.size());
  for (std::size_t b = 0; b < p.block_count(); ++b) {
    for (int e : p.block(b)) labels[static_cast<std::size_t>(e - 1)] = static_cast<int>(b);
  }
  return labels;
}

// Every restricted growth string of length n, as a partition.
inline std::vector<SetPartition> all_partitions(std::size_t n) {
  std::vector<SetPartition> out;
  std::vector<int> rgs(n, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int top) {
    if (i == n) {
      out.push_back(SetPartition::from_labels(rgs));
      return;
    }
    for (int v = 0; v <= top + 1; ++v) {
      rgs[i] = v;
      rec(i + 1, std::max(top, v));
    }
  };
  if (n == 0) return {SetPartition::finest(0)};
  rgs[0] = 0;
  rec(1, 0);
  return out;
}

// No a < b < c < d with a, c in one block and b, d in another.
inline bool crossing_free(const std::vector<int>& labels) {
  const std::size_t n = labels.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c)
        for (std::size_t d = c + 1; d < n; ++d)
          if (labels[a] == labels[c] && labels[b] == labels[d] && labels[a] != labels[b]) return false;
  return true;
}

// Labels read along the chi order.
inline std::vector<int> read_labels(const SetPartition& p, const SideMap& chi) {
  const auto order = reading_order(chi);
  const auto labels = labels_of(p);
  std::vector<int> out;
  for (int k : order) out.push_back(labels[static_cast<std::size_t>(k - 1)]);
  return out;
}

inline bool bi_noncrossing(const SetPartition& p, const SideMap& chi) {
  return crossing_free(read_labels(p, chi));
}

inline std::vector<SetPartition> all_bnc(const SideMap& chi) {
  std::vector<SetPartition> out;
  for (const auto& p : all_partitions(chi.size())) {
    if (bi_noncrossing(p, chi)) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool finer(const SetPartition& a, const SetPartition& b) {
  for (const auto& blk : a.blocks()) {
    for (int e : blk) {
      if (b.block_of(e) != b.block_of(blk.front())) return false;
    }
  }
  return true;
}

inline unsigned long long catalan_number(std::size_t n) {
  unsigned long long c = 1;
  for (std::size_t k = 0; k < n; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
  return c;
}

}  // namespace oracle

namespace gen {

inline bifree::SideMap side_map(std::mt19937_64& rng, std::size_t n) {
  std::vector<bifree::Side> s;
  for (std::size_t k = 0; k < n; ++k) s.push_back(rng() % 2 == 0 ? bifree::Side::Left : bifree::Side::Right);
  return bifree::SideMap(s);
}

inline bifree::ShadingMap shading(std::mt19937_64& rng, std::size_t n, int labels) {
  std::vector<int> s;
  for (std::size_t k = 0; k < n; ++k) s.push_back(1 + static_cast<int>(rng() % static_cast<unsigned>(labels)));
  return bifree::ShadingMap(s);
}

template <class T>
T element(const std::vector<T>& v, std::mt19937_64& rng) {
  return v[rng() % v.size()];
}

// Every side map of length n, lexicographic in l < r.
inline std::vector<bifree::SideMap> all_side_maps(std::size_t n) {
  std::vector<bifree::SideMap> out;
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    std::vector<bifree::Side> s;
    for (std::size_t k = 0; k < n; ++k) s.push_back((mask >> (n - 1 - k)) & 1 ? bifree::Side::Right : bifree::Side::Left);
    out.emplace_back(s);
  }
  return out;
}

}  // namespace gen
