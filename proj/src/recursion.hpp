#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "bifree/partition.hpp"

namespace bifree::detail {

struct RecBlock {
  std::vector<int> nodes;  // ascending, 1-based positions in the current tuple
  bool top = false;
  int id = 0;
};

template <class Slot>
struct RecState {
  std::vector<Side> sides;
  std::vector<Slot> slots;
  std::vector<RecBlock> blocks;
};

inline RecState<int> make_shape(const SetPartition& p, const SideMap& chi, const std::vector<char>& top) {
  RecState<int> s;
  s.sides = chi.sides();
  for (std::size_t i = 0; i < p.block_count(); ++i) {
    s.blocks.push_back({p.block(i), top.empty() ? false : top[i] != 0, static_cast<int>(i)});
  }
  return s;
}

template <class Slot>
RecState<Slot> with_slots(const RecState<int>& shape, std::vector<Slot> slots) {
  RecState<Slot> s;
  s.sides = shape.sides;
  s.slots = std::move(slots);
  s.blocks = shape.blocks;
  return s;
}

inline Side flip(Side s) { return s == Side::Left ? Side::Right : Side::Left; }

// Removes the positions of block `v` and renumbers the remaining positions consecutively.
template <class Slot>
void remove_block(RecState<Slot>& s, std::size_t v) {
  const std::vector<int> gone = s.blocks[v].nodes;
  const std::size_t n = s.sides.size();
  std::vector<int> renumber(n + 1, 0);
  std::vector<Side> sides;
  std::vector<Slot> slots;
  int next = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    if (std::binary_search(gone.begin(), gone.end(), static_cast<int>(k))) continue;
    renumber[k] = next++;
    sides.push_back(s.sides[k - 1]);
    slots.push_back(std::move(s.slots[k - 1]));
  }
  s.blocks.erase(s.blocks.begin() + static_cast<long>(v));
  for (auto& b : s.blocks) {
    for (auto& e : b.nodes) e = renumber[e];
  }
  s.sides = std::move(sides);
  s.slots = std::move(slots);
}

// Spine whose rib at height min(V) is adjacent to V, or -1 when no spine crosses that height.
// Blocks reaching the top behave as if they started above node 1.
template <class Slot>
long adjacent_spine(const RecState<Slot>& s, std::size_t v) {
  const int h = s.blocks[v].nodes.front();
  const Side side = s.sides[h - 1];
  std::vector<int> order;  // position of each node in the chi-order
  {
    std::vector<Side> sides = s.sides;
    ChiPermutation perm = side_permutation(SideMap(sides));
    order.assign(sides.size() + 1, 0);
    for (std::size_t k = 1; k <= sides.size(); ++k) order[k] = perm.inverse(static_cast<int>(k));
  }
  long best = -1;
  int best_key = 0;
  for (std::size_t w = 0; w < s.blocks.size(); ++w) {
    if (w == v) continue;
    const auto& b = s.blocks[w];
    if (!(b.top || b.nodes.front() < h) || b.nodes.back() <= h) continue;
    int key = side == Side::Left ? static_cast<int>(s.sides.size()) + 1 : 0;
    for (int e : b.nodes) {
      if (e <= h) continue;
      key = side == Side::Left ? std::min(key, order[e]) : std::max(key, order[e]);
    }
    if (best < 0 || (side == Side::Left ? key < best_key : key > best_key)) {
      best = static_cast<long>(w);
      best_key = key;
    }
  }
  return best;
}

// Generic driver for the recursive moment definition. A backend supplies
//   Slot, Value, Result,
//   Value expect(const std::vector<const Slot*>&),
//   void fuse_before(Slot&, const Value&, Side), void fuse_after(Slot&, const Value&, Side),
//   Result finish_single(Value), Result finish_tops(RecState<Slot>&),
//   bool same(const Result&, const Result&).
template <class Backend>
typename Backend::Result run_recursion(Backend& be, RecState<typename Backend::Slot> s, bool check_lr) {
  using Slot = typename Backend::Slot;
  for (;;) {
    long v = -1;
    for (std::size_t i = 0; i < s.blocks.size(); ++i) {
      if (s.blocks[i].top) continue;
      if (v < 0 || s.blocks[i].nodes.front() > s.blocks[static_cast<std::size_t>(v)].nodes.front()) v = static_cast<long>(i);
    }
    if (v < 0) return be.finish_tops(s);
    const auto vi = static_cast<std::size_t>(v);
    std::vector<const Slot*> inner;
    for (int e : s.blocks[vi].nodes) inner.push_back(&s.slots[e - 1]);
    auto value = be.expect(inner);
    if (s.blocks.size() == 1) return be.finish_single(std::move(value));

    const int h = s.blocks[vi].nodes.front();
    const Side side = s.sides[h - 1];
    long w = adjacent_spine(s, vi);
    if (w >= 0) {
      const auto& nodes = s.blocks[static_cast<std::size_t>(w)].nodes;
      int k = *std::upper_bound(nodes.begin(), nodes.end(), h);
      be.fuse_before(s.slots[k - 1], value, side);
    } else {
      const auto& nodes = s.blocks[vi].nodes;
      const int n = static_cast<int>(s.sides.size());
      if (nodes.back() != n || static_cast<int>(nodes.size()) != n - h + 1 || h < 2) {
        throw std::logic_error("recursion: lowest block is neither adjacent to a spine nor a suffix");
      }
      if (check_lr) {
        RecState<Slot> alt = s;
        be.fuse_after(alt.slots[h - 2], value, flip(side));
        remove_block(alt, vi);
        auto other = run_recursion(be, std::move(alt), false);
        be.fuse_after(s.slots[h - 2], value, side);
        remove_block(s, vi);
        auto main = run_recursion(be, std::move(s), true);
        if (!be.same(main, other)) throw std::logic_error("recursion: L and R insertions disagree");
        return main;
      }
      be.fuse_after(s.slots[h - 2], value, side);
    }
    remove_block(s, vi);
  }
}

}  // namespace bifree::detail
