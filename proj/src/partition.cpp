#include "bifree/partition.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bifree {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view s) {
  s = trim(s);
  if (s.empty()) throw std::invalid_argument("empty integer field");
  std::size_t used = 0;
  int v = std::stoi(std::string(s), &used);
  if (used != s.size()) throw std::invalid_argument("malformed integer '" + std::string(s) + "'");
  return v;
}

void require_same_chi(const BncPartition& a, const BncPartition& b) {
  if (a.chi() != b.chi()) throw std::invalid_argument("side maps differ: " + a.chi().str() + " vs " + b.chi().str());
}

// Does a pair of blocks cross in the natural order?
bool blocks_cross(const std::vector<int>& x, const std::vector<int>& y) {
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    int lo = x[i], hi = x[i + 1];
    bool inside = false, outside = false;
    for (int e : y) {
      if (e > lo && e < hi) inside = true;
      else outside = true;
    }
    if (inside && outside) return true;
  }
  return false;
}

}  // namespace

char side_char(Side s) { return s == Side::Left ? 'l' : 'r'; }

SideMap SideMap::parse(std::string_view text) {
  std::vector<Side> sides;
  for (char c : trim(text)) {
    if (c == 'l' || c == 'L') sides.push_back(Side::Left);
    else if (c == 'r' || c == 'R') sides.push_back(Side::Right);
    else throw std::invalid_argument(std::string("side map: unexpected character '") + c + "'");
  }
  return SideMap(std::move(sides));
}

SideMap SideMap::restricted(const std::vector<int>& subset) const {
  std::vector<Side> out;
  for (int k : subset) out.push_back(side(k));
  return SideMap(std::move(out));
}

SideMap SideMap::without(std::size_t q) const {
  if (q < 1 || q > size()) throw std::out_of_range("position out of range");
  std::vector<Side> out = sides_;
  out.erase(out.begin() + static_cast<long>(q - 1));
  return SideMap(std::move(out));
}

std::string SideMap::str() const {
  std::string s;
  for (Side x : sides_) s += side_char(x);
  return s;
}

ShadingMap ShadingMap::parse(std::string_view text) {
  text = trim(text);
  std::vector<int> shades;
  if (text.empty()) return ShadingMap();
  for (auto part : split(text, ',')) shades.push_back(parse_int(part));
  return ShadingMap(std::move(shades));
}

bool ShadingMap::is_constant() const {
  return std::adjacent_find(shades_.begin(), shades_.end(), std::not_equal_to<>()) == shades_.end();
}

ShadingMap ShadingMap::restricted(const std::vector<int>& subset) const {
  std::vector<int> out;
  for (int k : subset) out.push_back(shade(k));
  return ShadingMap(std::move(out));
}

std::string ShadingMap::str() const {
  std::string s;
  for (std::size_t i = 0; i < shades_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(shades_[i]);
  }
  return s;
}

SetPartition::SetPartition(std::size_t n, std::vector<std::vector<int>> blocks) : n_(n), label_(n, -1) {
  for (auto& b : blocks) {
    if (b.empty()) throw std::invalid_argument("partition has an empty block");
    std::sort(b.begin(), b.end());
  }
  std::sort(blocks.begin(), blocks.end());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (int e : blocks[i]) {
      if (e < 1 || static_cast<std::size_t>(e) > n) {
        throw std::invalid_argument("partition element " + std::to_string(e) + " outside 1.." + std::to_string(n));
      }
      if (label_[e - 1] != -1) throw std::invalid_argument("element " + std::to_string(e) + " occurs twice");
      label_[e - 1] = static_cast<int>(i);
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (label_[k] == -1) throw std::invalid_argument("element " + std::to_string(k + 1) + " is not covered");
  }
  blocks_ = std::move(blocks);
}

SetPartition SetPartition::parse(std::string_view text) {
  text = trim(text);
  if (text.empty()) return SetPartition();
  int n = 0;
  for (auto block : split(text, '|')) {
    for (auto e : split(block, ',')) n = std::max(n, parse_int(e));
  }
  return parse(text, static_cast<std::size_t>(n));
}

SetPartition SetPartition::parse(std::string_view text, std::size_t n) {
  text = trim(text);
  std::vector<std::vector<int>> blocks;
  if (!text.empty()) {
    for (auto block : split(text, '|')) {
      std::vector<int> b;
      for (auto e : split(block, ',')) b.push_back(parse_int(e));
      blocks.push_back(std::move(b));
    }
  }
  return SetPartition(n, std::move(blocks));
}

SetPartition SetPartition::finest(std::size_t n) {
  std::vector<std::vector<int>> blocks;
  for (std::size_t k = 1; k <= n; ++k) blocks.push_back({static_cast<int>(k)});
  return SetPartition(n, std::move(blocks));
}

SetPartition SetPartition::coarsest(std::size_t n) {
  if (n == 0) return SetPartition();
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 1);
  return SetPartition(n, {all});
}

SetPartition SetPartition::from_labels(const std::vector<int>& labels) {
  std::map<int, std::vector<int>> groups;
  for (std::size_t k = 0; k < labels.size(); ++k) groups[labels[k]].push_back(static_cast<int>(k + 1));
  std::vector<std::vector<int>> blocks;
  for (auto& [label, b] : groups) blocks.push_back(std::move(b));
  return SetPartition(labels.size(), std::move(blocks));
}

std::string SetPartition::str() const {
  std::string s;
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (i) s += '|';
    for (std::size_t j = 0; j < blocks_[i].size(); ++j) {
      if (j) s += ',';
      s += std::to_string(blocks_[i][j]);
    }
  }
  return s;
}

ChiPermutation::ChiPermutation(std::vector<int> images) : images_(std::move(images)), inverse_(images_.size(), 0) {
  for (std::size_t k = 0; k < images_.size(); ++k) {
    int a = images_[k];
    if (a < 1 || static_cast<std::size_t>(a) > images_.size() || inverse_[a - 1] != 0) {
      throw std::invalid_argument("not a permutation");
    }
    inverse_[a - 1] = static_cast<int>(k + 1);
  }
}

ChiPermutation side_permutation(const SideMap& chi) {
  std::vector<int> images;
  const int n = static_cast<int>(chi.size());
  for (int k = 1; k <= n; ++k) {
    if (chi.side(k) == Side::Left) images.push_back(k);
  }
  for (int k = n; k >= 1; --k) {
    if (chi.side(k) == Side::Right) images.push_back(k);
  }
  return ChiPermutation(std::move(images));
}

SetPartition relabel(const SetPartition& p, const std::vector<int>& f) {
  std::vector<std::vector<int>> blocks;
  for (const auto& b : p.blocks()) {
    std::vector<int> nb;
    for (int e : b) nb.push_back(f.at(e - 1));
    blocks.push_back(std::move(nb));
  }
  return SetPartition(p.size(), std::move(blocks));
}

bool is_noncrossing(const SetPartition& p) {
  const auto& bs = p.blocks();
  for (std::size_t i = 0; i < bs.size(); ++i) {
    for (std::size_t j = 0; j < bs.size(); ++j) {
      if (i != j && blocks_cross(bs[i], bs[j])) return false;
    }
  }
  return true;
}

bool is_bi_noncrossing(const SetPartition& p, const SideMap& chi) {
  if (p.size() != chi.size()) {
    throw std::invalid_argument("arity mismatch: partition of " + std::to_string(p.size()) + " vs side map of " +
                                std::to_string(chi.size()));
  }
  auto s = side_permutation(chi);
  return is_noncrossing(relabel(p, s.inverse_images()));
}

bool refines(const SetPartition& a, const SetPartition& b) {
  if (a.size() != b.size()) throw std::invalid_argument("arity mismatch in refines");
  for (const auto& blk : a.blocks()) {
    int target = b.block_of(blk.front());
    for (int e : blk) {
      if (b.block_of(e) != target) return false;
    }
  }
  return true;
}

bool is_lateral_refinement(const SetPartition& a, const SetPartition& b) {
  if (!refines(a, b)) return false;
  for (const auto& w : b.blocks()) {
    // Each a-block inside w must occupy consecutive positions of w.
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (!a.same_block(w[i], w[i + 1])) {
        // Once a run ends, its block must not reappear further down w.
        int ended = a.block_of(w[i]);
        for (std::size_t j = i + 1; j < w.size(); ++j) {
          if (a.block_of(w[j]) == ended) return false;
        }
      }
    }
  }
  return true;
}

SetPartition meet(const SetPartition& a, const SetPartition& b) {
  if (a.size() != b.size()) throw std::invalid_argument("arity mismatch in meet");
  std::vector<int> labels(a.size());
  for (std::size_t k = 1; k <= a.size(); ++k) {
    labels[k - 1] = a.block_of(static_cast<int>(k)) * static_cast<int>(a.size() + 1) + b.block_of(static_cast<int>(k));
  }
  return SetPartition::from_labels(labels);
}

SetPartition join_nc(const SetPartition& a, const SetPartition& b) {
  if (a.size() != b.size()) throw std::invalid_argument("arity mismatch in join");
  const std::size_t n = a.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int x, int y) { parent[find(x)] = find(y); };
  for (const auto* p : {&a, &b}) {
    for (const auto& blk : p->blocks()) {
      for (int e : blk) unite(e - 1, blk.front() - 1);
    }
  }
  while (true) {
    std::vector<int> labels(n);
    for (std::size_t k = 0; k < n; ++k) labels[k] = find(static_cast<int>(k));
    SetPartition current = SetPartition::from_labels(labels);
    const auto& bs = current.blocks();
    bool merged = false;
    for (std::size_t i = 0; i < bs.size() && !merged; ++i) {
      for (std::size_t j = i + 1; j < bs.size() && !merged; ++j) {
        if (blocks_cross(bs[i], bs[j]) || blocks_cross(bs[j], bs[i])) {
          unite(bs[i].front() - 1, bs[j].front() - 1);
          merged = true;
        }
      }
    }
    if (!merged) return current;
  }
}

SetPartition kreweras_nc(const SetPartition& p) {
  const std::size_t n = p.size();
  if (n == 0) return p;
  // prev[e] = predecessor of e in its block, cyclically (this is pi^{-1}).
  std::vector<int> prev(n + 1);
  for (const auto& blk : p.blocks()) {
    for (std::size_t i = 0; i < blk.size(); ++i) prev[blk[i]] = blk[(i + blk.size() - 1) % blk.size()];
  }
  std::vector<int> k(n + 1);
  for (std::size_t e = 1; e <= n; ++e) k[e] = prev[e % n + 1];
  std::vector<int> labels(n, -1);
  int next_label = 0;
  for (std::size_t e = 1; e <= n; ++e) {
    if (labels[e - 1] != -1) continue;
    int x = static_cast<int>(e);
    while (labels[x - 1] == -1) {
      labels[x - 1] = next_label;
      x = k[x];
    }
    ++next_label;
  }
  return SetPartition::from_labels(labels);
}

namespace {

void extend_nc(std::size_t n, std::vector<std::vector<int>>& blocks, int next, std::vector<SetPartition>& out) {
  if (static_cast<std::size_t>(next) > n) {
    out.emplace_back(n, blocks);
    return;
  }
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    const auto& target = blocks[bi];
    // Adding `next` to target crosses a block c with a < t < c' < next for some t in target.
    bool ok = true;
    for (std::size_t ci = 0; ci < blocks.size() && ok; ++ci) {
      if (ci == bi) continue;
      const auto& other = blocks[ci];
      for (int t : target) {
        bool below = false, between = false;
        for (int e : other) {
          if (e < t) below = true;
          if (e > t && e < next) between = true;
        }
        if (below && between) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) continue;
    blocks[bi].push_back(next);
    extend_nc(n, blocks, next + 1, out);
    blocks[bi].pop_back();
  }
  blocks.push_back({next});
  extend_nc(n, blocks, next + 1, out);
  blocks.pop_back();
}

}  // namespace

std::vector<SetPartition> enumerate_nc(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, std::vector<SetPartition>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<SetPartition> out;
  std::vector<std::vector<int>> blocks;
  extend_nc(n, blocks, 1, out);
  std::sort(out.begin(), out.end());
  cache.emplace(n, out);
  return out;
}

BncPartition::BncPartition(SetPartition p, SideMap chi) : p_(std::move(p)), chi_(std::move(chi)) {
  if (!is_bi_noncrossing(p_, chi_)) {
    throw std::invalid_argument("partition " + p_.str() + " is not bi-non-crossing for " + chi_.str());
  }
}

BncPartition BncPartition::parse(std::string_view text, const SideMap& chi) {
  return BncPartition(SetPartition::parse(text, chi.size()), chi);
}

BncPartition BncPartition::zero(const SideMap& chi) { return BncPartition(SetPartition::finest(chi.size()), chi); }

BncPartition BncPartition::one(const SideMap& chi) { return BncPartition(SetPartition::coarsest(chi.size()), chi); }

std::vector<BncPartition> enumerate_bnc(const SideMap& chi, std::size_t limit) {
  if (chi.size() > limit) {
    throw std::out_of_range("enumeration of BNC(chi) with n = " + std::to_string(chi.size()) +
                            " exceeds the limit n <= " + std::to_string(limit) + " (|BNC(chi)| = Catalan(n) = " +
                            std::to_string(catalan(chi.size())) + ")");
  }
  auto s = side_permutation(chi);
  std::vector<BncPartition> out;
  for (const auto& nc : enumerate_nc(chi.size())) out.emplace_back(relabel(nc, s.images()), chi);
  std::sort(out.begin(), out.end());
  return out;
}

bool refines(const BncPartition& a, const BncPartition& b) {
  require_same_chi(a, b);
  return refines(a.partition(), b.partition());
}

BncPartition meet_bnc(const BncPartition& a, const BncPartition& b) {
  require_same_chi(a, b);
  return BncPartition(meet(a.partition(), b.partition()), a.chi());
}

BncPartition join_bnc(const BncPartition& a, const BncPartition& b) {
  require_same_chi(a, b);
  auto s = side_permutation(a.chi());
  auto joined = join_nc(relabel(a.partition(), s.inverse_images()), relabel(b.partition(), s.inverse_images()));
  return BncPartition(relabel(joined, s.images()), a.chi());
}

BncPartition kreweras(const BncPartition& p) {
  auto s = side_permutation(p.chi());
  auto k = kreweras_nc(relabel(p.partition(), s.inverse_images()));
  return BncPartition(relabel(k, s.images()), p.chi());
}

BncPartition restrict(const BncPartition& p, const std::vector<int>& subset_in) {
  std::vector<int> subset = subset_in;
  std::sort(subset.begin(), subset.end());
  if (std::adjacent_find(subset.begin(), subset.end()) != subset.end()) {
    throw std::invalid_argument("restriction set has repeated elements");
  }
  std::vector<int> index(p.size() + 1, 0);
  for (std::size_t i = 0; i < subset.size(); ++i) {
    int e = subset[i];
    if (e < 1 || static_cast<std::size_t>(e) > p.size()) throw std::invalid_argument("restriction set out of range");
    index[e] = static_cast<int>(i + 1);
  }
  std::vector<std::vector<int>> blocks;
  for (const auto& blk : p.blocks()) {
    std::size_t inside = 0;
    for (int e : blk) inside += index[e] != 0 ? 1 : 0;
    if (inside == 0) continue;
    if (inside != blk.size()) throw std::invalid_argument("restriction set is not a union of blocks of " + p.str());
    std::vector<int> nb;
    for (int e : blk) nb.push_back(index[e]);
    blocks.push_back(std::move(nb));
  }
  return BncPartition(SetPartition(subset.size(), std::move(blocks)), p.chi().restricted(subset));
}

BncPartition collapse(const BncPartition& p, std::size_t q) {
  const std::size_t n = p.size();
  if (q < 1 || q >= n) throw std::out_of_range("collapse index q = " + std::to_string(q) + " outside 1.." + std::to_string(n == 0 ? 0 : n - 1));
  std::vector<int> labels(n - 1);
  // q and q+1 both map to q; the block of q+1 absorbs the block of q.
  const int absorbed = p.partition().block_of(static_cast<int>(q));
  const int survivor = p.partition().block_of(static_cast<int>(q + 1));
  for (std::size_t e = 1; e <= n; ++e) {
    if (e == q) continue;
    int label = p.partition().block_of(static_cast<int>(e));
    if (label == absorbed) label = survivor;
    labels[(e < q ? e : e - 1) - 1] = label;
  }
  SetPartition collapsed = SetPartition::from_labels(labels);
  SideMap chi = p.chi().without(q);
  if (!is_bi_noncrossing(collapsed, chi)) {
    throw std::domain_error("collapse at q = " + std::to_string(q) + " leaves BNC(chi); sides at q, q+1 differ");
  }
  return BncPartition(std::move(collapsed), std::move(chi));
}

SideMap hat_sides(const SideMap& chi, const std::vector<int>& group_ends) {
  if (group_ends.size() != chi.size()) throw std::invalid_argument("group count differs from arity of chi");
  std::vector<Side> sides;
  int prev = 0;
  for (std::size_t p = 0; p < group_ends.size(); ++p) {
    if (group_ends[p] <= prev) throw std::invalid_argument("group ends must be strictly increasing and positive");
    for (int k = prev + 1; k <= group_ends[p]; ++k) sides.push_back(chi.side(p + 1));
    prev = group_ends[p];
  }
  return SideMap(std::move(sides));
}

BncPartition hat_embed(const BncPartition& p, const std::vector<int>& group_ends) {
  SideMap chi_hat = hat_sides(p.chi(), group_ends);
  std::vector<std::vector<int>> blocks;
  for (const auto& blk : p.blocks()) {
    std::vector<int> nb;
    for (int node : blk) {
      int lo = node == 1 ? 1 : group_ends[node - 2] + 1;
      for (int k = lo; k <= group_ends[node - 1]; ++k) nb.push_back(k);
    }
    blocks.push_back(std::move(nb));
  }
  SetPartition embedded(chi_hat.size(), std::move(blocks));
  return BncPartition(std::move(embedded), std::move(chi_hat));
}

bool is_lateral_refinement(const BncPartition& a, const BncPartition& b) {
  require_same_chi(a, b);
  return is_lateral_refinement(a.partition(), b.partition());
}

unsigned long long catalan(std::size_t n) {
  unsigned long long c = 1;
  for (std::size_t k = 0; k < n; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
  return c;
}

}  // namespace bifree
