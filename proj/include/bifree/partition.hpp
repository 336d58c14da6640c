#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bifree {

enum class Side : std::uint8_t { Left, Right };

char side_char(Side s);

// chi : {1..n} -> {l, r}. Positions are 1-based in every accessor taking an index.
class SideMap {
 public:
  SideMap() = default;
  explicit SideMap(std::vector<Side> sides) : sides_(std::move(sides)) {}

  static SideMap parse(std::string_view text);
  static SideMap constant(Side s, std::size_t n) { return SideMap(std::vector<Side>(n, s)); }

  std::size_t size() const { return sides_.size(); }
  Side side(std::size_t k) const { return sides_.at(k - 1); }
  const std::vector<Side>& sides() const { return sides_; }

  // chi restricted to the sorted positions in `subset`, relabeled to 1..|subset|.
  SideMap restricted(const std::vector<int>& subset) const;
  // chi with position q removed.
  SideMap without(std::size_t q) const;

  std::string str() const;
  friend bool operator==(const SideMap&, const SideMap&) = default;
  friend auto operator<=>(const SideMap&, const SideMap&) = default;

 private:
  std::vector<Side> sides_;
};

// eps : {1..n} -> K with integer labels.
class ShadingMap {
 public:
  ShadingMap() = default;
  explicit ShadingMap(std::vector<int> shades) : shades_(std::move(shades)) {}

  static ShadingMap parse(std::string_view text);

  std::size_t size() const { return shades_.size(); }
  int shade(std::size_t k) const { return shades_.at(k - 1); }
  const std::vector<int>& shades() const { return shades_; }
  bool is_constant() const;
  ShadingMap restricted(const std::vector<int>& subset) const;

  std::string str() const;
  friend bool operator==(const ShadingMap&, const ShadingMap&) = default;

 private:
  std::vector<int> shades_;
};

// Partition of {1..n}, kept in canonical form: blocks sorted by minimum, elements ascending.
class SetPartition {
 public:
  SetPartition() = default;
  SetPartition(std::size_t n, std::vector<std::vector<int>> blocks);

  // "1,3|2,4,5"; n defaults to the largest element.
  static SetPartition parse(std::string_view text);
  static SetPartition parse(std::string_view text, std::size_t n);
  static SetPartition finest(std::size_t n);
  static SetPartition coarsest(std::size_t n);
  // Blocks are the level sets of `labels` (labels[k-1] is the label of k).
  static SetPartition from_labels(const std::vector<int>& labels);

  std::size_t size() const { return n_; }
  std::size_t block_count() const { return blocks_.size(); }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  const std::vector<int>& block(std::size_t i) const { return blocks_.at(i); }
  // Index of the block containing element k.
  int block_of(int k) const { return label_.at(k - 1); }
  bool same_block(int a, int b) const { return block_of(a) == block_of(b); }

  std::string str() const;
  friend bool operator==(const SetPartition& a, const SetPartition& b) { return a.blocks_ == b.blocks_ && a.n_ == b.n_; }
  friend bool operator<(const SetPartition& a, const SetPartition& b) {
    return a.n_ != b.n_ ? a.n_ < b.n_ : a.blocks_ < b.blocks_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::vector<int>> blocks_;
  std::vector<int> label_;
};

// s_chi: left positions increasing, then right positions decreasing; s(k) is the k-th node read.
class ChiPermutation {
 public:
  explicit ChiPermutation(std::vector<int> images);

  std::size_t size() const { return images_.size(); }
  int operator()(int k) const { return images_.at(k - 1); }
  int inverse(int a) const { return inverse_.at(a - 1); }
  const std::vector<int>& images() const { return images_; }
  const std::vector<int>& inverse_images() const { return inverse_; }
  // a precedes b in the order induced by chi.
  bool precedes(int a, int b) const { return inverse(a) < inverse(b); }

 private:
  std::vector<int> images_;
  std::vector<int> inverse_;
};

ChiPermutation side_permutation(const SideMap& chi);

// Relabels every element e as f(e); f given as a 1-based table (f[e-1]).
SetPartition relabel(const SetPartition& p, const std::vector<int>& f);

bool is_noncrossing(const SetPartition& p);
bool is_bi_noncrossing(const SetPartition& p, const SideMap& chi);
bool refines(const SetPartition& a, const SetPartition& b);
bool is_lateral_refinement(const SetPartition& a, const SetPartition& b);
SetPartition meet(const SetPartition& a, const SetPartition& b);
// Smallest non-crossing partition above both arguments.
SetPartition join_nc(const SetPartition& a, const SetPartition& b);
// Kreweras complement in NC(n), the cycles of pi^{-1} gamma with gamma = (1 2 ... n).
SetPartition kreweras_nc(const SetPartition& p);
std::vector<SetPartition> enumerate_nc(std::size_t n);

class BncPartition {
 public:
  BncPartition() = default;
  BncPartition(SetPartition p, SideMap chi);

  static BncPartition parse(std::string_view text, const SideMap& chi);
  static BncPartition zero(const SideMap& chi);
  static BncPartition one(const SideMap& chi);

  const SetPartition& partition() const { return p_; }
  const SideMap& chi() const { return chi_; }
  std::size_t size() const { return p_.size(); }
  std::size_t block_count() const { return p_.block_count(); }
  const std::vector<std::vector<int>>& blocks() const { return p_.blocks(); }
  std::string str() const { return p_.str(); }

  friend bool operator==(const BncPartition& a, const BncPartition& b) { return a.chi_ == b.chi_ && a.p_ == b.p_; }
  friend bool operator<(const BncPartition& a, const BncPartition& b) { return a.p_ < b.p_; }

 private:
  SetPartition p_;
  SideMap chi_;
};

inline constexpr std::size_t kDefaultBncLimit = 10;

std::vector<BncPartition> enumerate_bnc(const SideMap& chi, std::size_t limit = kDefaultBncLimit);

bool refines(const BncPartition& a, const BncPartition& b);
BncPartition meet_bnc(const BncPartition& a, const BncPartition& b);
BncPartition join_bnc(const BncPartition& a, const BncPartition& b);
BncPartition kreweras(const BncPartition& p);
// p restricted to the union of blocks `subset`, relabeled to 1..|subset|.
BncPartition restrict(const BncPartition& p, const std::vector<int>& subset);
// Identifies q and q+1; the result lives over chi with position q removed.
BncPartition collapse(const BncPartition& p, std::size_t q);
// Groups given by their right ends k(1) < ... < k(m) = n.
SideMap hat_sides(const SideMap& chi, const std::vector<int>& group_ends);
BncPartition hat_embed(const BncPartition& p, const std::vector<int>& group_ends);
bool is_lateral_refinement(const BncPartition& a, const BncPartition& b);

unsigned long long catalan(std::size_t n);

}  // namespace bifree
