#include "bifree/operator_model.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <stdexcept>

#include "recursion.hpp"

namespace bifree {

namespace words {

std::size_t length(std::uint64_t w) {
  std::size_t n = 0;
  while (w != 0) {
    ++n;
    w >>= kBits;
  }
  return n;
}

int first(std::uint64_t w) { return static_cast<int>(w & kMask); }

int last(std::uint64_t w) {
  const std::size_t n = length(w);
  return n == 0 ? 0 : static_cast<int>((w >> (kBits * (n - 1))) & kMask);
}

std::uint64_t drop_first(std::uint64_t w) { return w >> kBits; }

std::uint64_t drop_last(std::uint64_t w) {
  const std::size_t n = length(w);
  return n == 0 ? 0 : w & ~(kMask << (kBits * (n - 1)));
}

std::uint64_t push_front(std::uint64_t w, int letter) {
  if (length(w) >= kMaxLetters) throw TruncationError("tensor word longer than the packed limit");
  return (w << kBits) | static_cast<std::uint64_t>(letter);
}

std::uint64_t push_back(std::uint64_t w, int letter) {
  const std::size_t n = length(w);
  if (n >= kMaxLetters) throw TruncationError("tensor word longer than the packed limit");
  return w | (static_cast<std::uint64_t>(letter) << (kBits * n));
}

std::vector<int> letters(std::uint64_t w) {
  std::vector<int> out;
  for (; w != 0; w >>= kBits) out.push_back(static_cast<int>(w & kMask));
  return out;
}

}  // namespace words

FreeProduct::FreeProduct(std::vector<Bimodule> components, std::size_t depth)
    : components_(std::move(components)), depth_(depth), d_(0) {
  if (components_.empty()) throw std::invalid_argument("free product needs at least one component");
  if (depth_ > words::kMaxLetters) {
    throw std::out_of_range("depth limited to " + std::to_string(words::kMaxLetters) + " letters");
  }
  d_ = components_.front().b_dim();
  letter_component_.push_back(0);
  letter_copy_.push_back(0);
  for (std::size_t k = 0; k < components_.size(); ++k) {
    if (components_[k].b_dim() != d_) throw std::invalid_argument("components over different base algebras");
    offset_.push_back(letter_component_.size() - 1);
    for (std::size_t j = 1; j <= components_[k].copies(); ++j) {
      letter_component_.push_back(k + 1);
      letter_copy_.push_back(j);
    }
  }
  if (letter_component_.size() - 1 > words::kMask) throw std::out_of_range("too many letters for the word packing");
}

int FreeProduct::letter(std::size_t k, std::size_t copy) const {
  if (k < 1 || k > components_.size() || copy < 1 || copy > components_[k - 1].copies()) {
    throw std::out_of_range("no letter for component " + std::to_string(k) + " copy " + std::to_string(copy));
  }
  return static_cast<int>(offset_[k - 1] + copy);
}

std::vector<std::uint64_t> FreeProduct::basis_words() const {
  std::vector<std::uint64_t> out{0};
  std::vector<std::uint64_t> frontier{0};
  for (std::size_t len = 1; len <= depth_; ++len) {
    std::vector<std::uint64_t> next;
    for (auto w : frontier) {
      const std::size_t prev = w == 0 ? 0 : component_of(words::last(w));
      for (std::size_t l = 1; l < letter_component_.size(); ++l) {
        if (letter_component_[l] == prev) continue;
        next.push_back(words::push_back(w, static_cast<int>(l)));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

std::string FreeProduct::word_str(std::uint64_t w) const {
  if (w == 0) return "1";
  std::string out;
  for (int l : words::letters(w)) {
    if (!out.empty()) out += "*";
    out += "e" + std::to_string(component_of(l)) + "." + std::to_string(copy_of(l));
  }
  return out;
}

namespace {

// Column j of a component operator: the cells of T(e_j), or nothing when T(e_j) leaves the component.
using Column = std::optional<std::vector<std::pair<std::size_t, BElem>>>;

std::vector<Column> extract_columns(const Bimodule& x, const Op& t) {
  const std::size_t d = x.b_dim();
  std::vector<Column> cols;
  for (std::size_t j = 0; j <= x.copies(); ++j) {
    try {
      CellVector v = t->apply(CellVector::single(d, j, b_identity(d)));
      std::vector<std::pair<std::size_t, BElem>> col;
      for (const auto& [key, b] : v.cells()) {
        if (key > x.copies()) throw std::invalid_argument("component operator leaves its bimodule");
        col.emplace_back(static_cast<std::size_t>(key), b);
      }
      cols.emplace_back(std::move(col));
    } catch (const TruncationError&) {
      cols.emplace_back(std::nullopt);
    }
  }
  return cols;
}

class SideLift : public Operator {
 public:
  SideLift(const FreeProduct& fp, std::size_t k, Side side, const Op& t)
      : k_(k), side_(side), depth_(fp.depth()), d_(fp.b_dim()), columns_(extract_columns(fp.component(k), t)) {
    for (std::size_t j = 0; j <= fp.component(k).copies(); ++j) letters_.push_back(j == 0 ? 0 : fp.letter(k, j));
    for (int l = 0; l <= static_cast<int>(words::kMask); ++l) {
      try {
        component_.push_back(l == 0 ? 0 : fp.component_of(l));
        copy_.push_back(l == 0 ? 0 : fp.copy_of(l));
      } catch (const std::out_of_range&) {
        component_.push_back(0);
        copy_.push_back(0);
      }
    }
  }

  CellVector apply(const CellVector& v) const override {
    CellVector out(d_);
    for (const auto& [w, b] : v.cells()) {
      std::size_t j = 0;
      std::uint64_t rest = w;
      const int edge = side_ == Side::Left ? words::first(w) : words::last(w);
      if (w != 0 && component_[static_cast<std::size_t>(edge)] == k_) {
        j = copy_[static_cast<std::size_t>(edge)];
        rest = side_ == Side::Left ? words::drop_first(w) : words::drop_last(w);
      }
      const auto& col = columns_[j];
      if (!col) throw TruncationError("component operator leaves its truncated space");
      for (const auto& [i, a] : *col) {
        std::uint64_t target = rest;
        if (i != 0) {
          if (words::length(rest) + 1 > depth_) throw TruncationError("tensor word exceeds the free product depth");
          target = side_ == Side::Left ? words::push_front(rest, letters_[i]) : words::push_back(rest, letters_[i]);
        }
        out.add(target, side_ == Side::Left ? a * b : b * a);
      }
    }
    return out;
  }

 private:
  std::size_t k_;
  Side side_;
  std::size_t depth_;
  std::size_t d_;
  std::vector<Column> columns_;
  std::vector<int> letters_;
  std::vector<std::size_t> component_;
  std::vector<std::size_t> copy_;
};

}  // namespace

Op FreeProduct::lambda(std::size_t k, const Op& t) const { return std::make_shared<SideLift>(*this, k, Side::Left, t); }

Op FreeProduct::rho(std::size_t k, const Op& t) const { return std::make_shared<SideLift>(*this, k, Side::Right, t); }

bool agree_on_basis(const FreeProduct& fp, const Op& a, const Op& b) {
  const std::size_t d = fp.b_dim();
  for (auto w : fp.basis_words()) {
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < d; ++c) {
        CellVector v = CellVector::single(d, w, Matrix::unit(d, r, c));
        CellVector x(d);
        CellVector y(d);
        try {
          x = a->apply(v);
          y = b->apply(v);
        } catch (const TruncationError&) {
          continue;
        }
        if (x != y) return false;
      }
    }
  }
  return true;
}

namespace {

void check_component_tuple(const FreeProduct& fp, const ComponentTuple& t) {
  if (t.chi.size() != t.ops.size() || t.eps.size() != t.ops.size()) {
    throw std::invalid_argument("component tuple lengths differ");
  }
  for (std::size_t k = 1; k <= t.ops.size(); ++k) {
    const int c = t.eps.shade(k);
    if (c < 1 || static_cast<std::size_t>(c) > fp.component_count()) {
      throw std::invalid_argument("shade " + std::to_string(c) + " names no component");
    }
  }
}

struct DiagramBackend {
  using Slot = std::vector<Op>;
  using Value = BElem;
  using Result = CellVector;

  const FreeProduct& fp;
  std::vector<int> block_shade;
  std::vector<int> top_order;

  Value expect(const std::vector<const Slot*>& slots) const {
    std::vector<Op> word;
    for (const auto* s : slots) word.insert(word.end(), s->begin(), s->end());
    return expectation_of_word(word, fp.b_dim());
  }
  static Op insertion(const Value& v, Side side) { return side == Side::Left ? left_mult(v) : right_mult(v); }
  void fuse_before(Slot& s, const Value& v, Side side) const { s.insert(s.begin(), insertion(v, side)); }
  void fuse_after(Slot& s, const Value& v, Side side) const { s.push_back(insertion(v, side)); }
  Result finish_single(Value v) const { return CellVector::single(fp.b_dim(), 0, v); }

  Result finish_tops(detail::RecState<Slot>& s) const {
    const std::size_t d = fp.b_dim();
    if (top_order.size() > fp.depth()) throw TruncationError("diagram has more top strings than the depth allows");
    std::map<std::uint64_t, BElem> acc{{0, b_identity(d)}};
    int prev = 0;
    for (int id : top_order) {
      auto it = std::find_if(s.blocks.begin(), s.blocks.end(), [&](const detail::RecBlock& b) { return b.id == id; });
      if (it == s.blocks.end()) throw std::logic_error("top string lost during the recursion");
      const int comp = block_shade[static_cast<std::size_t>(id)];
      if (comp == prev) throw std::logic_error("adjacent top strings of one shade");
      prev = comp;
      std::vector<Op> word;
      for (int e : it->nodes) word.insert(word.end(), s.slots[static_cast<std::size_t>(e) - 1].begin(),
                                          s.slots[static_cast<std::size_t>(e) - 1].end());
      CellVector v = CellVector::xi(d);
      for (auto w = word.rbegin(); w != word.rend(); ++w) v = (*w)->apply(v);
      std::map<std::uint64_t, BElem> next;
      for (const auto& [key, coef] : acc) {
        for (const auto& [cell, c] : v.cells()) {
          if (cell == 0) continue;
          const std::uint64_t target = words::push_back(key, fp.letter(static_cast<std::size_t>(comp), cell));
          auto [pos, fresh] = next.emplace(target, coef * c);
          if (!fresh) pos->second += coef * c;
        }
      }
      acc = std::move(next);
    }
    CellVector out(d);
    for (const auto& [key, b] : acc) out.add(key, b);
    return out;
  }

  bool same(const Result& a, const Result& b) const { return a == b; }
};

}  // namespace

OperatorTuple lift_tuple(const FreeProduct& fp, const ComponentTuple& t) {
  check_component_tuple(fp, t);
  std::vector<Op> ops;
  for (std::size_t k = 1; k <= t.ops.size(); ++k) {
    ops.push_back(fp.lift(static_cast<std::size_t>(t.eps.shade(k)), t.chi.side(k), t.ops[k - 1]));
  }
  return OperatorTuple(t.chi, std::move(ops), fp.b_dim());
}

CellVector e_d(const FreeProduct& fp, const LRDiagram& d, const ComponentTuple& t) {
  check_component_tuple(fp, t);
  if (d.chi() != t.chi || !(d.eps() == t.eps)) throw std::invalid_argument("diagram and tuple disagree on sides or shades");
  if (t.ops.empty()) return CellVector::xi(fp.b_dim());
  DiagramBackend be{fp, {}, d.top_order()};
  for (const auto& b : d.strings().blocks()) be.block_shade.push_back(t.eps.shade(static_cast<std::size_t>(b.front())));
  auto shape = detail::make_shape(d.strings(), d.chi(), d.top_flags());
  std::vector<std::vector<Op>> slots;
  for (const auto& op : t.ops) slots.push_back({op});
  return detail::run_recursion(be, detail::with_slots(shape, std::move(slots)), true);
}

VectorOutcome expansion_check(const FreeProduct& fp, const ComponentTuple& t) {
  OperatorTuple lifted = lift_tuple(fp, t);
  CellVector lhs = CellVector::xi(fp.b_dim());
  for (auto it = lifted.ops().rbegin(); it != lifted.ops().rend(); ++it) lhs = (*it)->apply(lhs);
  CellVector rhs(fp.b_dim());
  for (std::size_t k = 0; k <= t.ops.size(); ++k) {
    for (const auto& wd : weighted_lateral_stratum(t.chi, t.eps, k)) {
      if (wd.coefficient == 0) continue;
      rhs += Rational(wd.coefficient) * e_d(fp, wd.diagram, t);
    }
  }
  const bool equal = lhs == rhs;
  return {std::move(lhs), std::move(rhs), equal};
}

namespace {

class ShiftOperator : public Operator {
 public:
  ShiftOperator(const HaarModel& h, int step) : h_(h), step_(step) {}
  CellVector apply(const CellVector& v) const override {
    CellVector out(v.b_dim());
    for (const auto& [cell, b] : v.cells()) out.add(h_.cell(h_.index(cell) + step_), b);
    return out;
  }

 private:
  HaarModel h_;
  int step_;
};

}  // namespace

HaarModel::HaarModel(std::size_t b_dim, std::size_t window) : m_(window), x_(b_dim, 2 * window) {
  if (window == 0) throw std::invalid_argument("Haar window must be positive");
  u_ = std::make_shared<ShiftOperator>(*this, 1);
  u_inv_ = std::make_shared<ShiftOperator>(*this, -1);
}

std::uint64_t HaarModel::cell(int j) const {
  if (std::abs(j) > static_cast<int>(m_)) throw TruncationError("shift leaves the Haar window");
  if (j == 0) return 0;
  return j > 0 ? static_cast<std::uint64_t>(2 * j - 1) : static_cast<std::uint64_t>(-2 * j);
}

int HaarModel::index(std::uint64_t cell) const {
  if (cell > 2 * m_) throw std::out_of_range("cell outside the Haar window");
  if (cell == 0) return 0;
  return cell % 2 == 1 ? static_cast<int>((cell + 1) / 2) : -static_cast<int>(cell / 2);
}

Op HaarModel::word(const std::vector<int>& exponents) const {
  std::vector<Op> factors;
  for (int e : exponents) {
    if (e != 1 && e != -1) throw std::invalid_argument("Haar word exponents must be +1 or -1");
    factors.push_back(e == 1 ? u_ : u_inv_);
  }
  return factors.empty() ? identity_op() : compose(factors);
}

namespace {

constexpr int kGroupBits = 3;
constexpr std::uint64_t kGroupMask = 7;

std::vector<int> group_letters(std::uint64_t g) {
  std::vector<int> out;
  for (; g != 0; g >>= kGroupBits) out.push_back(static_cast<int>(g & kGroupMask));
  return out;
}

std::uint64_t pack_group(const std::vector<int>& letters) {
  if (letters.size() > FreeGroupAlgebra::kMaxLength) throw TruncationError("group word exceeds the length limit");
  std::uint64_t g = 0;
  for (std::size_t i = letters.size(); i-- > 0;) g = (g << kGroupBits) | static_cast<std::uint64_t>(letters[i]);
  return g;
}

class TranslationOperator : public Operator {
 public:
  TranslationOperator(std::uint64_t g, bool left) : g_(g), left_(left) {}
  CellVector apply(const CellVector& v) const override {
    CellVector out(v.b_dim());
    for (const auto& [h, b] : v.cells()) out.add(left_ ? FreeGroupAlgebra::multiply(g_, h) : FreeGroupAlgebra::multiply(h, g_), b);
    return out;
  }

 private:
  std::uint64_t g_;
  bool left_;
};

}  // namespace

std::uint64_t FreeGroupAlgebra::multiply(std::uint64_t g, std::uint64_t h) {
  std::vector<int> a = group_letters(g);
  std::vector<int> b = group_letters(h);
  std::size_t cancel = 0;
  while (cancel < a.size() && cancel < b.size() && a[a.size() - 1 - cancel] == inverse(b[cancel])) ++cancel;
  std::vector<int> out(a.begin(), a.end() - static_cast<long>(cancel));
  out.insert(out.end(), b.begin() + static_cast<long>(cancel), b.end());
  return pack_group(out);
}

std::uint64_t FreeGroupAlgebra::element(const std::vector<int>& letters) {
  std::uint64_t g = 0;
  for (int l : letters) {
    if (l < 1 || l > 4) throw std::invalid_argument("free group letters are 1..4");
    g = multiply(g, pack_group({l}));
  }
  return g;
}

Op FreeGroupAlgebra::left_translation(std::uint64_t g) const { return std::make_shared<TranslationOperator>(g, true); }

Op FreeGroupAlgebra::right_translation(std::uint64_t g) const { return std::make_shared<TranslationOperator>(g, false); }

}  // namespace bifree
