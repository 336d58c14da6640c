#include "bifree/moment_cumulant.hpp"

#include <algorithm>
#include <stdexcept>

#include "recursion.hpp"

namespace bifree {

OperatorTuple::OperatorTuple(SideMap chi, std::vector<Op> ops, std::size_t b_dim)
    : chi_(std::move(chi)), ops_(std::move(ops)), d_(b_dim) {
  if (chi_.size() != ops_.size()) {
    throw std::invalid_argument("tuple has " + std::to_string(ops_.size()) + " operators for a side map of length " +
                                std::to_string(chi_.size()));
  }
  for (const auto& op : ops_) {
    if (!op) throw std::invalid_argument("null operator in tuple");
  }
  if (d_ == 0) throw std::invalid_argument("B must have positive dimension");
}

OperatorTuple::OperatorTuple(const Bimodule& x, SideMap chi, std::vector<Op> ops)
    : OperatorTuple(std::move(chi), std::move(ops), x.b_dim()) {
  for (std::size_t k = 1; k <= size(); ++k) {
    if (!is_side_operator(x, op(k), chi_.side(k))) {
      throw std::invalid_argument("operator " + std::to_string(k) + " is not a " +
                                  (chi_.side(k) == Side::Left ? "left" : "right") + " operator");
    }
  }
}

OperatorTuple OperatorTuple::restricted(const std::vector<int>& subset) const {
  std::vector<Op> ops;
  for (int k : subset) ops.push_back(op(static_cast<std::size_t>(k)));
  return OperatorTuple(chi_.restricted(subset), std::move(ops), d_);
}

OperatorTuple OperatorTuple::with_op(std::size_t k, Op t) const {
  auto ops = ops_;
  ops.at(k - 1) = std::move(t);
  return OperatorTuple(chi_, std::move(ops), d_);
}

OperatorTuple OperatorTuple::merged(std::size_t q) const {
  if (q < 1 || q >= size()) throw std::out_of_range("merge position " + std::to_string(q) + " out of range");
  if (chi_.side(q) != chi_.side(q + 1)) throw std::invalid_argument("merged entries lie on different sides");
  std::vector<Op> ops;
  for (std::size_t k = 1; k <= size(); ++k) {
    if (k == q) continue;
    ops.push_back(k == q + 1 ? compose({op(q), op(q + 1)}) : op(k));
  }
  return OperatorTuple(chi_.without(q), std::move(ops), d_);
}

namespace {

Op insertion(const BElem& b, Side side) { return side == Side::Left ? left_mult(b) : right_mult(b); }

struct NumericBackend {
  using Slot = std::vector<Op>;
  using Value = BElem;
  using Result = BElem;
  std::size_t d;

  Value expect(const std::vector<const Slot*>& slots) const {
    std::vector<Op> word;
    for (const auto* s : slots) word.insert(word.end(), s->begin(), s->end());
    return expectation_of_word(word, d);
  }
  void fuse_before(Slot& s, const Value& v, Side side) const { s.insert(s.begin(), insertion(v, side)); }
  void fuse_after(Slot& s, const Value& v, Side side) const { s.push_back(insertion(v, side)); }
  Result finish_single(Value v) const { return v; }
  Result finish_tops(detail::RecState<Slot>&) const { throw std::logic_error("moment recursion reached top strings"); }
  bool same(const Result& a, const Result& b) const { return a == b; }
};

struct SymbolicBackend {
  using Slot = std::string;
  using Value = std::string;
  using Result = std::string;

  Value expect(const std::vector<const Slot*>& slots) const {
    std::string out = "E(";
    for (std::size_t i = 0; i < slots.size(); ++i) {
      // Adjacent bare operators are juxtaposed; insertions are set off by spaces.
      if (i > 0 && !(slots[i - 1]->back() != '}' && slots[i]->front() == 'T')) out += ' ';
      out += *slots[i];
    }
    return out + ")";
  }
  static std::string wrap(const Value& v, Side side) { return std::string(side == Side::Left ? "L" : "R") + "_{" + v + "}"; }
  void fuse_before(Slot& s, const Value& v, Side side) const { s = wrap(v, side) + " " + s; }
  void fuse_after(Slot& s, const Value& v, Side side) const { s += " " + wrap(v, side); }
  Result finish_single(Value v) const { return v; }
  Result finish_tops(detail::RecState<Slot>&) const { throw std::logic_error("moment recursion reached top strings"); }
  bool same(const Result& a, const Result& b) const { return a == b; }
};

void check_arity(const BncPartition& pi, const OperatorTuple& t) {
  if (pi.chi() != t.chi()) {
    throw std::invalid_argument("partition over " + pi.chi().str() + " applied to a tuple over " + t.chi().str());
  }
}

}  // namespace

BElem e_pi(const BncPartition& pi, const OperatorTuple& t, const EvalOptions& options) {
  check_arity(pi, t);
  if (t.size() == 0) return b_identity(t.b_dim());
  std::vector<std::vector<Op>> slots;
  for (const auto& op : t.ops()) slots.push_back({op});
  NumericBackend be{t.b_dim()};
  auto shape = detail::make_shape(pi.partition(), pi.chi(), {});
  return detail::run_recursion(be, detail::with_slots(shape, std::move(slots)), options.check_lr_choice);
}

std::string e_pi_trace(const BncPartition& pi) {
  if (pi.size() == 0) return "1";
  std::vector<std::string> slots;
  for (std::size_t k = 1; k <= pi.size(); ++k) slots.push_back("T_" + std::to_string(k));
  SymbolicBackend be;
  auto shape = detail::make_shape(pi.partition(), pi.chi(), {});
  return detail::run_recursion(be, detail::with_slots(shape, std::move(slots)), false);
}

MomentTable::MomentTable(const OperatorTuple& t, const EvalOptions& options) : lattice_(lattice_for(t.chi())) {
  for (const auto& p : lattice_->elements()) moments_.push_back(e_pi(p, t, options));
  for (std::size_t j = 0; j < lattice_->size(); ++j) {
    BElem sum = b_zero(t.b_dim());
    for (auto i : lattice_->down_set(j)) {
      const Rational& mu = lattice_->mobius(i, j);
      if (mu != 0) sum += moments_[i] * mu;
    }
    cumulants_.push_back(std::move(sum));
  }
}

BElem kappa_pi(const BncPartition& pi, const OperatorTuple& t, const EvalOptions& options) {
  check_arity(pi, t);
  auto lattice = lattice_for(t.chi());
  const std::size_t j = lattice->index_of(pi);
  BElem sum = b_zero(t.b_dim());
  for (auto i : lattice->down_set(j)) sum += e_pi(lattice->at(i), t, options) * lattice->mobius(i, j);
  return sum;
}

BElem moment_from_cumulants(const BncPartition& pi, const OperatorTuple& t, const EvalOptions& options) {
  check_arity(pi, t);
  MomentTable table(t, options);
  const auto& lattice = table.lattice();
  BElem sum = b_zero(t.b_dim());
  for (auto i : lattice.down_set(lattice.index_of(pi))) sum += table.cumulant(i);
  return sum;
}

BElem kappa(const OperatorTuple& t, const EvalOptions& options) {
  return kappa_pi(BncPartition::one(t.chi()), t, options);
}

Rational universal_coefficient(const Lattice& lattice, std::size_t pi, const SetPartition& eps) {
  Rational sum = 0;
  for (auto s : lattice.up_set(pi)) {
    if (refines(lattice.at(s).partition(), eps)) sum += lattice.mobius(pi, s);
  }
  return sum;
}

BElem universal_rhs(const ShadingMap& eps, const OperatorTuple& t, const EvalOptions& options) {
  if (eps.size() != t.size()) throw std::invalid_argument("shading length differs from the tuple length");
  auto lattice = lattice_for(t.chi());
  SetPartition eps_p = SetPartition::from_labels(eps.shades());
  BElem sum = b_zero(t.b_dim());
  for (std::size_t i = 0; i < lattice->size(); ++i) {
    Rational c = universal_coefficient(*lattice, i, eps_p);
    if (c != 0) sum += e_pi(lattice->at(i), t, options) * c;
  }
  return sum;
}

namespace {

void check_groups(const std::vector<int>& group_ends, std::size_t n) {
  if (group_ends.empty() || group_ends.back() != static_cast<int>(n) || group_ends.front() < 1) {
    throw std::invalid_argument("groups must end at " + std::to_string(n));
  }
  for (std::size_t i = 1; i < group_ends.size(); ++i) {
    if (group_ends[i] <= group_ends[i - 1]) throw std::invalid_argument("group ends must increase strictly");
  }
}

}  // namespace

OperatorTuple grouped_products(const OperatorTuple& t, const std::vector<int>& group_ends) {
  check_groups(group_ends, t.size());
  std::vector<Side> sides;
  std::vector<Op> ops;
  int start = 1;
  for (int end : group_ends) {
    const Side s = t.chi().side(static_cast<std::size_t>(start));
    std::vector<Op> factors;
    for (int k = start; k <= end; ++k) {
      if (t.chi().side(static_cast<std::size_t>(k)) != s) {
        throw std::invalid_argument("group ending at " + std::to_string(end) + " mixes sides");
      }
      factors.push_back(t.op(static_cast<std::size_t>(k)));
    }
    sides.push_back(s);
    ops.push_back(compose(factors));
    start = end + 1;
  }
  return OperatorTuple(SideMap(std::move(sides)), std::move(ops), t.b_dim());
}

BElem product_cumulant_rhs(const BncPartition& pi, const std::vector<int>& group_ends, const OperatorTuple& t,
                           const EvalOptions& options) {
  if (group_ends.size() != pi.size()) throw std::invalid_argument("one group per node of the partition required");
  check_groups(group_ends, t.size());
  if (hat_sides(pi.chi(), group_ends) != t.chi()) {
    throw std::invalid_argument("tuple sides do not refine the grouped side map");
  }
  MomentTable table(t, options);
  const auto& lattice = table.lattice();
  const std::size_t target = lattice.index_of(hat_embed(pi, group_ends));
  const std::size_t zero_hat = lattice.index_of(hat_embed(BncPartition::zero(pi.chi()), group_ends));
  BElem sum = b_zero(t.b_dim());
  for (std::size_t s = 0; s < lattice.size(); ++s) {
    if (lattice.join(s, zero_hat) == target) sum += table.cumulant(s);
  }
  return sum;
}

namespace {

OperatorTuple series_tuple(const std::vector<SeriesLetter>& word, const std::vector<BElem>& b, std::size_t d) {
  if (word.empty()) throw std::invalid_argument("series word must be nonempty");
  if (b.size() + 1 != word.size()) {
    throw std::invalid_argument("series word of length " + std::to_string(word.size()) + " needs " +
                                std::to_string(word.size() - 1) + " B-insertions");
  }
  std::vector<Side> sides;
  std::vector<Op> ops;
  for (std::size_t k = 0; k < word.size(); ++k) {
    sides.push_back(word[k].side);
    ops.push_back(k + 1 < word.size() ? compose({word[k].z, insertion(b[k], word[k].side)}) : word[k].z);
  }
  return OperatorTuple(SideMap(std::move(sides)), std::move(ops), d);
}

}  // namespace

BElem moment_series(const std::vector<SeriesLetter>& word, const std::vector<BElem>& b, std::size_t b_dim) {
  auto t = series_tuple(word, b, b_dim);
  return e_pi(BncPartition::one(t.chi()), t);
}

BElem cumulant_series(const std::vector<SeriesLetter>& word, const std::vector<BElem>& b, std::size_t b_dim) {
  return kappa(series_tuple(word, b, b_dim));
}

namespace {

void check_scalar_pair(const OperatorTuple& first, const OperatorTuple& second) {
  if (first.b_dim() != 1 || second.b_dim() != 1) {
    throw std::domain_error("multiplicative convolution formula holds only for a scalar base algebra");
  }
  if (first.chi() != second.chi()) throw std::invalid_argument("convolution factors over different side maps");
}

}  // namespace

Rational multiplicative_convolution_lhs(const OperatorTuple& first, const OperatorTuple& second) {
  check_scalar_pair(first, second);
  std::vector<Op> ops;
  for (std::size_t k = 1; k <= first.size(); ++k) {
    ops.push_back(first.chi().side(k) == Side::Left ? compose({first.op(k), second.op(k)})
                                                    : compose({second.op(k), first.op(k)}));
  }
  return kappa(OperatorTuple(first.chi(), std::move(ops), 1))(0, 0);
}

Rational multiplicative_convolution_rhs(const OperatorTuple& first, const OperatorTuple& second) {
  check_scalar_pair(first, second);
  MomentTable a(first);
  MomentTable b(second);
  const auto& lattice = a.lattice();
  Rational sum = 0;
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    const BElem& ka = a.cumulant(i);
    if (ka.is_zero()) continue;
    sum += ka(0, 0) * b.cumulant(kreweras(lattice.at(i)))(0, 0);
  }
  return sum;
}

const char* phi_name(Phi phi) { return phi == Phi::Moment ? "E" : "kappa"; }

BElem phi_value(Phi phi, const BncPartition& pi, const OperatorTuple& t, const EvalOptions& options) {
  return phi == Phi::Moment ? e_pi(pi, t, options) : kappa_pi(pi, t, options);
}

namespace {

PropertyOutcome outcome(BElem lhs, BElem rhs) {
  PropertyOutcome o{std::move(lhs), std::move(rhs), {}, false};
  o.rhs_alt = o.rhs;
  o.equal = o.lhs == o.rhs;
  return o;
}

std::vector<int> sorted_unique(std::vector<int> v, std::size_t n) {
  std::sort(v.begin(), v.end());
  if (std::adjacent_find(v.begin(), v.end()) != v.end()) throw std::invalid_argument("repeated position in a subset");
  for (int e : v) {
    if (e < 1 || e > static_cast<int>(n)) throw std::invalid_argument("subset position out of range");
  }
  return v;
}

bool is_union_of_blocks(const BncPartition& pi, const std::vector<int>& subset) {
  for (const auto& b : pi.blocks()) {
    std::size_t inside = 0;
    for (int e : b) inside += std::binary_search(subset.begin(), subset.end(), e) ? 1 : 0;
    if (inside != 0 && inside != b.size()) return false;
  }
  return true;
}

}  // namespace

bool is_chi_interval(const SideMap& chi, const std::vector<int>& subset) {
  if (subset.empty()) return false;
  auto s = side_permutation(chi);
  std::vector<int> pos;
  for (int e : subset) pos.push_back(s.inverse(e));
  std::sort(pos.begin(), pos.end());
  return pos.back() - pos.front() + 1 == static_cast<int>(pos.size());
}

PropertyOutcome check_property_i(Phi phi, const BncPartition& pi, const OperatorTuple& t, const BElem& b) {
  check_arity(pi, t);
  const std::size_t n = t.size();
  if (n == 0) throw std::invalid_argument("property (i) needs at least one entry");
  const Side last = t.chi().side(n);
  BElem lhs = phi_value(phi, pi, t.with_op(n, compose({t.op(n), insertion(b, last)})));
  std::size_t q = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    if (t.chi().side(k) != last) q = k;
  }
  if (q != 0) {
    return outcome(std::move(lhs), phi_value(phi, pi, t.with_op(q, compose({t.op(q), insertion(b, detail::flip(last))}))));
  }
  BElem base = phi_value(phi, pi, t);
  return outcome(std::move(lhs), last == Side::Left ? base * b : b * base);
}

PropertyOutcome check_property_ii(Phi phi, const BncPartition& pi, const OperatorTuple& t, std::size_t p,
                                  const BElem& b) {
  check_arity(pi, t);
  if (p < 1 || p > t.size()) throw std::out_of_range("property (ii) position out of range");
  const Side side = t.chi().side(p);
  BElem lhs = phi_value(phi, pi, t.with_op(p, compose({insertion(b, side), t.op(p)})));
  std::size_t q = 0;
  for (std::size_t k = 1; k < p; ++k) {
    if (t.chi().side(k) == side) q = k;
  }
  if (q != 0) return outcome(std::move(lhs), phi_value(phi, pi, t.with_op(q, compose({t.op(q), insertion(b, side)}))));
  BElem base = phi_value(phi, pi, t);
  return outcome(std::move(lhs), side == Side::Left ? b * base : base * b);
}

PropertyOutcome check_property_iii(Phi phi, const BncPartition& pi, const OperatorTuple& t,
                                   const std::vector<std::vector<int>>& intervals) {
  check_arity(pi, t);
  const std::size_t n = t.size();
  auto s = side_permutation(t.chi());
  std::vector<std::vector<int>> parts;
  std::vector<char> seen(n + 1, 0);
  for (const auto& raw : intervals) {
    auto v = sorted_unique(raw, n);
    if (!is_chi_interval(t.chi(), v)) throw std::invalid_argument("property (iii): a part is not a chi-interval");
    if (!is_union_of_blocks(pi, v)) throw std::invalid_argument("property (iii): a part is not a union of blocks");
    for (int e : v) {
      if (seen[e]) throw std::invalid_argument("property (iii): parts overlap");
      seen[e] = 1;
    }
    parts.push_back(std::move(v));
  }
  if (std::count(seen.begin() + 1, seen.end(), 1) != static_cast<long>(n)) {
    throw std::invalid_argument("property (iii): parts do not cover every position");
  }
  auto first_pos = [&](const std::vector<int>& v) {
    int m = static_cast<int>(n) + 1;
    for (int e : v) m = std::min(m, s.inverse(e));
    return m;
  };
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (first_pos(parts[i - 1]) > first_pos(parts[i])) throw std::invalid_argument("property (iii): parts not in chi-order");
  }
  BElem rhs = b_identity(t.b_dim());
  for (const auto& v : parts) rhs = rhs * phi_value(phi, restrict(pi, v), t.restricted(v));
  return outcome(phi_value(phi, pi, t), std::move(rhs));
}

PropertyOutcome check_property_iv(Phi phi, const BncPartition& pi, const OperatorTuple& t, const std::vector<int>& raw) {
  check_arity(pi, t);
  const std::size_t n = t.size();
  auto v = sorted_unique(raw, n);
  std::vector<int> w;
  for (int k = 1; k <= static_cast<int>(n); ++k) {
    if (!std::binary_search(v.begin(), v.end(), k)) w.push_back(k);
  }
  if (v.empty() || w.empty()) throw std::invalid_argument("property (iv): both parts must be nonempty");
  if (!is_chi_interval(t.chi(), v)) throw std::invalid_argument("property (iv): V is not a chi-interval");
  if (!is_union_of_blocks(pi, v)) throw std::invalid_argument("property (iv): V is not a union of blocks");
  auto s = side_permutation(t.chi());
  if (std::binary_search(v.begin(), v.end(), s(1)) || std::binary_search(v.begin(), v.end(), s(static_cast<int>(n)))) {
    throw std::invalid_argument("property (iv): the chi-extremes must lie in W");
  }
  int vmin = static_cast<int>(n) + 1;
  int vmax = 0;
  for (int e : v) {
    vmin = std::min(vmin, s.inverse(e));
    vmax = std::max(vmax, s.inverse(e));
  }
  const int theta = s(vmin - 1);
  const int gamma = s(vmax + 1);
  const BElem inner = phi_value(phi, restrict(pi, v), t.restricted(v));
  const BncPartition outer = restrict(pi, w);
  const auto th = static_cast<std::size_t>(theta);
  const auto ga = static_cast<std::size_t>(gamma);
  Op theta_op = t.chi().side(th) == Side::Left ? compose({t.op(th), left_mult(inner)})
                                               : compose({right_mult(inner), t.op(th)});
  Op gamma_op = t.chi().side(ga) == Side::Left ? compose({left_mult(inner), t.op(ga)})
                                               : compose({t.op(ga), right_mult(inner)});
  PropertyOutcome o;
  o.lhs = phi_value(phi, pi, t);
  o.rhs = phi_value(phi, outer, t.with_op(th, theta_op).restricted(w));
  o.rhs_alt = phi_value(phi, outer, t.with_op(ga, gamma_op).restricted(w));
  o.equal = o.lhs == o.rhs && o.lhs == o.rhs_alt;
  return o;
}

PropertyOutcome check_moment_collapse(const BncPartition& pi, const OperatorTuple& t, std::size_t q) {
  check_arity(pi, t);
  auto merged = t.merged(q);
  if (!pi.partition().same_block(static_cast<int>(q), static_cast<int>(q) + 1)) {
    throw std::invalid_argument("moment collapse needs q and q+1 in one block");
  }
  return outcome(e_pi(pi, t), e_pi(collapse(pi, q), merged));
}

PropertyOutcome check_cumulant_expansion(const BncPartition& pi, const OperatorTuple& t, std::size_t q) {
  auto merged = t.merged(q);
  check_arity(pi, merged);
  MomentTable table(t);
  const auto& lattice = table.lattice();
  BElem rhs = b_zero(t.b_dim());
  for (std::size_t s = 0; s < lattice.size(); ++s) {
    if (collapse(lattice.at(s), q) == pi) rhs += table.cumulant(s);
  }
  return outcome(kappa_pi(pi, merged), std::move(rhs));
}

PropertyOutcome check_cumulant_two_block_form(const OperatorTuple& t, std::size_t q) {
  auto merged = t.merged(q);
  MomentTable table(t);
  const auto& lattice = table.lattice();
  BElem rhs = table.cumulant(lattice.one_index());
  for (std::size_t s = 0; s < lattice.size(); ++s) {
    const auto& p = lattice.at(s);
    if (p.block_count() == 2 && !p.partition().same_block(static_cast<int>(q), static_cast<int>(q) + 1)) {
      rhs += table.cumulant(s);
    }
  }
  return outcome(kappa(merged), std::move(rhs));
}

}  // namespace bifree
