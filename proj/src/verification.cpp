#include "bifree/verification.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "bifree/incidence.hpp"
#include "bifree/lr_diagrams.hpp"
#include "bifree/moment_cumulant.hpp"

namespace bifree {

void Report::add(std::string key, std::string lhs, std::string rhs, bool equal) {
  records.push_back({std::move(key), std::move(lhs), std::move(rhs), equal});
}

void Report::add(std::string key, const BElem& lhs, const BElem& rhs) {
  records.push_back({std::move(key), lhs.str(), rhs.str(), lhs == rhs});
}

void Report::append(const Report& other, const std::string& prefix) {
  for (const auto& r : other.records) records.push_back({prefix + r.key, r.lhs, r.rhs, r.equal});
}

std::size_t Report::mismatches() const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const Record& r) { return !r.equal; }));
}

std::string Report::text(bool mismatches_only) const {
  std::ostringstream out;
  out << "# suite " << suite << " seed " << seed;
  if (!params.empty()) out << ' ' << params;
  out << '\n';
  for (const auto& r : records) {
    if (mismatches_only && r.equal) continue;
    out << (r.equal ? "ok" : "FAIL") << '\t' << r.key << '\t' << r.lhs << '\t' << r.rhs << '\n';
  }
  out << "# " << records.size() << " records, " << mismatches() << " mismatches\n";
  return out.str();
}

std::vector<SideMap> all_side_maps(std::size_t n) {
  std::vector<SideMap> out;
  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    std::vector<Side> s;
    for (std::size_t k = 0; k < n; ++k) s.push_back((mask >> (n - 1 - k) & 1) != 0 ? Side::Right : Side::Left);
    out.emplace_back(std::move(s));
  }
  return out;
}

std::vector<ShadingMap> all_shadings(std::size_t n, int labels) {
  std::vector<ShadingMap> out;
  std::vector<int> s(n, 1);
  for (;;) {
    out.emplace_back(s);
    std::size_t k = n;
    while (k > 0 && s[k - 1] == labels) s[--k] = 1;
    if (k == 0) break;
    ++s[k - 1];
  }
  return out;
}

namespace {

std::size_t pick(std::size_t value, std::size_t fallback) { return value == 0 ? fallback : value; }

std::string params_of(const SuiteOptions& o, std::size_t max_n) {
  std::string s = "max_n " + std::to_string(max_n);
  if (o.depth != 0) s += " depth " + std::to_string(o.depth);
  if (o.window != 0) s += " window " + std::to_string(o.window);
  return s;
}

Report start(const std::string& suite, const SuiteOptions& o, std::string params) {
  Report r;
  r.suite = suite;
  r.seed = o.seed;
  r.params = std::move(params);
  return r;
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i == 0 ? "" : ",") + std::to_string(v[i]);
  return s;
}

std::vector<Op> random_tuple(const Bimodule& x, const SideMap& chi, std::mt19937_64& rng) {
  std::vector<Op> ops;
  for (auto s : chi.sides()) ops.push_back(random_side_operator(x, s, rng));
  return ops;
}

// Group ends for every grouping into at most max_groups consecutive one-sided groups.
std::vector<std::vector<int>> groupings(const SideMap& chi, std::size_t max_groups) {
  const std::size_t n = chi.size();
  std::vector<std::vector<int>> out;
  for (unsigned long mask = 0; mask < (1ul << (n - 1)); ++mask) {
    std::vector<int> ends;
    for (std::size_t k = 1; k < n; ++k) {
      if ((mask >> (k - 1) & 1) != 0) ends.push_back(static_cast<int>(k));
    }
    ends.push_back(static_cast<int>(n));
    if (ends.size() > max_groups) continue;
    bool one_sided = true;
    int prev = 0;
    for (int e : ends) {
      for (int k = prev + 2; k <= e; ++k) one_sided = one_sided && chi.side(k) == chi.side(prev + 1);
      prev = e;
    }
    if (one_sided) out.push_back(std::move(ends));
  }
  return out;
}

// Every way to cut the chi-order into consecutive segments that are unions of blocks, with at least two segments.
std::vector<std::vector<std::vector<int>>> interval_decompositions(const BncPartition& pi) {
  const std::size_t n = pi.size();
  const ChiPermutation s = side_permutation(pi.chi());
  std::vector<char> cut_ok(n + 1, 0);  // a cut after chi-position c keeps every block on one side
  for (std::size_t c = 1; c < n; ++c) {
    bool ok = true;
    for (const auto& b : pi.blocks()) {
      bool before = false;
      bool after = false;
      for (int e : b) (static_cast<std::size_t>(s.inverse(e)) <= c ? before : after) = true;
      ok = ok && !(before && after);
    }
    cut_ok[c] = ok ? 1 : 0;
  }
  std::vector<std::size_t> cuts;
  for (std::size_t c = 1; c < n; ++c) {
    if (cut_ok[c]) cuts.push_back(c);
  }
  std::vector<std::vector<std::vector<int>>> out;
  for (unsigned long mask = 1; mask < (1ul << cuts.size()); ++mask) {
    std::vector<std::vector<int>> parts(1);
    for (std::size_t c = 1; c <= n; ++c) {
      parts.back().push_back(s(static_cast<int>(c)));
      for (std::size_t i = 0; i < cuts.size(); ++i) {
        if ((mask >> i & 1) != 0 && cuts[i] == c) parts.emplace_back();
      }
    }
    for (auto& p : parts) std::sort(p.begin(), p.end());
    out.push_back(std::move(parts));
  }
  return out;
}

std::string parts_str(const std::vector<std::vector<int>>& parts) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i == 0 ? "" : "|") + join_ints(parts[i]);
  return s;
}

// Inner chi-intervals (not touching either end of the chi-order).
std::vector<std::vector<int>> inner_intervals(const SideMap& chi) {
  const std::size_t n = chi.size();
  const ChiPermutation s = side_permutation(chi);
  std::vector<std::vector<int>> out;
  for (std::size_t a = 2; a < n; ++a) {
    for (std::size_t c = a; c < n; ++c) {
      std::vector<int> v;
      for (std::size_t i = a; i <= c; ++i) v.push_back(s(static_cast<int>(i)));
      std::sort(v.begin(), v.end());
      out.push_back(std::move(v));
    }
  }
  return out;
}

void add_outcome(Report& r, const std::string& key, const PropertyOutcome& o) {
  r.add(key, o.lhs.str(), o.rhs == o.rhs_alt ? o.rhs.str() : o.rhs.str() + " / " + o.rhs_alt.str(), o.equal);
}

// Bi-multiplicativity records of phi on every partition of one tuple.
void tuple_property_records(Report& r, Phi phi, const OperatorTuple& t, const BElem& b, bool lr_choice,
                            const std::string& label) {
  const SideMap& chi = t.chi();
  const std::string tag = phi_name(phi);
  for (const auto& pi : enumerate_bnc(chi)) {
    const std::string at = label + " pi=" + pi.str();
    if (lr_choice) {
      try {
        BElem v = e_pi(pi, t, {true});
        r.add("lr-choice" + at, v.str(), v.str(), true);
      } catch (const std::logic_error& e) {
        r.add("lr-choice" + at, e.what(), "agreement", false);
      }
    }
    add_outcome(r, tag + " (i)" + at, check_property_i(phi, pi, t, b));
    for (std::size_t p = 1; p <= t.size(); ++p) {
      add_outcome(r, tag + " (ii) p=" + std::to_string(p) + at, check_property_ii(phi, pi, t, p, b));
    }
    for (const auto& parts : interval_decompositions(pi)) {
      add_outcome(r, tag + " (iii) V=" + parts_str(parts) + at, check_property_iii(phi, pi, t, parts));
    }
    for (const auto& v : inner_intervals(chi)) {
      PropertyOutcome o;
      try {
        o = check_property_iv(phi, pi, t, v);
      } catch (const std::invalid_argument&) {
        continue;  // v is not a union of blocks nested inside its complement
      }
      add_outcome(r, tag + " (iv) V=" + join_ints(v) + at, o);
    }
  }
}

void property_records(Report& r, Phi phi, std::size_t max_n, std::mt19937_64& rng, bool lr_choice) {
  const std::size_t d = 2;
  Bimodule x(d, 1);
  for (std::size_t n = 1; n <= max_n; ++n) {
    for (const auto& chi : all_side_maps(n)) {
      OperatorTuple t(x, chi, random_tuple(x, chi, rng));
      const BElem b = random_belem(d, rng);
      tuple_property_records(r, phi, t, b, lr_choice, " chi=" + chi.str());
    }
  }
}

// Round trips, vanishing on B-entries and the bi-moment/bi-cumulant forms for one tuple.
void cumulant_tuple_records(Report& r, const OperatorTuple& t, std::mt19937_64& rng, const std::string& label) {
  const SideMap& chi = t.chi();
  const std::size_t n = t.size();
  const std::size_t d = t.b_dim();
  MomentTable table(t);
  const auto& lattice = table.lattice();
  std::vector<std::vector<Rational>> rows;
  for (std::size_t i = 0; i < lattice.size(); ++i) rows.push_back(mobius_recursive_row(lattice, i));
  for (std::size_t j = 0; j < lattice.size(); ++j) {
    const std::string at = label + " pi=" + lattice.at(j).str();
    BElem sum = b_zero(d);
    BElem inverted = b_zero(d);
    for (auto i : lattice.down_set(j)) {
      sum += table.cumulant(i);
      inverted += table.moment(i) * rows[i][j];
    }
    r.add("moment=sum of cumulants" + at, sum, table.moment(j));
    r.add("cumulant=E*mu" + at, inverted, table.cumulant(j));
  }
  if (n >= 2) {
    for (std::size_t q = 1; q <= n; ++q) {
      const BElem b = random_belem(d, rng);
      const Op entry = chi.side(q) == Side::Left ? left_mult(b) : right_mult(b);
      r.add("vanishing q=" + std::to_string(q) + label, kappa(t.with_op(q, entry)), b_zero(d));
    }
  }
  for (std::size_t q = 1; q < n; ++q) {
    if (chi.side(q) != chi.side(q + 1)) continue;
    const std::string at = " q=" + std::to_string(q) + label;
    for (std::size_t j = 0; j < lattice.size(); ++j) {
      const auto& pi = lattice.at(j);
      if (!pi.partition().same_block(static_cast<int>(q), static_cast<int>(q) + 1)) continue;
      add_outcome(r, "moment collapse" + at + " pi=" + pi.str(), check_moment_collapse(pi, t, q));
    }
    for (const auto& pi : enumerate_bnc(chi.without(q + 1))) {
      add_outcome(r, "cumulant expansion" + at + " pi=" + pi.str(), check_cumulant_expansion(pi, t, q));
    }
    add_outcome(r, "cumulant two-block" + at, check_cumulant_two_block_form(t, q));
  }
}

void product_tuple_records(Report& r, const OperatorTuple& t, const std::string& label) {
  for (const auto& ends : groupings(t.chi(), 3)) {
    const OperatorTuple grouped = grouped_products(t, ends);
    for (const auto& pi : enumerate_bnc(grouped.chi())) {
      r.add("groups=" + join_ints(ends) + label + " pi=" + pi.str(), kappa_pi(pi, grouped),
            product_cumulant_rhs(pi, ends, t));
    }
  }
}

// Fixed decompositions drawn on the eight-node diagrams with sides l r l l l r r l.
void fixed_decomposition_records(Report& r, Phi phi, std::mt19937_64& rng) {
  Bimodule x(2, 1);
  const SideMap chi = SideMap::parse("lrlllrrl");
  OperatorTuple t(x, chi, random_tuple(x, chi, rng));
  const std::string tag = phi_name(phi);
  const auto left = BncPartition::parse("1,3,4|2,6|5,7,8", chi);
  add_outcome(r, tag + " (iii) fixed V=1,3,4|5,7,8|2,6",
              check_property_iii(phi, left, t, {{1, 3, 4}, {5, 7, 8}, {2, 6}}));
  const auto right = BncPartition::parse("1,2,6|3,7|4,5,8", chi);
  add_outcome(r, tag + " (iv) fixed V=3,4,5,7,8", check_property_iv(phi, right, t, {3, 4, 5, 7, 8}));
  add_outcome(r, tag + " (iv) fixed V=4,5,8", check_property_iv(phi, right, t, {4, 5, 8}));
}

std::string word_key(const SideMap& chi, const ShadingMap& eps, const std::vector<const Generator*>& w) {
  std::string s = "chi=" + chi.str() + " eps=" + eps.str() + " word=";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i == 0 ? "" : " ") + w[i]->name;
  return s;
}

// Calls f on every word of length n over the pool, in lexicographic order, until f returns false.
template <class F>
void for_each_word(const std::vector<const Generator*>& pool, std::size_t n, F f) {
  if (pool.empty()) return;
  std::vector<std::size_t> idx(n, 0);
  for (;;) {
    std::vector<const Generator*> w;
    for (auto i : idx) w.push_back(pool[i]);
    if (!f(w)) return;
    std::size_t k = n;
    while (k > 0 && idx[k - 1] + 1 == pool.size()) idx[--k] = 0;
    if (k == 0) return;
    ++idx[k - 1];
  }
}

}  // namespace

Report bifreeness_report(const std::vector<Generator>& gens, std::size_t b_dim, const BiFreenessOptions& options) {
  Report r;
  r.suite = "bifreeness";
  std::vector<const Generator*> pool;
  for (const auto& g : gens) {
    if (!options.left_only || g.side == Side::Left) pool.push_back(&g);
  }
  for (std::size_t n = 2; n <= options.order; ++n) {
    std::size_t count = 0;
    for_each_word(pool, n, [&](const std::vector<const Generator*>& w) {
      std::vector<Side> sides;
      std::vector<int> shades;
      std::vector<Op> ops;
      for (const auto* g : w) {
        sides.push_back(g->side);
        shades.push_back(g->family);
        ops.push_back(g->op);
      }
      ShadingMap eps(shades);
      if (eps.is_constant()) return true;
      if (count++ >= options.budget) return false;
      SideMap chi(sides);
      const std::string key = word_key(chi, eps, w);
      OperatorTuple t(chi, ops, b_dim);
      MomentTable table(t);
      const auto& lattice = table.lattice();
      r.add("mixed " + key, table.cumulant(lattice.one_index()), b_zero(b_dim));
      if (options.universal) {
        const BElem lhs = expectation(compose(ops), b_dim);
        const SetPartition eps_p = SetPartition::from_labels(shades);
        BElem rhs = b_zero(b_dim);
        for (std::size_t i = 0; i < lattice.size(); ++i) {
          const Rational c = universal_coefficient(lattice, i, eps_p);
          if (c != 0) rhs += table.moment(i) * c;
        }
        r.add("universal " + key, lhs, rhs);
      }
      return true;
    });
  }
  return r;
}

namespace {

CommutingFaces build_faces(std::size_t d, std::mt19937_64& rng, const std::vector<int>& group_letters) {
  CommutingFaces c{FreeGroupAlgebra(d), {}, {}};
  for (int letter : group_letters) {
    const std::uint64_t g = FreeGroupAlgebra::element({letter});
    const std::uint64_t g_inv = FreeGroupAlgebra::element({FreeGroupAlgebra::inverse(letter)});
    const BElem b = random_belem(d, rng);
    c.left.push_back({compose({c.algebra.left_translation(g), left_mult(b)}), c.algebra.left_translation(g_inv)});
    c.right.push_back({compose({c.algebra.right_translation(g), right_mult(b)}), c.algebra.right_translation(g_inv)});
  }
  return c;
}

std::vector<Generator> face_generators(const CommutingFaces& c) {
  std::vector<Generator> gens;
  for (std::size_t k = 0; k < c.left.size(); ++k) {
    const int family = static_cast<int>(k + 1);
    for (std::size_t i = 0; i < c.left[k].size(); ++i) {
      gens.push_back({"c" + std::to_string(family) + "." + std::to_string(i + 1), Side::Left, family, c.left[k][i]});
    }
    for (std::size_t i = 0; i < c.right[k].size(); ++i) {
      gens.push_back({"d" + std::to_string(family) + "." + std::to_string(i + 1), Side::Right, family, c.right[k][i]});
    }
  }
  return gens;
}

}  // namespace

CommutingFaces free_commuting_faces(std::size_t b_dim, std::mt19937_64& rng) { return build_faces(b_dim, rng, {1, 3}); }

CommutingFaces dependent_commuting_faces(std::size_t b_dim, std::mt19937_64& rng) {
  return build_faces(b_dim, rng, {1, 1});
}

void check_commuting_faces_hypotheses(const CommutingFaces& c) {
  const std::size_t d = c.algebra.b_dim();
  if (c.left.size() != c.right.size()) throw std::invalid_argument("left and right faces list different families");
  const CellVector xi = CellVector::xi(d);
  for (std::size_t k = 0; k < c.left.size(); ++k) {
    if (c.left[k].size() != c.right[k].size()) {
      throw std::invalid_argument("hypothesis (2): family " + std::to_string(k + 1) + " has unpaired right generators");
    }
    for (std::size_t i = 0; i < c.left[k].size(); ++i) {
      if (!(c.left[k][i]->apply(xi) == c.right[k][i]->apply(xi))) {
        throw std::invalid_argument("hypothesis (2): right generator " + std::to_string(i + 1) + " of family " +
                                    std::to_string(k + 1) + " differs from its paired left generator on xi");
      }
    }
  }
  // Commutation on every group word of length <= 2 with every unit coefficient.
  std::vector<std::uint64_t> group_words{0};
  for (int a = 1; a <= 4; ++a) {
    group_words.push_back(FreeGroupAlgebra::element({a}));
    for (int b = 1; b <= 4; ++b) {
      if (b != FreeGroupAlgebra::inverse(a)) group_words.push_back(FreeGroupAlgebra::element({a, b}));
    }
  }
  for (const auto& lk : c.left) {
    for (const auto& l : lk) {
      for (const auto& rk : c.right) {
        for (const auto& rr : rk) {
          for (auto g : group_words) {
            for (std::size_t i = 0; i < d * d; ++i) {
              const CellVector v = CellVector::single(d, g, Matrix::unit(d, i / d, i % d));
              if (!(l->apply(rr->apply(v)) == rr->apply(l->apply(v)))) {
                throw std::invalid_argument("hypothesis (1): a left generator does not commute with a right generator");
              }
            }
          }
        }
      }
    }
  }
}

CommutingFacesOutcome commuting_faces_check(const CommutingFaces& c, std::size_t order, std::size_t budget) {
  check_commuting_faces_hypotheses(c);
  const auto gens = face_generators(c);
  const std::size_t d = c.algebra.b_dim();
  CommutingFacesOutcome out;
  out.left_only = bifreeness_report(gens, d, {order, budget, true, true});
  out.left_only.suite = "commuting-faces-left";
  out.bifree = bifreeness_report(gens, d, {order, budget, false, true});
  out.bifree.suite = "commuting-faces-bifree";
  return out;
}

Report conjugation_check(const PairOfBFaces& pair, std::size_t window, std::size_t depth, std::size_t order,
                         HaarRight right) {
  validate_pair(pair);
  const std::size_t d = pair.bimodule.b_dim();
  HaarModel haar(d, window);
  FreeProduct fp({pair.bimodule, haar.bimodule()}, depth);
  const Op ul = fp.lambda(2, haar.u());
  const Op ul_inv = fp.lambda(2, haar.u_inverse());
  const bool opposite = right == HaarRight::Opposite;
  const Op ur = fp.rho(2, opposite ? haar.u_inverse() : haar.u());
  const Op ur_inv = fp.rho(2, opposite ? haar.u() : haar.u_inverse());
  std::vector<Generator> original;
  std::vector<Generator> conjugated;
  for (std::size_t i = 0; i < pair.left_gens.size(); ++i) {
    const Op c = fp.lambda(1, pair.left_gens[i]);
    original.push_back({"c" + std::to_string(i + 1), Side::Left, 1, c});
    conjugated.push_back({"Uc" + std::to_string(i + 1), Side::Left, 2, compose({ul_inv, c, ul})});
  }
  for (std::size_t i = 0; i < pair.right_gens.size(); ++i) {
    const Op e = fp.rho(1, pair.right_gens[i]);
    original.push_back({"d" + std::to_string(i + 1), Side::Right, 1, e});
    conjugated.push_back({"Ud" + std::to_string(i + 1), Side::Right, 2, compose({ur_inv, e, ur})});
  }
  Report r;
  r.suite = "conjugation";
  r.params = "window " + std::to_string(window) + " depth " + std::to_string(depth) + " order " + std::to_string(order);
  std::vector<const Generator*> pool;
  for (const auto& g : original) pool.push_back(&g);
  for (std::size_t n = 1; n <= order; ++n) {
    for_each_word(pool, n, [&](const std::vector<const Generator*>& w) {
      std::vector<Op> a;
      std::vector<Op> b;
      std::vector<Side> sides;
      for (const auto* g : w) {
        const std::size_t i = static_cast<std::size_t>(g - original.data());
        a.push_back(g->op);
        b.push_back(conjugated[i].op);
        sides.push_back(g->side);
      }
      r.add("distribution " + word_key(SideMap(sides), ShadingMap(std::vector<int>(n, 1)), w),
            expectation(compose(a), d), expectation(compose(b), d));
      return true;
    });
  }
  std::vector<Generator> both = original;
  both.insert(both.end(), conjugated.begin(), conjugated.end());
  r.append(bifreeness_report(both, d, {order, 5000, false, true}), "bifree ");
  return r;
}

Report verify_generators(const std::string& suite, const std::vector<Generator>& gens, std::size_t b_dim,
                         const SuiteOptions& o) {
  const std::size_t max_n = pick(o.max_n, 4);
  Report r = start(suite, o, params_of(o, max_n) + " budget " + std::to_string(o.budget) + " generators " +
                                 std::to_string(gens.size()));
  if (suite == "bifree") {
    r.append(bifreeness_report(gens, b_dim, {max_n, o.budget, false, true}), "");
    return r;
  }
  if (suite != "moments" && suite != "cumulants" && suite != "products") {
    throw std::invalid_argument("suite '" + suite + "' does not run on supplied operators");
  }
  std::mt19937_64 rng(o.seed);
  std::vector<const Generator*> pool;
  for (const auto& g : gens) pool.push_back(&g);
  for (std::size_t n = 1; n <= max_n; ++n) {
    std::size_t count = 0;
    for_each_word(pool, n, [&](const std::vector<const Generator*>& w) {
      if (count++ >= o.budget) return false;
      std::vector<Side> sides;
      std::vector<Op> ops;
      std::vector<int> shades;
      for (const auto* g : w) {
        sides.push_back(g->side);
        ops.push_back(g->op);
        shades.push_back(g->family);
      }
      SideMap chi(sides);
      OperatorTuple t(chi, ops, b_dim);
      const std::string label = " " + word_key(chi, ShadingMap(shades), w);
      if (suite == "moments") {
        tuple_property_records(r, Phi::Moment, t, random_belem(b_dim, rng), true, label);
      } else if (suite == "cumulants") {
        cumulant_tuple_records(r, t, rng, label);
        tuple_property_records(r, Phi::Cumulant, t, random_belem(b_dim, rng), false, label);
      } else {
        product_tuple_records(r, t, label);
      }
      return true;
    });
  }
  return r;
}

Report verify_lattice(const SuiteOptions& o) {
  const std::size_t max_n = pick(o.max_n, 8);
  Report r = start("lattice", o, params_of(o, max_n));
  for (std::size_t n = 1; n <= max_n; ++n) {
    for (const auto& chi : all_side_maps(n)) {
      const auto count = enumerate_bnc(chi).size();
      r.add("size chi=" + chi.str(), std::to_string(count), std::to_string(catalan(n)), count == catalan(n));
    }
  }
  return r;
}

Report verify_incidence(const SuiteOptions& o) {
  const std::size_t max_n = pick(o.max_n, 6);
  Report r = start("incidence", o, params_of(o, max_n));
  for (std::size_t n = 1; n <= max_n; ++n) {
    for (const auto& chi : all_side_maps(n)) {
      auto lattice = lattice_for(chi);
      const auto mu = mobius_function(lattice);
      const auto ze = zeta_function(lattice);
      const auto de = delta_function(lattice);
      const std::string pairs = std::to_string(lattice->pair_count());
      r.add("mu*zeta=delta chi=" + chi.str(), convolve(mu, ze) == de ? "delta" : "other", "delta",
            convolve(mu, ze) == de);
      r.add("zeta*mu=delta chi=" + chi.str(), convolve(ze, mu) == de ? "delta" : "other", "delta",
            convolve(ze, mu) == de);
      std::size_t agree = 0;
      for (std::size_t i = 0; i < lattice->size(); ++i) {
        const auto row = mobius_recursive_row(*lattice, i);
        for (auto j : lattice->up_set(i)) agree += row[j] == lattice->mobius(i, j) ? 1 : 0;
      }
      r.add("product-formula=recursive chi=" + chi.str(), std::to_string(agree), pairs, std::to_string(agree) == pairs);
    }
  }
  return r;
}

Report verify_two_sums(const SuiteOptions& o) {
  const std::size_t max_n = pick(o.max_n, 5);
  Report r = start("two-sums", o, params_of(o, max_n));
  for (std::size_t n = 1; n <= max_n; ++n) {
    for (const auto& chi : all_side_maps(n)) {
      const auto partitions = enumerate_bnc(chi);
      for (const auto& eps : all_shadings(n, 3)) {
        const SetPartition eps_p = SetPartition::from_labels(eps.shades());
        // The projection of LR_0 to partitions is injective; it is not onto the refinements of eps.
        const auto zero = stratum(enumerate_lr(chi, eps), 0);
        std::set<SetPartition> image;
        for (const auto& d : zero) image.insert(lr0_to_partition(d).partition());
        r.add("lr0 injective chi=" + chi.str() + " eps=" + eps.str(), std::to_string(image.size()),
              std::to_string(zero.size()), image.size() == zero.size());
        for (const auto& pi : partitions) {
          if (!refines(pi.partition(), eps_p)) continue;
          const TwoSums s = two_sums_check(pi, eps);
          r.add("chi=" + chi.str() + " eps=" + eps.str() + " pi=" + pi.str(), std::to_string(s.lhs),
                std::to_string(s.rhs), s.equal);
        }
      }
    }
  }
  return r;
}

Report verify_moments(const SuiteOptions& o) {
  const std::size_t max_n = pick(o.max_n, 5);
  Report r = start("moments", o, params_of(o, max_n));
  std::mt19937_64 rng(o.seed);
  const SideMap nine = SideMap::parse("lrllrrlrr");
  const auto pi9 = BncPartition::parse("1,2|3,5,9|4,7|6,8", nine);
  const std::string expected = "E(T_1T_2 L_{E(T_3 L_{E(T_4T_7)} T_5 R_{E(T_6T_8)} T_9)})";
  const std::string trace = e_pi_trace(pi9);
  r.add("trace chi=" + nine.str() + " pi=" + pi9.str(), trace, expected, trace == expected);
  {
    // The nested expression evaluated by hand against the recursion.
    Bimodule x(2, 1);
    const auto ops = random_tuple(x, nine, rng);
    OperatorTuple t(x, nine, ops);
    auto T = [&](int k) { return ops[static_cast<std::size_t>(k) - 1]; };
    const BElem e47 = expectation_of_word({T(4), T(7)}, 2);
    const BElem e68 = expectation_of_word({T(6), T(8)}, 2);
    const BElem inner = expectation_of_word({T(3), left_mult(e47), T(5), right_mult(e68), T(9)}, 2);
    const BElem direct = expectation_of_word({T(1), T(2), left_mult(inner)}, 2);
    r.add("nested value chi=" + nine.str() + " pi=" + pi9.str(), e_pi(pi9, t), direct);
  }
  fixed_decomposition_records(r, Phi::Moment, rng);
  property_records(r, Phi::Moment, max_n, rng, true);
  return r;
}

Report verify_cumulants(const SuiteOptions& o) {
  const std::size_t max_n = pick(o.max_n, 5);
  Report r = start("cumulants", o, params_of(o, max_n));
  std::mt19937_64 rng(o.seed);
  Bimodule x(2, 1);
  for (std::size_t n = 1; n <= max_n; ++n) {
    for (const auto& chi : all_side_maps(n)) {
      OperatorTuple t(x, chi, random_tuple(x, chi, rng));
      cumulant_tuple_records(r, t, rng, " chi=" + chi.str());
    }
  }
  fixed_decomposition_records(r, Phi::Cumulant, rng);
  property_records(r, Phi::Cumulant, std::min<std::size_t>(max_n, 4), rng, false);
  return r;
}

Report verify_bifree(const SuiteOptions& o) {
  const std::size_t order = pick(o.max_n, 5);
  const std::size_t depth = pick(o.depth, order);
  Report r = start("bifree", o, params_of(o, order) + " budget " + std::to_string(o.budget));
  std::mt19937_64 rng(o.seed);
  const std::size_t d = 2;
  Bimodule x(d, 1);
  FreeProduct fp({x, x}, depth);
  std::vector<Generator> gens;
  for (int k = 1; k <= 2; ++k) {
    const auto ks = std::to_string(k);
    gens.push_back({"a" + ks, Side::Left, k, fp.lambda(static_cast<std::size_t>(k), random_side_operator(x, Side::Left, rng))});
    gens.push_back({"b" + ks, Side::Right, k, fp.rho(static_cast<std::size_t>(k), random_side_operator(x, Side::Right, rng))});
  }
  r.append(bifreeness_report(gens, d, {order, o.budget, false, true}), "");
  // Control: one family registered twice must show mixed cumulants already at order 2.
  std::vector<Generator> twice;
  for (int k = 1; k <= 2; ++k) {
    twice.push_back({"a" + std::to_string(k), Side::Left, k, gens[0].op});
    twice.push_back({"b" + std::to_string(k), Side::Right, k, gens[1].op});
  }
  const Report control = bifreeness_report(twice, d, {2, o.budget, false, false});
  r.add("control same family twice: nonzero mixed cumulants", std::to_string(control.mismatches()), ">0",
        control.mismatches() > 0);
  return r;
}

Report verify_expansion(const SuiteOptions& o) {
  const std::size_t max_n = pick(o.max_n, 4);
  const std::size_t depth = pick(o.depth, max_n);
  Report r = start("expansion", o, params_of(o, max_n));
  std::mt19937_64 rng(o.seed);
  Bimodule x(2, 1);
  FreeProduct fp({x, x}, depth);
  for (std::size_t n = 1; n <= max_n; ++n) {
    for (const auto& chi : all_side_maps(n)) {
      for (const auto& eps : all_shadings(n, 2)) {
        ComponentTuple t{chi, eps, random_tuple(x, chi, rng)};
        const auto out = expansion_check(fp, t);
        r.add("chi=" + chi.str() + " eps=" + eps.str(), out.lhs.str(), out.rhs.str(), out.equal);
      }
    }
  }
  return r;
}

Report verify_products(const SuiteOptions& o) {
  const std::size_t max_n = pick(o.max_n, 5);
  Report r = start("products", o, params_of(o, max_n));
  std::mt19937_64 rng(o.seed);
  Bimodule x(2, 1);
  for (std::size_t n = 1; n <= max_n; ++n) {
    for (const auto& chi : all_side_maps(n)) {
      OperatorTuple t(x, chi, random_tuple(x, chi, rng));
      product_tuple_records(r, t, " chi=" + chi.str());
    }
  }
  return r;
}

namespace {

// Two families of two left and two right generators each, on a two-component free product.
struct TwoFamilies {
  FreeProduct fp;
  std::vector<Op> first;   // l1 l2 r1 r2 of the first family
  std::vector<Op> second;  // same layout for the second family
};

TwoFamilies two_families(std::size_t d, std::size_t depth, std::mt19937_64& rng) {
  Bimodule x(d, 1);
  TwoFamilies f{FreeProduct({x, x}, depth), {}, {}};
  for (std::size_t k = 1; k <= 2; ++k) {
    auto& out = k == 1 ? f.first : f.second;
    for (Side s : {Side::Left, Side::Left, Side::Right, Side::Right}) out.push_back(f.fp.lift(k, s, random_side_operator(x, s, rng)));
  }
  return f;
}

// alpha over the index set {l1, l2, r1, r2}.
std::vector<std::vector<int>> all_alphas(std::size_t n) {
  std::vector<std::vector<int>> out;
  std::vector<int> a(n, 0);
  for (;;) {
    out.push_back(a);
    std::size_t k = n;
    while (k > 0 && a[k - 1] == 3) a[--k] = 0;
    if (k == 0) return out;
    ++a[k - 1];
  }
}

Side alpha_side(int i) { return i < 2 ? Side::Left : Side::Right; }

std::string alpha_str(const std::vector<int>& a) {
  static const char* names[] = {"l1", "l2", "r1", "r2"};
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) s += (i == 0 ? "" : " ") + std::string(names[a[i]]);
  return s;
}

}  // namespace

Report verify_convolution(const SuiteOptions& o) {
  const std::size_t max_n = pick(o.max_n, 4);
  const std::size_t depth = pick(o.depth, 2 * max_n);
  Report r = start("convolution", o, params_of(o, max_n));
  std::mt19937_64 rng(o.seed);
  auto f = two_families(1, depth, rng);
  for (std::size_t n = 1; n <= max_n; ++n) {
    for (const auto& a : all_alphas(n)) {
      std::vector<Side> sides;
      std::vector<Op> first;
      std::vector<Op> second;
      for (int i : a) {
        sides.push_back(alpha_side(i));
        first.push_back(f.first[static_cast<std::size_t>(i)]);
        second.push_back(f.second[static_cast<std::size_t>(i)]);
      }
      const SideMap chi(sides);
      OperatorTuple t1(chi, first, 1);
      OperatorTuple t2(chi, second, 1);
      const Rational lhs = multiplicative_convolution_lhs(t1, t2);
      const Rational rhs = multiplicative_convolution_rhs(t1, t2);
      r.add("alpha=" + alpha_str(a), lhs.get_str(), rhs.get_str(), lhs == rhs);
    }
  }
  return r;
}

Report verify_additivity(const SuiteOptions& o) {
  const std::size_t max_n = pick(o.max_n, 4);
  const std::size_t depth = pick(o.depth, max_n);
  Report r = start("additivity", o, params_of(o, max_n));
  std::mt19937_64 rng(o.seed);
  const std::size_t d = 2;
  auto f = two_families(d, depth, rng);
  std::vector<Op> sum;
  for (std::size_t i = 0; i < 4; ++i) sum.push_back(linear_combination({{1, f.first[i]}, {1, f.second[i]}}));
  for (std::size_t n = 1; n <= max_n; ++n) {
    for (const auto& a : all_alphas(n)) {
      std::vector<BElem> b;
      for (std::size_t k = 1; k < n; ++k) b.push_back(random_belem(d, rng));
      auto word = [&](const std::vector<Op>& z) {
        std::vector<SeriesLetter> w;
        for (int i : a) w.push_back({z[static_cast<std::size_t>(i)], alpha_side(i)});
        return w;
      };
      const BElem lhs = cumulant_series(word(sum), b, d);
      const BElem rhs = cumulant_series(word(f.first), b, d) + cumulant_series(word(f.second), b, d);
      r.add("alpha=" + alpha_str(a), lhs, rhs);
    }
  }
  return r;
}

Report verify_haar(const SuiteOptions& o) {
  // Capped so that the word depth fits in the tensor letter limit.
  const std::size_t max_order = (words::kMaxLetters - 1) / 2;
  const std::size_t order = std::min(pick(o.max_n, 3), max_order);
  const std::size_t window = pick(o.window, 8);
  // A conjugated word of order n alternates through at most 2n+1 tensor letters.
  const std::size_t depth = pick(o.depth, std::max<std::size_t>(8, 2 * order + 1));
  if (depth < 2 * order + 1) {
    throw std::invalid_argument("haar: order " + std::to_string(order) + " needs depth at least " +
                                std::to_string(2 * order + 1));
  }
  std::string params = params_of(o, order);
  if (o.max_n > order) params += " (order capped at " + std::to_string(max_order) + ")";
  Report r = start("haar", o, params);
  std::mt19937_64 rng(o.seed);
  const auto pair = random_pair_of_faces(Bimodule(2, 1), 1, 1, rng);
  r.append(conjugation_check(pair, window, depth, order, HaarRight::Opposite), "");
  // Control: equal shifts on both sides do not preserve the joint distribution.
  const Report same = conjugation_check(pair, window, depth, order, HaarRight::Same);
  r.add("control equal left/right shifts: mismatches", std::to_string(same.mismatches()), ">0", same.mismatches() > 0);
  return r;
}

Report verify_commuting_faces(const SuiteOptions& o) {
  const std::size_t order = pick(o.max_n, 4);
  Report r = start("commuting-faces", o, params_of(o, order) + " budget " + std::to_string(o.budget));
  std::mt19937_64 rng(o.seed);
  const std::size_t d = 2;
  const auto free_pair = free_commuting_faces(d, rng);
  const auto dependent = dependent_commuting_faces(d, rng);
  for (const auto* c : {&free_pair, &dependent}) {
    const std::string which = c == &free_pair ? "free" : "dependent";
    try {
      check_commuting_faces_hypotheses(*c);
      r.add(which + " hypotheses", "hold", "hold", true);
    } catch (const std::invalid_argument& e) {
      r.add(which + " hypotheses", e.what(), "hold", false);
      continue;
    }
    const auto out = commuting_faces_check(*c, order, o.budget);
    const std::size_t a = out.left_only.mismatches();
    const std::size_t b = out.bifree.mismatches();
    if (c == &free_pair) {
      r.append(out.left_only, "free left-only ");
      r.append(out.bifree, "free bifree ");
    } else {
      r.add("dependent left-only report nonempty", std::to_string(a), ">0", a > 0);
      r.add("dependent bifree report nonempty", std::to_string(b), ">0", b > 0);
    }
    r.add(which + " reports agree", a == 0 ? "free" : "not free", b == 0 ? "bi-free" : "not bi-free",
          (a == 0) == (b == 0));
  }
  return r;
}

const std::vector<SuiteInfo>& suites() {
  static const std::vector<SuiteInfo> all = {
      {"lattice", 1, "|BNC(chi)| = Catalan(n) for every chi", verify_lattice},
      {"incidence", 2, "mu*zeta = delta = zeta*mu; product formula = recursive inversion", verify_incidence},
      {"two-sums", 3, "signed LR_0 count = Mobius sum below the shading", verify_two_sums},
      {"moments", 4, "E_pi trace, L/R agreement and bi-multiplicativity", verify_moments},
      {"cumulants", 5, "cumulant round trips, vanishing, bi-moment/bi-cumulant forms", verify_cumulants},
      {"bifree", 6, "universal polynomials and vanishing mixed cumulants in the free product", verify_bifree},
      {"expansion", 7, "LR diagram expansion of mu_1(T_1)...mu_n(T_n) xi", verify_expansion},
      {"products", 8, "cumulants of products", verify_products},
      {"convolution", 9, "scalar multiplicative convolution through the Kreweras complement", verify_convolution},
      {"additivity", 10, "cumulant series of sums of bi-free families", verify_additivity},
      {"haar", 11, "conjugation by the Haar bi-unitary", verify_haar},
      {"commuting-faces", 12, "freeness of left faces versus bi-freeness for commuting faces", verify_commuting_faces},
  };
  return all;
}

const SuiteInfo& find_suite(const std::string& name) {
  for (const auto& s : suites()) {
    if (s.name == name) return s;
  }
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace bifree
