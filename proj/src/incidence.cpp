#include "bifree/incidence.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace bifree {

namespace {

Rational full_interval_mobius(std::size_t k) {
  Rational v(static_cast<long>(catalan(k - 1)));
  return k % 2 == 0 ? Rational(-v) : v;
}

}  // namespace

Rational mobius_bnc(const BncPartition& sigma, const BncPartition& pi) {
  if (sigma.chi() != pi.chi()) throw std::invalid_argument("side maps differ in mobius");
  if (!refines(sigma, pi)) throw std::domain_error("mobius(" + sigma.str() + ", " + pi.str() + "): not comparable");
  auto s = side_permutation(sigma.chi());
  SetPartition lo = relabel(sigma.partition(), s.inverse_images());
  SetPartition hi = relabel(pi.partition(), s.inverse_images());
  Rational value = 1;
  for (const auto& w : hi.blocks()) {
    std::vector<int> position(lo.size() + 1, 0);
    for (std::size_t i = 0; i < w.size(); ++i) position[w[i]] = static_cast<int>(i + 1);
    std::vector<std::vector<int>> blocks;
    for (const auto& b : lo.blocks()) {
      if (position[b.front()] == 0) continue;
      std::vector<int> nb;
      for (int e : b) nb.push_back(position[e]);
      blocks.push_back(std::move(nb));
    }
    const SetPartition complement = kreweras_nc(SetPartition(w.size(), std::move(blocks)));
    for (const auto& u : complement.blocks()) {
      value *= full_interval_mobius(u.size());
    }
  }
  return value;
}

Lattice::Lattice(SideMap chi) : chi_(std::move(chi)) {
  if (chi_.size() > kMaxArity) {
    throw std::out_of_range("lattice tables are limited to n <= " + std::to_string(kMaxArity));
  }
  elements_ = enumerate_bnc(chi_);
  const std::size_t m = elements_.size();
  for (std::size_t i = 0; i < m; ++i) index_.emplace(elements_[i].str(), i);
  leq_.assign(m * m, 0);
  up_.resize(m);
  down_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (refines(elements_[i].partition(), elements_[j].partition())) {
        leq_[i * m + j] = 1;
        up_[i].push_back(j);
        down_[j].push_back(i);
      }
    }
  }
  pair_offset_.assign(m + 1, 0);
  for (std::size_t i = 0; i < m; ++i) pair_offset_[i + 1] = pair_offset_[i] + up_[i].size();
  mobius_.resize(pair_offset_.back());
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t t = 0; t < up_[i].size(); ++t) {
      mobius_[pair_offset_[i] + t] = mobius_bnc(elements_[i], elements_[up_[i][t]]);
    }
  }
  zero_ = index_of(BncPartition::zero(chi_));
  one_ = index_of(BncPartition::one(chi_));
}

std::size_t Lattice::index_of(const BncPartition& p) const {
  if (p.chi() != chi_) throw std::invalid_argument("partition over " + p.chi().str() + " not in BNC(" + chi_.str() + ")");
  auto it = index_.find(p.str());
  if (it == index_.end()) throw std::invalid_argument("partition " + p.str() + " not in lattice");
  return it->second;
}

long Lattice::pair_id(std::size_t i, std::size_t j) const {
  const auto& up = up_.at(i);
  auto it = std::lower_bound(up.begin(), up.end(), j);
  if (it == up.end() || *it != j) return -1;
  return static_cast<long>(pair_offset_[i] + static_cast<std::size_t>(it - up.begin()));
}

const Rational& Lattice::mobius(std::size_t i, std::size_t j) const {
  static const Rational zero = 0;
  long id = pair_id(i, j);
  return id < 0 ? zero : mobius_[static_cast<std::size_t>(id)];
}

std::size_t Lattice::join(std::size_t i, std::size_t j) const { return index_of(join_bnc(elements_.at(i), elements_.at(j))); }

std::shared_ptr<const Lattice> lattice_for(const SideMap& chi) {
  static std::mutex mutex;
  static std::map<SideMap, std::shared_ptr<const Lattice>> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(chi);
    if (it != cache.end()) return it->second;
  }
  auto lattice = std::make_shared<const Lattice>(chi);
  std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(chi, lattice).first->second;
}

IntervalFunction::IntervalFunction(std::shared_ptr<const Lattice> lattice)
    : lattice_(std::move(lattice)), values_(lattice_->pair_count()) {}

Rational IntervalFunction::operator()(std::size_t i, std::size_t j) const {
  long id = lattice_->pair_id(i, j);
  return id < 0 ? Rational(0) : values_[static_cast<std::size_t>(id)];
}

Rational IntervalFunction::value(const BncPartition& sigma, const BncPartition& pi) const {
  return (*this)(lattice_->index_of(sigma), lattice_->index_of(pi));
}

void IntervalFunction::set(std::size_t i, std::size_t j, Rational v) {
  long id = lattice_->pair_id(i, j);
  if (id < 0) throw std::domain_error("interval function set on an incomparable pair");
  values_[static_cast<std::size_t>(id)] = std::move(v);
}

bool operator==(const IntervalFunction& a, const IntervalFunction& b) {
  return a.lattice_->chi() == b.lattice_->chi() && a.values_ == b.values_;
}

Rational delta(const BncPartition& sigma, const BncPartition& pi) {
  if (sigma.chi() != pi.chi()) throw std::invalid_argument("side maps differ in delta");
  return sigma == pi ? 1 : 0;
}

Rational zeta(const BncPartition& sigma, const BncPartition& pi) { return refines(sigma, pi) ? 1 : 0; }

IntervalFunction delta_function(std::shared_ptr<const Lattice> lattice) {
  IntervalFunction f(lattice);
  for (std::size_t i = 0; i < lattice->size(); ++i) f.set(i, i, 1);
  return f;
}

IntervalFunction zeta_function(std::shared_ptr<const Lattice> lattice) {
  IntervalFunction f(lattice);
  for (std::size_t i = 0; i < lattice->size(); ++i) {
    for (auto j : lattice->up_set(i)) f.set(i, j, 1);
  }
  return f;
}

IntervalFunction mobius_function(std::shared_ptr<const Lattice> lattice) {
  IntervalFunction f(lattice);
  for (std::size_t i = 0; i < lattice->size(); ++i) {
    for (auto j : lattice->up_set(i)) f.set(i, j, lattice->mobius(i, j));
  }
  return f;
}

IntervalFunction convolve(const IntervalFunction& f, const IntervalFunction& g) {
  if (f.lattice().chi() != g.lattice().chi()) throw std::invalid_argument("convolution of functions on different lattices");
  const Lattice& lat = f.lattice();
  IntervalFunction out(f.lattice_ptr());
  for (std::size_t i = 0; i < lat.size(); ++i) {
    for (auto j : lat.up_set(i)) {
      Rational sum = 0;
      for (auto r : lat.up_set(i)) {
        if (lat.leq(r, j)) sum += f(i, r) * g(r, j);
      }
      out.set(i, j, sum);
    }
  }
  return out;
}

std::vector<Rational> mobius_recursive_row(const Lattice& lattice, std::size_t sigma) {
  std::vector<Rational> row(lattice.size());
  // Process the up-set of sigma by increasing rank so every strict lower element is done first.
  std::vector<std::size_t> order = lattice.up_set(sigma);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return lattice.at(a).block_count() > lattice.at(b).block_count();
  });
  for (auto p : order) {
    if (p == sigma) {
      row[p] = 1;
      continue;
    }
    Rational sum = 0;
    for (auto r : lattice.up_set(sigma)) {
      if (r != p && lattice.leq(r, p)) sum += row[r];
    }
    row[p] = -sum;
  }
  return row;
}

bool partial_mobius_inversion_check(const Lattice& lattice, const std::vector<Rational>& f,
                                    const std::vector<Rational>& g, std::size_t sigma, std::size_t pi) {
  if (f.size() != lattice.size() || g.size() != lattice.size()) throw std::invalid_argument("table size mismatch");
  for (std::size_t p = 0; p < lattice.size(); ++p) {
    Rational sum = 0;
    for (auto r : lattice.down_set(p)) sum += g[r];
    if (sum != f[p]) throw std::domain_error("precondition f = g * zeta fails at " + lattice.at(p).str());
  }
  Rational lhs = 0;
  for (auto t : lattice.up_set(sigma)) {
    if (lattice.leq(t, pi)) lhs += f[t] * lattice.mobius(t, pi);
  }
  Rational rhs = 0;
  for (std::size_t w = 0; w < lattice.size(); ++w) {
    if (lattice.join(w, sigma) == pi) rhs += g[w];
  }
  return lhs == rhs;
}

}  // namespace bifree
