#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "bifree/base_algebra.hpp"
#include "bifree/operator_model.hpp"

namespace bifree {

struct Record {
  std::string key;
  std::string lhs;
  std::string rhs;
  bool equal = false;
};

struct Report {
  std::string suite;
  std::uint64_t seed = 0;
  std::string params;
  std::vector<Record> records;

  void add(std::string key, std::string lhs, std::string rhs, bool equal);
  void add(std::string key, const BElem& lhs, const BElem& rhs);
  void append(const Report& other, const std::string& prefix);
  std::size_t mismatches() const;
  bool passed() const { return !records.empty() && mismatches() == 0; }
  // Header line, one tab-separated line per record, summary line.
  std::string text(bool mismatches_only = false) const;
};

// Zero means the suite default.
struct SuiteOptions {
  std::size_t max_n = 0;
  std::uint64_t seed = 7;
  std::size_t depth = 0;
  std::size_t window = 0;
  std::size_t budget = 5000;
};

// A generator of a family realized on a common space.
struct Generator {
  std::string name;
  Side side;
  int family;
  Op op;
};

struct BiFreenessOptions {
  std::size_t order = 3;
  std::size_t budget = 5000;  // words per order
  bool left_only = false;
  bool universal = true;  // also compare against the universal moment polynomials
};

// Mixed cumulants of every word with a non-constant family pattern, plus the universal polynomials.
Report bifreeness_report(const std::vector<Generator>& gens, std::size_t b_dim, const BiFreenessOptions& options);

// Families on the shared algebra of the free group on g1, g2: C_k by left multiplication, D_k by right
// multiplication; right[k][i] is paired with left[k][i] through equal values on xi.
struct CommutingFaces {
  FreeGroupAlgebra algebra;
  std::vector<std::vector<Op>> left;
  std::vector<std::vector<Op>> right;
};

CommutingFaces free_commuting_faces(std::size_t b_dim, std::mt19937_64& rng);
// Both families generated by g1, so the left faces are not free.
CommutingFaces dependent_commuting_faces(std::size_t b_dim, std::mt19937_64& rng);

struct CommutingFacesOutcome {
  Report left_only;
  Report bifree;
};

// Throws std::invalid_argument naming the violated hypothesis.
void check_commuting_faces_hypotheses(const CommutingFaces& c);
CommutingFacesOutcome commuting_faces_check(const CommutingFaces& c, std::size_t order, std::size_t budget);

// How the right Haar operator acts on the window: against the left shift (U_r = rho(U^-1)) or with it.
enum class HaarRight { Opposite, Same };

// Realizes the pair and a Haar model on one free product; compares the joint distribution of the pair with that
// of its conjugate and checks bi-freeness between the two.
Report conjugation_check(const PairOfBFaces& pair, std::size_t window, std::size_t depth, std::size_t order,
                         HaarRight right = HaarRight::Opposite);

// Runs a generator-based suite on every word over the supplied generators; lattice-only suites are rejected.
Report verify_generators(const std::string& suite, const std::vector<Generator>& gens, std::size_t b_dim,
                         const SuiteOptions& o);

struct SuiteInfo {
  std::string name;
  int criterion;
  std::string summary;
  std::function<Report(const SuiteOptions&)> run;
};

const std::vector<SuiteInfo>& suites();
const SuiteInfo& find_suite(const std::string& name);

Report verify_lattice(const SuiteOptions& o);
Report verify_incidence(const SuiteOptions& o);
Report verify_two_sums(const SuiteOptions& o);
Report verify_moments(const SuiteOptions& o);
Report verify_cumulants(const SuiteOptions& o);
Report verify_bifree(const SuiteOptions& o);
Report verify_expansion(const SuiteOptions& o);
Report verify_products(const SuiteOptions& o);
Report verify_convolution(const SuiteOptions& o);
Report verify_additivity(const SuiteOptions& o);
Report verify_haar(const SuiteOptions& o);
Report verify_commuting_faces(const SuiteOptions& o);

// Every side map of length n, in binary order with 'l' = 0.
std::vector<SideMap> all_side_maps(std::size_t n);
// Every shading of length n with labels 1..labels, in lexicographic order.
std::vector<ShadingMap> all_shadings(std::size_t n, int labels);

}  // namespace bifree
