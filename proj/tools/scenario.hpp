#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bifree/operator_model.hpp"
#include "bifree/verification.hpp"

namespace bifree::cli {

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BimoduleEntry {
  std::string name;
  std::size_t copies = 1;

  friend bool operator==(const BimoduleEntry&, const BimoduleEntry&) = default;
};

// An operator given either as a full matrix on its bimodule or as L_b / R_b.
struct OperatorEntry {
  enum class Kind { Matrix, Lb, Rb };
  std::string name;
  std::string bimodule;
  Side side = Side::Left;
  int family = 1;
  Kind kind = Kind::Matrix;
  Matrix matrix;

  friend bool operator==(const OperatorEntry&, const OperatorEntry&) = default;
};

struct Scenario {
  std::size_t b_dim = 1;
  std::vector<BimoduleEntry> bimodules;
  std::vector<OperatorEntry> operators;
  std::optional<std::size_t> depth;
  std::optional<std::size_t> window;
  std::optional<std::size_t> max_n;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> budget;
  std::vector<std::string> tuple;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

// Throws ScenarioError with the JSON location of the first problem.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);
// Canonical form: two-space indentation with every matrix entry written as a string.
std::string serialize_scenario(const Scenario& s);

// The operators realized on one space: on their common bimodule, or lifted into the free product of all
// bimodules when a depth is given.
struct Realization {
  std::size_t b_dim;
  std::optional<FreeProduct> free_product;
  std::vector<Generator> generators;
};

Realization realize(const Scenario& s);
// The tuple named in the scenario, in order.
std::vector<const Generator*> scenario_tuple(const Scenario& s, const Realization& r);

}  // namespace bifree::cli
