#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace bifree::cli {

struct Example {
  std::string name;
  std::string summary;
  // Prints its findings and returns whether every assertion held.
  std::function<bool(std::ostream&, std::uint64_t seed)> run;
};

const std::vector<Example>& examples();

}  // namespace bifree::cli
