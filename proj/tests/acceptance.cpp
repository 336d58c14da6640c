// One line per acceptance criterion; exits nonzero if any criterion fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "bifree/verification.hpp"

using namespace bifree;

namespace {

std::size_t count_prefix(const Report& r, const std::string& prefix) {
  std::size_t n = 0;
  for (const auto& rec : r.records) n += rec.key.rfind(prefix, 0) == 0 ? 1 : 0;
  return n;
}

struct Criterion {
  int number;
  std::string suite;
  SuiteOptions options;
  double seconds;
  // Extra conditions on the report; returns an empty string when they hold.
  std::function<std::string(const Report&)> extra;
};

SuiteOptions with_max_n(std::size_t n) {
  SuiteOptions o;
  o.max_n = n;
  return o;
}

std::string at_least(const Report& r, const std::string& prefix, std::size_t want) {
  const std::size_t got = count_prefix(r, prefix);
  return got >= want ? "" : "only " + std::to_string(got) + " '" + prefix + "' records; ";
}

}  // namespace

int main() {
  SuiteOptions haar = with_max_n(3);
  haar.window = 8;
  haar.depth = 8;
  SuiteOptions bifree_opts = with_max_n(5);
  bifree_opts.budget = 5000;

  const std::vector<Criterion> criteria = {
      {1, "lattice", with_max_n(8), 10, nullptr},
      {2, "incidence", with_max_n(6), 60, nullptr},
      {3, "two-sums", with_max_n(5), 120, nullptr},
      {4, "moments", with_max_n(5), 600,
       [](const Report& r) {
         std::string why;
         for (const char* p : {"E (i) ", "E (ii) ", "E (iii) ", "E (iv) "}) why += at_least(r, p, 200);
         why += at_least(r, "lr-choice ", 1);
         why += at_least(r, "trace ", 1);
         return why;
       }},
      {5, "cumulants", with_max_n(5), 600,
       [](const Report& r) {
         std::string why;
         for (const char* p : {"cumulant=E*mu ", "moment=sum of cumulants ", "vanishing ", "kappa (i) ", "kappa (ii) ",
                               "kappa (iii) ", "kappa (iv) ", "moment collapse ", "cumulant expansion ",
                               "cumulant two-block "}) {
           why += at_least(r, p, 1);
         }
         return why;
       }},
      {6, "bifree", bifree_opts, 600,
       [](const Report& r) { return at_least(r, "universal ", 1) + at_least(r, "mixed ", 1); }},
      {7, "expansion", with_max_n(4), 600, [](const Report& r) { return at_least(r, "chi=", 50); }},
      {8, "products", with_max_n(5), 600, nullptr},
      {9, "convolution", with_max_n(4), 600, nullptr},
      {10, "additivity", with_max_n(4), 600, nullptr},
      {11, "haar", haar, 600, [](const Report& r) { return at_least(r, "distribution ", 1) + at_least(r, "bifree ", 1); }},
      {12, "commuting-faces", with_max_n(4), 600,
       [](const Report& r) {
         return at_least(r, "dependent left-only report nonempty", 1) + at_least(r, "dependent bifree report nonempty", 1);
       }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string why;
    Report r;
    try {
      r = find_suite(c.suite).run(c.options);
    } catch (const std::exception& e) {
      why = std::string("threw: ") + e.what() + "; ";
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (why.empty()) {
      if (r.records.empty()) why += "no records; ";
      if (r.mismatches() != 0) why += std::to_string(r.mismatches()) + " mismatches; ";
      if (c.extra) why += c.extra(r);
    }
    if (elapsed > c.seconds) why += "over the time bound; ";
    const bool ok = why.empty();
    failed += ok ? 0 : 1;
    std::printf("criterion %2d %-16s %s  records %zu, mismatches %zu, %.2f s (bound %.0f s)%s%s\n", c.number,
                c.suite.c_str(), ok ? "PASS" : "FAIL", r.records.size(), r.mismatches(), elapsed, c.seconds,
                ok ? "" : "  ", why.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
