#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace bifree {

using Rational = mpq_class;

// Accepts "p/q", "p" and optional sign; throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

}  // namespace bifree
