#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace pscat {

using Rational = mpq_class;

// "num/den" with den omitted when it is 1.
std::string to_string(const Rational& r);
Rational parse_rational(std::string_view text);

Rational rational_pow(const Rational& base, long exponent);
Rational rational_from_int(std::int64_t v);
double to_double(const Rational& r);

}  // namespace pscat
