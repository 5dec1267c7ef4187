#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace aifv {

using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

// "3/4", "0.125", "1", "-2/6" (normalized).
Rational parse_rational(std::string_view text);

// Best rational approximation with denominator <= max_den (continued fractions).
Rational rational_from_double(double x, long long max_den = 1000000);

// "1039/280", or "3" for integers.
std::string to_string(const Rational& r);

// Decimal rendering rounded half-to-even at `places` digits, computed exactly.
std::string to_decimal(const Rational& r, int places);

double to_double(const Rational& r);

}  // namespace aifv
