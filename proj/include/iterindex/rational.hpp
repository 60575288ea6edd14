#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace iterindex {

using Integer = boost::multiprecision::cpp_int;

/// Exact rational, always held in lowest terms with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;

/// Parses "num/den" or a bare integer. Throws std::invalid_argument on
/// malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Serializes as "num/den", also for integers ("3/1").
std::string format_rational(const Rational& value);

bool is_integer(const Rational& value);

/// Throws std::domain_error when the value is not an integer or does not
/// fit in 64 bits.
std::int64_t to_int64(const Rational& value);

inline Integer numerator_of(const Rational& value) {
    return boost::multiprecision::numerator(value);
}

inline Integer denominator_of(const Rational& value) {
    return boost::multiprecision::denominator(value);
}

/// Floor of a rational, exact.
Integer floor_of(const Rational& value);

}  // namespace iterindex
