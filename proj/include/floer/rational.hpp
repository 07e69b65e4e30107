#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace boost {

// Exact-match equality against built-in integers. Under C++20 the reversed
// candidates of Boost's mixed comparisons otherwise call each other forever.
#define FLOER_RATIONAL_EQ(Int)                                                                    \
    inline bool operator==(const rational<std::int64_t>& a, Int b)                               \
    {                                                                                             \
        return a.denominator() == 1 && a.numerator() == static_cast<std::int64_t>(b);            \
    }                                                                                             \
    inline bool operator==(Int b, const rational<std::int64_t>& a) { return a == b; }            \
    inline bool operator!=(const rational<std::int64_t>& a, Int b) { return !(a == b); }         \
    inline bool operator!=(Int b, const rational<std::int64_t>& a) { return !(a == b); }

FLOER_RATIONAL_EQ(int)
FLOER_RATIONAL_EQ(long)
FLOER_RATIONAL_EQ(long long)
FLOER_RATIONAL_EQ(unsigned)
FLOER_RATIONAL_EQ(unsigned long)
#undef FLOER_RATIONAL_EQ

} // namespace boost

namespace floer {

/// Exact rational numbers; all gradings and grading formulas use these.
using Rational = boost::rational<std::int64_t>;

/// "p" for integers, "p/q" otherwise (q > 0, lowest terms).
std::string to_string(const Rational& r);

/// Accepts "p", "-p", "p/q". Throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);

inline bool is_integer(const Rational& r) { return r.denominator() == 1; }

/// Floor of a rational number.
std::int64_t floor(const Rational& r);

} // namespace floer
