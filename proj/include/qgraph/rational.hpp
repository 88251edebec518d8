#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace qgraph {

// Exact rational arithmetic on arbitrary-precision integers. cpp_rational
// keeps gcd(|num|, den) = 1 and den > 0 canonically.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(long long num, long long den = 1) {
    return Rational(BigInt(num), BigInt(den));
}

inline std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

inline double to_double(const Rational& r) {
    return static_cast<double>(r);
}

}  // namespace qgraph
