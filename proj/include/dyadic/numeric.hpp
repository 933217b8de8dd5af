#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace dyadic {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int pow2(long e) {
    if (e < 0) throw std::invalid_argument("pow2: negative exponent");
    return Int(1) << e;
}

/// 2^e for any sign of e, as an exact rational.
inline Rat pow2r(long e) {
    return e >= 0 ? Rat(Int(1) << e) : Rat(1, Int(1) << -e);
}

Int ipow(Int base, unsigned long e);

/// Exact test of  count <= cap * 2^e  with e rational. count >= 0, cap > 0.
bool leq_cap_pow2(const Int& count, const Rat& cap, const Rat& e);

/// Sign of a*2^ea - b*2^eb for a,b >= 0 and rational exponents.
int cmp_pow2_products(const Int& a, const Rat& ea, const Int& b, const Rat& eb);

/// Exact test of sizeA^ea >= sizeB^eb for positive integer sizes, rational exponents >= 0.
bool pow_geq(const Int& sizeA, const Rat& ea, const Int& sizeB, const Rat& eb);

/// Rational bracket around log2(n), n >= 1. Width 1/precision, exact for powers of two.
struct Log2Bracket {
    Rat lo, hi;
    bool exact;
};
Log2Bracket log2_bracket(const Int& n, unsigned precision = 32);

/// Parses "p/q" or "p" into an exact rational.
Rat parse_rational(const std::string& text);

std::string rat_string(const Rat& r);
double rat_double(const Rat& r);

/// floor(num/den) for a rational, exact.
Int rat_floor(const Rat& r);
Int rat_ceil(const Rat& r);

}  // namespace dyadic
