#include "dyadic/numeric.hpp"

#include <boost/multiprecision/integer.hpp>

namespace dyadic {

Int ipow(Int base, unsigned long e) {
    Int r = 1;
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

namespace {

long to_long(const Int& v) { return v.convert_to<long>(); }

}  // namespace

bool leq_cap_pow2(const Int& count, const Rat& cap, const Rat& e) {
    if (count < 0 || cap <= 0) throw std::invalid_argument("leq_cap_pow2: bad arguments");
    if (count == 0) return true;
    // count <= (cn/cd) * 2^(p/q)  <=>  (count*cd)^q <= cn^q * 2^p
    const Int cn = numerator(cap), cd = denominator(cap);
    const Int p = numerator(e), q = denominator(e);
    const unsigned long qu = q.convert_to<unsigned long>();
    Int lhs = ipow(count * cd, qu);
    Int rhs = ipow(cn, qu);
    if (p >= 0)
        rhs <<= to_long(p);
    else
        lhs <<= to_long(-p);
    return lhs <= rhs;
}

int cmp_pow2_products(const Int& a, const Rat& ea, const Int& b, const Rat& eb) {
    if (a < 0 || b < 0) throw std::invalid_argument("cmp_pow2_products: negative base");
    if (a == 0 || b == 0) return a == b ? 0 : (a == 0 ? -1 : 1);
    // Common exponent denominator q: compare a^q * 2^pa vs b^q * 2^pb.
    const Int qa = denominator(ea), qb = denominator(eb);
    const Int q = boost::multiprecision::lcm(qa, qb);
    const Int pa = numerator(ea) * (q / qa), pb = numerator(eb) * (q / qb);
    const unsigned long qu = q.convert_to<unsigned long>();
    Int lhs = ipow(a, qu), rhs = ipow(b, qu);
    const Int shift = pa - pb;
    if (shift >= 0)
        lhs <<= to_long(shift);
    else
        rhs <<= to_long(-shift);
    return lhs < rhs ? -1 : (lhs == rhs ? 0 : 1);
}

bool pow_geq(const Int& sizeA, const Rat& ea, const Int& sizeB, const Rat& eb) {
    if (sizeA <= 0 || sizeB <= 0) throw std::invalid_argument("pow_geq: sizes must be positive");
    if (ea < 0 || eb < 0) throw std::invalid_argument("pow_geq: exponents must be >= 0");
    const Int qa = denominator(ea), qb = denominator(eb);
    const Int q = boost::multiprecision::lcm(qa, qb);
    const Int pa = numerator(ea) * (q / qa), pb = numerator(eb) * (q / qb);
    // sizeA^(pa/q) >= sizeB^(pb/q)  <=>  sizeA^pa >= sizeB^pb
    return ipow(sizeA, pa.convert_to<unsigned long>()) >= ipow(sizeB, pb.convert_to<unsigned long>());
}

Log2Bracket log2_bracket(const Int& n, unsigned precision) {
    if (n < 1) throw std::invalid_argument("log2_bracket: n must be >= 1");
    const unsigned msb = boost::multiprecision::msb(n);
    if ((Int(1) << msb) == n) return {Rat(msb), Rat(msb), true};
    // floor(precision * log2 n) from the bit length of n^precision.
    const Int np = ipow(n, precision);
    const unsigned long p = boost::multiprecision::msb(np);
    return {Rat(Int(p), Int(precision)), Rat(Int(p + 1), Int(precision)), false};
}

Rat parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Rat(Int(text));
    return Rat(Int(text.substr(0, slash)), Int(text.substr(slash + 1)));
}

std::string rat_string(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

double rat_double(const Rat& r) { return r.convert_to<double>(); }

Int rat_floor(const Rat& r) {
    Int q, rem;
    boost::multiprecision::divide_qr(numerator(r), denominator(r), q, rem);
    if (rem != 0 && numerator(r) < 0) --q;
    return q;
}

Int rat_ceil(const Rat& r) { return -rat_floor(-r); }

}  // namespace dyadic
