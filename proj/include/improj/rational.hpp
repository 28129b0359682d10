// Exact rational scalars used throughout the library.
#ifndef IMPROJ_RATIONAL_HPP
#define IMPROJ_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace improj {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

inline int sign(const Rational& q) { return q.sign(); }
inline int sign(const Integer& z) { return z.sign(); }

inline Rational rat_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline Rational rat_pow(const Rational& base, unsigned e) {
    Rational r(1);
    Rational b = base;
    while (e) {
        if (e & 1u) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline Integer numer(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denom(const Rational& q) { return boost::multiprecision::denominator(q); }

/// Dyadic rounding of a double to an exact rational; values below `zero_snap`
/// in magnitude collapse to 0 so sweeps can hit measure-zero sets exactly.
inline Rational snap_rational(double v, int dyadic_bits = 24, double zero_snap = 1e-9) {
    if (!std::isfinite(v)) throw std::invalid_argument("snap_rational: non-finite value");
    if (std::fabs(v) < zero_snap) return Rational(0);
    const double scale = std::ldexp(1.0, dyadic_bits);
    const double scaled = std::nearbyint(v * scale);
    Integer num(static_cast<long long>(scaled));
    Integer den = Integer(1) << dyadic_bits;
    return Rational(num, den);
}

inline Rational rat_from_string(const std::string& s) { return Rational(s); }

} // namespace improj

#endif
