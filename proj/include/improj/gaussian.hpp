// Gaussian rationals: exact complex numbers with rational real/imaginary parts.
#ifndef IMPROJ_GAUSSIAN_HPP
#define IMPROJ_GAUSSIAN_HPP

#include <complex>
#include <ostream>

#include "rational.hpp"

namespace improj {

struct GaussianRational {
    Rational re{0};
    Rational im{0};

    GaussianRational() = default;
    GaussianRational(Rational r) : re(std::move(r)) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    GaussianRational(int v) : re(v) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussianRational conj() const { return {re, -im}; }

    GaussianRational operator-() const { return {-re, -im}; }
    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    GaussianRational inverse() const {
        Rational n = re * re + im * im;
        if (n == 0) throw std::domain_error("GaussianRational: division by zero");
        return {re / n, -im / n};
    }
    GaussianRational& operator/=(const GaussianRational& o) { return *this *= o.inverse(); }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

    std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }
};

inline std::ostream& operator<<(std::ostream& os, const GaussianRational& c) {
    os << c.re;
    if (c.im != 0) os << (c.im > 0 ? "+" : "") << c.im << "i";
    return os;
}

} // namespace improj

#endif
