// Bivariate polynomials over Q, viewed as univariate in a main variable with
// univariate-polynomial coefficients. Supplies the gcd / resultant /shear
// machinery behind the exact membership decisions.
#ifndef IMPROJ_BIVAR_HPP
#define IMPROJ_BIVAR_HPP

#include <stdexcept>
#include <utility>
#include <vector>

#include "poly.hpp"
#include "univariate.hpp"

namespace improj {

/// c[j] is the coefficient of x2^j, a polynomial in x1.
class BivarPoly {
  public:
    BivarPoly() = default;
    explicit BivarPoly(std::vector<RealUniPoly> coeffs) : c_(std::move(coeffs)) { trim(); }

    /// From a real-coefficient polynomial in exactly two variables
    /// (var 0 -> x1, var 1 -> x2).
    static BivarPoly from_poly(const Poly& p) {
        if (p.nvars() != 2) throw std::invalid_argument("BivarPoly: need 2 variables");
        std::vector<RealUniPoly> cs;
        for (const auto& [e, c] : p.terms()) {
            if (c.im != 0) throw std::invalid_argument("BivarPoly: non-real coefficient");
            if (static_cast<int>(cs.size()) <= e[1]) cs.resize(e[1] + 1);
            std::vector<Rational> uni = cs[e[1]].coeffs();
            if (static_cast<int>(uni.size()) <= e[0]) uni.resize(e[0] + 1, Rational(0));
            uni[e[0]] += c.re;
            cs[e[1]] = RealUniPoly(std::move(uni));
        }
        return BivarPoly(std::move(cs));
    }

    bool is_zero() const { return c_.empty(); }
    /// Degree in the main variable x2; -1 for zero.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    int degree_x1() const {
        int d = -1;
        for (const auto& p : c_) d = std::max(d, p.degree());
        return d;
    }
    bool is_constant() const { return degree() <= 0 && degree_x1() <= 0; }
    const std::vector<RealUniPoly>& coeffs() const { return c_; }
    const RealUniPoly& leading() const {
        if (c_.empty()) throw std::domain_error("BivarPoly: zero leading coefficient");
        return c_.back();
    }

    RealUniPoly at_x1(const Rational& v) const {
        std::vector<Rational> r(c_.size());
        for (std::size_t j = 0; j < c_.size(); ++j) r[j] = c_[j].eval(v);
        return RealUniPoly(std::move(r));
    }

    BivarPoly swapped() const {
        std::vector<RealUniPoly> out;
        for (std::size_t j = 0; j < c_.size(); ++j) {
            for (int i = 0; i <= c_[j].degree(); ++i) {
                if (c_[j].coeff(i) == 0) continue;
                if (static_cast<int>(out.size()) <= i) out.resize(i + 1);
                std::vector<Rational> uni = out[i].coeffs();
                if (static_cast<int>(uni.size()) <= static_cast<int>(j)) uni.resize(j + 1, Rational(0));
                uni[j] += c_[j].coeff(i);
                out[i] = RealUniPoly(std::move(uni));
            }
        }
        return BivarPoly(std::move(out));
    }

    BivarPoly operator-() const {
        auto r = c_;
        for (auto& p : r) p = -p;
        return BivarPoly(std::move(r));
    }
    friend BivarPoly operator+(const BivarPoly& a, const BivarPoly& b) {
        std::vector<RealUniPoly> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = r[i] + a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] + b.c_[i];
        return BivarPoly(std::move(r));
    }
    friend BivarPoly operator-(const BivarPoly& a, const BivarPoly& b) { return a + (-b); }
    friend BivarPoly operator*(const BivarPoly& a, const BivarPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<RealUniPoly> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        return BivarPoly(std::move(r));
    }
    friend BivarPoly operator*(const BivarPoly& a, const RealUniPoly& s) {
        auto r = a.c_;
        for (auto& p : r) p = p * s;
        return BivarPoly(std::move(r));
    }

    BivarPoly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<RealUniPoly> r(c_.size() - 1);
        for (std::size_t j = 1; j < c_.size(); ++j) r[j - 1] = c_[j] * Rational(static_cast<int>(j));
        return BivarPoly(std::move(r));
    }

    /// gcd of the coefficients, as a monic univariate polynomial in x1.
    RealUniPoly content() const {
        RealUniPoly g;
        for (const auto& p : c_) g = gcd(g, p);
        return g;
    }
    BivarPoly divided_content(const RealUniPoly& cont) const {
        auto r = c_;
        for (auto& p : r) {
            auto [q, rem] = p.divmod(cont);
            if (!rem.is_zero()) throw std::logic_error("divided_content: inexact");
            p = std::move(q);
        }
        return BivarPoly(std::move(r));
    }
    BivarPoly primitive_part() const {
        if (is_zero()) return {};
        return divided_content(content());
    }

    /// x1 |-> x1 + lambda*x2. A nonzero leading form at (lambda, 1) makes the
    /// resulting main-variable leading coefficient a nonzero constant.
    BivarPoly sheared(const Rational& lambda) const {
        if (lambda == 0) return *this;
        // substitute via Horner in x1
        BivarPoly acc;
        BivarPoly lin(std::vector<RealUniPoly>{RealUniPoly::monomial(Rational(1), 1),
                                               RealUniPoly::constant(lambda)});
        // lin = x1 + lambda x2 (coefficient of x2^0 is x1, of x2^1 is lambda)
        for (std::size_t j = 0; j < c_.size(); ++j) {
            const RealUniPoly& p = c_[j]; // poly in x1
            BivarPoly px;
            for (int i = p.degree(); i >= 0; --i) {
                px = px * lin;
                if (p.coeff(i) != 0)
                    px = px + BivarPoly(std::vector<RealUniPoly>{RealUniPoly::constant(p.coeff(i))});
            }
            // multiply by x2^j
            std::vector<RealUniPoly> sh(j);
            for (const auto& q : px.coeffs()) sh.push_back(q);
            acc = acc + BivarPoly(std::move(sh));
        }
        return acc;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<RealUniPoly> c_;
};

/// Pseudo-remainder: lc(B)^(deg A - deg B + 1) * A  mod  B.
inline BivarPoly pseudo_rem(const BivarPoly& a, const BivarPoly& b) {
    if (b.is_zero()) throw std::domain_error("pseudo_rem: zero divisor");
    BivarPoly r = a;
    const int db = b.degree();
    const RealUniPoly& lb = b.leading();
    int steps = a.degree() - db + 1;
    if (steps <= 0) return r;
    while (!r.is_zero() && r.degree() >= db) {
        int shift = r.degree() - db;
        RealUniPoly lr = r.leading();
        // r <- lb * r - lr * x2^shift * b
        std::vector<RealUniPoly> shifted(shift);
        for (const auto& q : b.coeffs()) shifted.push_back(q * lr);
        r = r * lb - BivarPoly(std::move(shifted));
        --steps;
    }
    // pad remaining multiplier so the total factor is exactly lc^(degA-degB+1)
    for (; steps > 0; --steps) r = r * lb;
    return r;
}

/// Exact division (throws if not exact).
inline BivarPoly exact_div(const BivarPoly& a, const BivarPoly& b) {
    if (b.is_zero()) throw std::domain_error("exact_div: zero divisor");
    BivarPoly r = a;
    std::vector<RealUniPoly> q(a.is_zero() || a.degree() < b.degree() ? 0 : a.degree() - b.degree() + 1);
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int shift = r.degree() - b.degree();
        auto [qc, rem] = r.leading().divmod(b.leading());
        if (!rem.is_zero()) throw std::logic_error("exact_div: inexact leading division");
        q[shift] = qc;
        std::vector<RealUniPoly> shifted(shift);
        for (const auto& p : b.coeffs()) shifted.push_back(p * qc);
        r = r - BivarPoly(std::move(shifted));
    }
    if (!r.is_zero()) throw std::logic_error("exact_div: nonzero remainder");
    return BivarPoly(std::move(q));
}

/// Primitive-PRS gcd in Q[x1][x2] (primitive, positive leading content).
inline BivarPoly gcd_bivar(BivarPoly a, BivarPoly b) {
    if (a.is_zero()) return b.is_zero() ? BivarPoly{} : b.primitive_part();
    if (b.is_zero()) return a.primitive_part();
    RealUniPoly cont = gcd(a.content(), b.content());
    a = a.primitive_part();
    b = b.primitive_part();
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        BivarPoly r = pseudo_rem(a, b);
        a = std::move(b);
        b = r.is_zero() ? BivarPoly{} : r.primitive_part();
    }
    return a * cont;
}

/// Sylvester resultant with respect to the main variable x2: a univariate
/// polynomial in x1, identically zero iff the inputs share a factor of
/// positive x2-degree (or both collapse). Computed by fraction-free Bareiss
/// elimination.
inline RealUniPoly resultant_main(const BivarPoly& a, const BivarPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    const int m = a.degree();
    const int n = b.degree();
    if (m == 0 && n == 0) throw std::invalid_argument("resultant: both inputs constant in x2");
    if (m == 0) {
        RealUniPoly r = RealUniPoly::constant(1);
        for (int i = 0; i < n; ++i) r = r * a.coeffs()[0];
        return r;
    }
    if (n == 0) {
        RealUniPoly r = RealUniPoly::constant(1);
        for (int i = 0; i < m; ++i) r = r * b.coeffs()[0];
        return r;
    }
    const int size = m + n;
    std::vector<std::vector<RealUniPoly>> M(size, std::vector<RealUniPoly>(size));
    for (int r = 0; r < n; ++r)
        for (int j = 0; j <= m; ++j) M[r][r + j] = a.coeffs()[m - j];
    for (int r = 0; r < m; ++r)
        for (int j = 0; j <= n; ++j) M[n + r][r + j] = b.coeffs()[n - j];

    int sign_flips = 0;
    RealUniPoly prev = RealUniPoly::constant(1);
    for (int k = 0; k < size - 1; ++k) {
        if (M[k][k].is_zero()) {
            int piv = -1;
            for (int r = k + 1; r < size; ++r)
                if (!M[r][k].is_zero()) {
                    piv = r;
                    break;
                }
            if (piv < 0) return {}; // singular: resultant is identically zero
            std::swap(M[k], M[piv]);
            ++sign_flips;
        }
        for (int r = k + 1; r < size; ++r) {
            for (int col = k + 1; col < size; ++col) {
                RealUniPoly num = M[r][col] * M[k][k] - M[r][k] * M[k][col];
                auto [q, rem] = num.divmod(prev);
                if (!rem.is_zero()) throw std::logic_error("resultant: Bareiss division not exact");
                M[r][col] = std::move(q);
            }
            M[r][k] = {};
        }
        prev = M[k][k];
    }
    RealUniPoly det = M[size - 1][size - 1];
    if (sign_flips % 2) det = -det;
    return det;
}

/// Finds a shear parameter making the main-variable leading coefficients of
/// every input constant (their leading forms nonzero at (lambda, 1)).
inline Rational find_shear(const std::vector<const BivarPoly*>& ps) {
    auto degree_form_at = [](const BivarPoly& p, const Rational& lambda) {
        // sum over coefficient entries of top total degree, evaluated at (lambda, 1)
        int d = -1;
        for (int j = 0; j <= p.degree(); ++j) {
            const RealUniPoly& cj = p.coeffs()[j];
            if (!cj.is_zero()) d = std::max(d, cj.degree() + j);
        }
        Rational acc(0);
        for (int j = 0; j <= p.degree(); ++j) {
            const RealUniPoly& cj = p.coeffs()[j];
            int i = d - j;
            if (i >= 0 && i <= cj.degree()) acc += cj.coeff(i) * rat_pow(lambda, static_cast<unsigned>(i));
        }
        return acc;
    };
    for (int t = 0;; ++t) {
        Rational lambda(t % 2 == 0 ? t / 2 : -(t + 1) / 2);
        bool ok = true;
        for (const BivarPoly* p : ps) {
            if (p->is_zero() || p->is_constant()) continue;
            if (degree_form_at(*p, lambda) == 0) {
                ok = false;
                break;
            }
        }
        if (ok) return lambda;
    }
}

} // namespace improj

#endif
