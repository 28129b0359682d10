// Real algebraic numbers given by a square-free defining polynomial and an
// isolating interval, with exact sign evaluation of rational polynomials at
// them, plus the derived decision procedures: existence of real zeros of one
// bivariate polynomial and of common real zeros of a coprime pair.
#ifndef IMPROJ_ALGEBRAIC_HPP
#define IMPROJ_ALGEBRAIC_HPP

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bivar.hpp"
#include "univariate.hpp"

namespace improj {

class AlgebraicReal {
  public:
    /// m must be square-free with exactly one root in the given interval and
    /// nonzero values at both endpoints (as produced by isolate_real_roots).
    AlgebraicReal(RealUniPoly m, RootInterval iv) : m_(std::move(m)), iv_(std::move(iv)) {}

    bool is_exact() const { return iv_.exact; }
    const Rational& value() const { return iv_.root; }
    const RealUniPoly& defining() const { return m_; }
    Rational lo() const { return iv_.exact ? iv_.root : iv_.lo; }
    Rational hi() const { return iv_.exact ? iv_.root : iv_.hi; }
    double approx() const { return to_double(iv_.midpoint()); }

    void refine() const {
        if (iv_.exact) return;
        Rational mid = (iv_.lo + iv_.hi) / 2;
        Rational v = m_.eval(mid);
        if (v == 0) {
            iv_.exact = true;
            iv_.root = mid;
            iv_.lo = iv_.hi = mid;
            return;
        }
        if (sign(v) == sign(m_.eval(iv_.lo))) iv_.lo = mid;
        else iv_.hi = mid;
    }
    void refine_below(const Rational& width) const {
        while (!iv_.exact && iv_.hi - iv_.lo > width) refine();
    }

    /// Exact sign of r at this point.
    int sign_at(const RealUniPoly& r) const {
        if (r.is_zero()) return 0;
        if (iv_.exact) return sign(r.eval(iv_.root));
        RealUniPoly g = gcd(m_, r);
        if (g.degree() >= 1 &&
            count_real_roots(g, ExtendedRational::at(iv_.lo), ExtendedRational::at(iv_.hi)) == 1)
            return 0;
        // r(alpha) != 0: shrink until the interval is free of roots of r.
        SturmChain rc(r);
        while (true) {
            if (iv_.exact) return sign(r.eval(iv_.root));
            if (rc.count(ExtendedRational::at(iv_.lo), ExtendedRational::at(iv_.hi)) == 0) {
                int s = sign(r.eval((iv_.lo + iv_.hi) / 2));
                if (s != 0) return s;
            }
            refine();
        }
    }

    bool is_zero_at(const RealUniPoly& r) const { return sign_at(r) == 0; }

  private:
    RealUniPoly m_;
    mutable RootInterval iv_;
};

/// Polynomial in one variable whose coefficients are residues mod the
/// defining polynomial of a fixed algebraic point; degrees are true degrees
/// at that point (leading coefficient nonzero there).
namespace detail {

struct AlgPoly {
    std::vector<RealUniPoly> c; // ascending; c.back() nonzero at alpha
};

inline AlgPoly make_alg(const BivarPoly& u, const AlgebraicReal& a) {
    AlgPoly r;
    r.c.reserve(u.coeffs().size());
    for (const auto& p : u.coeffs()) r.c.push_back(p % a.defining());
    while (!r.c.empty() && a.is_zero_at(r.c.back())) r.c.pop_back();
    return r;
}

inline void alg_trim(AlgPoly& p, const AlgebraicReal& a) {
    while (!p.c.empty() && a.is_zero_at(p.c.back())) p.c.pop_back();
}

inline AlgPoly alg_derivative(const AlgPoly& p, const AlgebraicReal& a) {
    AlgPoly r;
    if (p.c.size() <= 1) return r;
    r.c.resize(p.c.size() - 1);
    for (std::size_t j = 1; j < p.c.size(); ++j) r.c[j - 1] = p.c[j] * Rational(static_cast<int>(j));
    alg_trim(r, a);
    return r;
}

/// Remainder of lc(b)^(2k) * a modulo b over Q(alpha), with 2k the smallest
/// even integer >= deg a - deg b + 1 (an even power keeps signs faithful).
inline AlgPoly alg_even_prem(const AlgPoly& a, const AlgPoly& b, const AlgebraicReal& al) {
    const RealUniPoly& m = al.defining();
    const int db = static_cast<int>(b.c.size()) - 1;
    const RealUniPoly lb = b.c.back();
    AlgPoly r = a;
    int mults = 0;
    while (static_cast<int>(r.c.size()) - 1 >= db) {
        int shift = static_cast<int>(r.c.size()) - 1 - db;
        RealUniPoly lr = r.c.back();
        // r <- lb*r - lr * x^shift * b
        AlgPoly nr;
        nr.c.assign(r.c.size(), RealUniPoly{});
        for (std::size_t j = 0; j < r.c.size(); ++j) nr.c[j] = (r.c[j] * lb) % m;
        for (int j = 0; j <= db; ++j) {
            nr.c[j + shift] = (nr.c[j + shift] - b.c[j] * lr) % m;
        }
        nr.c.pop_back(); // leading entry cancels identically at alpha
        alg_trim(nr, al);
        r = std::move(nr);
        ++mults;
        if (r.c.empty()) break;
    }
    if (mults % 2 == 1) {
        for (auto& p : r.c) p = (p * lb) % m;
    }
    return r;
}

inline int alg_sign_lead(const AlgPoly& p, const AlgebraicReal& a) {
    return p.c.empty() ? 0 : a.sign_at(p.c.back());
}

/// Number of distinct real roots of p over Q(alpha), by a Sturm sequence with
/// positively scaled pseudo-remainders.
inline int alg_count_real_roots(const AlgPoly& p, const AlgebraicReal& a) {
    if (p.c.size() <= 1) return 0;
    std::vector<AlgPoly> chain;
    chain.push_back(p);
    chain.push_back(alg_derivative(p, a));
    while (!chain.back().c.empty() && chain.back().c.size() >= 2) {
        AlgPoly r = alg_even_prem(chain[chain.size() - 2], chain.back(), a);
        if (r.c.empty()) break;
        for (auto& q : r.c) q = -q;
        chain.push_back(std::move(r));
    }
    auto variations = [&](bool at_pos_inf) {
        int var = 0, prev = 0;
        for (const auto& q : chain) {
            if (q.c.empty()) continue;
            int s = alg_sign_lead(q, a);
            if (!at_pos_inf && (q.c.size() - 1) % 2 == 1) s = -s;
            if (s != 0) {
                if (prev != 0 && s != prev) ++var;
                prev = s;
            }
        }
        return var;
    };
    return variations(false) - variations(true);
}

/// gcd over Q(alpha) by pseudo-remainders (result up to nonzero factors).
inline AlgPoly alg_gcd(AlgPoly a, AlgPoly b, const AlgebraicReal& al) {
    if (a.c.size() < b.c.size()) std::swap(a, b);
    while (!b.c.empty()) {
        if (b.c.size() == 1) return b; // nonzero constant
        AlgPoly r = alg_even_prem(a, b, al);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

} // namespace detail

/// Does p(alpha, .) have a real root? (p given as Q[x1][x2], alpha algebraic)
inline bool fiber_has_real_root(const BivarPoly& p, const AlgebraicReal& a) {
    if (a.is_exact()) {
        RealUniPoly u = p.at_x1(a.value());
        if (u.is_zero()) return true;
        if (u.degree() == 0) return false;
        return count_real_roots(u) > 0;
    }
    detail::AlgPoly u = detail::make_alg(p, a);
    if (u.c.empty()) return true; // vanishes identically on the fiber
    if (u.c.size() == 1) return false;
    if ((u.c.size() - 1) % 2 == 1) return true; // odd degree
    return detail::alg_count_real_roots(u, a) > 0;
}

/// Do p(alpha, .) and q(alpha, .) have a common real root?
inline bool fiber_has_common_real_root(const BivarPoly& p, const BivarPoly& q,
                                       const AlgebraicReal& a) {
    if (a.is_exact()) {
        RealUniPoly u = p.at_x1(a.value());
        RealUniPoly v = q.at_x1(a.value());
        if (u.is_zero() && v.is_zero()) return true;
        RealUniPoly g = u.is_zero() ? v : (v.is_zero() ? u : gcd(u, v));
        if (g.degree() <= 0) return false;
        return count_real_roots(g) > 0;
    }
    detail::AlgPoly u = detail::make_alg(p, a);
    detail::AlgPoly v = detail::make_alg(q, a);
    if (u.c.empty() && v.c.empty()) return true;
    detail::AlgPoly w =
        u.c.empty() ? v : (v.c.empty() ? u : detail::alg_gcd(u, v, a));
    if (w.c.size() <= 1) return false; // constant (or empty cannot happen here)
    if ((w.c.size() - 1) % 2 == 1) return true;
    return detail::alg_count_real_roots(w, a) > 0;
}

} // namespace improj

#endif
