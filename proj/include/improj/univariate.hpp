// Dense univariate polynomials over the rationals: arithmetic, gcd, Sturm
// chains, real-root counting and isolation. Exact throughout.
#ifndef IMPROJ_UNIVARIATE_HPP
#define IMPROJ_UNIVARIATE_HPP

#include <algorithm>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace improj {

/// Coefficients in ascending degree order; the leading coefficient of a
/// nonzero polynomial is nonzero. The zero polynomial has an empty list.
class RealUniPoly {
  public:
    RealUniPoly() = default;
    explicit RealUniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    static RealUniPoly constant(Rational v) {
        RealUniPoly p;
        if (v != 0) p.c_.push_back(std::move(v));
        return p;
    }
    /// x^k with coefficient a.
    static RealUniPoly monomial(Rational a, std::size_t k) {
        RealUniPoly p;
        if (a != 0) {
            p.c_.assign(k + 1, Rational(0));
            p.c_[k] = std::move(a);
        }
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Rational>& coeffs() const { return c_; }
    const Rational& operator[](std::size_t k) const { return c_[k]; }
    Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
    const Rational& leading() const {
        if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }

    RealUniPoly operator-() const {
        RealUniPoly r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }
    friend RealUniPoly operator+(const RealUniPoly& a, const RealUniPoly& b) {
        std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return RealUniPoly(std::move(r));
    }
    friend RealUniPoly operator-(const RealUniPoly& a, const RealUniPoly& b) { return a + (-b); }
    friend RealUniPoly operator*(const RealUniPoly& a, const RealUniPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return RealUniPoly(std::move(r));
    }
    RealUniPoly& operator*=(const Rational& s) {
        if (s == 0) {
            c_.clear();
            return *this;
        }
        for (auto& v : c_) v *= s;
        return *this;
    }
    friend RealUniPoly operator*(RealUniPoly a, const Rational& s) { return a *= s; }
    friend bool operator==(const RealUniPoly& a, const RealUniPoly& b) { return a.c_ == b.c_; }

    RealUniPoly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<Rational> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rational(static_cast<int>(i));
        return RealUniPoly(std::move(r));
    }

    Rational eval(const Rational& x) const {
        Rational acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }
    double eval_double(double x) const {
        double acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + to_double(*it);
        return acc;
    }

    /// Euclidean division over Q: returns {quotient, remainder}.
    std::pair<RealUniPoly, RealUniPoly> divmod(const RealUniPoly& d) const {
        if (d.is_zero()) throw std::domain_error("division by zero polynomial");
        RealUniPoly r = *this;
        std::vector<Rational> q;
        if (degree() >= d.degree()) q.assign(degree() - d.degree() + 1, Rational(0));
        while (!r.is_zero() && r.degree() >= d.degree()) {
            const int shift = r.degree() - d.degree();
            Rational f = r.leading() / d.leading();
            q[shift] = f;
            for (std::size_t i = 0; i < d.c_.size(); ++i) r.c_[i + shift] -= f * d.c_[i];
            r.trim();
        }
        return {RealUniPoly(std::move(q)), std::move(r)};
    }
    RealUniPoly operator/(const RealUniPoly& d) const { return divmod(d).first; }
    RealUniPoly operator%(const RealUniPoly& d) const { return divmod(d).second; }

    /// Divide out content, scaling by a positive rational only: signs of all
    /// values are preserved.
    RealUniPoly primitive_keep_sign() const {
        if (is_zero()) return {};
        Integer num_gcd(0);
        Integer den_lcm(1);
        for (const auto& v : c_) {
            num_gcd = boost::multiprecision::gcd(num_gcd, numer(v));
            den_lcm = boost::multiprecision::lcm(den_lcm, denom(v));
        }
        RealUniPoly r = *this;
        r *= Rational(den_lcm, num_gcd);
        return r;
    }
    /// Primitive with positive leading coefficient (may flip all signs).
    RealUniPoly primitive_positive() const {
        if (is_zero()) return {};
        RealUniPoly r = primitive_keep_sign();
        if (r.leading() < 0) r *= Rational(-1);
        return r;
    }
    RealUniPoly monic() const {
        if (is_zero()) return {};
        RealUniPoly r = *this;
        r *= Rational(1) / leading();
        return r;
    }

    RealUniPoly shift_scale(const Rational& a, const Rational& b) const {
        // p(a + b x), via Horner on polynomials.
        RealUniPoly acc;
        RealUniPoly lin(std::vector<Rational>{a, b});
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * lin + RealUniPoly::constant(*it);
        return acc;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

inline std::ostream& operator<<(std::ostream& os, const RealUniPoly& p) {
    if (p.is_zero()) return os << "0";
    for (int k = p.degree(); k >= 0; --k) {
        if (p.coeff(k) == 0) continue;
        if (k != p.degree()) os << (p.coeff(k) > 0 ? " + " : " - ");
        else if (p.coeff(k) < 0) os << "-";
        os << rat_abs(p.coeff(k));
        if (k > 0) os << "*x^" << k;
    }
    return os;
}

inline RealUniPoly gcd(RealUniPoly a, RealUniPoly b) {
    if (a.is_zero()) return b.is_zero() ? RealUniPoly{} : b.monic();
    if (b.is_zero()) return a.monic();
    a = a.primitive_positive();
    b = b.primitive_positive();
    while (!b.is_zero()) {
        RealUniPoly r = (a % b).primitive_positive();
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// f'g - fg'.
inline RealUniPoly wronskian(const RealUniPoly& f, const RealUniPoly& g) {
    return f.derivative() * g - f * g.derivative();
}

inline RealUniPoly square_free_part(const RealUniPoly& p) {
    if (p.is_zero()) return {};
    if (p.degree() == 0) return RealUniPoly::constant(1);
    RealUniPoly g = gcd(p, p.derivative());
    return (p / g).primitive_positive();
}

/// Yun square-free decomposition: p = lc * prod A_k^k with the A_k square-free
/// and pairwise coprime. Returns the list A_1, A_2, ... (monic).
inline std::vector<RealUniPoly> square_free_decomposition(const RealUniPoly& p) {
    std::vector<RealUniPoly> out;
    if (p.degree() <= 0) return out;
    RealUniPoly a = p.monic();
    RealUniPoly g = gcd(a, a.derivative());
    if (g.degree() == 0) {
        out.push_back(a);
        return out;
    }
    RealUniPoly w = a / g;
    RealUniPoly y = a.derivative() / g;
    RealUniPoly z = y - w.derivative();
    while (!z.is_zero()) {
        RealUniPoly f = gcd(w, z);
        out.push_back(f.monic());
        w = w / f;
        y = z / f;
        z = y - w.derivative();
    }
    out.push_back(w.monic());
    return out;
}

/// Is p(t) >= 0 for every real t? Exact, via the square-free decomposition:
/// sign changes happen only at real roots of odd multiplicity.
inline bool nonnegative_on_reals(const RealUniPoly& p);

/// Endpoint of an extended-rational interval.
struct ExtendedRational {
    enum Kind { NegInf, Finite, PosInf } kind = Finite;
    Rational value{0};
    static ExtendedRational neg_inf() { return {NegInf, Rational(0)}; }
    static ExtendedRational pos_inf() { return {PosInf, Rational(0)}; }
    static ExtendedRational at(Rational v) { return {Finite, std::move(v)}; }
};

class SturmChain {
  public:
    /// Builds the chain of the square-free part of p.
    explicit SturmChain(const RealUniPoly& p) {
        RealUniPoly p0 = square_free_part(p);
        seq_.push_back(p0);
        if (p0.degree() >= 1) {
            seq_.push_back(p0.derivative().primitive_keep_sign());
            while (seq_.back().degree() >= 1) {
                RealUniPoly r = -(seq_[seq_.size() - 2] % seq_.back());
                if (r.is_zero()) break;
                seq_.push_back(r.primitive_keep_sign());
            }
        }
    }

    const std::vector<RealUniPoly>& sequence() const { return seq_; }

    int variations_at(const ExtendedRational& x) const {
        int var = 0;
        int prev = 0;
        for (const auto& p : seq_) {
            int s = sign_at(p, x);
            if (s != 0) {
                if (prev != 0 && s != prev) ++var;
                prev = s;
            }
        }
        return var;
    }

    /// Number of distinct real roots in the half-open interval (a, b].
    int count(const ExtendedRational& a, const ExtendedRational& b) const {
        return variations_at(a) - variations_at(b);
    }

  private:
    static int sign_at(const RealUniPoly& p, const ExtendedRational& x) {
        if (p.is_zero()) return 0;
        switch (x.kind) {
            case ExtendedRational::Finite: return sign(p.eval(x.value));
            case ExtendedRational::PosInf: return sign(p.leading());
            case ExtendedRational::NegInf:
                return p.degree() % 2 == 0 ? sign(p.leading()) : -sign(p.leading());
        }
        return 0;
    }
    std::vector<RealUniPoly> seq_;
};

/// Distinct real roots of p in the half-open interval (a, b].
inline int count_real_roots(const RealUniPoly& p, const ExtendedRational& a,
                            const ExtendedRational& b) {
    if (p.is_zero()) throw std::invalid_argument("count_real_roots: zero polynomial");
    if (p.degree() == 0) return 0;
    return SturmChain(p).count(a, b);
}

inline int count_real_roots(const RealUniPoly& p) {
    return count_real_roots(p, ExtendedRational::neg_inf(), ExtendedRational::pos_inf());
}

/// Cauchy bound: all real roots lie in (-B, B).
inline Rational root_bound(const RealUniPoly& p) {
    if (p.is_zero() || p.degree() == 0) return Rational(1);
    Rational m(0);
    for (int k = 0; k < p.degree(); ++k) {
        Rational v = rat_abs(p.coeff(k) / p.leading());
        if (v > m) m = v;
    }
    return m + 1;
}

/// One isolated real root: either exact, or an open-below/closed-above
/// interval (lo, hi] containing exactly one root of the square-free part.
struct RootInterval {
    bool exact = false;
    Rational root{0}; // valid when exact
    Rational lo{0}, hi{0};
    Rational midpoint() const { return exact ? root : (lo + hi) / 2; }
};

struct RootIntervals {
    std::vector<RootInterval> roots; // sorted ascending
    int count() const { return static_cast<int>(roots.size()); }
};

/// Isolates the distinct real roots of p (multiplicities collapsed).
inline RootIntervals isolate_real_roots(const RealUniPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("isolate_real_roots: zero polynomial");
    RootIntervals out;
    if (p.degree() == 0) return out;
    RealUniPoly q = square_free_part(p);
    SturmChain chain(q);
    Rational bound = root_bound(q);

    struct Seg {
        Rational lo, hi;
        int count;
    };
    std::vector<Seg> work;
    int total = chain.count(ExtendedRational::at(-bound), ExtendedRational::at(bound));
    if (total > 0) work.push_back({-bound, bound, total});
    while (!work.empty()) {
        Seg s = work.back();
        work.pop_back();
        if (s.count == 1) {
            if (q.eval(s.hi) == 0) {
                out.roots.push_back({true, s.hi, s.hi, s.hi});
                continue;
            }
            // Make sure the open endpoint is not a root of q itself (it could
            // be a neighbouring root left over from bisection), so that the
            // emitted interval has a strict sign change.
            bool emitted_exact = false;
            while (q.eval(s.lo) == 0) {
                Rational mid = (s.lo + s.hi) / 2;
                if (q.eval(mid) == 0) {
                    out.roots.push_back({true, mid, mid, mid});
                    emitted_exact = true;
                    break;
                }
                if (chain.count(ExtendedRational::at(s.lo), ExtendedRational::at(mid)) == 1)
                    s.hi = mid;
                else
                    s.lo = mid;
            }
            if (!emitted_exact) out.roots.push_back({false, Rational(0), s.lo, s.hi});
            continue;
        }
        Rational mid = (s.lo + s.hi) / 2;
        int left = chain.count(ExtendedRational::at(s.lo), ExtendedRational::at(mid));
        int right = s.count - left;
        if (right > 0) work.push_back({mid, s.hi, right});
        if (left > 0) work.push_back({s.lo, mid, left});
    }
    std::sort(out.roots.begin(), out.roots.end(),
              [](const RootInterval& a, const RootInterval& b) {
                  return (a.exact ? a.root : a.hi) < (b.exact ? b.root : b.hi);
              });
    return out;
}

inline bool nonnegative_on_reals(const RealUniPoly& p) {
    if (p.is_zero()) return true;
    if (p.degree() % 2 != 0) return false;
    if (p.leading() < 0) return false;
    if (p.degree() == 0) return true;
    auto parts = square_free_decomposition(p);
    for (std::size_t k = 0; k < parts.size(); k += 2) { // multiplicities 1, 3, 5, ...
        if (parts[k].degree() >= 1 && count_real_roots(parts[k]) > 0) return false;
    }
    return true;
}

/// Bisects an isolating interval for (the square-free part of) p until its
/// width is at most `width`. Detects exact rational roots hit by bisection.
inline void refine_root(const RealUniPoly& p_squarefree, RootInterval& r, const Rational& width) {
    if (r.exact) return;
    const RealUniPoly& q = p_squarefree;
    int slo = sign(q.eval(r.lo));
    while (r.hi - r.lo > width) {
        Rational mid = (r.lo + r.hi) / 2;
        int sm = sign(q.eval(mid));
        if (sm == 0) {
            r.exact = true;
            r.root = mid;
            r.lo = r.hi = mid;
            return;
        }
        if (sm == slo) r.lo = mid;
        else r.hi = mid;
    }
}

} // namespace improj

#endif
