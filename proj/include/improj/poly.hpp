// Sparse multivariate polynomials with exact Gaussian-rational coefficients:
// arithmetic, realification, homogenization, affine pull-back, polarization.
#ifndef IMPROJ_POLY_HPP
#define IMPROJ_POLY_HPP

#include <complex>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gaussian.hpp"
#include "univariate.hpp"

namespace improj {

using Exponents = std::vector<int>;

/// Graded lexicographic, largest term first: higher total degree wins, ties
/// broken by the earlier variable having the higher exponent.
struct GrlexDescending {
    bool operator()(const Exponents& a, const Exponents& b) const {
        int da = std::accumulate(a.begin(), a.end(), 0);
        int db = std::accumulate(b.begin(), b.end(), 0);
        if (da != db) return da > db;
        return a > b;
    }
};

class Poly {
  public:
    using TermMap = std::map<Exponents, GaussianRational, GrlexDescending>;

    Poly() : nvars_(0) {}
    explicit Poly(int nvars) : nvars_(nvars) {
        if (nvars < 0) throw std::invalid_argument("Poly: negative variable count");
    }

    static Poly constant(int nvars, GaussianRational c) {
        Poly p(nvars);
        p.add_term(Exponents(nvars, 0), std::move(c));
        return p;
    }
    static Poly variable(int nvars, int var, int power = 1) {
        Poly p(nvars);
        Exponents e(nvars, 0);
        e.at(var) = power;
        p.add_term(std::move(e), GaussianRational(1));
        return p;
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }

    int total_degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
        return d;
    }
    int degree_in(int var) const {
        int d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e.at(var));
        return d;
    }

    GaussianRational coeff(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? GaussianRational(0) : it->second;
    }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && total_degree() == 0); }
    GaussianRational constant_term() const { return coeff(Exponents(nvars_, 0)); }

    bool has_real_coefficients() const {
        for (const auto& [e, c] : terms_)
            if (c.im != 0) return false;
        return true;
    }
    bool is_multilinear() const {
        for (const auto& [e, c] : terms_)
            for (int v : e)
                if (v > 1) return false;
        return true;
    }
    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        int d = total_degree();
        for (const auto& [e, c] : terms_)
            if (std::accumulate(e.begin(), e.end(), 0) != d) return false;
        return true;
    }

    void add_term(Exponents e, GaussianRational c) {
        if (static_cast<int>(e.size()) != nvars_) throw std::invalid_argument("Poly: exponent arity mismatch");
        if (c.is_zero()) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(std::move(e), std::move(c));
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Poly operator-() const {
        Poly r(nvars_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }
    friend Poly operator+(const Poly& a, const Poly& b) {
        a.check_same(b);
        Poly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check_same(b);
        Poly r(a.nvars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e(a.nvars_);
                for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
                r.add_term(std::move(e), ca * cb);
            }
        return r;
    }
    friend Poly operator*(const Poly& a, const GaussianRational& s) {
        Poly r(a.nvars_);
        if (s.is_zero()) return r;
        for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, c * s);
        return r;
    }
    friend bool operator==(const Poly& a, const Poly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    Poly pow(unsigned k) const {
        Poly r = Poly::constant(nvars_, GaussianRational(1));
        Poly b = *this;
        while (k) {
            if (k & 1u) r = r * b;
            b = b * b;
            k >>= 1;
        }
        return r;
    }

    Poly derivative(int var) const {
        Poly r(nvars_);
        for (const auto& [e, c] : terms_) {
            if (e.at(var) == 0) continue;
            Exponents d = e;
            --d[var];
            r.add_term(std::move(d), c * GaussianRational(Rational(e[var])));
        }
        return r;
    }

    Poly conj() const {
        Poly r(nvars_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, c.conj());
        return r;
    }

    std::complex<double> eval(const std::vector<std::complex<double>>& z) const {
        if (static_cast<int>(z.size()) != nvars_) throw std::invalid_argument("eval: dimension mismatch");
        std::complex<double> acc = 0;
        for (const auto& [e, c] : terms_) {
            std::complex<double> t = c.to_complex();
            for (int i = 0; i < nvars_; ++i)
                for (int k = 0; k < e[i]; ++k) t *= z[i];
            acc += t;
        }
        return acc;
    }
    GaussianRational eval_exact(const std::vector<GaussianRational>& z) const {
        if (static_cast<int>(z.size()) != nvars_) throw std::invalid_argument("eval: dimension mismatch");
        GaussianRational acc(0);
        for (const auto& [e, c] : terms_) {
            GaussianRational t = c;
            for (int i = 0; i < nvars_; ++i)
                for (int k = 0; k < e[i]; ++k) t *= z[i];
            acc += t;
        }
        return acc;
    }

    /// Substitutes every variable by the given polynomial (all in a common
    /// target ring). Powers are cached per variable.
    Poly substitute(const std::vector<Poly>& images) const {
        if (static_cast<int>(images.size()) != nvars_) throw std::invalid_argument("substitute: arity");
        int target_vars = nvars_ == 0 ? 0 : images.front().nvars();
        for (const auto& g : images)
            if (g.nvars() != target_vars) throw std::invalid_argument("substitute: mixed arities");
        std::vector<std::vector<Poly>> powers(nvars_);
        for (int i = 0; i < nvars_; ++i) powers[i].push_back(Poly::constant(target_vars, GaussianRational(1)));
        auto power = [&](int var, int k) -> const Poly& {
            auto& ps = powers[var];
            while (static_cast<int>(ps.size()) <= k) ps.push_back(ps.back() * images[var]);
            return ps[k];
        };
        Poly acc(target_vars);
        for (const auto& [e, c] : terms_) {
            Poly t = Poly::constant(target_vars, c);
            for (int i = 0; i < nvars_; ++i)
                if (e[i] > 0) t = t * power(i, e[i]);
            acc = acc + t;
        }
        return acc;
    }

    /// Fixes the last `vals.size()` variables to exact values, returning a
    /// polynomial in the remaining leading variables.
    Poly specialize_suffix(const std::vector<GaussianRational>& vals) const {
        int keep = nvars_ - static_cast<int>(vals.size());
        if (keep < 0) throw std::invalid_argument("specialize_suffix: too many values");
        Poly r(keep);
        for (const auto& [e, c] : terms_) {
            GaussianRational t = c;
            for (std::size_t j = 0; j < vals.size(); ++j) {
                for (int k = 0; k < e[keep + static_cast<int>(j)]; ++k) t *= vals[j];
                if (t.is_zero()) break;
            }
            if (t.is_zero()) continue;
            Exponents ek(e.begin(), e.begin() + keep);
            r.add_term(std::move(ek), std::move(t));
        }
        return r;
    }

    /// Sum of the terms of maximal total degree.
    Poly leading_form() const {
        Poly r(nvars_);
        int d = total_degree();
        for (const auto& [e, c] : terms_)
            if (std::accumulate(e.begin(), e.end(), 0) == d) r.terms_.emplace(e, c);
        return r;
    }

  private:
    void check_same(const Poly& o) const {
        if (nvars_ != o.nvars_) throw std::invalid_argument("Poly: mixed variable counts");
    }
    int nvars_;
    TermMap terms_;
};

/// Realification f(x+iy) = re(x,y) + i im(x,y). Both parts are polynomials in
/// 2n variables: x1..xn at indices 0..n-1, y1..yn at indices n..2n-1, with
/// real coefficients.
struct RePair {
    Poly re;
    Poly im;
};

inline RePair realify(const Poly& f) {
    const int n = f.nvars();
    std::vector<Poly> images;
    images.reserve(n);
    for (int j = 0; j < n; ++j) {
        Poly zj = Poly::variable(2 * n, j);
        Poly yj = Poly::variable(2 * n, n + j);
        images.push_back(zj + yj * GaussianRational(Rational(0), Rational(1)));
    }
    Poly g = f.substitute(images);
    Poly re(2 * n), im(2 * n);
    for (const auto& [e, c] : g.terms()) {
        if (c.re != 0) re.add_term(e, GaussianRational(c.re));
        if (c.im != 0) im.add_term(e, GaussianRational(c.im));
    }
    return {std::move(re), std::move(im)};
}

/// Homogenization: result lives in n+1 variables with the homogenizing
/// variable first (index 0); f_h(1, z) = f(z) and f_h is homogeneous of
/// degree deg f.
inline Poly homogenize(const Poly& f) {
    if (f.is_zero()) throw std::invalid_argument("homogenize: zero polynomial");
    const int n = f.nvars();
    const int d = f.total_degree();
    Poly r(n + 1);
    for (const auto& [e, c] : f.terms()) {
        Exponents eh(n + 1);
        int deg = std::accumulate(e.begin(), e.end(), 0);
        eh[0] = d - deg;
        for (int i = 0; i < n; ++i) eh[i + 1] = e[i];
        r.add_term(std::move(eh), c);
    }
    return r;
}

/// Substitutes z0 = 1 into a polynomial whose first variable is the
/// homogenizing one, dropping that variable.
inline Poly dehomogenize(const Poly& fh) {
    const int n = fh.nvars() - 1;
    if (n < 0) throw std::invalid_argument("dehomogenize: no variables");
    Poly r(n);
    for (const auto& [e, c] : fh.terms()) {
        Exponents ek(e.begin() + 1, e.end());
        r.add_term(std::move(ek), c);
    }
    return r;
}

/// Rational affine map z |-> A z + a + i b.
struct AffineMap {
    std::vector<std::vector<Rational>> matrix; // n x n
    std::vector<Rational> real_shift;          // a
    std::vector<Rational> imag_shift;          // b

    static AffineMap identity(int n) {
        AffineMap m;
        m.matrix.assign(n, std::vector<Rational>(n, Rational(0)));
        for (int i = 0; i < n; ++i) m.matrix[i][i] = 1;
        m.real_shift.assign(n, Rational(0));
        m.imag_shift.assign(n, Rational(0));
        return m;
    }
    int dim() const { return static_cast<int>(matrix.size()); }

    std::vector<Rational> apply_linear(const std::vector<Rational>& v) const {
        const int n = dim();
        std::vector<Rational> r(n, Rational(0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) r[i] += matrix[i][j] * v[j];
        return r;
    }
};

/// Inverts a rational matrix by Gaussian elimination; throws on singularity.
inline std::vector<std::vector<Rational>> invert_matrix(std::vector<std::vector<Rational>> a) {
    const int n = static_cast<int>(a.size());
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i) inv[i][i] = 1;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (a[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) throw std::domain_error("invert_matrix: singular matrix");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Rational d = a[col][col];
        for (int j = 0; j < n; ++j) {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rational f = a[r][col];
            for (int j = 0; j < n; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

/// f(A z + a + i b). Requires an invertible matrix; consumers recover
/// I(result) = A^{-1} (I(f) - b).
inline Poly pullback(const Poly& f, const AffineMap& m) {
    const int n = f.nvars();
    if (m.dim() != n) throw std::invalid_argument("pullback: dimension mismatch");
    invert_matrix(m.matrix); // singularity check
    std::vector<Poly> images;
    images.reserve(n);
    for (int j = 0; j < n; ++j) {
        Poly img = Poly::constant(n, GaussianRational(m.real_shift[j], m.imag_shift[j]));
        for (int k = 0; k < n; ++k) {
            if (m.matrix[j][k] == 0) continue;
            img = img + Poly::variable(n, k) * GaussianRational(m.matrix[j][k]);
        }
        images.push_back(std::move(img));
    }
    return f.substitute(images);
}

/// Polarization P(f): multilinear in block variables z_{jk}, symmetric within
/// each block, and collapsing to f under z_{jk} = z_j. Variable j receives
/// max(deg_j f, 1) copies; blocks are laid out consecutively.
struct Polarization {
    Poly poly;
    std::vector<int> block_sizes;   // per original variable
    std::vector<int> block_offsets; // start index of each block
};

inline Polarization polarize(const Poly& f) {
    const int n = f.nvars();
    std::vector<int> sizes(n), offsets(n);
    int total = 0;
    for (int j = 0; j < n; ++j) {
        sizes[j] = std::max(f.degree_in(j), 1);
        offsets[j] = total;
        total += sizes[j];
    }
    // Elementary symmetric polynomials per block, e_0..e_{d_j}.
    std::vector<std::vector<Poly>> elem(n);
    for (int j = 0; j < n; ++j) {
        std::vector<Poly> e(sizes[j] + 1, Poly(total));
        e[0] = Poly::constant(total, GaussianRational(1));
        for (int k = 0; k < sizes[j]; ++k) {
            Poly v = Poly::variable(total, offsets[j] + k);
            for (int a = std::min(k + 1, sizes[j]); a >= 1; --a) e[a] = e[a] + e[a - 1] * v;
        }
        elem[j] = std::move(e);
    }
    auto binom = [](int d, int a) {
        Rational r(1);
        for (int i = 0; i < a; ++i) r *= Rational(d - i, i + 1);
        return r;
    };
    Poly out(total);
    for (const auto& [e, c] : f.terms()) {
        Poly t = Poly::constant(total, c);
        for (int j = 0; j < n; ++j) {
            int a = e[j];
            if (a == 0) continue;
            t = t * (elem[j][a] * GaussianRational(Rational(1) / binom(sizes[j], a)));
        }
        out = out + t;
    }
    return {std::move(out), std::move(sizes), std::move(offsets)};
}

} // namespace improj

#endif
