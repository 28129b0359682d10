// Membership oracle for imaginary projections: closed-form classifiers for
// affine-linear polynomials, bivariate bilinear polynomials and real
// quadrics, a determinant-condition path for z-linear splits in two
// variables, an exact elimination oracle for n <= 2, and a budgeted numeric
// fallback for higher dimension.
#ifndef IMPROJ_ORACLE_HPP
#define IMPROJ_ORACLE_HPP

#include <complex>
#include <cstdint>
#include <cstring>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "aberth.hpp"
#include "parse.hpp"
#include "poly.hpp"
#include "semialg.hpp"

namespace improj {

// ---------------------------------------------------------------------------
// verdicts

enum class Membership { In, Out, Uncertain };

struct MembershipVerdict {
    Membership state = Membership::Uncertain;
    std::string method;
    std::optional<std::vector<double>> witness; // real part x with f(x+iy) ~ 0
    double residual = 0.0;

    bool in() const { return state == Membership::In; }
    bool out() const { return state == Membership::Out; }
};

inline const char* to_string(Membership m) {
    switch (m) {
        case Membership::In: return "In";
        case Membership::Out: return "Out";
        default: return "Uncertain";
    }
}

// ---------------------------------------------------------------------------
// shape detection

struct SpecialShape {
    enum class Kind { AffineLinear, BivariateBilinear, SplitLinearForm, Generic } kind =
        Kind::Generic;

    // AffineLinear: f = a0 + sum a_j z_j
    GaussianRational a0;
    std::vector<GaussianRational> a;

    // BivariateBilinear: f = alpha z1 z2 + beta z1 + gamma z2 + delta (real)
    Rational alpha, beta, gamma, delta;

    // SplitLinearForm: f = g + z_split h
    Poly g, h;
    int split_var = -1;
};

inline SpecialShape detect_shape(const Poly& f) {
    if (f.is_zero()) throw std::invalid_argument("detect_shape: zero polynomial");
    const int n = f.nvars();
    SpecialShape s{};
    if (f.total_degree() == 1) {
        s.kind = SpecialShape::Kind::AffineLinear;
        s.a0 = f.constant_term();
        s.a.resize(n);
        for (int j = 0; j < n; ++j) {
            Exponents e(n, 0);
            e[j] = 1;
            s.a[j] = f.coeff(e);
        }
        return s;
    }
    if (n == 2 && f.is_multilinear() && f.has_real_coefficients()) {
        GaussianRational al = f.coeff({1, 1});
        if (!al.is_zero()) {
            s.kind = SpecialShape::Kind::BivariateBilinear;
            s.alpha = al.re;
            s.beta = f.coeff({1, 0}).re;
            s.gamma = f.coeff({0, 1}).re;
            s.delta = f.coeff({0, 0}).re;
            return s;
        }
    }
    for (int cand = n - 1; cand >= 0; --cand) {
        if (f.degree_in(cand) != 1) continue;
        s.kind = SpecialShape::Kind::SplitLinearForm;
        s.split_var = cand;
        Poly g(n), h(n);
        for (const auto& [e, c] : f.terms()) {
            Exponents ek = e;
            if (e[cand] == 1) {
                ek[cand] = 0;
                h.add_term(std::move(ek), c);
            } else {
                g.add_term(std::move(ek), c);
            }
        }
        s.g = std::move(g);
        s.h = std::move(h);
        return s;
    }
    s.kind = SpecialShape::Kind::Generic;
    return s;
}

// ---------------------------------------------------------------------------
// affine-linear classifier

inline MembershipVerdict member_linear(const SpecialShape& s, const std::vector<Rational>& y) {
    int jstar = -1;
    for (std::size_t j = 0; j < s.a.size(); ++j)
        if (!s.a[j].is_zero()) {
            jstar = static_cast<int>(j);
            break;
        }
    if (jstar < 0) throw std::invalid_argument("member_linear: all linear coefficients vanish");
    // rank of [Re a; Im a]
    bool rank2 = false;
    for (std::size_t j = 0; j < s.a.size() && !rank2; ++j)
        for (std::size_t k = j + 1; k < s.a.size() && !rank2; ++k)
            if (s.a[j].re * s.a[k].im - s.a[k].re * s.a[j].im != 0) rank2 = true;
    MembershipVerdict v;
    if (rank2) {
        v.state = Membership::In;
        v.method = "linear-full";
        return v;
    }
    // (a_1..a_n) = e^{i phi} * rho with rho real: the hyperplane condition
    // Im(a0 e^{-i phi}) + sum rho_j y_j = 0, scaled by rho_{j*}.
    GaussianRational ref = s.a[jstar].conj();
    Rational acc = (s.a0 * ref).im;
    for (std::size_t j = 0; j < s.a.size(); ++j) {
        GaussianRational w = s.a[j] * ref;
        acc += w.re * y[j];
    }
    v.state = acc == 0 ? Membership::In : Membership::Out;
    v.method = "linear-hyperplane";
    return v;
}

// ---------------------------------------------------------------------------
// quadric classification

struct QuadricForm {
    enum class Kind { Cone, Central, Paraboloid } kind;
    std::string family;        // (i)..(viii) for n = 2, (I)..(III) otherwise
    int p = 0;                 // positive inertia after sign normalization
    int r = 0;                 // rank of the quadratic part
    std::vector<Rational> diag; // r nonzero entries, first p positive
    Rational constant{0};      // central: > 0; otherwise 0
    Rational scale{1};         // f = scale * nf(map(z))
    AffineMap map;             // z |-> B z + t into normal coordinates

    /// The normal form polynomial (in n variables).
    Poly normal_form() const {
        const int n = map.dim();
        Poly nf(n);
        for (int k = 0; k < r; ++k) {
            Exponents e(n, 0);
            e[k] = 2;
            nf.add_term(std::move(e), GaussianRational(diag[k]));
        }
        if (kind == Kind::Paraboloid) {
            Exponents e(n, 0);
            e[r] = 1;
            nf.add_term(std::move(e), GaussianRational(1));
        } else if (constant != 0) {
            nf.add_term(Exponents(n, 0), GaussianRational(constant));
        }
        return nf;
    }
};

inline QuadricForm classify_quadric(const Poly& f) {
    const int n = f.nvars();
    if (!f.has_real_coefficients())
        throw std::invalid_argument("classify_quadric: non-real coefficients");
    if (f.total_degree() != 2) throw std::invalid_argument("classify_quadric: degree must be 2");

    // f = z^T Q z + l^T z + c0
    std::vector<std::vector<Rational>> Q(n, std::vector<Rational>(n, Rational(0)));
    std::vector<Rational> l(n, Rational(0));
    Rational c0 = f.constant_term().re;
    for (int j = 0; j < n; ++j) {
        Exponents e(n, 0);
        e[j] = 2;
        Q[j][j] = f.coeff(e).re;
        e[j] = 1;
        l[j] = f.coeff(e).re;
        for (int k = j + 1; k < n; ++k) {
            Exponents m(n, 0);
            m[j] = 1;
            m[k] = 1;
            Rational half = f.coeff(m).re / 2;
            Q[j][k] = half;
            Q[k][j] = half;
        }
    }

    // congruence diagonalization: P^T Q P = D, z = P w
    std::vector<std::vector<Rational>> M = Q;
    std::vector<std::vector<Rational>> P(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i) P[i][i] = 1;
    auto col_op = [&](int dst, int src, const Rational& fac) {
        // col_dst += fac * col_src (and same row op on M to stay symmetric)
        for (int i = 0; i < n; ++i) M[i][dst] += fac * M[i][src];
        for (int i = 0; i < n; ++i) M[dst][i] += fac * M[src][i];
        for (int i = 0; i < n; ++i) P[i][dst] += fac * P[i][src];
    };
    auto col_swap = [&](int a, int b) {
        for (int i = 0; i < n; ++i) std::swap(M[i][a], M[i][b]);
        for (int i = 0; i < n; ++i) std::swap(M[a][i], M[b][i]);
        for (int i = 0; i < n; ++i) std::swap(P[i][a], P[i][b]);
    };
    int rank = 0;
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (M[i][i] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) {
            int bi = -1, bj = -1;
            for (int i = k; i < n && bi < 0; ++i)
                for (int j = i + 1; j < n && bi < 0; ++j)
                    if (M[i][j] != 0) {
                        bi = i;
                        bj = j;
                    }
            if (bi < 0) break; // zero block
            col_op(bi, bj, Rational(1));
            piv = bi;
        }
        if (piv != k) col_swap(piv, k);
        for (int m2 = k + 1; m2 < n; ++m2) {
            if (M[k][m2] == 0) continue;
            col_op(m2, k, -M[k][m2] / M[k][k]);
        }
        ++rank;
    }
    std::vector<Rational> d(n, Rational(0));
    for (int i = 0; i < n; ++i) d[i] = M[i][i];
    const int r = rank;

    // linear part in w coordinates; complete squares on ranked coordinates
    std::vector<Rational> m(n, Rational(0));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) m[j] += P[i][j] * l[i];
    std::vector<Rational> shift(n, Rational(0)); // w = w' + shift
    Rational c1 = c0;
    for (int k = 0; k < r; ++k) {
        shift[k] = -m[k] / (2 * d[k]);
        c1 -= m[k] * m[k] / (4 * d[k]);
        m[k] = 0;
    }
    bool paraboloid = false;
    int k0 = -1;
    for (int k = r; k < n; ++k)
        if (m[k] != 0) {
            paraboloid = true;
            k0 = k;
            break;
        }

    // z = C u + s with accumulating C, s
    std::vector<std::vector<Rational>> C = P;
    std::vector<Rational> svec(n, Rational(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) svec[i] += P[i][j] * shift[j];

    auto apply_right = [&](const std::vector<std::vector<Rational>>& F,
                           const std::vector<Rational>& t) {
        // (C, s) <- (C F, C t + s)
        std::vector<std::vector<Rational>> CF(n, std::vector<Rational>(n, Rational(0)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) CF[i][j] += C[i][k] * F[k][j];
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) svec[i] += C[i][k] * t[k];
        C = std::move(CF);
    };
    auto identity = [&]() {
        std::vector<std::vector<Rational>> F(n, std::vector<Rational>(n, Rational(0)));
        for (int i = 0; i < n; ++i) F[i][i] = 1;
        return F;
    };

    QuadricForm out;
    out.scale = 1;

    if (paraboloid) {
        // u_{k0} = sum_{k>=r} m_k w'_k + c1  =>  w'_{k0} = (u_{k0} - c1 - ...)/m_{k0}
        auto F = identity();
        std::vector<Rational> t(n, Rational(0));
        F[k0][k0] = Rational(1) / m[k0];
        for (int k = r; k < n; ++k)
            if (k != k0) F[k0][k] = -m[k] / m[k0];
        t[k0] = -c1 / m[k0];
        apply_right(F, t);
        if (k0 != r) {
            auto G = identity();
            std::swap(G[k0], G[r]);
            apply_right(G, std::vector<Rational>(n, Rational(0)));
        }
        out.kind = QuadricForm::Kind::Paraboloid;
        out.constant = 0;
    } else if (c1 != 0) {
        out.kind = QuadricForm::Kind::Central;
        if (c1 < 0) {
            out.scale = -1;
            for (int k = 0; k < r; ++k) d[k] = -d[k];
            c1 = -c1;
        }
        out.constant = c1;
    } else {
        out.kind = QuadricForm::Kind::Cone;
        out.constant = 0;
    }

    int p = 0;
    for (int k = 0; k < r; ++k)
        if (d[k] > 0) ++p;
    if (out.kind != QuadricForm::Kind::Central && p < r - p) {
        // flip sign so that p >= r/2; for paraboloids also re-orient u_r
        out.scale = -out.scale;
        for (int k = 0; k < r; ++k) d[k] = -d[k];
        p = r - p;
        if (out.kind == QuadricForm::Kind::Paraboloid) {
            auto F = identity();
            F[r][r] = -1;
            apply_right(F, std::vector<Rational>(n, Rational(0)));
        }
    }
    // positives first
    {
        auto F = identity();
        std::vector<int> order;
        for (int k = 0; k < r; ++k)
            if (d[k] > 0) order.push_back(k);
        for (int k = 0; k < r; ++k)
            if (d[k] < 0) order.push_back(k);
        std::vector<std::vector<Rational>> G(n, std::vector<Rational>(n, Rational(0)));
        std::vector<Rational> dn(n, Rational(0));
        for (int k = 0; k < r; ++k) {
            G[order[k]][k] = 1;
            dn[k] = d[order[k]];
        }
        for (int k = r; k < n; ++k) G[k][k] = 1;
        for (int k = 0; k < r; ++k) d[k] = dn[k];
        apply_right(G, std::vector<Rational>(n, Rational(0)));
    }

    out.p = p;
    out.r = r;
    out.diag.assign(d.begin(), d.begin() + r);

    // map: u = B z + t with B = C^{-1}, t = -B s
    out.map.matrix = invert_matrix(C);
    out.map.real_shift.assign(n, Rational(0));
    out.map.imag_shift.assign(n, Rational(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.map.real_shift[i] -= out.map.matrix[i][j] * svec[j];

    // family tag
    auto tag = [&]() -> std::string {
        if (n >= 3) {
            switch (out.kind) {
                case QuadricForm::Kind::Cone: return "I";
                case QuadricForm::Kind::Central: return "II";
                case QuadricForm::Kind::Paraboloid: return "III";
            }
        }
        if (out.kind == QuadricForm::Kind::Paraboloid) return "iii";
        if (out.kind == QuadricForm::Kind::Cone) {
            if (r == 1) return "vi";
            return p == 2 ? "vii" : "v";
        }
        if (r == 1) return p == 1 ? "viii" : "vi";
        if (p == 0) return "i";
        if (p == 1) return "ii";
        return "iv";
    };
    out.family = tag();
    return out;
}

/// Exact membership of y in I(f) for a classified real quadric.
inline MembershipVerdict member_quadric(const QuadricForm& q, const std::vector<Rational>& y) {
    const int n = q.map.dim();
    std::vector<Rational> u = q.map.apply_linear(y); // imaginary parts: no shift
    MembershipVerdict v;
    v.method = "quadric(" + q.family + ")";
    auto set = [&](bool in) {
        v.state = in ? Membership::In : Membership::Out;
        return v;
    };
    // weighted squares: wpos = sum over positive entries, wneg over negative
    auto weighted = [&](int from, int to) {
        Rational acc(0);
        for (int k = from; k < to; ++k) acc += rat_abs(q.diag[k]) * u[k] * u[k];
        return acc;
    };
    const int p = q.p, r = q.r;
    const Rational c = q.constant;

    if (q.kind == QuadricForm::Kind::Paraboloid)
        return set(!(weighted(0, r) == 0 && u[r] != 0));

    if (q.kind == QuadricForm::Kind::Cone) {
        if (r == 1) return set(u[0] == 0);
        if (r == 2) {
            if (p == 2) return set(true); // isolated point: I = R^n
            return set(weighted(0, p) == weighted(p, r));
        }
        if (p == r - 1) return set(weighted(p, r) <= weighted(0, p));
        return set(true);
    }

    // central, constant c > 0
    if (r == 1) {
        if (p == 1) return set(q.diag[0] * u[0] * u[0] == c); // two lines y1 = +-s
        return set(u[0] == 0);                                // real parallel lines
    }
    if (r == 2) {
        if (p == 0) return set(true);
        if (p == 2) return set(weighted(0, 2) >= c);
        // p == 1: band -c <= (neg part) - (pos part) < 0, plus the origin slice
        Rational t = weighted(1, 2) - weighted(0, 1);
        return set((t >= -c && t < 0) || (u[0] == 0 && u[1] == 0));
    }
    // r >= 3
    if (p == 0 || (1 < p && p < r - 1)) return set(true);
    if (p == 1) return set(weighted(0, 1) - weighted(1, r) <= c);
    if (p == r - 1) return set(weighted(0, p) - weighted(p, r) >= -c);
    return set(weighted(0, r) >= c); // p == r
}

// ---------------------------------------------------------------------------
// bivariate bilinear classifier (hyperbola band)

inline MembershipVerdict member_bilinear(const SpecialShape& s, const std::vector<Rational>& y) {
    if (s.alpha == 0) throw std::invalid_argument("member_bilinear: alpha must be nonzero");
    Rational beta = s.beta / s.alpha, gamma = s.gamma / s.alpha, delta = s.delta / s.alpha;
    Rational D = delta - beta * gamma;
    MembershipVerdict v;
    v.method = "bilinear";
    bool in;
    if (D == 0) {
        in = (y[0] == 0 || y[1] == 0);
    } else {
        Rational ratio = y[0] * y[1] / D;
        in = (ratio > 0 && ratio <= 1) || (y[0] == 0 && y[1] == 0);
    }
    v.state = in ? Membership::In : Membership::Out;
    return v;
}

// ---------------------------------------------------------------------------
// determinant condition for f = g + z_{n+1} h

/// The 2x2 determinant det [[Re g - v Im h, Re h], [Im g + v Re h, Im h]] as
/// an exact polynomial in (x1..xn, y1..yn, v); linear in v by construction.
inline Poly det_condition_poly(const Poly& g_in, const Poly& h_in) {
    if (h_in.is_zero()) throw std::invalid_argument("det_condition_poly: h must be nonzero");
    const int n = h_in.nvars();
    if (g_in.nvars() != n) throw std::invalid_argument("det_condition_poly: arity mismatch");
    RePair rg = realify(g_in);
    RePair rh = realify(h_in);
    auto lift = [&](const Poly& q) {
        // embed 2n-variable polynomial into 2n+1 variables (v last)
        Poly r(2 * n + 1);
        for (const auto& [e, c] : q.terms()) {
            Exponents ek = e;
            ek.push_back(0);
            r.add_term(std::move(ek), c);
        }
        return r;
    };
    Poly vvar = Poly::variable(2 * n + 1, 2 * n);
    Poly Rg = lift(rg.re), Ig = lift(rg.im), Rh = lift(rh.re), Ih = lift(rh.im);
    return (Rg - vvar * Ih) * Ih - Rh * (Ig + vvar * Rh);
}

// ---------------------------------------------------------------------------
// oracle

struct OracleOptions {
    std::uint64_t seed = 0;
    int numeric_starts = 24;
    int numeric_iters = 220;
    double numeric_tol = 1e-10;
};

/// Caches shape analysis and realification for one polynomial (or an explicit
/// factor list) and answers membership queries.
class Oracle {
  public:
    explicit Oracle(Poly f, OracleOptions opt = {}) : f_(std::move(f)), opt_(opt) { analyze(); }

    Oracle(std::vector<Poly> factors, OracleOptions opt = {}) : opt_(opt) {
        if (factors.empty()) throw std::invalid_argument("Oracle: empty factor list");
        int n = 0;
        for (const auto& g : factors) n = std::max(n, g.nvars());
        Poly prod = Poly::constant(n, GaussianRational(1));
        for (auto& g : factors) {
            Poly ge = embed(g, n);
            if (ge.is_zero()) throw std::invalid_argument("Oracle: zero factor");
            factor_oracles_.push_back(std::make_unique<Oracle>(ge, opt));
            prod = prod * ge;
        }
        f_ = std::move(prod);
    }

    const Poly& poly() const { return f_; }
    int nvars() const { return f_.nvars(); }
    const std::optional<QuadricForm>& quadric() const { return quad_; }
    const SpecialShape& shape() const { return shape_; }
    const std::vector<std::unique_ptr<Oracle>>& factors() const { return factor_oracles_; }
    bool is_constant() const { return constant_nonzero_; }

    /// For an affine-linear polynomial: the hyperplane tau + sigma . y = 0
    /// describing I(f), or nullopt when I(f) = R^n (rank-2 coefficients).
    static std::optional<std::pair<std::vector<Rational>, Rational>> linear_hyperplane(
        const SpecialShape& s) {
        int jstar = -1;
        for (std::size_t j = 0; j < s.a.size(); ++j)
            if (!s.a[j].is_zero()) {
                jstar = static_cast<int>(j);
                break;
            }
        if (jstar < 0) throw std::invalid_argument("linear_hyperplane: no linear part");
        for (std::size_t j = 0; j < s.a.size(); ++j)
            for (std::size_t k = j + 1; k < s.a.size(); ++k)
                if (s.a[j].re * s.a[k].im - s.a[k].re * s.a[j].im != 0) return std::nullopt;
        GaussianRational ref = s.a[jstar].conj();
        std::vector<Rational> sigma;
        for (const auto& aj : s.a) sigma.push_back((aj * ref).re);
        return std::make_pair(std::move(sigma), (s.a0 * ref).im);
    }

    MembershipVerdict member(const std::vector<Rational>& y_in) const {
        std::vector<Rational> y = y_in;
        if (static_cast<int>(y.size()) < f_.nvars())
            throw std::invalid_argument("member: point dimension below variable count");

        if (!factor_oracles_.empty()) {
            bool uncertain = false;
            for (const auto& o : factor_oracles_) {
                MembershipVerdict v = o->member(y);
                if (v.in()) {
                    v.method = "factor:" + v.method;
                    return v;
                }
                if (v.state == Membership::Uncertain) uncertain = true;
            }
            MembershipVerdict v;
            v.state = uncertain ? Membership::Uncertain : Membership::Out;
            v.method = "factor-union";
            return v;
        }

        if (constant_nonzero_) {
            MembershipVerdict v;
            v.state = Membership::Out;
            v.method = "constant";
            return v;
        }
        // unused extra coordinates of y are free
        y.resize(f_.nvars());

        switch (shape_.kind) {
            case SpecialShape::Kind::AffineLinear: return member_linear(shape_, y);
            case SpecialShape::Kind::BivariateBilinear: return member_bilinear(shape_, y);
            default: break;
        }
        if (quad_) return member_quadric(*quad_, y);
        if (shape_.kind == SpecialShape::Kind::SplitLinearForm && f_.nvars() == 2)
            return member_split(y);
        if (f_.nvars() <= 2) return member_fiber_exact(y);
        return member_fiber_numeric(y);
    }

    MembershipVerdict member_fiber_exact(const std::vector<Rational>& y) const {
        const int n = f_.nvars();
        if (n > 2) throw std::invalid_argument("member_fiber_exact: n must be <= 2");
        std::vector<GaussianRational> vals(y.begin(), y.begin() + n);
        Poly re = re_.specialize_suffix(vals);
        Poly im = im_.specialize_suffix(vals);
        MembershipVerdict v;
        v.method = "fiber-exact";
        bool in;
        if (n == 1) {
            RealUniPoly pr = to_uni(re), pi = to_uni(im);
            if (pr.is_zero() && pi.is_zero()) in = true;
            else {
                RealUniPoly g = gcd(pr, pi);
                in = g.degree() >= 1 && count_real_roots(g) > 0;
            }
        } else {
            BivarPoly pr = BivarPoly::from_poly(re);
            BivarPoly pi = BivarPoly::from_poly(im);
            in = pair_has_common_real_zero(pr, pi);
        }
        v.state = in ? Membership::In : Membership::Out;
        return v;
    }

    MembershipVerdict member_fiber_numeric(const std::vector<Rational>& y) const {
        const int n = f_.nvars();
        std::vector<std::complex<double>> z(n);
        std::vector<double> yd(n);
        for (int j = 0; j < n; ++j) yd[j] = to_double(y[j]);

        auto value = [&](const std::vector<double>& x) {
            for (int j = 0; j < n; ++j) z[j] = {x[j], yd[j]};
            return f_.eval(z);
        };
        auto scale_at = [&](const std::vector<double>& x) {
            double s = 0;
            for (const auto& [e, c] : f_.terms()) {
                double t = std::abs(c.to_complex());
                for (int j = 0; j < n; ++j) {
                    double m = std::max(1.0, std::hypot(x[j], yd[j]));
                    for (int k = 0; k < e[j]; ++k) t *= m;
                }
                s += t;
            }
            return std::max(s, 1e-300);
        };

        // deterministic seed from (f, y)
        std::uint64_t st = opt_.seed ^ 0x51ed27f1a44aa0c3ull;
        st ^= std::hash<std::string>{}(format_poly(f_)) * 0x9e3779b97f4a7c15ull;
        for (double v : yd) {
            std::uint64_t bits;
            static_assert(sizeof(bits) == sizeof(v));
            std::memcpy(&bits, &v, sizeof(bits));
            st ^= bits + 0x9e3779b97f4a7c15ull + (st << 6) + (st >> 2);
        }

        std::vector<Poly> grads;
        for (int j = 0; j < n; ++j) grads.push_back(f_.derivative(j));

        MembershipVerdict best;
        best.method = "fiber-numeric";
        best.state = Membership::Uncertain;
        double yscale = 1.0;
        for (double v : yd) yscale = std::max(yscale, std::abs(v));

        for (int start = 0; start < opt_.numeric_starts; ++start) {
            std::vector<double> x(n);
            if (start > 0)
                for (int j = 0; j < n; ++j) {
                    double u = static_cast<double>(detail::splitmix64(st) >> 11) * 0x1p-53;
                    x[j] = (2 * u - 1) * 4.0 * yscale;
                }
            double step = 0.5;
            std::complex<double> fv = value(x);
            double F = std::norm(fv);
            for (int it = 0; it < opt_.numeric_iters; ++it) {
                // gradient of |f|^2 in x
                std::vector<double> gvec(n);
                double gn = 0;
                for (int j = 0; j < n; ++j) {
                    std::complex<double> dj = grads[j].eval(z); // z set by value(x)
                    gvec[j] = 2 * (fv * std::conj(dj)).real();
                    gn += gvec[j] * gvec[j];
                }
                if (gn < 1e-300) break;
                bool moved = false;
                for (int ls = 0; ls < 30; ++ls) {
                    std::vector<double> xn(n);
                    for (int j = 0; j < n; ++j) xn[j] = x[j] - step * gvec[j];
                    std::complex<double> fn = value(xn);
                    double Fn = std::norm(fn);
                    if (Fn < F) {
                        x = std::move(xn);
                        fv = fn;
                        F = Fn;
                        step *= 1.6;
                        moved = true;
                        break;
                    }
                    step *= 0.5;
                }
                if (!moved) break;
                double sc = scale_at(x);
                if (std::sqrt(F) <= opt_.numeric_tol * sc) break;
            }
            value(x); // restore z for the residual report
            double sc = scale_at(x);
            double res = std::abs(value(x));
            if (res <= opt_.numeric_tol * sc) {
                best.state = Membership::In;
                best.witness = x;
                best.residual = res;
                return best;
            }
        }
        return best;
    }

    /// Exact membership through the determinant condition for two-variable
    /// splits f = g + z_s h with univariate g, h.
    MembershipVerdict member_split(const std::vector<Rational>& y) const {
        const int sv = shape_.split_var;
        const int ov = 1 - sv;
        MembershipVerdict out;
        out.method = "split-det";
        const Rational w = y[ov];
        const Rational v = y[sv];

        // specialize the cached realified split parts at y_ov = w
        auto specialize = [&](const Poly& q) {
            // q lives in (x_ov, y_ov) variables as produced by project_split
            return to_uni(q.specialize_suffix({GaussianRational(w)}));
        };
        RealUniPoly Gre = specialize(split_g_re_), Gim = specialize(split_g_im_);
        RealUniPoly Hre = specialize(split_h_re_), Him = specialize(split_h_im_);

        // det(x) = (Gre - v Him) Him - Hre (Gim + v Hre)
        RealUniPoly det = (Gre - Him * v) * Him - Hre * (Gim + Hre * v);
        RealUniPoly D = gcd(Hre, Him); // degenerate locus h(x + i w) = 0
        RealUniPoly E = (Gre.is_zero() && Gim.is_zero()) ? D : gcd(Gre, Gim);

        bool in = false;
        if (det.is_zero()) {
            in = true; // guard fails at only finitely many x
        } else {
            RealUniPoly r1 = det;
            if (D.degree() >= 1) {
                while (true) {
                    RealUniPoly g = gcd(r1, D);
                    if (g.degree() < 1) break;
                    r1 = r1 / g;
                }
            }
            if (r1.degree() >= 1 && count_real_roots(r1) > 0) in = true;
            if (!in && D.degree() >= 1) {
                RealUniPoly F = gcd(D, E);
                if (F.degree() >= 1 && count_real_roots(F) > 0) in = true;
            }
        }
        out.state = in ? Membership::In : Membership::Out;
        return out;
    }

  private:
    static Poly embed(const Poly& g, int n) {
        if (g.nvars() == n) return g;
        Poly r(n);
        for (const auto& [e, c] : g.terms()) {
            Exponents ek = e;
            ek.resize(n, 0);
            r.add_term(std::move(ek), c);
        }
        return r;
    }

    static RealUniPoly to_uni(const Poly& p) {
        if (p.nvars() > 1) throw std::logic_error("to_uni: more than one variable");
        std::vector<Rational> c;
        for (const auto& [e, coef] : p.terms()) {
            if (coef.im != 0) throw std::logic_error("to_uni: complex coefficient");
            int k = p.nvars() == 0 ? 0 : e[0];
            if (static_cast<int>(c.size()) <= k) c.resize(k + 1, Rational(0));
            c[k] += coef.re;
        }
        return RealUniPoly(std::move(c));
    }

    void analyze() {
        if (f_.is_zero()) throw std::invalid_argument("Oracle: zero polynomial");
        if (f_.is_constant()) {
            constant_nonzero_ = true;
            return;
        }
        shape_ = detect_shape(f_);
        if (shape_.kind != SpecialShape::Kind::AffineLinear &&
            shape_.kind != SpecialShape::Kind::BivariateBilinear &&
            f_.has_real_coefficients() && f_.total_degree() == 2) {
            quad_ = classify_quadric(f_);
        }
        if (f_.nvars() <= 2) {
            RePair rp = realify(f_);
            re_ = std::move(rp.re);
            im_ = std::move(rp.im);
        }
        if (shape_.kind == SpecialShape::Kind::SplitLinearForm && f_.nvars() == 2) {
            // g, h in the non-split variable only; realify as univariate and
            // keep (x_ov, y_ov) pairs for later specialization.
            const int sv = shape_.split_var;
            const int ov = 1 - sv;
            auto project = [&](const Poly& q) {
                Poly r(1);
                for (const auto& [e, c] : q.terms()) {
                    if (e[sv] != 0) throw std::logic_error("split part depends on split variable");
                    r.add_term({e[ov]}, c);
                }
                return r;
            };
            RePair rg = realify(project(shape_.g));
            RePair rh = realify(project(shape_.h));
            split_g_re_ = rg.re;
            split_g_im_ = rg.im;
            split_h_re_ = rh.re;
            split_h_im_ = rh.im;
        }
    }

    Poly f_;
    OracleOptions opt_;
    std::vector<std::unique_ptr<Oracle>> factor_oracles_;
    SpecialShape shape_{};
    std::optional<QuadricForm> quad_;
    bool constant_nonzero_ = false;
    Poly re_, im_;
    Poly split_g_re_, split_g_im_, split_h_re_, split_h_im_;
};

/// One-shot convenience wrapper.
inline MembershipVerdict member(const Poly& f, const std::vector<Rational>& y,
                                OracleOptions opt = {}) {
    return Oracle(f, opt).member(y);
}

} // namespace improj

#endif
