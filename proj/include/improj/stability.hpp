// Stability certification: Hermite-Biehler for univariate polynomials, the
// Delta_jk criterion for real multilinear polynomials (with polarization),
// hyperbolicity trials for homogeneous polynomials, and orthant-emptiness of
// the imaginary projection.
//
// Sign convention: with W[f,g] = f'g - fg', a univariate f is stable exactly
// when Re f and Im f are real-rooted, their zeros interlace, and
// W[Im f, Re f] <= 0 on R. The sign is calibrated against the direct root
// oracle (see the agreement test); the opposite convention appears in parts
// of the literature.
#ifndef IMPROJ_STABILITY_HPP
#define IMPROJ_STABILITY_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "realroots.hpp"

namespace improj {

enum class Stability { Stable, NotStable, Unknown };

inline const char* to_string(Stability s) {
    switch (s) {
        case Stability::Stable: return "Stable";
        case Stability::NotStable: return "NotStable";
        default: return "Unknown";
    }
}

struct StabilityVerdict {
    Stability state = Stability::Unknown;
    std::string method;
    std::optional<std::vector<std::complex<double>>> witness; // root in the open upper orthant
    std::optional<std::vector<Rational>> projection_witness;  // y in I(f) with y > 0
    int trials = 0;
};

namespace stability_detail {

inline void split_parts(const Poly& f, RealUniPoly& re, RealUniPoly& im) {
    if (f.nvars() > 1) throw std::invalid_argument("univariate polynomial expected");
    std::vector<Rational> cr, ci;
    for (const auto& [e, c] : f.terms()) {
        int k = f.nvars() == 0 ? 0 : e[0];
        if (static_cast<int>(cr.size()) <= k) {
            cr.resize(k + 1, Rational(0));
            ci.resize(k + 1, Rational(0));
        }
        cr[k] = c.re;
        ci[k] = c.im;
    }
    re = RealUniPoly(std::move(cr));
    im = RealUniPoly(std::move(ci));
}

} // namespace stability_detail

/// Hermite-Biehler test; exact, never Unknown.
inline StabilityVerdict hermite_biehler(const Poly& f) {
    if (f.total_degree() < 1) throw std::invalid_argument("hermite_biehler: degree must be >= 1");
    RealUniPoly re, im;
    stability_detail::split_parts(f, re, im);
    StabilityVerdict v;
    v.method = "hermite-biehler";
    auto stable = [&](bool s) {
        v.state = s ? Stability::Stable : Stability::NotStable;
        return v;
    };
    // A vanishing part: f is a complex multiple of a real polynomial, which
    // is stable exactly when it is real-rooted.
    if (im.is_zero()) return stable(is_real_rooted(re));
    if (re.is_zero()) return stable(is_real_rooted(im));
    if (!is_real_rooted(re) || !is_real_rooted(im)) return stable(false);
    if (interlace(im, re) != InterlaceResult::Interlaced) return stable(false);
    return stable(nonnegative_on_reals(-wronskian(im, re)));
}

/// Root-location oracle: floating point with a symmetric margin around the
/// real axis; Unknown when any root is too close to call.
inline StabilityVerdict direct_root_stability(const Poly& f, double margin = 1e-8,
                                              std::uint64_t seed = 0) {
    if (f.total_degree() < 1)
        throw std::invalid_argument("direct_root_stability: degree must be >= 1");
    if (f.nvars() > 1) throw std::invalid_argument("direct_root_stability: univariate only");
    std::vector<std::complex<double>> c(f.total_degree() + 1, {0.0, 0.0});
    for (const auto& [e, coef] : f.terms()) c[e.empty() ? 0 : e[0]] = coef.to_complex();
    StabilityVerdict v;
    v.method = "direct-roots";
    RootFindResult roots;
    try {
        roots = complex_roots(c, 1e-12, seed);
    } catch (const RootFindError&) {
        v.state = Stability::Unknown;
        return v;
    }
    bool unknown = false;
    for (auto z : roots.roots) {
        double m = margin * std::max(1.0, std::abs(z));
        if (z.imag() > m) {
            v.state = Stability::NotStable;
            v.witness = std::vector<std::complex<double>>{z};
            return v;
        }
        if (z.imag() > -m) unknown = true;
    }
    v.state = unknown ? Stability::Unknown : Stability::Stable;
    return v;
}

// ---------------------------------------------------------------------------
// Braenden's multilinear criterion

struct DeltaReport {
    int j = 0, k = 0;
    Poly delta;
    enum class Nonnegativity { ProvedConstant, SamplingNoCounterexample, Counterexample } status;
    bool constant_nonnegative = false;
    long samples = 0;
    std::vector<Rational> counterexample;
};

inline DeltaReport braenden_delta(const Poly& f, int j, int k, long samples = 100000,
                                  int box_radius = 10, std::uint64_t seed = 0) {
    if (!f.is_multilinear()) throw std::invalid_argument("braenden_delta: multilinear input required");
    if (!f.has_real_coefficients())
        throw std::invalid_argument("braenden_delta: real coefficients required");
    DeltaReport rep;
    rep.j = j;
    rep.k = k;
    rep.delta = f.derivative(j) * f.derivative(k) - f.derivative(j).derivative(k) * f;
    if (rep.delta.is_constant()) {
        rep.status = DeltaReport::Nonnegativity::ProvedConstant;
        rep.constant_nonnegative = rep.delta.constant_term().re >= 0;
        return rep;
    }
    const int n = f.nvars();
    std::uint64_t st = seed ^ (0xabcd1234u + 77771u * static_cast<std::uint64_t>(j * 64 + k));
    std::vector<GaussianRational> x(n);
    for (long s = 0; s < samples; ++s) {
        for (int v = 0; v < n; ++v) {
            std::uint64_t u = detail::splitmix64(st);
            long num = static_cast<long>(u % (2ull * box_radius * 16 + 1)) - box_radius * 16;
            x[v] = GaussianRational(Rational(num, 16));
        }
        if (rep.delta.eval_exact(x).re < 0) {
            rep.status = DeltaReport::Nonnegativity::Counterexample;
            rep.samples = s + 1;
            for (auto& g : x) rep.counterexample.push_back(g.re);
            return rep;
        }
    }
    rep.status = DeltaReport::Nonnegativity::SamplingNoCounterexample;
    rep.samples = samples;
    return rep;
}

/// Stability of a real polynomial through the multilinear criterion,
/// polarizing first when the input is not multilinear.
inline StabilityVerdict multilinear_stability(const Poly& f_in, long samples = 100000,
                                              std::uint64_t seed = 0) {
    if (!f_in.has_real_coefficients())
        throw std::invalid_argument("multilinear_stability: real coefficients required");
    Poly f = f_in;
    bool polarized = false;
    if (!f.is_multilinear()) {
        f = polarize(f_in).poly;
        polarized = true;
    }
    StabilityVerdict v;
    v.method = polarized ? "braenden-delta(polarized)" : "braenden-delta";
    bool all_proved = true;
    const int n = f.nvars();
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
            DeltaReport rep = braenden_delta(f, j, k, samples, 10, seed);
            if (rep.status == DeltaReport::Nonnegativity::Counterexample ||
                (rep.status == DeltaReport::Nonnegativity::ProvedConstant &&
                 !rep.constant_nonnegative)) {
                v.state = Stability::NotStable;
                v.method += " Delta_{" + std::to_string(j + 1) + "," + std::to_string(k + 1) + "}<0";
                return v;
            }
            if (rep.status != DeltaReport::Nonnegativity::ProvedConstant) all_proved = false;
        }
    v.state = all_proved ? Stability::Stable : Stability::Unknown;
    return v;
}

// ---------------------------------------------------------------------------
// hyperbolicity

struct HyperbolicityVerdict {
    enum class State { Hyperbolic, NotHyperbolic, Unknown } state;
    std::optional<std::vector<Rational>> witness; // x with non-real-rooted restriction
    int trials = 0;
    std::uint64_t seed = 0;
};

/// Trials-based test of real-rootedness of t |-> f(x + t e) at random
/// rational x. A failed trial is an exact refutation; all-pass is reported as
/// Hyperbolic with the trial count.
inline HyperbolicityVerdict hyperbolicity(const Poly& f, const std::vector<Rational>& e,
                                          int trials = 64, std::uint64_t seed = 0,
                                          int box_radius = 8) {
    if (!f.is_homogeneous() || !f.has_real_coefficients() || f.is_zero())
        throw std::invalid_argument("hyperbolicity: nonzero homogeneous real input required");
    const int n = f.nvars();
    if (static_cast<int>(e.size()) != n) throw std::invalid_argument("hyperbolicity: direction arity");
    HyperbolicityVerdict hv;
    hv.trials = trials;
    hv.seed = seed;
    std::vector<GaussianRational> ev(e.begin(), e.end());
    if (f.eval_exact(ev).is_zero()) {
        hv.state = HyperbolicityVerdict::State::NotHyperbolic;
        return hv;
    }
    auto restriction = [&](const std::vector<Rational>& x) {
        // f(x + t e) as a univariate polynomial in t
        std::vector<Poly> images;
        for (int j = 0; j < n; ++j) {
            Poly img = Poly::constant(1, GaussianRational(x[j]));
            img = img + Poly::variable(1, 0) * GaussianRational(e[j]);
            images.push_back(std::move(img));
        }
        Poly g = f.substitute(images);
        RealUniPoly re, im;
        stability_detail::split_parts(g, re, im);
        return re;
    };
    std::uint64_t st = seed ^ 0x5deece66dull;
    for (int t = 0; t < trials; ++t) {
        std::vector<Rational> x(n);
        for (int j = 0; j < n; ++j) {
            std::uint64_t u = detail::splitmix64(st);
            x[j] = Rational(static_cast<long>(u % (2ull * box_radius * 8 + 1)) - box_radius * 8, 8);
        }
        if (!is_real_rooted(restriction(x))) {
            hv.state = HyperbolicityVerdict::State::NotHyperbolic;
            hv.witness = std::move(x);
            hv.trials = t + 1;
            return hv;
        }
    }
    hv.state = HyperbolicityVerdict::State::Hyperbolic;
    return hv;
}

// ---------------------------------------------------------------------------
// stability via orthant emptiness of the imaginary projection

/// Decides I(f) ∩ R_{>0}^n = ∅ symbolically for the closed-form classes; for
/// generic inputs, samples the box (0, R]^n with the membership oracle and
/// can only refute (any In sample) or report Unknown with its coverage.
inline StabilityVerdict stable_via_projection(const Poly& f, long budget = 400,
                                              const Rational& box = Rational(10)) {
    Oracle oracle(f);
    const int n = f.nvars();
    StabilityVerdict v;
    auto stable = [&](bool s, const std::string& m) {
        v.state = s ? Stability::Stable : Stability::NotStable;
        v.method = m;
        return v;
    };

    const SpecialShape& sh = oracle.shape();
    if (f.is_constant()) return stable(true, "projection-constant");

    if (sh.kind == SpecialShape::Kind::AffineLinear) {
        // hyperplane tau + sum sigma_j y_j = 0 (or all of R^n)
        int jstar = -1;
        for (std::size_t j = 0; j < sh.a.size(); ++j)
            if (!sh.a[j].is_zero()) {
                jstar = static_cast<int>(j);
                break;
            }
        bool rank2 = false;
        for (std::size_t j = 0; j < sh.a.size() && !rank2; ++j)
            for (std::size_t k = j + 1; k < sh.a.size() && !rank2; ++k)
                if (sh.a[j].re * sh.a[k].im - sh.a[k].re * sh.a[j].im != 0) rank2 = true;
        if (rank2) return stable(false, "projection-linear");
        GaussianRational ref = sh.a[jstar].conj();
        Rational tau = (sh.a0 * ref).im;
        bool pos = false, neg = false;
        for (const auto& aj : sh.a) {
            Rational s = (aj * ref).re;
            pos = pos || s > 0;
            neg = neg || s < 0;
        }
        bool hits = (pos && neg) || (pos && tau < 0) || (neg && tau > 0);
        return stable(!hits, "projection-linear");
    }

    if (sh.kind == SpecialShape::Kind::BivariateBilinear) {
        Rational D = sh.delta / sh.alpha - (sh.beta / sh.alpha) * (sh.gamma / sh.alpha);
        return stable(D <= 0, "projection-bilinear");
    }

    if (oracle.quadric()) {
        const QuadricForm& q = *oracle.quadric();
        const auto& B = q.map.matrix;
        auto row_signs = [&](int i) {
            bool pos = false, neg = false;
            for (int j = 0; j < n; ++j) {
                if (B[i][j] > 0) pos = true;
                if (B[i][j] < 0) neg = true;
            }
            return std::make_pair(pos, neg);
        };
        const std::string m = "projection-quadric(" + q.family + ")";
        if (q.kind == QuadricForm::Kind::Paraboloid)
            return stable(false, m); // complement has empty interior
        if (q.kind == QuadricForm::Kind::Cone) {
            if (q.r == 1) {
                auto [pos, neg] = row_signs(0);
                return stable(!(pos && neg), m);
            }
            if (q.r == 2 && q.p == 2) return stable(false, m); // I = R^n
            if (q.r == 2 && q.p == 1 && n == 2) {
                // two lines w1 u1^2 = w2 u2^2; restrict to y = (1, t), t > 0
                Rational w1 = rat_abs(q.diag[0]), w2 = rat_abs(q.diag[1]);
                auto val = [&](const Rational& y1, const Rational& y2) {
                    Rational u1 = B[0][0] * y1 + B[0][1] * y2;
                    Rational u2 = B[1][0] * y1 + B[1][1] * y2;
                    return w1 * u1 * u1 - w2 * u2 * u2;
                };
                // g(1, t) as a quadratic in t
                Rational a0 = val(1, 0);
                Rational a2 = val(0, 1);
                Rational a1 = (val(1, 1) - a0 - a2) / 2;
                RealUniPoly psi(std::vector<Rational>{a0, 2 * a1, a2});
                if (psi.is_zero()) return stable(false, m);
                bool hit = count_real_roots(psi, ExtendedRational::at(Rational(0)),
                                            ExtendedRational::pos_inf()) > 0;
                return stable(!hit, m);
            }
        }
        if (q.kind == QuadricForm::Kind::Central) {
            if (q.p == 0 || (q.r >= 3 && 1 < q.p && q.p < q.r - 1)) return stable(false, m);
            if (q.r == 2 && q.p == 0) return stable(false, m);
            if (q.p == q.r) {
                // region sum w_j u_j^2 >= c: pick an orthant ray missing the
                // kernel of the positive form; scaling reaches the region.
                for (int cand = 1; cand <= n + 1; ++cand) {
                    std::vector<Rational> y(n);
                    Rational t(cand);
                    Rational pw(1);
                    for (int j = 0; j < n; ++j) {
                        y[j] = pw;
                        pw *= t;
                    }
                    Rational qv(0);
                    std::vector<Rational> u = q.map.apply_linear(y);
                    for (int k = 0; k < q.r; ++k) qv += rat_abs(q.diag[k]) * u[k] * u[k];
                    if (qv > 0) {
                        v.projection_witness = y; // scale later if one wants c reached
                        return stable(false, m);
                    }
                }
                return stable(false, m); // unreachable: the form is nonzero
            }
            if (q.r == 1 && q.p == 1) return stable(false, m); // two parallel lines
            if (q.r == 1 && q.p == 0) {
                auto [pos, neg] = row_signs(0);
                return stable(!(pos && neg), m);
            }
            if (q.r == 2 && q.p == 1 && n == 2) {
                // band membership needs h(y) = w2 u2^2 - w1 u1^2 < 0 somewhere
                // in the open quadrant
                Rational w1 = rat_abs(q.diag[0]), w2 = rat_abs(q.diag[1]);
                Rational S11(0), S12(0), S22(0);
                // S of h: h(y) = y^T S y with S = B^T diag(-w1, w2) B
                S11 = -w1 * B[0][0] * B[0][0] + w2 * B[1][0] * B[1][0];
                S22 = -w1 * B[0][1] * B[0][1] + w2 * B[1][1] * B[1][1];
                S12 = -w1 * B[0][0] * B[0][1] + w2 * B[1][0] * B[1][1];
                bool hit = S11 < 0 || S22 < 0 || S12 < 0;
                return stable(!hit, m);
            }
        }
        // remaining higher-dimensional shells: fall through to sampling
    }

    // sampling refutation over (0, box]^n
    long per_axis = std::max(2L, static_cast<long>(std::floor(std::pow(
                                     static_cast<double>(budget), 1.0 / std::max(1, n)))));
    std::vector<long> idx(n, 1);
    v.method = "projection-sample(" + std::to_string(per_axis) + "^" + std::to_string(n) + ")";
    while (true) {
        std::vector<Rational> y(n);
        for (int j = 0; j < n; ++j) y[j] = box * Rational(idx[j], per_axis);
        MembershipVerdict mv = oracle.member(y);
        if (mv.in()) {
            v.state = Stability::NotStable;
            v.projection_witness = y;
            return v;
        }
        int j = 0;
        for (; j < n; ++j) {
            if (++idx[j] <= per_axis) break;
            idx[j] = 1;
        }
        if (j == n) break;
    }
    v.state = Stability::Unknown;
    return v;
}

} // namespace improj

#endif
