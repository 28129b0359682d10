// Limit directions of imaginary projections: zeros at infinity of the
// homogenization, the induced direction sets for bivariate polynomials,
// plane sections spanned by projective zeros, and an empirical angular sweep
// that validates the symbolic answers through the membership oracle.
#ifndef IMPROJ_ASYMPTOTICS_HPP
#define IMPROJ_ASYMPTOTICS_HPP

#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "oracle.hpp"
#include "realroots.hpp"

namespace improj {

struct LimitSet {
    enum class Kind { FiniteDirections, FullSphere, PlaneSections, CoordinateHyperplanes } kind;
    /// FiniteDirections: closed under negation for real input.
    std::vector<std::array<double, 2>> directions;
    /// PlaneSections: spanning pairs (Re p, Im p); only a certified subset of
    /// the limit set in general.
    std::vector<std::pair<std::vector<Rational>, std::vector<Rational>>> planes;
    bool certified_subset = false;
    int nvars = 0; // CoordinateHyperplanes

    /// Number of open sectors cut out by the coordinate hyperplanes.
    long unbounded_complement_sectors() const {
        if (kind != Kind::CoordinateHyperplanes) return 0;
        return 1L << nvars;
    }
};

struct ZerosAtInfinity {
    /// Slopes a_j of projective zeros (0:1:a_j); exact when rational.
    struct Slope {
        bool is_real = false;
        bool exact = false;
        Rational exact_value{0};
        std::complex<double> approx;
    };
    std::vector<Slope> slopes;
    bool vertical = false;  // projective zero (0:0:1)
    bool all_real = false;  // decided exactly
};

/// Projective zeros of the leading form of a bivariate polynomial, i.e. the
/// zeros at infinity of its homogenization. The realness of the full slope
/// set is decided exactly; slope values carry exact rationals when available.
inline ZerosAtInfinity zeros_at_infinity_bivariate(const Poly& f) {
    if (f.nvars() != 2) throw std::invalid_argument("zeros_at_infinity: two variables required");
    const int d = f.total_degree();
    if (d < 1) throw std::invalid_argument("zeros_at_infinity: constant polynomial");
    Poly lead = f.leading_form();

    // p(t) = lead(1, t): complex-coefficient univariate in the slope t
    std::vector<GaussianRational> c(d + 1, GaussianRational(0));
    for (const auto& [e, coef] : lead.terms()) c[e[1]] += coef;
    int deg = d;
    while (deg > 0 && c[deg].is_zero()) --deg;

    ZerosAtInfinity out;
    out.vertical = deg < d; // leading form vanishes at (0:0:1)

    if (deg == 0) {
        // lead = c * z1^d: only zero at infinity is (0:0:1)
        out.all_real = true;
        return out;
    }

    // all slopes real <=> p is a complex multiple of a real-rooted real poly
    GaussianRational lc = c[deg];
    bool ratios_real = true;
    for (int k = 0; k < deg && ratios_real; ++k) {
        GaussianRational ratio = c[k] * lc.conj(); // real iff c_k/lc real
        if (ratio.im != 0) ratios_real = false;
    }
    if (ratios_real) {
        std::vector<Rational> rc(deg + 1);
        for (int k = 0; k <= deg; ++k) rc[k] = (c[k] * lc.conj()).re;
        RealUniPoly rp(std::move(rc));
        RealUniPoly sf = square_free_part(rp);
        if (count_real_roots(sf) == sf.degree()) {
            out.all_real = true;
            RootIntervals iso = isolate_real_roots(rp);
            for (auto& iv : iso.roots) {
                refine_root(sf, iv, Rational(1, Integer(1) << 48));
                ZerosAtInfinity::Slope s;
                s.is_real = true;
                s.exact = iv.exact;
                if (iv.exact) s.exact_value = iv.root;
                s.approx = {to_double(iv.midpoint()), 0.0};
                out.slopes.push_back(std::move(s));
            }
            return out;
        }
    }
    out.all_real = false;
    // numeric values for reporting only; the dichotomy above is exact
    std::vector<std::complex<double>> cd(deg + 1);
    for (int k = 0; k <= deg; ++k) cd[k] = c[k].to_complex();
    try {
        RootFindResult rr = complex_roots(cd, 1e-12);
        for (auto z : rr.roots) {
            ZerosAtInfinity::Slope s;
            s.is_real = std::abs(z.imag()) < 1e-9;
            s.approx = z;
            out.slopes.push_back(std::move(s));
        }
    } catch (const RootFindError&) {
        // slope values unavailable; the FullSphere decision stands
    }
    return out;
}

/// I_infinity for a bivariate polynomial: finitely many directions when all
/// slopes are real, the full circle otherwise.
inline LimitSet limit_set_bivariate(const Poly& f) {
    ZerosAtInfinity z = zeros_at_infinity_bivariate(f);
    LimitSet ls;
    ls.nvars = 2;
    if (!z.all_real) {
        ls.kind = LimitSet::Kind::FullSphere;
        return ls;
    }
    ls.kind = LimitSet::Kind::FiniteDirections;
    auto push_dir = [&](double ux, double uy) {
        for (const auto& d : ls.directions)
            if (std::hypot(d[0] - ux, d[1] - uy) < 1e-12) return;
        ls.directions.push_back({ux, uy});
    };
    for (const auto& s : z.slopes) {
        double a = s.approx.real();
        double norm = std::sqrt(1.0 + a * a);
        push_dir(1.0 / norm, a / norm);
        push_dir(-1.0 / norm, -a / norm);
    }
    if (z.vertical) {
        push_dir(0.0, 1.0);
        push_dir(0.0, -1.0);
    }
    return ls;
}

/// Span of {Re p, Im p} for a projective zero (0 : p); dimension 1 when the
/// two vectors are parallel.
struct LimitPlane {
    int dimension = 0;
    std::vector<Rational> re;
    std::vector<Rational> im;
};

inline LimitPlane limit_plane(const std::vector<GaussianRational>& p) {
    const int n = static_cast<int>(p.size());
    bool nonzero = false;
    for (const auto& v : p)
        if (!v.is_zero()) nonzero = true;
    if (!nonzero) throw std::invalid_argument("limit_plane: zero vector");
    LimitPlane lp;
    lp.re.resize(n);
    lp.im.resize(n);
    for (int j = 0; j < n; ++j) {
        lp.re[j] = p[j].re;
        lp.im[j] = p[j].im;
    }
    bool rank2 = false;
    for (int j = 0; j < n && !rank2; ++j)
        for (int k = j + 1; k < n && !rank2; ++k)
            if (lp.re[j] * lp.im[k] - lp.re[k] * lp.im[j] != 0) rank2 = true;
    lp.dimension = rank2 ? 2 : 1;
    return lp;
}

/// Certified-subset plane sections from supplied projective zeros at
/// infinity (for n >= 3 the caller provides the zeros).
inline LimitSet limit_planes_from_zeros(const std::vector<std::vector<GaussianRational>>& zeros) {
    LimitSet ls;
    ls.kind = LimitSet::Kind::PlaneSections;
    ls.certified_subset = true;
    for (const auto& p : zeros) {
        LimitPlane lp = limit_plane(p);
        ls.planes.emplace_back(lp.re, lp.im);
        ls.nvars = static_cast<int>(lp.re.size());
    }
    return ls;
}

/// Multilinear polynomials containing the full monomial z1...zn: the limit
/// set is the union of the coordinate hyperplanes.
inline LimitSet limit_set_multilinear(const Poly& f) {
    if (!f.is_multilinear())
        throw std::invalid_argument("limit_set_multilinear: multilinear input required");
    if (f.coeff(Exponents(f.nvars(), 1)).is_zero())
        throw std::invalid_argument("limit_set_multilinear: monomial z1...zn must appear");
    LimitSet ls;
    ls.kind = LimitSet::Kind::CoordinateHyperplanes;
    ls.nvars = f.nvars();
    return ls;
}

struct EmpiricalSweep {
    std::vector<std::array<double, 2>> cluster_directions;
    std::vector<double> in_angles;
    double coverage = 0.0; // fraction of sampled angles answering In
    long samples = 0;
};

/// Sweeps angles on the circle of radius R, testing membership at snapped
/// rational points, and clusters the In angles. Exact oracle underneath, so
/// the output is deterministic.
inline EmpiricalSweep empirical_limit_directions(const Poly& f, double radius = 100.0,
                                                 long samples = 720) {
    if (f.nvars() != 2) throw std::invalid_argument("empirical_limit_directions: n = 2 only");
    Oracle oracle(f);
    EmpiricalSweep out;
    out.samples = samples;
    std::vector<char> in_mask(samples, 0);
    long in_count = 0;
    for (long k = 0; k < samples; ++k) {
        double th = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(samples);
        Rational y1 = snap_rational(radius * std::cos(th), 24, 1e-9 * radius);
        Rational y2 = snap_rational(radius * std::sin(th), 24, 1e-9 * radius);
        if (oracle.member({y1, y2}).in()) {
            in_mask[k] = 1;
            ++in_count;
            out.in_angles.push_back(th);
        }
    }
    out.coverage = samples > 0 ? static_cast<double>(in_count) / samples : 0.0;
    // cluster circular runs of In samples (allowing single-sample gaps)
    if (in_count == 0) return out;
    if (in_count == samples) {
        out.cluster_directions.push_back({1.0, 0.0});
        return out;
    }
    long start = 0;
    while (start < samples && in_mask[start]) ++start; // start at an Out sample
    long run_begin = -1;
    auto flush = [&](long b, long e) {
        double mid = M_PI * (static_cast<double>(b) + static_cast<double>(e)) /
                     static_cast<double>(samples);
        out.cluster_directions.push_back({std::cos(mid), std::sin(mid)});
    };
    for (long step = 0; step < samples; ++step) {
        long idx = (start + step) % samples;
        if (in_mask[idx]) {
            long pos = step;
            if (run_begin < 0) run_begin = pos;
            // extend
            if (step == samples - 1) flush(start + run_begin, start + pos);
        } else if (run_begin >= 0) {
            flush(start + run_begin, start + step - 1);
            run_begin = -1;
        }
    }
    return out;
}

} // namespace improj

#endif
