// Exact existence decisions for real zeros of bivariate polynomials:
// a one-variable cylindrical decomposition (sample the cells cut out by the
// discriminant-resultant, lift over its roots with algebraic arithmetic).
#ifndef IMPROJ_SEMIALG_HPP
#define IMPROJ_SEMIALG_HPP

#include <vector>

#include "algebraic.hpp"
#include "bivar.hpp"

namespace improj {

namespace detail {

/// Refine until intervals are pairwise disjoint, then return one rational
/// sample strictly between consecutive roots plus one below and one above.
inline std::vector<Rational> gap_samples(const RealUniPoly& sqfree, std::vector<RootInterval>& roots) {
    std::vector<Rational> samples;
    if (roots.empty()) {
        samples.push_back(Rational(0));
        return samples;
    }
    bool again = true;
    while (again) {
        again = false;
        for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
            Rational hi_i = roots[i].exact ? roots[i].root : roots[i].hi;
            Rational lo_n = roots[i + 1].exact ? roots[i + 1].root : roots[i + 1].lo;
            if (hi_i >= lo_n) {
                RootInterval& wide =
                    (roots[i].exact || (!roots[i + 1].exact &&
                                        roots[i + 1].hi - roots[i + 1].lo > roots[i].hi - roots[i].lo))
                        ? roots[i + 1]
                        : roots[i];
                refine_root(sqfree, wide, (wide.hi - wide.lo) / 4);
                again = true;
            }
        }
    }
    samples.push_back((roots.front().exact ? roots.front().root : roots.front().lo) - 1);
    for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
        Rational a = roots[i].exact ? roots[i].root : roots[i].hi;
        Rational b = roots[i + 1].exact ? roots[i + 1].root : roots[i + 1].lo;
        samples.push_back(a == b ? a : (a + b) / 2);
    }
    samples.push_back((roots.back().exact ? roots.back().root : roots.back().hi) + 1);
    return samples;
}

} // namespace detail

/// Does g(x1, x2) = 0 have a real solution?
inline bool single_has_real_zero(BivarPoly g) {
    if (g.is_zero()) return true;
    if (g.is_constant()) return false;
    if (g.degree() == 0) return count_real_roots(g.coeffs()[0]) > 0; // univariate in x1
    if (g.degree_x1() < 0) return false;
    if (g.degree_x1() == 0) {
        // univariate in x2
        std::vector<Rational> cs;
        for (const auto& p : g.coeffs()) cs.push_back(p.coeff(0));
        return count_real_roots(RealUniPoly(std::move(cs))) > 0;
    }
    RealUniPoly cont = g.content();
    if (cont.degree() >= 1 && count_real_roots(cont) > 0) return true;
    BivarPoly h = g.primitive_part();
    if (h.degree() == 0) return count_real_roots(h.coeffs()[0]) > 0;
    BivarPoly sf = gcd_bivar(h, h.derivative());
    if (!sf.is_constant()) h = exact_div(h, sf);
    if (h.degree() == 0) return count_real_roots(h.coeffs()[0]) > 0;

    Rational lambda = find_shear({&h});
    BivarPoly hs = h.sheared(lambda);
    if (hs.degree() % 2 == 1) return true; // constant lc and odd degree: every fiber has a real root
    RealUniPoly disc = resultant_main(hs, hs.derivative());
    if (disc.is_zero()) throw std::logic_error("single_has_real_zero: unexpected zero discriminant");
    if (disc.degree() >= 1) {
        RealUniPoly dsf = square_free_part(disc);
        RootIntervals iso = isolate_real_roots(disc);
        for (const Rational& s : detail::gap_samples(dsf, iso.roots)) {
            if (count_real_roots(hs.at_x1(s)) > 0) return true;
        }
        for (const RootInterval& iv : iso.roots) {
            AlgebraicReal alpha(dsf, iv);
            if (fiber_has_real_root(hs, alpha)) return true;
        }
        return false;
    }
    // no critical abscissae at all: one cell
    return count_real_roots(hs.at_x1(Rational(0))) > 0;
}

/// Do p = 0 and q = 0 have a common real solution? Handles shared factors.
inline bool pair_has_common_real_zero(BivarPoly p, BivarPoly q) {
    if (p.is_zero()) return single_has_real_zero(q);
    if (q.is_zero()) return single_has_real_zero(p);
    if (p.is_constant() || q.is_constant()) return false;

    BivarPoly g = gcd_bivar(p, q);
    if (!g.is_constant()) {
        if (single_has_real_zero(g)) return true;
        p = exact_div(p, g);
        q = exact_div(q, g);
        if (p.is_constant() || q.is_constant()) return false;
    }
    if (p.degree() == 0 && q.degree() == 0) return false;  // coprime univariates in x1
    if (p.degree_x1() == 0 && q.degree_x1() == 0) return false; // coprime univariates in x2

    Rational lambda = find_shear({&p, &q});
    BivarPoly ps = p.sheared(lambda);
    BivarPoly qs = q.sheared(lambda);
    RealUniPoly res = resultant_main(ps, qs);
    if (res.is_zero()) throw std::logic_error("pair_has_common_real_zero: zero resultant for coprime pair");
    if (res.degree() == 0) return false;
    RealUniPoly rsf = square_free_part(res);
    RootIntervals iso = isolate_real_roots(res);
    for (const RootInterval& iv : iso.roots) {
        AlgebraicReal alpha(rsf, iv);
        if (fiber_has_common_real_root(ps, qs, alpha)) return true;
    }
    return false;
}

} // namespace improj

#endif
