// Real-root machinery public surface: Sturm counting and isolation live in
// univariate.hpp; this adds the bivariate resultant entry point and the
// interlacing test used by Hermite-Biehler.
#ifndef IMPROJ_REALROOTS_HPP
#define IMPROJ_REALROOTS_HPP

#include "aberth.hpp"
#include "bivar.hpp"
#include "poly.hpp"
#include "univariate.hpp"

namespace improj {

/// Sylvester resultant of two real polynomials in two variables with respect
/// to the eliminated variable (0 or 1). The result is dense in the kept
/// variable. Identically zero iff the pair shares a factor involving the
/// eliminated variable (or both collapse in it).
inline RealUniPoly resultant(const Poly& p, const Poly& q, int eliminate_var) {
    if (eliminate_var != 0 && eliminate_var != 1)
        throw std::invalid_argument("resultant: variable index must be 0 or 1");
    BivarPoly a = BivarPoly::from_poly(p);
    BivarPoly b = BivarPoly::from_poly(q);
    if (eliminate_var == 0) {
        a = a.swapped();
        b = b.swapped();
    }
    return resultant_main(a, b);
}

enum class InterlaceResult { Interlaced, NotInterlaced, NotApplicable };

inline bool is_real_rooted(const RealUniPoly& p) {
    if (p.is_zero()) return false;
    if (p.degree() == 0) return true;
    RealUniPoly s = square_free_part(p);
    return count_real_roots(s) == s.degree();
}

/// Do the zeros of f and g alternate strictly? Degenerate conventions: the
/// zero polynomial, and constants against degree <= 1, pass vacuously.
/// Inputs that are not real-rooted give NotApplicable.
inline InterlaceResult interlace(const RealUniPoly& f, const RealUniPoly& g) {
    auto applicable = [](const RealUniPoly& p) { return p.is_zero() || is_real_rooted(p); };
    if (!applicable(f) || !applicable(g)) return InterlaceResult::NotApplicable;
    if (f.is_zero() || g.is_zero()) return InterlaceResult::Interlaced;
    if (std::abs(f.degree() - g.degree()) > 1) return InterlaceResult::NotInterlaced;

    RealUniPoly fs = square_free_part(f);
    RealUniPoly gs = square_free_part(g);
    int kf = fs.degree() == 0 ? 0 : count_real_roots(fs);
    int kg = gs.degree() == 0 ? 0 : count_real_roots(gs);
    if (kf == 0 || kg == 0) return std::max(kf, kg) <= 1 ? InterlaceResult::Interlaced
                                                         : InterlaceResult::NotInterlaced;
    if (std::abs(kf - kg) > 1) return InterlaceResult::NotInterlaced;
    if (gcd(fs, gs).degree() >= 1) return InterlaceResult::NotInterlaced; // coincident zeros

    RootIntervals rf = isolate_real_roots(fs);
    RootIntervals rg = isolate_real_roots(gs);
    // Refine until every pair of intervals from opposite lists is disjoint;
    // no coincidences exist, so this terminates.
    bool again = true;
    while (again) {
        again = false;
        for (auto& a : rf.roots)
            for (auto& b : rg.roots) {
                Rational alo = a.exact ? a.root : a.lo, ahi = a.exact ? a.root : a.hi;
                Rational blo = b.exact ? b.root : b.lo, bhi = b.exact ? b.root : b.hi;
                if (ahi >= blo && bhi >= alo) {
                    if (!a.exact) refine_root(fs, a, (a.hi - a.lo) / 4);
                    if (!b.exact) refine_root(gs, b, (b.hi - b.lo) / 4);
                    again = true;
                }
            }
    }
    struct Tagged {
        Rational key;
        int who;
    };
    std::vector<Tagged> merged;
    for (const auto& a : rf.roots) merged.push_back({a.exact ? a.root : a.hi, 0});
    for (const auto& b : rg.roots) merged.push_back({b.exact ? b.root : b.hi, 1});
    std::sort(merged.begin(), merged.end(),
              [](const Tagged& x, const Tagged& y) { return x.key < y.key; });
    for (std::size_t i = 0; i + 1 < merged.size(); ++i)
        if (merged[i].who == merged[i + 1].who) return InterlaceResult::NotInterlaced;
    return InterlaceResult::Interlaced;
}

} // namespace improj

#endif
