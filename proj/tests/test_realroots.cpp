#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <improj/parse.hpp>
#include <improj/realroots.hpp>

using namespace improj;

namespace {
RealUniPoly up(std::vector<int> coeffs) {
    std::vector<Rational> c(coeffs.begin(), coeffs.end());
    return RealUniPoly(std::move(c));
}
} // namespace

TEST_CASE("bivariate resultant examples") {
    // eliminating x1 from (x1^2 + x2^2 - 1, x1) leaves t^2 - 1 in the kept variable
    Poly p = parse_poly("z1^2 + z2^2 - 1");
    Poly q = parse_poly("z1 + 0*z2");
    CHECK(resultant(p, q, 0) == up({-1, 0, 1}));

    // 2x2 Sylvester determinant: Res_{x2}(x2 - x1, x2 + x1) = 2 x1
    CHECK(resultant(parse_poly("z2 - z1"), parse_poly("z2 + z1"), 1) == up({0, 2}));

    // shared factor: identically zero
    CHECK(resultant(parse_poly("z2 - z1"), parse_poly("z2 - z1"), 1).is_zero());

    CHECK_THROWS_AS(resultant(parse_poly("z1 + 0*z2"), parse_poly("z1 + 1 + 0*z2"), 1),
                    std::invalid_argument);
}

TEST_CASE("resultant vanishes at common-root abscissae") {
    std::mt19937 rng(314);
    for (int t = 0; t < 60; ++t) {
        // construct p, q vanishing at the rational point (a, b)
        Rational a(static_cast<int>(rng() % 9) - 4, 1 + static_cast<int>(rng() % 3));
        Rational b(static_cast<int>(rng() % 9) - 4, 1 + static_cast<int>(rng() % 3));
        auto rand_small = [&]() {
            Poly r(2);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    Exponents e{i, j};
                    r.add_term(std::move(e),
                               GaussianRational(Rational(static_cast<int>(rng() % 7) - 3)));
                }
            return r;
        };
        Poly x1 = Poly::variable(2, 0), x2 = Poly::variable(2, 1);
        Poly la = x1 - Poly::constant(2, GaussianRational(a));
        Poly lb = x2 - Poly::constant(2, GaussianRational(b));
        Poly p = la * rand_small() + lb * rand_small();
        Poly q = la * rand_small() + lb * rand_small();
        if (p.is_zero() || q.is_zero()) continue;
        if (p.degree_in(1) == 0 && q.degree_in(1) == 0) continue;
        RealUniPoly res = resultant(p, q, 1);
        if (res.is_zero()) continue; // shared factor; nothing to evaluate
        CHECK(res.eval(a) == 0);
    }
}

TEST_CASE("interlacing") {
    CHECK(interlace(up({0, 1}), up({-2, 0, 1})) == InterlaceResult::Interlaced); // x vs x^2-2
    // strictly alternating merge: roots -2, -1, 1, 2 of x^2-1 and 2x^2-... use
    // f with roots {-2, 1}, g with roots {-1, 2}
    CHECK(interlace(up({-2, 1, 1}), up({-2, -1, 1})) == InterlaceResult::Interlaced);
    // nested roots (-2,-1,1,2) are not alternating: W[x^2-1, x^2-4] = -6x
    // changes sign, so proper position is impossible either way
    CHECK(interlace(up({-1, 0, 1}), up({-4, 0, 1})) == InterlaceResult::NotInterlaced);
    CHECK(interlace(up({-1, 0, 1}), up({-1, 0, 1})) == InterlaceResult::NotInterlaced);
    CHECK(interlace(up({1, 0, 1}), up({0, 1})) == InterlaceResult::NotApplicable);
    // degenerate conventions
    CHECK(interlace(up({5}), up({3, 1})) == InterlaceResult::Interlaced);
    CHECK(interlace(RealUniPoly{}, up({-2, 0, 1})) == InterlaceResult::Interlaced);
    CHECK(interlace(up({5}), up({4, 0, -5, 0, 1})) == InterlaceResult::NotInterlaced);
    // roots interleave but degrees differ by 2
    CHECK(interlace(up({0, 1}), up({4, 0, -5, 0, 1})) == InterlaceResult::NotInterlaced);
}

TEST_CASE("interlacing forces a one-signed wronskian") {
    std::mt19937 rng(2718);
    int seen = 0;
    for (int t = 0; t < 400 && seen < 40; ++t) {
        // random real-rooted polynomials from random roots
        auto from_roots = [&](int deg) {
            RealUniPoly r = RealUniPoly::constant(1);
            std::vector<Rational> used;
            while (static_cast<int>(used.size()) < deg) {
                Rational root(static_cast<int>(rng() % 33) - 16, 1 + static_cast<int>(rng() % 2));
                bool dup = false;
                for (const auto& u : used)
                    if (u == root) dup = true;
                if (dup) continue;
                used.push_back(root);
                r = r * RealUniPoly(std::vector<Rational>{-root, Rational(1)});
            }
            return r;
        };
        int d = 1 + static_cast<int>(rng() % 3);
        RealUniPoly f = from_roots(d);
        RealUniPoly g = from_roots(d + static_cast<int>(rng() % 2));
        if (interlace(f, g) != InterlaceResult::Interlaced) continue;
        ++seen;
        RealUniPoly w = wronskian(f, g);
        CHECK((nonnegative_on_reals(w) || nonnegative_on_reals(-w)));
    }
    CHECK(seen >= 20);
}

TEST_CASE("sturm count equals isolation count on 1000 random polynomials") {
    std::mt19937 rng(987654);
    int done = 0;
    for (int trial = 0; done < 1000; ++trial) {
        int deg = 1 + static_cast<int>(rng() % 12);
        std::vector<Rational> c(deg + 1);
        for (auto& v : c) v = Rational(static_cast<int>(rng() % 21) - 10);
        RealUniPoly p(std::move(c));
        if (p.is_zero() || p.degree() == 0) continue;
        ++done;
        CHECK(count_real_roots(p) == isolate_real_roots(p).count());
    }
}

TEST_CASE("complex roots are deterministic under a fixed seed") {
    std::vector<std::complex<double>> c{{-2, 1}, {0, -3}, {1, 0}, {2, 2}};
    auto a = complex_roots(c, 1e-12, 42);
    auto b = complex_roots(c, 1e-12, 42);
    REQUIRE(a.roots.size() == b.roots.size());
    for (std::size_t i = 0; i < a.roots.size(); ++i) CHECK(a.roots[i] == b.roots[i]);
}
