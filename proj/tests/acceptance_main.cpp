// Acceptance suite: end-to-end checks with pinned tolerances, one PASS/FAIL
// line per criterion. Exits nonzero if anything fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <vector>

#include <improj/asymptotics.hpp>
#include <improj/geometry.hpp>
#include <improj/oracle.hpp>
#include <improj/stability.hpp>

using namespace improj;

namespace {

int failures = 0;

void report(int id, const std::string& what, bool ok, double seconds) {
    std::printf("%s  criterion %d: %s (%.2f s)\n", ok ? "PASS" : "FAIL", id, what.c_str(),
                seconds);
    std::fflush(stdout);
    if (!ok) ++failures;
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

Poly P(const std::string& s) { return parse_poly(s); }
std::vector<Rational> pt(const std::string& a, const std::string& b) {
    return {Rational(a), Rational(b)};
}

// --- criterion 1 -----------------------------------------------------------

void criterion1() {
    Timer timer;
    struct Family {
        const char* poly;
        // boundary polynomials in (y1, y2) whose small values are rejected
        std::function<std::vector<Rational>(const Rational&, const Rational&)> boundary;
    };
    auto vals = [](std::initializer_list<Rational> l) { return std::vector<Rational>(l); };
    std::vector<Family> families = {
        {"z1^2+z2^2-1", [&](const Rational&, const Rational&) { return std::vector<Rational>{}; }},
        {"z1^2-z2^2-1",
         [&](const Rational& a, const Rational& b) {
             return vals({a * a - b * b, a * a - b * b + 1, a, b});
         }},
        {"z1^2+z2", [&](const Rational& a, const Rational&) { return vals({a}); }},
        {"z1^2+z2^2+1",
         [&](const Rational& a, const Rational& b) { return vals({a * a + b * b - 1}); }},
        {"z1^2-z2^2", [&](const Rational& a, const Rational& b) { return vals({a * a - b * b}); }},
        {"z1^2-1", [&](const Rational& a, const Rational&) { return vals({a}); }},
        {"z1^2+z2^2", [&](const Rational&, const Rational&) { return std::vector<Rational>{}; }},
        {"z1^2+1", [&](const Rational& a, const Rational&) { return vals({a * a - 1}); }},
    };
    const Rational margin(1, 1000000);
    long total = 0, agree = 0;
    for (const auto& fam : families) {
        Oracle oracle(P(fam.poly));
        std::mt19937 rng(20260810);
        std::vector<std::vector<Rational>> points;
        while (points.size() < 500) {
            Rational y1(static_cast<int>(rng() % 385) - 192, 64); // [-3, 3]
            Rational y2(static_cast<int>(rng() % 385) - 192, 64);
            bool near_boundary = false;
            for (const Rational& v : fam.boundary(y1, y2))
                if (rat_abs(v) < margin) near_boundary = true;
            if (!near_boundary) points.push_back({y1, y2});
        }
        std::vector<int> ok(points.size(), 0);
        geometry_detail::parallel_for(points.size(), [&](long i) {
            MembershipVerdict closed = oracle.member(points[i]);
            MembershipVerdict fiber = oracle.member_fiber_exact(points[i]);
            ok[i] = closed.state == fiber.state && closed.state != Membership::Uncertain;
        });
        for (int v : ok) {
            ++total;
            agree += v;
        }
    }
    double secs = timer.seconds();
    bool ok = agree == total && total == 4000 && secs < 30.0;
    report(1, "quadric closed forms vs elimination oracle, 8 x 500 points, " +
                  std::to_string(agree) + "/" + std::to_string(total) + " agree",
           ok, secs);
}

// --- criterion 2 -----------------------------------------------------------

void criterion2() {
    Timer timer;
    struct Case {
        std::vector<Rational> y;
        bool in;
    };
    bool all = true;
    auto run = [&](const char* poly, const std::vector<Case>& cases, const char* name) {
        Oracle oracle(P(poly));
        for (const auto& c : cases) {
            MembershipVerdict v = oracle.member(c.y);
            bool got = v.in();
            if (v.state == Membership::Uncertain || got != c.in) {
                std::printf("      region %s at (%s, %s): expected %s got %s\n", name,
                            c.y[0].str().c_str(), c.y[1].str().c_str(), c.in ? "In" : "Out",
                            to_string(v.state));
                all = false;
            }
        }
    };
    // type (ii): {-1 <= y1^2 - y2^2 < 0} plus the origin
    run("z1^2-z2^2-1",
        {{pt("0", "0"), true},
         {pt("1/1000", "0"), false},
         {pt("0", "1/1000"), true},
         {pt("0", "1"), true},
         {pt("0", "1001/1000"), false},
         {pt("1", "1"), false},
         {pt("1/2", "1"), true},
         {pt("3/2", "1"), false},
         {pt("1", "3/2"), false},
         {pt("2", "2"), false},
         {pt("1/2", "3/4"), true},
         {pt("5/4", "1"), false}},
        "(ii)");
    // type (iv): {y1^2 + y2^2 >= 1}
    run("z1^2+z2^2+1",
        {{pt("0", "0"), false},
         {pt("1", "0"), true},
         {pt("999/1000", "0"), false},
         {pt("1001/1000", "0"), true},
         {pt("3/5", "4/5"), true},
         {pt("1/2", "1/2"), false},
         {pt("2", "3"), true},
         {pt("0", "999/1000"), false},
         {pt("0", "1"), true},
         {pt("-1", "0"), true},
         {pt("-1/2", "-1/2"), false},
         {pt("7/8", "1/2"), true}},
        "(iv)");
    // type (iii): complement is the punctured y2-axis
    run("z1^2+z2",
        {{pt("0", "1"), false},
         {pt("0", "-2"), false},
         {pt("0", "0"), true},
         {pt("1", "5"), true},
         {pt("-1/3", "7"), true},
         {pt("0", "1/1000"), false},
         {pt("1/1000", "3"), true},
         {pt("2", "0"), true},
         {pt("0", "4"), false},
         {pt("5", "5"), true},
         {pt("0", "-1/2"), false},
         {pt("-2", "-2"), true}},
        "(iii)");
    // hyperbola band for (beta, gamma, delta) = (1, 1, -1): D = -2
    run("z1*z2+z1+z2-1",
        {{pt("0", "0"), true},
         {pt("1", "-1"), true},
         {pt("1", "1"), false},
         {pt("2", "-1"), true},
         {pt("2", "-1001/1000"), false},
         {pt("1/1000", "-1/1000"), true},
         {pt("1", "0"), false},
         {pt("0", "3"), false},
         {pt("-1", "2"), true},
         {pt("-1", "-1"), false},
         {pt("3", "-1/2"), true},
         {pt("-3", "1"), false}},
        "hyperbola");
    // I(1 + z2 z1^2) = {64 y1^4 y2^2 <= 27}
    run("1+z2*z1^2",
        {{pt("1", "1/2"), true},
         {pt("1", "1"), false},
         {pt("1", "13/20"), false},
         {pt("1", "16/25"), true},
         {pt("3/2", "1/4"), true},
         {pt("3/2", "3/10"), false},
         {pt("1/2", "2"), true},
         {pt("1/2", "3"), false},
         {pt("2", "1/8"), true},
         {pt("2", "1/6"), false},
         {pt("1", "-13/20"), false},
         {pt("-1", "1/2"), true}},
        "quartic split");
    report(2, "paper regions at 60 boundary-straddling rational points", all, timer.seconds());
}

// --- criterion 3 -----------------------------------------------------------

void criterion3() {
    Timer timer;
    Raster r = raster_improj(P("z1^2+z1^2*z2+2*z1+z2+1"), Box::square(Rational(-4), Rational(4), 2),
                             400);
    ComponentReport rep = components(r, true, 2000, 1);
    bool six = rep.components.size() == 6;
    bool convex = true;
    for (const auto& c : rep.components)
        if (c.convexity != Component::Convexity::Pass) convex = false;
    double secs = timer.seconds();
    report(3, "census of the degree-3 example: " + std::to_string(rep.components.size()) +
                  " components, all convex",
           six && convex && rep.uncertain_cells == 0 && secs < 60.0, secs);
}

// --- criterion 4 -----------------------------------------------------------

void criterion4() {
    Timer timer;
    Raster r2 = raster_improj(P("z1*z2+z1+z2-1"), Box::square(Rational(-4), Rational(4), 2), 401);
    ComponentReport rep2 = components(r2, true, 1500, 1);
    bool ok2 = rep2.components.size() == 4 && rep2.unbounded_total == 4;
    bool convex2 = true;
    for (const auto& c : rep2.components)
        if (c.convexity != Component::Convexity::Pass) convex2 = false;

    Oracle tri(std::vector<Poly>{P("z1 + 0*z3"), P("z2 + 0*z3"), P("z3")});
    Raster r3 = raster_improj(tri, Box::square(Rational(-4), Rational(4), 3), 41);
    ComponentReport rep3 = components(r3, false);
    bool ok3 = rep3.components.size() == 8 && rep3.unbounded_total == 8;

    report(4, "multilinear unbounded counts: 2^2 = " + std::to_string(rep2.unbounded_total) +
                  ", 2^3 = " + std::to_string(rep3.unbounded_total),
           ok2 && convex2 && ok3, timer.seconds());
}

// --- criterion 5 -----------------------------------------------------------

void criterion5() {
    Timer timer;
    std::vector<Poly> lines = {
        P("z1 + z2 - i"),      // y1 + y2 = 1
        P("z1 - z2 + 3/2i"),   // y1 - y2 = -3/2
        P("z2 - 1/2i"),        // y2 = 1/2
        P("z1 + 5/4i"),        // y1 = -5/4
        P("z1 + 2*z2 + i"),    // y1 + 2 y2 = -1
    };
    const long expected[] = {4, 7, 11, 16};
    bool all = true;
    std::string counts;
    for (int m = 2; m <= 5; ++m) {
        std::vector<Poly> factors(lines.begin(), lines.begin() + m);
        Oracle oracle(std::move(factors));
        Raster r = raster_improj(oracle, Box::square(Rational(-4), Rational(4), 2), 600);
        ComponentReport rep = components(r, false);
        // Sub-scale specks pinched off where two thick line traces cross are
        // rasterization artifacts: genuine arrangement regions grow with the
        // square of the resolution, specks stay O(1) cells.
        long count = 0;
        for (const auto& c : rep.components)
            if (c.cells >= 4) ++count;
        counts += (m > 2 ? ", " : "") + std::to_string(count);
        if (count != expected[m - 2]) all = false;
    }
    report(5, "hyperplane products m = 2..5 at 600^2: components " + counts + " (want 4, 7, 11, 16)",
           all, timer.seconds());
}

// --- criterion 6 -----------------------------------------------------------

void criterion6() {
    Timer timer;
    bool ok = true;

    LimitSet ls = limit_set_bivariate(P("z1^2-z2^2-1"));
    const double s = 1.0 / std::sqrt(2.0);
    const std::array<std::array<double, 2>, 4> expect{{{s, s}, {-s, s}, {s, -s}, {-s, -s}}};
    if (ls.kind != LimitSet::Kind::FiniteDirections || ls.directions.size() != 4) ok = false;
    for (const auto& e : expect) {
        double best = 1e9;
        for (const auto& d : ls.directions) best = std::min(best, std::hypot(d[0] - e[0], d[1] - e[1]));
        if (best > 1e-9) ok = false;
    }

    EmpiricalSweep sw = empirical_limit_directions(P("z1^2-z2^2-1"), 100.0, 800000);
    if (sw.cluster_directions.empty()) ok = false;
    for (const auto& c : sw.cluster_directions) {
        double best = 1e9;
        for (const auto& e : expect) best = std::min(best, std::hypot(c[0] - e[0], c[1] - e[1]));
        if (best > 0.05) ok = false;
    }
    for (const auto& e : expect) {
        double best = 1e9;
        for (const auto& c : sw.cluster_directions)
            best = std::min(best, std::hypot(c[0] - e[0], c[1] - e[1]));
        if (best > 0.05) ok = false;
    }

    if (limit_set_bivariate(P("z1^2+z2^2+1")).kind != LimitSet::Kind::FullSphere) ok = false;
    EmpiricalSweep full = empirical_limit_directions(P("z1^2+z2^2+1"), 100.0, 2000);
    if (full.coverage < 0.95) ok = false;

    report(6, "limit sets: 4 exact hyperbola directions + empirical clusters; full-sphere coverage " +
                  std::to_string(full.coverage),
           ok, timer.seconds());
}

// --- criterion 7 -----------------------------------------------------------

void criterion7() {
    Timer timer;
    bool ok = true;

    // Hermite-Biehler vs direct roots on 200 random polynomials
    std::mt19937 rng(20240811);
    int checked = 0, agreed = 0;
    for (int t = 0; checked < 200 && t < 4000; ++t) {
        int deg = 1 + static_cast<int>(rng() % 6);
        Poly f(1);
        for (int k = 0; k <= deg; ++k)
            f.add_term({k}, GaussianRational(Rational(static_cast<int>(rng() % 11) - 5),
                                             Rational(static_cast<int>(rng() % 11) - 5)));
        if (f.total_degree() < 1) continue;
        StabilityVerdict d = direct_root_stability(f, 1e-8, static_cast<std::uint64_t>(t));
        if (d.state == Stability::Unknown) continue;
        ++checked;
        if (hermite_biehler(f).state == d.state) ++agreed;
    }
    if (!(checked == 200 && agreed == 200)) ok = false;

    // 100 random bivariate bilinear polynomials vs the beta*gamma - delta sign
    int bil_ok = 0;
    for (int t = 0; t < 100; ++t) {
        Rational beta(static_cast<int>(rng() % 13) - 6, 1 + static_cast<int>(rng() % 3));
        Rational gamma(static_cast<int>(rng() % 13) - 6, 1 + static_cast<int>(rng() % 3));
        Rational delta(static_cast<int>(rng() % 13) - 6, 1 + static_cast<int>(rng() % 3));
        Poly f(2);
        f.add_term({1, 1}, GaussianRational(1));
        f.add_term({1, 0}, GaussianRational(beta));
        f.add_term({0, 1}, GaussianRational(gamma));
        f.add_term({0, 0}, GaussianRational(delta));
        Stability want = beta * gamma - delta >= 0 ? Stability::Stable : Stability::NotStable;
        if (multilinear_stability(f).state == want) ++bil_ok;
    }
    if (bil_ok != 100) ok = false;

    // orthant-emptiness certification of the running example
    StabilityVerdict proj = stable_via_projection(P("z1*z2+z1+z2-1"));
    if (proj.state != Stability::Stable) ok = false;

    report(7, "stability suite: HB agreement " + std::to_string(agreed) + "/200, bilinear " +
                  std::to_string(bil_ok) + "/100, orthant-emptiness certificate",
           ok, timer.seconds());
}

// --- criterion 8 -----------------------------------------------------------

void criterion8() {
    Timer timer;
    bool ok = true;
    std::vector<Rational> e{Rational(0), Rational(0), Rational(1)};

    Poly cone = P("z1^2+z2^2-z3^2");
    if (hyperbolicity(cone, e).state != HyperbolicityVerdict::State::Hyperbolic) ok = false;
    Oracle oc(cone);
    // I(f) != R^3: the axis direction is outside the region
    if (!oc.member({Rational(0), Rational(0), Rational(1)}).out()) ok = false;
    if (oc.quadric()->family != "I" || oc.quadric()->p != 2) ok = false;

    Poly sphere = P("z1^2+z2^2+z3^2");
    if (hyperbolicity(sphere, e).state != HyperbolicityVerdict::State::NotHyperbolic) ok = false;
    std::vector<Rational> e2{Rational(1), Rational(1), Rational(1)};
    if (hyperbolicity(sphere, e2).state != HyperbolicityVerdict::State::NotHyperbolic) ok = false;
    Oracle os(sphere);
    if (os.quadric()->p != os.quadric()->r) ok = false;
    std::mt19937 rng(5);
    for (int t = 0; t < 60; ++t) {
        std::vector<Rational> y{Rational(static_cast<int>(rng() % 17) - 8, 4),
                                Rational(static_cast<int>(rng() % 17) - 8, 4),
                                Rational(static_cast<int>(rng() % 17) - 8, 4)};
        if (!os.member(y).in()) ok = false; // I(f) = R^3
    }
    report(8, "hyperbolicity matches the quadric region dichotomy", ok, timer.seconds());
}

// --- criterion 9 -----------------------------------------------------------

void criterion9() {
    Timer timer;
    bool ok = true;
    std::mt19937 rng(99);
    auto rand_pt = [&]() {
        return std::vector<Rational>{Rational(static_cast<int>(rng() % 33) - 16, 4),
                                     Rational(static_cast<int>(rng() % 33) - 16, 4)};
    };

    // origin symmetry for real-coefficient polynomials
    for (const char* s : {"z1^2-z2^2-1", "z1*z2+z1+z2-1", "1+z2*z1^2", "z1^2+z1^2*z2+2*z1+z2+1"}) {
        Oracle o(P(s));
        for (int t = 0; t < 40; ++t) {
            auto y = rand_pt();
            std::vector<Rational> ny{-y[0], -y[1]};
            if (o.member(y).state != o.member(ny).state) ok = false;
        }
    }

    // product rule over random factor pairs
    std::vector<const char*> pool = {"z1^2-z2^2-1", "z1*z2+1", "z1+z2+i", "z1^2+z2", "z1^2+z2^2+1"};
    for (std::size_t a = 0; a < pool.size(); ++a)
        for (std::size_t b = a + 1; b < pool.size(); ++b) {
            Oracle fa(P(pool[a])), fb(P(pool[b]));
            Oracle fab(std::vector<Poly>{P(pool[a]), P(pool[b])});
            for (int t = 0; t < 15; ++t) {
                auto y = rand_pt();
                bool want = fa.member(y).in() || fb.member(y).in();
                if (fab.member(y).in() != want) ok = false;
            }
        }

    // transform law under random invertible rational maps
    for (int t = 0; t < 12; ++t) {
        AffineMap A = AffineMap::identity(2);
        do {
            for (auto& row : A.matrix)
                for (auto& v : row) v = Rational(static_cast<int>(rng() % 7) - 3);
        } while (A.matrix[0][0] * A.matrix[1][1] - A.matrix[0][1] * A.matrix[1][0] == 0);
        for (const char* s : {"z1^2-z2^2-1", "z1*z2+z1+z2-1"}) {
            Oracle base(P(s));
            Oracle pulled(pullback(P(s), A));
            for (int q = 0; q < 10; ++q) {
                auto y = rand_pt();
                if (pulled.member(y).state != base.member(A.apply_linear(y)).state) ok = false;
            }
        }
    }

    // raster determinism across worker counts
    auto digest = [](const Raster& r) {
        std::size_t h = 1469598103934665603ull;
        for (auto c : r.cells) h = (h ^ c) * 1099511628211ull;
        return h;
    };
    Poly f = P("z1^2+z1^2*z2+2*z1+z2+1");
    std::vector<std::size_t> digests;
    for (const char* w : {"1", "2", "5"}) {
        setenv("IMPROJ_WORKERS", w, 1);
        digests.push_back(digest(raster_improj(f, Box::square(Rational(-4), Rational(4), 2), 96)));
    }
    unsetenv("IMPROJ_WORKERS");
    if (!(digests[0] == digests[1] && digests[1] == digests[2])) ok = false;

    report(9, "property suites: symmetry, product rule, transform law, determinism", ok,
           timer.seconds());
}

} // namespace

int main() {
    std::printf("improj acceptance suite\n");
    Timer total;
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    std::printf("%s: %d criterion(s) failed (total %.1f s)\n", failures ? "RESULT FAIL" : "RESULT PASS",
                failures, total.seconds());
    return failures ? 1 : 0;
}
