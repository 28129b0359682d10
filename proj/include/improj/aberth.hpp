// Aberth-Ehrlich simultaneous iteration for all complex roots of a
// univariate polynomial, with deterministic seeded starts and a restart
// fallback. Floating point only; exact layers never depend on this.
#ifndef IMPROJ_ABERTH_HPP
#define IMPROJ_ABERTH_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace improj {

struct RootFindResult {
    std::vector<std::complex<double>> roots; // deg(p) entries on success
    bool converged = false;
    int iterations = 0;
};

class RootFindError : public std::runtime_error {
  public:
    RootFindError(std::string msg, RootFindResult partial)
        : std::runtime_error(std::move(msg)), partial_result(std::move(partial)) {}
    RootFindResult partial_result;
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& s) {
    s += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}
} // namespace detail

/// Roots of sum c[k] z^k (ascending order, c.back() != 0), each with backward
/// error at most `tol` relative to the coefficient scale.
inline RootFindResult complex_roots(std::vector<std::complex<double>> c, double tol = 1e-12,
                                    std::uint64_t seed = 0, int max_iters = 400, int restarts = 6) {
    while (!c.empty() && std::abs(c.back()) == 0.0) c.pop_back();
    if (c.size() <= 1) throw std::invalid_argument("complex_roots: degree must be >= 1");
    const int deg = static_cast<int>(c.size()) - 1;

    // strip roots at the origin
    int zero_roots = 0;
    while (std::abs(c.front()) == 0.0) {
        c.erase(c.begin());
        ++zero_roots;
    }
    const int n = static_cast<int>(c.size()) - 1;

    RootFindResult out;
    out.roots.assign(deg, {0.0, 0.0});
    if (n == 0) {
        out.converged = true;
        return out;
    }

    // Cauchy-style inclusion radius.
    double radius = 0.0;
    for (int k = 0; k < n; ++k) radius = std::max(radius, std::abs(c[k] / c[n]));
    radius = 1.0 + radius;

    auto eval_with_error = [&](std::complex<double> x, std::complex<double>& px,
                               std::complex<double>& dpx, double& errbound) {
        px = 0.0;
        dpx = 0.0;
        double e = 0.0;
        double ax = std::abs(x);
        for (int k = n; k >= 0; --k) {
            dpx = dpx * x + px;
            px = px * x + c[k];
            e = e * ax + std::abs(c[k]);
        }
        errbound = e;
    };

    std::uint64_t state = seed * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull;
    for (int attempt = 0; attempt <= restarts; ++attempt) {
        // staggered circle start, offset varies per attempt
        std::vector<std::complex<double>> x(n);
        double phase = 0.4 + 1e-2 * static_cast<double>(detail::splitmix64(state) % 1000);
        double r0 = radius * (0.5 + 0.15 * attempt);
        for (int i = 0; i < n; ++i) {
            double th = phase + 2.0 * M_PI * (i + 0.5) / n + 0.04 * attempt * i;
            x[i] = std::polar(r0 * (1.0 + 0.05 * ((i * 7) % 3)), th);
        }
        std::vector<bool> done(n, false);
        int iter = 0;
        for (; iter < max_iters; ++iter) {
            bool all_done = true;
            double max_step = 0.0;
            for (int i = 0; i < n; ++i) {
                if (done[i]) continue;
                std::complex<double> p, dp;
                double scale;
                eval_with_error(x[i], p, dp, scale);
                if (std::abs(p) <= tol * std::max(scale, 1e-300)) {
                    done[i] = true;
                    continue;
                }
                all_done = false;
                std::complex<double> newton = (std::abs(dp) > 0) ? p / dp : std::complex<double>(1e-3, 1e-3);
                std::complex<double> subsum = 0.0;
                for (int j = 0; j < n; ++j) {
                    if (j == i) continue;
                    std::complex<double> d = x[i] - x[j];
                    if (std::abs(d) < 1e-300) d = {1e-12, 1e-12};
                    subsum += 1.0 / d;
                }
                std::complex<double> denom = 1.0 - newton * subsum;
                std::complex<double> step = (std::abs(denom) > 1e-300) ? newton / denom : newton;
                x[i] -= step;
                max_step = std::max(max_step, std::abs(step));
            }
            if (all_done) break;
            if (iter > 40 && max_step < 1e-16 * radius) break; // stalled
        }
        bool ok = true;
        for (int i = 0; i < n; ++i) {
            std::complex<double> p, dp;
            double scale;
            eval_with_error(x[i], p, dp, scale);
            if (!(std::abs(p) <= tol * std::max(scale, 1e-300))) {
                ok = false;
                break;
            }
        }
        out.iterations += iter;
        for (int i = 0; i < n; ++i) out.roots[i] = x[i];
        for (int i = 0; i < zero_roots; ++i) out.roots[n + i] = {0.0, 0.0};
        if (ok) {
            out.converged = true;
            return out;
        }
    }
    throw RootFindError("complex_roots: no convergence within budget", out);
}

} // namespace improj

#endif
