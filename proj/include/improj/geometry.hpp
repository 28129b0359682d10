// Raster engine: discretized membership grids for imaginary projections
// (n = 2, and n = 3 as stacked slices), forward-sampled amoeba and coamoeba
// images, connected-component analysis of the complement with a convexity
// check, and the PGM / JSON / CSV export formats.
#ifndef IMPROJ_GEOMETRY_HPP
#define IMPROJ_GEOMETRY_HPP

#include <array>
#include <atomic>
#include <cstdint>
#include <fstream>
#include <functional>
#include <thread>
#include <vector>

#include <json.hpp>

#include "aberth.hpp"
#include "asymptotics.hpp"
#include "oracle.hpp"

namespace improj {

/// Cell states share the PGM byte encoding.
enum : std::uint8_t { kCellIn = 0, kCellUncertain = 128, kCellOut = 255 };

struct Box {
    std::vector<std::pair<Rational, Rational>> axes; // [lo, hi] per axis
    static Box square(const Rational& lo, const Rational& hi, int dims) {
        Box b;
        for (int k = 0; k < dims; ++k) b.axes.emplace_back(lo, hi);
        return b;
    }
};

struct Raster {
    Box box;
    int resolution = 0; // cells per axis
    int dims = 0;
    std::vector<std::uint8_t> cells; // axis 0 fastest
    std::string poly_text;
    std::string method = "improj";
    std::uint64_t seed = 0;

    long cell_count() const {
        long n = 1;
        for (int k = 0; k < dims; ++k) n *= resolution;
        return n;
    }
    long index(const std::vector<int>& idx) const {
        long lin = 0;
        for (int k = dims - 1; k >= 0; --k) lin = lin * resolution + idx[k];
        return lin;
    }
    std::vector<int> unindex(long lin) const {
        std::vector<int> idx(dims);
        for (int k = 0; k < dims; ++k) {
            idx[k] = static_cast<int>(lin % resolution);
            lin /= resolution;
        }
        return idx;
    }
    Rational center(int axis, int i) const {
        const auto& [lo, hi] = box.axes[axis];
        return lo + (hi - lo) * Rational(2 * i + 1, 2L * resolution);
    }
};

inline int worker_count() {
    if (const char* env = std::getenv("IMPROJ_WORKERS")) {
        int w = std::atoi(env);
        if (w >= 1) return w;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 2;
}

namespace geometry_detail {

/// Deterministic parallel map: the work is split by index, results land in
/// preassigned slots, so the output is identical for any worker count.
inline void parallel_for(long n, const std::function<void(long)>& fn) {
    int workers = worker_count();
    if (workers <= 1 || n < 64) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<long> next{0};
    auto run = [&]() {
        const long chunk = 64;
        while (true) {
            long begin = next.fetch_add(chunk);
            if (begin >= n) break;
            long end = std::min(n, begin + chunk);
            for (long i = begin; i < end; ++i) fn(i);
        }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
}

} // namespace geometry_detail

// ---------------------------------------------------------------------------
// imaginary-projection raster

namespace geometry_detail {

/// Hyperplanes of an affine-linear factor tree, when every leaf is linear.
/// `full` is set when some factor has I = R^n.
inline bool collect_hyperplanes(const Oracle& o,
                                std::vector<std::pair<std::vector<Rational>, Rational>>& lines,
                                bool& full) {
    if (!o.factors().empty()) {
        for (const auto& sub : o.factors())
            if (!collect_hyperplanes(*sub, lines, full)) return false;
        return true;
    }
    if (o.is_constant()) return true; // empty projection, contributes nothing
    if (o.shape().kind != SpecialShape::Kind::AffineLinear) return false;
    auto hp = Oracle::linear_hyperplane(o.shape());
    if (!hp) full = true;
    else lines.push_back(std::move(*hp));
    return true;
}

} // namespace geometry_detail

/// Cell centers are tested with the exact oracle where available; numeric
/// fibers may leave Uncertain cells. Hyperplane arrangements (affine-linear
/// polynomials and products of them) have measure-zero imaginary
/// projections, which cell centers almost never hit: those rasters instead
/// mark the cells whose closure meets some hyperplane, exactly.
inline Raster raster_improj(const Oracle& oracle, const Box& box, int resolution,
                            std::uint64_t seed = 0) {
    const int dims = static_cast<int>(box.axes.size());
    if (resolution <= 0) throw std::invalid_argument("raster_improj: resolution must be positive");
    if (dims != 2 && dims != 3) throw std::invalid_argument("raster_improj: 2 or 3 axes required");
    for (const auto& [lo, hi] : box.axes)
        if (!(lo < hi)) throw std::invalid_argument("raster_improj: degenerate box");
    Raster r;
    r.box = box;
    r.resolution = resolution;
    r.dims = dims;
    r.seed = seed;
    r.poly_text = format_poly(oracle.poly());
    r.cells.assign(r.cell_count(), kCellUncertain);

    std::vector<std::pair<std::vector<Rational>, Rational>> lines;
    bool full_factor = false;
    if (geometry_detail::collect_hyperplanes(oracle, lines, full_factor)) {
        r.method = "improj-incidence";
        // cell boundaries per axis
        std::vector<std::vector<Rational>> bounds(dims);
        for (int a = 0; a < dims; ++a) {
            const auto& [lo, hi] = box.axes[a];
            for (int i = 0; i <= resolution; ++i)
                bounds[a].push_back(lo + (hi - lo) * Rational(i, resolution));
        }
        geometry_detail::parallel_for(r.cell_count(), [&](long lin) {
            if (full_factor) {
                r.cells[lin] = kCellIn;
                return;
            }
            std::vector<int> idx = r.unindex(lin);
            bool in = false;
            for (const auto& [sigma, tau] : lines) {
                Rational lo_val = tau, hi_val = tau;
                for (int a = 0; a < dims; ++a) {
                    Rational v1 = sigma[a] * bounds[a][idx[a]];
                    Rational v2 = sigma[a] * bounds[a][idx[a] + 1];
                    lo_val += std::min(v1, v2);
                    hi_val += std::max(v1, v2);
                }
                if (lo_val <= 0 && 0 <= hi_val) {
                    in = true;
                    break;
                }
            }
            r.cells[lin] = in ? kCellIn : kCellOut;
        });
        return r;
    }

    // per-axis center coordinates
    std::vector<std::vector<Rational>> centers(dims);
    for (int a = 0; a < dims; ++a)
        for (int i = 0; i < resolution; ++i) centers[a].push_back(r.center(a, i));

    geometry_detail::parallel_for(r.cell_count(), [&](long lin) {
        std::vector<int> idx = r.unindex(lin);
        std::vector<Rational> y(dims);
        for (int a = 0; a < dims; ++a) y[a] = centers[a][idx[a]];
        MembershipVerdict v = oracle.member(y);
        r.cells[lin] = v.in() ? kCellIn : (v.out() ? kCellOut : kCellUncertain);
    });
    return r;
}

inline Raster raster_improj(const Poly& f, const Box& box, int resolution,
                            std::uint64_t seed = 0) {
    Oracle oracle(f, OracleOptions{seed});
    return raster_improj(oracle, box, resolution, seed);
}

// ---------------------------------------------------------------------------
// amoeba / coamoeba rasters (forward sampling)

struct AmoebaOptions {
    long radial_samples = 600;
    long angular_samples = 600;
    double radial_pad = 1.0; // extra log-range beyond the box
    std::uint64_t seed = 0;
};

namespace geometry_detail {

inline void mark_cell(Raster& r, double cx, double cy) {
    const double lo0 = to_double(r.box.axes[0].first), hi0 = to_double(r.box.axes[0].second);
    const double lo1 = to_double(r.box.axes[1].first), hi1 = to_double(r.box.axes[1].second);
    if (!(cx >= lo0 && cx < hi0 && cy >= lo1 && cy < hi1)) return;
    int i0 = static_cast<int>((cx - lo0) / (hi0 - lo0) * r.resolution);
    int i1 = static_cast<int>((cy - lo1) / (hi1 - lo1) * r.resolution);
    i0 = std::min(std::max(i0, 0), r.resolution - 1);
    i1 = std::min(std::max(i1, 0), r.resolution - 1);
    r.cells[static_cast<long>(i1) * r.resolution + i0] = kCellIn;
}

/// Solve f(z1, .) = 0 for fixed z1; returns roots, or empty on failure.
inline std::vector<std::complex<double>> fiber_roots(const Poly& f, std::complex<double> z1,
                                                     long& failures) {
    const int d2 = f.degree_in(1);
    std::vector<std::complex<double>> c(d2 + 1, {0, 0});
    for (const auto& [e, coef] : f.terms()) {
        std::complex<double> t = coef.to_complex();
        for (int k = 0; k < e[0]; ++k) t *= z1;
        c[e[1]] += t;
    }
    double maxc = 0;
    for (auto v : c) maxc = std::max(maxc, std::abs(v));
    if (maxc == 0.0) return {}; // identically zero fiber: ignore (measure zero)
    int deg = d2;
    while (deg > 0 && std::abs(c[deg]) <= 1e-13 * maxc) --deg;
    if (deg < 1) return {};
    c.resize(deg + 1);
    try {
        return complex_roots(c, 1e-10).roots;
    } catch (const RootFindError&) {
        ++failures;
        return {};
    }
}

} // namespace geometry_detail

/// Forward-sampled amoeba raster over a log-modulus box: gaps at tentacle
/// tips are expected at finite sampling density; root-finder failures are
/// counted, not fatal.
inline Raster raster_amoeba(const Poly& f, const Box& box, int resolution,
                            const AmoebaOptions& opt = {}) {
    if (f.nvars() != 2) throw std::invalid_argument("raster_amoeba: two variables required");
    if (f.terms().size() <= 1) throw std::invalid_argument("raster_amoeba: monomial input");
    Raster r;
    r.box = box;
    r.resolution = resolution;
    r.dims = 2;
    r.seed = opt.seed;
    r.poly_text = format_poly(f);
    r.method = "amoeba";
    r.cells.assign(r.cell_count(), kCellOut);

    // Sample both orientations so every tentacle is swept by the coordinate
    // that parameterizes it well.
    std::vector<Poly> swapped_images{Poly::variable(2, 1), Poly::variable(2, 0)};
    Poly fswap = f.substitute(swapped_images);
    long failures = 0;
    for (int orient = 0; orient < 2; ++orient) {
        const Poly& g = orient == 0 ? f : fswap;
        const int ax = orient;
        const double ulo = to_double(box.axes[ax].first) - opt.radial_pad;
        const double uhi = to_double(box.axes[ax].second) + opt.radial_pad;
        if (g.degree_in(1) < 1) continue;
        for (long iu = 0; iu < opt.radial_samples; ++iu) {
            double u = ulo + (uhi - ulo) * (iu + 0.5) / opt.radial_samples;
            for (long it = 0; it < opt.angular_samples; ++it) {
                double th = 2.0 * M_PI * (it + 0.5) / opt.angular_samples;
                std::complex<double> z1 = std::polar(std::exp(u), th);
                for (auto z2 : geometry_detail::fiber_roots(g, z1, failures)) {
                    double m = std::abs(z2);
                    if (m <= 0.0) continue;
                    if (orient == 0) geometry_detail::mark_cell(r, u, std::log(m));
                    else geometry_detail::mark_cell(r, std::log(m), u);
                }
            }
        }
    }
    return r;
}

/// Coamoeba raster on the argument torus [-pi, pi)^2.
inline Raster raster_coamoeba(const Poly& f, int resolution, const AmoebaOptions& opt = {}) {
    if (f.nvars() != 2) throw std::invalid_argument("raster_coamoeba: two variables required");
    if (f.terms().size() <= 1) throw std::invalid_argument("raster_coamoeba: monomial input");
    Raster r;
    // the torus box is [-pi, pi) up to the dyadic rounding of pi
    r.box.axes = {{Rational(-3217, 1024), Rational(3217, 1024)},
                  {Rational(-3217, 1024), Rational(3217, 1024)}};
    r.resolution = resolution;
    r.dims = 2;
    r.seed = opt.seed;
    r.poly_text = format_poly(f);
    r.method = "coamoeba";
    r.cells.assign(r.cell_count(), kCellOut);

    auto wrap = [](double a) {
        while (a < -M_PI) a += 2 * M_PI;
        while (a >= M_PI) a -= 2 * M_PI;
        return a;
    };
    std::vector<Poly> swapped_images{Poly::variable(2, 1), Poly::variable(2, 0)};
    Poly fswap = f.substitute(swapped_images);
    long failures = 0;
    const double ulo = -4.0 - opt.radial_pad, uhi = 4.0 + opt.radial_pad;
    for (int orient = 0; orient < 2; ++orient) {
        const Poly& g = orient == 0 ? f : fswap;
        if (g.degree_in(1) < 1) continue;
        for (long iu = 0; iu < opt.radial_samples; ++iu) {
            double u = ulo + (uhi - ulo) * (iu + 0.5) / opt.radial_samples;
            for (long it = 0; it < opt.angular_samples; ++it) {
                double th = 2.0 * M_PI * (it + 0.5) / opt.angular_samples - M_PI;
                std::complex<double> z1 = std::polar(std::exp(u), th);
                for (auto z2 : geometry_detail::fiber_roots(g, z1, failures)) {
                    if (std::abs(z2) <= 0.0) continue;
                    if (orient == 0) geometry_detail::mark_cell(r, wrap(th), wrap(std::arg(z2)));
                    else geometry_detail::mark_cell(r, wrap(std::arg(z2)), wrap(th));
                }
            }
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// component analysis

struct Component {
    int id = 0;
    long cells = 0;
    bool touches_box_boundary = false;
    bool bounded_estimate = false;
    enum class Convexity { Pass, Fail, Skipped } convexity = Convexity::Skipped;
    std::array<long, 2> convexity_witness{-1, -1};
    long representative = -1; // linear index of the first cell
};

struct ComponentReport {
    std::vector<Component> components;
    long uncertain_cells = 0;
    int bounded_total = 0;
    int unbounded_total = 0;
};

/// Pairwise midpoint convexity test on one labeled component: for sampled
/// cell pairs the rounded midpoint must be Out or next to an Out cell.
inline Component::Convexity convexity_check(const Raster& r, const std::vector<long>& cells,
                                            std::array<long, 2>& witness, long pairs = 2000,
                                            std::uint64_t seed = 1) {
    if (cells.size() <= 2) return Component::Convexity::Pass;
    auto out_near = [&](const std::vector<int>& idx) {
        // the cell or a Chebyshev-1 neighbour is Out
        std::vector<int> nb(r.dims);
        const int span = 1;
        std::function<bool(int)> scan = [&](int axis) -> bool {
            if (axis == r.dims) {
                for (int a = 0; a < r.dims; ++a)
                    if (nb[a] < 0 || nb[a] >= r.resolution) return false;
                return r.cells[r.index(nb)] == kCellOut;
            }
            for (int d = -span; d <= span; ++d) {
                nb[axis] = idx[axis] + d;
                if (scan(axis + 1)) return true;
            }
            return false;
        };
        return scan(0);
    };
    std::uint64_t st = seed ^ 0x8badf00dull;
    for (long t = 0; t < pairs; ++t) {
        long a = cells[detail::splitmix64(st) % cells.size()];
        long b = cells[detail::splitmix64(st) % cells.size()];
        std::vector<int> ia = r.unindex(a), ib = r.unindex(b), mid(r.dims);
        for (int k = 0; k < r.dims; ++k) mid[k] = (ia[k] + ib[k] + 1) / 2;
        if (!out_near(mid)) {
            witness = {a, b};
            return Component::Convexity::Fail;
        }
    }
    return Component::Convexity::Pass;
}

/// Flood fill over Out cells, 4-connected in 2D (6-connected in 3D).
/// Uncertain cells belong to neither side and are reported separately.
inline ComponentReport components(const Raster& r, bool run_convexity = true,
                                  long convexity_pairs = 2000, std::uint64_t seed = 1) {
    ComponentReport rep;
    const long total = r.cell_count();
    for (long i = 0; i < total; ++i)
        if (r.cells[i] == kCellUncertain) ++rep.uncertain_cells;

    std::vector<int> label(total, 0);
    int next_id = 0;
    std::vector<long> stack;
    for (long seed_cell = 0; seed_cell < total; ++seed_cell) {
        if (r.cells[seed_cell] != kCellOut || label[seed_cell]) continue;
        Component comp;
        comp.id = ++next_id;
        comp.representative = seed_cell;
        std::vector<long> members;
        stack.push_back(seed_cell);
        label[seed_cell] = comp.id;
        while (!stack.empty()) {
            long cur = stack.back();
            stack.pop_back();
            members.push_back(cur);
            std::vector<int> idx = r.unindex(cur);
            for (int a = 0; a < r.dims; ++a) {
                if (idx[a] == 0 || idx[a] == r.resolution - 1) comp.touches_box_boundary = true;
                for (int d = -1; d <= 1; d += 2) {
                    int v = idx[a] + d;
                    if (v < 0 || v >= r.resolution) continue;
                    std::vector<int> nb = idx;
                    nb[a] = v;
                    long lin = r.index(nb);
                    if (r.cells[lin] == kCellOut && !label[lin]) {
                        label[lin] = comp.id;
                        stack.push_back(lin);
                    }
                }
            }
        }
        comp.cells = static_cast<long>(members.size());
        comp.bounded_estimate = !comp.touches_box_boundary;
        if (run_convexity)
            comp.convexity = convexity_check(r, members, comp.convexity_witness, convexity_pairs,
                                             seed + comp.id);
        rep.components.push_back(std::move(comp));
    }
    for (const auto& c : rep.components)
        (c.bounded_estimate ? rep.bounded_total : rep.unbounded_total) += 1;
    return rep;
}

// ---------------------------------------------------------------------------
// exports

/// P5 with byte codes 0 = In, 255 = Out, 128 = Uncertain. Rows run from the
/// top of the image, i.e. decreasing second axis; 3-D rasters are written as
/// vertically stacked slices (lowest third-axis slice first).
inline void write_pgm(const Raster& r, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_pgm: cannot open " + path);
    const int res = r.resolution;
    const int slices = r.dims == 3 ? res : 1;
    os << "P5\n" << res << " " << res * slices << "\n255\n";
    for (int s = slices - 1; s >= 0; --s) {
        for (int row = res - 1; row >= 0; --row) {
            std::vector<std::uint8_t> line(res);
            for (int col = 0; col < res; ++col) {
                long lin = r.dims == 3
                               ? col + static_cast<long>(res) * (row + static_cast<long>(res) * s)
                               : col + static_cast<long>(res) * row;
                line[col] = r.cells[lin];
            }
            os.write(reinterpret_cast<const char*>(line.data()), res);
        }
    }
}

inline nlohmann::json box_json(const Box& b) {
    nlohmann::json axes = nlohmann::json::array();
    for (const auto& [lo, hi] : b.axes) {
        std::ostringstream l, h;
        l << lo;
        h << hi;
        axes.push_back({{"lo", l.str()}, {"hi", h.str()}});
    }
    return axes;
}

inline nlohmann::json component_report_json(const Raster& r, const ComponentReport& rep) {
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& c : rep.components) {
        const char* conv = c.convexity == Component::Convexity::Pass
                               ? "Pass"
                               : (c.convexity == Component::Convexity::Fail ? "Fail" : "Skipped");
        comps.push_back({{"id", c.id},
                         {"cells", c.cells},
                         {"touches_box_boundary", c.touches_box_boundary},
                         {"bounded_estimate", c.bounded_estimate},
                         {"convexity", conv}});
    }
    return {{"poly", r.poly_text},
            {"method", r.method},
            {"resolution", r.resolution},
            {"dims", r.dims},
            {"box", box_json(r.box)},
            {"seed", r.seed},
            {"component_count", rep.components.size()},
            {"bounded", rep.bounded_total},
            {"unbounded", rep.unbounded_total},
            {"uncertain_cells", rep.uncertain_cells},
            {"components", comps}};
}

inline void write_directions_csv(const LimitSet& ls, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_directions_csv: cannot open " + path);
    os << "# improj limit directions\n";
    switch (ls.kind) {
        case LimitSet::Kind::FiniteDirections: {
            os << "# kind: FiniteDirections\n";
            os << "u1,u2\n";
            os.precision(15);
            for (const auto& d : ls.directions) os << d[0] << "," << d[1] << "\n";
            break;
        }
        case LimitSet::Kind::FullSphere:
            os << "# kind: FullSphere\n";
            os << "u1,u2\n";
            break;
        case LimitSet::Kind::CoordinateHyperplanes:
            os << "# kind: CoordinateHyperplanes\n";
            os << "# nvars: " << ls.nvars << "\n";
            os << "u1,u2\n";
            break;
        case LimitSet::Kind::PlaneSections: {
            os << "# kind: PlaneSections (certified subset)\n";
            os << "# plane spanning pairs, one 'Re|Im' row per plane\n";
            for (const auto& [re, im] : ls.planes) {
                for (std::size_t j = 0; j < re.size(); ++j) os << (j ? "," : "") << re[j];
                os << "|";
                for (std::size_t j = 0; j < im.size(); ++j) os << (j ? "," : "") << im[j];
                os << "\n";
            }
            break;
        }
    }
}

} // namespace improj

#endif
