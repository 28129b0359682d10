// improj command-line tool: membership queries, quadric classification,
// rasters and component reports, limit directions, stability verdicts, and
// amoeba/coamoeba images.
//
// Exit codes: 0 success, 1 usage error, 2 computational failure.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <improj/asymptotics.hpp>
#include <improj/geometry.hpp>
#include <improj/oracle.hpp>
#include <improj/parse.hpp>
#include <improj/stability.hpp>

using namespace improj;
using nlohmann::json;

namespace {

Rational parse_rational(const std::string& text) {
    std::string s = text;
    bool neg = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        neg = s[0] == '-';
        s = s.substr(1);
    }
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)) && c != '.' && c != '/')
            throw std::invalid_argument("malformed rational: " + text);
    Rational v;
    auto dot = s.find('.');
    auto slash = s.find('/');
    if (dot != std::string::npos) {
        Integer ip = dot == 0 ? Integer(0) : Integer(s.substr(0, dot));
        std::string frac = s.substr(dot + 1);
        if (frac.empty()) throw std::invalid_argument("malformed decimal: " + text);
        Integer den(1);
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        v = Rational(ip) + Rational(Integer(frac), den);
    } else if (slash != std::string::npos) {
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator: " + text);
        v = Rational(num, den);
    } else {
        v = Rational(Integer(s));
    }
    return neg ? -v : v;
}

std::vector<Rational> parse_point(const std::string& text) {
    std::vector<Rational> out;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            out.push_back(parse_rational(cur));
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(parse_rational(cur));
    if (out.empty()) throw std::invalid_argument("empty point");
    return out;
}

Box parse_box(const std::string& text) {
    Box b;
    std::string cur;
    auto flush_axis = [&](const std::string& axis) {
        auto colon = axis.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("box axis needs lo:hi, got '" + axis + "'");
        b.axes.emplace_back(parse_rational(axis.substr(0, colon)),
                            parse_rational(axis.substr(colon + 1)));
    };
    for (char c : text) {
        if (c == ',') {
            flush_axis(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty()) flush_axis(cur);
    return b;
}

std::vector<Poly> load_corpus(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open corpus file " + path);
    std::vector<Poly> out;
    std::string line;
    while (std::getline(is, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        bool blank = true;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
        if (blank) continue;
        out.push_back(parse_poly(line));
    }
    return out;
}

struct CommonConfig {
    std::string poly_text;
    std::vector<std::string> factor_texts;
    std::string corpus_path;
    std::uint64_t seed = 0;

    json echo() const {
        json j{{"seed", seed}};
        if (!poly_text.empty()) j["poly"] = poly_text;
        if (!factor_texts.empty()) j["factors"] = factor_texts;
        if (!corpus_path.empty()) j["corpus"] = corpus_path;
        return j;
    }

    Oracle make_oracle(const OracleOptions& opt) const {
        if (!factor_texts.empty()) {
            std::vector<Poly> fs;
            for (const auto& t : factor_texts) fs.push_back(parse_poly(t));
            return Oracle(std::move(fs), opt);
        }
        if (poly_text.empty()) throw std::invalid_argument("--poly or --factor is required");
        return Oracle(parse_poly(poly_text), opt);
    }
    Poly make_poly() const {
        if (poly_text.empty()) throw std::invalid_argument("--poly is required");
        return parse_poly(poly_text);
    }
};

void add_common(CLI::App* cmd, CommonConfig& cfg, bool with_factors = true) {
    cmd->add_option("--poly", cfg.poly_text, "polynomial expression (z1, z2, ...)");
    if (with_factors)
        cmd->add_option("--factor", cfg.factor_texts,
                        "explicit factor (repeatable); membership is the union over factors");
    cmd->add_option("--seed", cfg.seed, "seed for randomized components")->capture_default_str();
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream os(out_path);
        if (!os) throw std::runtime_error("cannot open " + out_path);
        os << j.dump(2) << "\n";
    }
}

json verdict_json(const MembershipVerdict& v) {
    json j{{"state", to_string(v.state)}, {"method", v.method}};
    if (v.witness) {
        j["witness_x"] = *v.witness;
        j["residual"] = v.residual;
    }
    return j;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"imaginary projections of polynomials: membership, stability, rasters"};
    app.require_subcommand(1);
    app.set_config("--config", "", "optional key=value config file; flags take precedence");

    std::string out_path, report_path, csv_path;

    // --- member ---------------------------------------------------------
    auto* member_cmd = app.add_subcommand("member", "decide whether a point lies in I(f)");
    CommonConfig mc;
    add_common(member_cmd, mc);
    std::string point_text;
    double numeric_tol = 1e-10;
    int numeric_starts = 24;
    member_cmd->add_option("--point", point_text, "imaginary-part point, e.g. 1/2,-3/4")
        ->required();
    member_cmd
        ->add_option("--numeric-tol", numeric_tol, "residual tolerance of the numeric fallback")
        ->capture_default_str();
    member_cmd->add_option("--numeric-starts", numeric_starts, "multistart budget (n >= 3)")
        ->capture_default_str();
    member_cmd->add_option("--out", out_path, "write the JSON verdict here instead of stdout");

    // --- classify --------------------------------------------------------
    auto* classify_cmd = app.add_subcommand("classify", "report shape detection and quadric class");
    CommonConfig cc;
    add_common(classify_cmd, cc, false);
    classify_cmd->add_option("--corpus", cc.corpus_path, "classify every polynomial in a file");
    classify_cmd->add_option("--out", out_path, "output JSON path");

    // --- raster / components ----------------------------------------------
    auto* raster_cmd = app.add_subcommand("raster", "rasterize I(f) over a box");
    auto* components_cmd = app.add_subcommand("components", "component census of the complement");
    CommonConfig rc;
    std::string box_text = "-4:4,-4:4";
    int resolution = 200;
    long convexity_pairs = 2000;
    bool no_convexity = false;
    for (CLI::App* cmd : {raster_cmd, components_cmd}) {
        add_common(cmd, rc);
        cmd->add_option("--box", box_text, "per-axis lo:hi, comma separated")
            ->capture_default_str();
        cmd->add_option("--res", resolution, "cells per axis")->capture_default_str();
        cmd->add_option("--report", report_path, "component report JSON path");
        cmd->add_option("--pairs", convexity_pairs, "convexity sample pairs per component")
            ->capture_default_str();
        cmd->add_flag("--no-convexity", no_convexity, "skip the convexity check");
    }
    raster_cmd->add_option("--out", out_path, "PGM image path");

    // --- limits ------------------------------------------------------------
    auto* limits_cmd = app.add_subcommand("limits", "limit directions at infinity");
    CommonConfig lc;
    add_common(limits_cmd, lc, false);
    bool empirical = false;
    double radius = 100.0;
    long sweep_samples = 720;
    limits_cmd->add_option("--csv", csv_path, "write the direction list CSV here");
    limits_cmd->add_option("--out", out_path, "output JSON path");
    limits_cmd->add_flag("--empirical", empirical, "also run the oracle sweep");
    limits_cmd->add_option("--radius", radius, "sweep radius")->capture_default_str();
    limits_cmd->add_option("--samples", sweep_samples, "sweep sample count")->capture_default_str();

    // --- stability -----------------------------------------------------------
    auto* stability_cmd = app.add_subcommand("stability", "stability certification");
    CommonConfig sc;
    add_common(stability_cmd, sc, false);
    std::string method = "auto";
    std::string direction_text;
    int trials = 64;
    long delta_samples = 100000;
    long budget = 400;
    double margin = 1e-8;
    stability_cmd
        ->add_option("--method", method,
                     "auto|hermite-biehler|direct|braenden|hyperbolicity|projection")
        ->capture_default_str();
    stability_cmd->add_option("--direction", direction_text, "hyperbolicity direction, e.g. 0,0,1");
    stability_cmd->add_option("--trials", trials, "hyperbolicity trials")->capture_default_str();
    stability_cmd->add_option("--samples", delta_samples, "Delta_jk sampling budget")
        ->capture_default_str();
    stability_cmd->add_option("--budget", budget, "projection sampling budget")
        ->capture_default_str();
    stability_cmd->add_option("--margin", margin, "imaginary-part margin of the root oracle")
        ->capture_default_str();
    stability_cmd->add_option("--out", out_path, "output JSON path");

    // --- amoeba / coamoeba ---------------------------------------------------
    auto* amoeba_cmd = app.add_subcommand("amoeba", "forward-sampled amoeba raster");
    auto* coamoeba_cmd = app.add_subcommand("coamoeba", "forward-sampled coamoeba raster");
    CommonConfig ac;
    long samples_r = 600, samples_t = 600;
    for (CLI::App* cmd : {amoeba_cmd, coamoeba_cmd}) {
        add_common(cmd, ac, false);
        cmd->add_option("--res", resolution, "cells per axis")->capture_default_str();
        cmd->add_option("--samples-r", samples_r, "radial samples")->capture_default_str();
        cmd->add_option("--samples-theta", samples_t, "angular samples")->capture_default_str();
        cmd->add_option("--out", out_path, "PGM image path");
        cmd->add_option("--report", report_path, "component report JSON path");
    }
    amoeba_cmd->add_option("--box", box_text, "log-modulus box")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (member_cmd->parsed()) {
            OracleOptions opt;
            opt.seed = mc.seed;
            opt.numeric_tol = numeric_tol;
            opt.numeric_starts = numeric_starts;
            Oracle oracle = mc.make_oracle(opt);
            MembershipVerdict v = oracle.member(parse_point(point_text));
            json j = verdict_json(v);
            j["point"] = point_text;
            j["config"] = mc.echo();
            emit(j, out_path);
        } else if (classify_cmd->parsed()) {
            json j;
            auto describe = [&](const Poly& f) {
                json d;
                SpecialShape s = detect_shape(f);
                switch (s.kind) {
                    case SpecialShape::Kind::AffineLinear: d["shape"] = "AffineLinear"; break;
                    case SpecialShape::Kind::BivariateBilinear:
                        d["shape"] = "BivariateBilinear";
                        break;
                    case SpecialShape::Kind::SplitLinearForm:
                        d["shape"] = "SplitLinearForm";
                        d["split_var"] = s.split_var + 1;
                        break;
                    default: d["shape"] = "Generic";
                }
                if (f.has_real_coefficients() && f.total_degree() == 2) {
                    QuadricForm q = classify_quadric(f);
                    d["quadric"] = {{"family", q.family},
                                    {"p", q.p},
                                    {"r", q.r},
                                    {"scale", q.scale.convert_to<double>()}};
                }
                return d;
            };
            if (!cc.corpus_path.empty()) {
                j["results"] = json::array();
                for (const auto& f : load_corpus(cc.corpus_path)) {
                    json d = describe(f);
                    d["poly"] = format_poly(f);
                    j["results"].push_back(d);
                }
            } else {
                j = describe(cc.make_poly());
            }
            j["config"] = cc.echo();
            emit(j, out_path);
        } else if (raster_cmd->parsed() || components_cmd->parsed()) {
            OracleOptions opt;
            opt.seed = rc.seed;
            Oracle oracle = rc.make_oracle(opt);
            Box box = parse_box(box_text);
            Raster raster = raster_improj(oracle, box, resolution, rc.seed);
            if (raster_cmd->parsed() && !out_path.empty()) write_pgm(raster, out_path);
            ComponentReport rep = components(raster, !no_convexity, convexity_pairs, rc.seed + 1);
            json j = component_report_json(raster, rep);
            j["config"] = rc.echo();
            if (!report_path.empty()) emit(j, report_path);
            else emit(j, "");
        } else if (limits_cmd->parsed()) {
            Poly f = lc.make_poly();
            LimitSet ls = limit_set_bivariate(f);
            json j;
            j["kind"] = ls.kind == LimitSet::Kind::FullSphere ? "FullSphere" : "FiniteDirections";
            json dirs = json::array();
            for (const auto& d : ls.directions) dirs.push_back({d[0], d[1]});
            j["directions"] = dirs;
            if (f.is_multilinear() && !f.coeff(Exponents(f.nvars(), 1)).is_zero()) {
                LimitSet ml = limit_set_multilinear(f);
                j["coordinate_hyperplanes"] = ml.nvars;
                j["unbounded_complement_sectors"] = ml.unbounded_complement_sectors();
            }
            if (empirical) {
                EmpiricalSweep sw = empirical_limit_directions(f, radius, sweep_samples);
                json cl = json::array();
                for (const auto& c : sw.cluster_directions) cl.push_back({c[0], c[1]});
                j["empirical"] = {{"radius", radius},
                                  {"samples", sw.samples},
                                  {"coverage", sw.coverage},
                                  {"clusters", cl}};
            }
            if (!csv_path.empty()) write_directions_csv(ls, csv_path);
            j["config"] = lc.echo();
            emit(j, out_path);
        } else if (stability_cmd->parsed()) {
            Poly f = sc.make_poly();
            json j;
            auto put = [&](const StabilityVerdict& v) {
                j["state"] = to_string(v.state);
                j["method"] = v.method;
                if (v.projection_witness) {
                    json w = json::array();
                    for (const auto& q : *v.projection_witness)
                        w.push_back(q.convert_to<double>());
                    j["projection_witness"] = w;
                }
            };
            if (method == "hermite-biehler") {
                put(hermite_biehler(f));
            } else if (method == "direct") {
                put(direct_root_stability(f, margin, sc.seed));
            } else if (method == "braenden") {
                put(multilinear_stability(f, delta_samples, sc.seed));
            } else if (method == "projection") {
                put(stable_via_projection(f, budget));
            } else if (method == "hyperbolicity") {
                if (direction_text.empty())
                    throw std::invalid_argument("--direction is required for hyperbolicity");
                HyperbolicityVerdict h =
                    hyperbolicity(f, parse_point(direction_text), trials, sc.seed);
                j["state"] = h.state == HyperbolicityVerdict::State::Hyperbolic
                                 ? "Hyperbolic"
                                 : (h.state == HyperbolicityVerdict::State::NotHyperbolic
                                        ? "NotHyperbolic"
                                        : "Unknown");
                j["trials"] = h.trials;
                if (h.witness) {
                    json w = json::array();
                    for (const auto& q : *h.witness) w.push_back(q.convert_to<double>());
                    j["witness"] = w;
                }
                j["method"] = "hyperbolicity";
            } else if (method == "auto") {
                if (f.nvars() <= 1 && f.total_degree() >= 1) put(hermite_biehler(f));
                else if (f.has_real_coefficients() && f.is_multilinear())
                    put(multilinear_stability(f, delta_samples, sc.seed));
                else put(stable_via_projection(f, budget));
            } else {
                throw std::invalid_argument("unknown --method '" + method + "'");
            }
            j["config"] = sc.echo();
            emit(j, out_path);
        } else if (amoeba_cmd->parsed() || coamoeba_cmd->parsed()) {
            Poly f = ac.make_poly();
            AmoebaOptions opt;
            opt.radial_samples = samples_r;
            opt.angular_samples = samples_t;
            opt.seed = ac.seed;
            Raster raster = amoeba_cmd->parsed()
                                ? raster_amoeba(f, parse_box(box_text), resolution, opt)
                                : raster_coamoeba(f, resolution, opt);
            if (!out_path.empty()) write_pgm(raster, out_path);
            if (!report_path.empty()) {
                ComponentReport rep = components(raster, false);
                json j = component_report_json(raster, rep);
                j["config"] = ac.echo();
                emit(j, report_path);
            }
        }
    } catch (const ParseError& e) {
        std::cerr << "polynomial syntax error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const RootFindError& e) {
        std::cerr << "computational failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "computational failure: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
