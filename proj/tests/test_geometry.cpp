#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include <improj/geometry.hpp>

using namespace improj;

namespace {
Poly P(const std::string& s) { return parse_poly(s); }
Box box2(double lo, double hi) {
    return Box::square(Rational(static_cast<int>(lo)), Rational(static_cast<int>(hi)), 2);
}
} // namespace

TEST_CASE("raster basics") {
    // constant 1: empty variety, everything Out
    Raster rc = raster_improj(P("1 + 0*z1*z2"), box2(-2, 2), 16);
    for (auto c : rc.cells) CHECK(c == kCellOut);

    // z1^2 + z2^2 + 1: complement is the open unit disk
    Raster r = raster_improj(P("z1^2 + z2^2 + 1"), box2(-2, 2), 64);
    long in_cells = 0, out_cells = 0;
    for (auto c : r.cells) (c == kCellIn ? in_cells : out_cells)++;
    CHECK(in_cells > 0);
    CHECK(out_cells > 0);
    // the center cell is Out, a boundary cell is In
    CHECK(r.cells[r.index({32, 32})] == kCellOut);
    CHECK(r.cells[r.index({0, 0})] == kCellIn);

    CHECK_THROWS_AS(raster_improj(P("z1 + z2"), box2(-2, 2), 0), std::invalid_argument);
    Box degenerate = box2(-2, 2);
    degenerate.axes[1] = {Rational(1), Rational(1)};
    CHECK_THROWS_AS(raster_improj(P("z1 + z2"), degenerate, 8), std::invalid_argument);
}

TEST_CASE("component census: disk complement has one bounded convex component") {
    Raster r = raster_improj(P("z1^2 + z2^2 + 1"), box2(-2, 2), 101);
    ComponentReport rep = components(r);
    REQUIRE(rep.components.size() == 1);
    CHECK(rep.components[0].bounded_estimate);
    CHECK(rep.components[0].convexity == Component::Convexity::Pass);
    CHECK(rep.bounded_total == 1);
    CHECK(rep.unbounded_total == 0);
}

TEST_CASE("multilinear raster: 4 unbounded components") {
    // odd resolution puts cell centers exactly on the axes
    Raster r = raster_improj(P("z1*z2 + z1 + z2 - 1"), box2(-4, 4), 201);
    ComponentReport rep = components(r);
    CHECK(rep.components.size() == 4);
    CHECK(rep.unbounded_total == 4);
    CHECK(rep.bounded_total == 0);
    for (const auto& c : rep.components) CHECK(c.convexity == Component::Convexity::Pass);
}

TEST_CASE("paper census: 6 convex complement components at unit-test resolution") {
    Raster r = raster_improj(P("z1^2 + z1^2*z2 + 2*z1 + z2 + 1"), box2(-4, 4), 151);
    ComponentReport rep = components(r);
    CHECK(rep.components.size() == 6);
    for (const auto& c : rep.components) CHECK(c.convexity == Component::Convexity::Pass);
}

TEST_CASE("hyperplane product rasters match the count formula") {
    // m generic lines: sum_{k<=2} C(m,k) components; intersections inside box
    std::vector<Poly> factors;
    factors.push_back(P("z1 + z2 - i"));      // y1 + y2 = 1
    factors.push_back(P("z1 - z2 + 3/2i"));   // y1 - y2 = -3/2
    Oracle o2(factors);
    Raster r2 = raster_improj(o2, box2(-4, 4), 151);
    CHECK(r2.method == "improj-incidence");
    CHECK(components(r2, false).components.size() == 4);

    factors.push_back(P("z2 - 1/2i")); // y2 = 1/2
    Oracle o3(factors);
    Raster r3 = raster_improj(o3, box2(-4, 4), 151);
    CHECK(components(r3, false).components.size() == 7);

    // a factor with rank-2 coefficients floods everything
    Oracle ofull(std::vector<Poly>{P("z1 + i*z2"), P("z1 - z2 + 1/5i")});
    Raster rf = raster_improj(ofull, box2(-4, 4), 16);
    for (auto c : rf.cells) CHECK(c == kCellIn);
}

TEST_CASE("trilinear slices: 8 unbounded components in 3D") {
    Oracle o(std::vector<Poly>{P("z1 + 0*z3"), P("z2 + 0*z3"), P("z3")});
    Raster r = raster_improj(o, Box::square(Rational(-4), Rational(4), 3), 21);
    ComponentReport rep = components(r, false);
    CHECK(rep.components.size() == 8);
    CHECK(rep.unbounded_total == 8);
}

TEST_CASE("convexity negative control: synthetic U shape fails") {
    Raster r;
    r.box = box2(0, 16);
    r.resolution = 16;
    r.dims = 2;
    r.cells.assign(256, kCellIn);
    // carve a U: two vertical arms joined at the bottom
    for (int y = 2; y < 14; ++y) {
        for (int x : {3, 4, 11, 12}) r.cells[r.index({x, y})] = kCellOut;
    }
    for (int x = 3; x <= 12; ++x) {
        r.cells[r.index({x, 2})] = kCellOut;
        r.cells[r.index({x, 3})] = kCellOut;
    }
    ComponentReport rep = components(r);
    REQUIRE(rep.components.size() == 1);
    CHECK(rep.components[0].convexity == Component::Convexity::Fail);
    CHECK(rep.components[0].convexity_witness[0] >= 0);

    // single-cell component passes vacuously
    Raster s;
    s.box = box2(0, 4);
    s.resolution = 4;
    s.dims = 2;
    s.cells.assign(16, kCellIn);
    s.cells[s.index({2, 2})] = kCellOut;
    ComponentReport rs = components(s);
    REQUIRE(rs.components.size() == 1);
    CHECK(rs.components[0].convexity == Component::Convexity::Pass);
}

TEST_CASE("raster determinism across worker counts") {
    Poly f = P("z1^2 + z1^2*z2 + 2*z1 + z2 + 1");
    setenv("IMPROJ_WORKERS", "1", 1);
    Raster r1 = raster_improj(f, box2(-4, 4), 64);
    setenv("IMPROJ_WORKERS", "2", 1);
    Raster r2 = raster_improj(f, box2(-4, 4), 64);
    setenv("IMPROJ_WORKERS", "7", 1);
    Raster r7 = raster_improj(f, box2(-4, 4), 64);
    unsetenv("IMPROJ_WORKERS");
    CHECK(r1.cells == r2.cells);
    CHECK(r1.cells == r7.cells);
}

TEST_CASE("amoeba of a linear polynomial") {
    // classical: amoeba of z1 + z2 + 1 has 3 convex complement components
    Raster r = raster_amoeba(P("z1 + z2 + 1"), box2(-4, 4), 48,
                             AmoebaOptions{500, 500, 2.0, 0});
    ComponentReport rep = components(r, false);
    CHECK(rep.components.size() == 3);

    // z1 - z2: the diagonal line log|z1| = log|z2|
    Raster rd = raster_amoeba(P("z1 - z2"), box2(-4, 4), 32, AmoebaOptions{400, 400, 2.0, 0});
    for (int i = 0; i < 32; ++i) {
        CHECK(rd.cells[rd.index({i, i})] == kCellIn);
        if (i + 8 < 32) CHECK(rd.cells[rd.index({i, i + 8})] == kCellOut);
    }

    CHECK_THROWS_AS(raster_amoeba(P("z1*z2"), box2(-4, 4), 16, {}), std::invalid_argument);
}

TEST_CASE("coamoeba of z1 - z2 is the diagonal") {
    Raster r = raster_coamoeba(P("z1 - z2"), 32, AmoebaOptions{300, 300, 1.0, 0});
    int diag_in = 0;
    for (int i = 0; i < 32; ++i)
        if (r.cells[r.index({i, i})] == kCellIn) ++diag_in;
    CHECK(diag_in >= 30); // arguments equal along the diagonal
    CHECK(r.cells[r.index({4, 20})] == kCellOut);
}

TEST_CASE("pgm and json exports") {
    Raster r = raster_improj(P("z1^2 + z2^2 + 1"), box2(-2, 2), 32);
    std::string path = "test_out.pgm";
    write_pgm(r, path);
    std::ifstream is(path, std::ios::binary);
    REQUIRE(is.good());
    std::string magic;
    int w, h, maxv;
    is >> magic >> w >> h >> maxv;
    CHECK(magic == "P5");
    CHECK(w == 32);
    CHECK(h == 32);
    CHECK(maxv == 255);
    is.get();
    std::vector<char> data(static_cast<std::size_t>(w) * h);
    is.read(data.data(), data.size());
    CHECK(is.gcount() == static_cast<std::streamsize>(data.size()));
    std::remove(path.c_str());

    ComponentReport rep = components(r);
    nlohmann::json j = component_report_json(r, rep);
    CHECK(j["component_count"] == 1);
    CHECK(j["components"].is_array());
    CHECK(j["resolution"] == 32);

    LimitSet ls = limit_set_bivariate(P("z1^2 - z2^2 - 1"));
    write_directions_csv(ls, "test_dirs.csv");
    std::ifstream cs("test_dirs.csv");
    std::string line;
    int rows = 0;
    bool header = false;
    while (std::getline(cs, line)) {
        if (line == "u1,u2") header = true;
        else if (!line.empty() && line[0] != '#' && header) ++rows;
    }
    CHECK(rows == 4);
    std::remove("test_dirs.csv");
}
