#include "splx/render.hpp"

#include <cmath>
#include <set>

#include "doctest.h"
#include "splx/palettes.hpp"
#include "splx/set_matching.hpp"
#include "test_util.hpp"

using namespace splx;

namespace {

bool near(const CartesianPoint2D& a, const CartesianPoint2D& b,
          double tol = 1e-12) {
    return std::abs(a.x - b.x) < tol && std::abs(a.y - b.y) < tol;
}

}  // namespace

TEST_CASE("palette endpoints and monotone index") {
    auto lo = palette_lookup(kViridis, 0.0);
    auto hi = palette_lookup(kViridis, 1.0);
    CHECK(lo.r == kViridis.front().r);
    CHECK(lo.b == kViridis.front().b);
    CHECK(hi.r == kViridis.back().r);
    CHECK(hi.g == kViridis.back().g);
    // viridis runs dark-blue -> yellow: red and green channels climb
    CHECK(hi.r > lo.r);
    CHECK(hi.g > lo.g);
    CHECK(palette_lookup(kPlasma, 0.5).r > 0.0);
    CHECK(to_hex(Rgb{1.0, 1.0, 1.0}) == "#ffffff");
    CHECK(to_hex(Rgb{0.0, 0.0, 0.0}) == "#000000");
    CHECK_THROWS_AS((void)palette_by_name("sunset"), Error);
}

TEST_CASE("net layout: central triangle plus three reflected copies of v4") {
    auto net = layout_net(4);
    REQUIRE(net.size() == 4);
    // each facet appears once
    std::set<int> facets;
    for (const auto& tri : net) facets.insert(tri.facet);
    CHECK(facets == std::set<int>{1, 2, 3, 4});

    const NetTriangle* central = nullptr;
    for (const auto& tri : net)
        if (tri.facet == 4) central = &tri;
    REQUIRE(central != nullptr);
    CHECK(central->labels == std::array<int, 3>{1, 2, 3});
    CHECK(near(central->corners[0], {0.0, 0.0}));
    CHECK(near(central->corners[1], {1.0, 0.0}));
    CHECK(near(central->corners[2], {0.5, std::sqrt(3.0) / 2.0}));

    // every outer triangle shares an edge with the central one and all
    // sides have unit length
    for (const auto& tri : net) {
        for (int a = 0; a < 3; ++a) {
            const auto& p = tri.corners[static_cast<size_t>(a)];
            const auto& q = tri.corners[static_cast<size_t>((a + 1) % 3)];
            double side = std::hypot(p.x - q.x, p.y - q.y);
            CHECK(side == doctest::Approx(1.0).epsilon(1e-12));
        }
        if (tri.facet == 4) continue;
        int shared = 0;
        for (const auto& c : tri.corners)
            for (const auto& d : central->corners)
                if (near(c, d)) ++shared;
        CHECK(shared == 2);
        // the remaining corner is the copy of vertex 4
        for (size_t k = 0; k < 3; ++k)
            if (tri.labels[k] == 4) {
                bool on_central = false;
                for (const auto& d : central->corners)
                    if (near(tri.corners[k], d)) on_central = true;
                CHECK_FALSE(on_central);
            }
    }
    CHECK_THROWS_AS((void)layout_net(5), Error);
}

TEST_CASE("facet point position: corner weights place the point") {
    auto net = layout_net(4);
    const auto& tri = net.front();
    FacetProjection proj;
    proj.dim = 4;
    proj.dropped = tri.facet;
    proj.weights = {1.0, 0.0, 0.0};
    CHECK(near(facet_point_position(tri, proj), tri.corners[0]));
    proj.weights = {1.0 / 3, 1.0 / 3, 1.0 / 3};
    CartesianPoint2D centroid{
        (tri.corners[0].x + tri.corners[1].x + tri.corners[2].x) / 3.0,
        (tri.corners[0].y + tri.corners[1].y + tri.corners[2].y) / 3.0};
    CHECK(near(facet_point_position(tri, proj), centroid, 1e-12));
}

TEST_CASE("ternary scatter is byte deterministic and places the centroid") {
    FigureSpec spec;
    spec.kind = FigureKind::TernaryScatter;
    spec.points.push_back(
        BarycentricPoint::validate(std::vector{1.0 / 3, 1.0 / 3, 1.0 / 3}));
    spec.points.push_back(
        BarycentricPoint::validate(std::vector{0.7, 0.2, 0.1}));
    auto svg1 = render(spec);
    auto svg2 = render(spec);
    CHECK(svg1 == svg2);
    CHECK(svg1.rfind("<?xml", 0) == 0);
    CHECK(svg1.find("</svg>") != std::string::npos);

    // centroid of the unit triangle, mapped through the published transform
    auto tf = ternary_canvas_transform(spec.style);
    auto pos = tf.apply({0.5, std::sqrt(3.0) / 2.0 / 3.0});
    char expect[128];
    std::snprintf(expect, sizeof(expect), "cx=\"%.6f\" cy=\"%.6f\"", pos.x, pos.y);
    CHECK(svg1.find(expect) != std::string::npos);
}

TEST_CASE("net scatter draws one marker per facet per bundle") {
    std::mt19937_64 rng(11);
    FigureSpec spec;
    spec.kind = FigureKind::NetScatter;
    for (int i = 0; i < 3; ++i)
        spec.bundles.push_back(
            project_all(splx::testing::random_simplex_point(rng, 4)));
    auto svg = render(spec);
    CHECK(svg == render(spec));
    size_t circles = 0;
    for (size_t at = svg.find("<circle"); at != std::string::npos;
         at = svg.find("<circle", at + 1))
        ++circles;
    CHECK(circles == 12);  // 3 bundles x 4 net triangles
}

TEST_CASE("net density renders heatmap cells with a scale note") {
    DirichletParams d{{2.0, 3.0, 2.0, 2.0}};
    auto density = make_dirichlet_density(d);
    FigureSpec spec;
    spec.kind = FigureKind::NetDensity;
    for (int j = 1; j <= 4; ++j)
        spec.grids.push_back(
            marginalize(density, j, 3, 64, MarginalMode::Pushforward));
    auto svg = render(spec);
    CHECK(svg == render(spec));
    CHECK(svg.find("<polygon") != std::string::npos);
    CHECK(svg.find("scale") != std::string::npos);
}

TEST_CASE("edge curves use the curve palette and stay deterministic") {
    DirichletParams d{{2.0, 5.0, 3.0}};
    auto density = make_dirichlet_density(d);
    FigureSpec spec;
    spec.kind = FigureKind::EdgeCurves;
    for (int j = 1; j <= 3; ++j)
        spec.grids.push_back(
            marginalize(density, j, 4, 128, MarginalMode::Pushforward));
    auto svg = render(spec);
    CHECK(svg == render(spec));
    CHECK(svg.find("<polyline") != std::string::npos);
}

TEST_CASE("figure validation rejects mismatched content") {
    FigureSpec spec;
    spec.kind = FigureKind::TernaryScatter;
    spec.points.push_back(
        BarycentricPoint::validate(std::vector{0.25, 0.25, 0.25, 0.25}));
    CHECK_THROWS_AS((void)render(spec), Error);

    FigureSpec empty;
    empty.kind = FigureKind::NetDensity;
    CHECK_THROWS_AS((void)render(empty), Error);

    FigureSpec badpal;
    badpal.kind = FigureKind::TernaryScatter;
    badpal.style.palette = "nope";
    badpal.points.push_back(
        BarycentricPoint::validate(std::vector{0.5, 0.25, 0.25}));
    CHECK_THROWS_AS((void)render(badpal), Error);
}
