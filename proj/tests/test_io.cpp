#include "splx/io.hpp"

#include <cstdio>
#include <fstream>
#include <random>

#include "doctest.h"
#include "test_util.hpp"

using namespace splx;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("splx_io_" + std::to_string(std::random_device{}()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
};

void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

}  // namespace

TEST_CASE("csv ingest: plain rows, header, strict validation") {
    TempDir tmp;
    auto csv = tmp.path / "pts.csv";

    write_file(csv, "0.333333333333,0.333333333333,0.333333333334\n"
                    "0.2,0.3,0.5\n");
    auto pts = ingest_csv(csv, BarycentricPoint::Policy::Strict);
    REQUIRE(pts.size() == 2);
    CHECK(pts[1].weight(1) == doctest::Approx(0.2));
    CHECK(pts[1].weight(3) == doctest::Approx(0.5));

    write_file(csv, "c1,c2,c3\n0.2,0.3,0.5\n");
    auto with_header = ingest_csv(csv, BarycentricPoint::Policy::Strict);
    REQUIRE(with_header.size() == 1);
    CHECK(with_header[0].dim() == 3);

    // sums to 0.9: outside the renormalization window, both policies reject
    write_file(csv, "0.2,0.3,0.4\n");
    CHECK_THROWS_AS(
        (void)ingest_csv(csv, BarycentricPoint::Policy::Strict), Error);
    try {
        (void)ingest_csv(csv, BarycentricPoint::Policy::Renormalize);
        FAIL("expected a validation error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ValidationError);
    }

    // small sum drift: strict rejects, renormalize divides by the sum
    write_file(csv, "0.2,0.3,0.5005\n");
    CHECK_THROWS_AS(
        (void)ingest_csv(csv, BarycentricPoint::Policy::Strict), Error);
    auto renorm = ingest_csv(csv, BarycentricPoint::Policy::Renormalize);
    CHECK(renorm[0].weight(1) == doctest::Approx(0.2 / 1.0005));

    write_file(csv, "");
    CHECK_THROWS_AS(
        (void)ingest_csv(csv, BarycentricPoint::Policy::Strict), Error);

    write_file(csv, "0.2,0.3,0.5\n0.2,oops,0.5\n");
    try {
        (void)ingest_csv(csv, BarycentricPoint::Policy::Strict);
        FAIL("expected a parse error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
        CHECK(std::string(e.what()).find("2") != std::string::npos);  // row
    }

    // ragged row widths
    write_file(csv, "0.2,0.3,0.5\n0.5,0.5\n");
    CHECK_THROWS_AS(
        (void)ingest_csv(csv, BarycentricPoint::Policy::Strict), Error);

    CHECK_THROWS_AS(
        (void)ingest_csv(tmp.path / "missing.csv",
                         BarycentricPoint::Policy::Strict),
        Error);
}

TEST_CASE("points csv round trip preserves values exactly") {
    TempDir tmp;
    auto csv = tmp.path / "out.csv";
    std::mt19937_64 rng(5);
    std::vector<BarycentricPoint> pts;
    for (int i = 0; i < 20; ++i)
        pts.push_back(splx::testing::random_simplex_point(rng, 4));
    write_points_csv(csv, pts);
    auto back = ingest_csv(csv, BarycentricPoint::Policy::Strict);
    REQUIRE(back.size() == pts.size());
    for (size_t i = 0; i < pts.size(); ++i)
        for (int n = 1; n <= 4; ++n)
            CHECK(back[i].weight(n) == pts[i].weight(n));  // %.17g exact
}

TEST_CASE("projection run: manifest and facet files round trip") {
    TempDir tmp;
    std::mt19937_64 rng(7);
    std::vector<BarycentricPoint> pts;
    for (int i = 0; i < 6; ++i)
        pts.push_back(splx::testing::random_simplex_point(rng, 4));

    auto sets = project_set(pts, 42);
    write_projection_run(tmp.path, sets, 42, true);

    auto manifest = read_manifest(tmp.path / "manifest.json");
    CHECK(manifest.dim == 4);
    CHECK(manifest.count == 6);
    CHECK(manifest.seed == 42);
    CHECK(manifest.shuffled);
    REQUIRE(manifest.facet_files.size() == 4);
    for (const auto& f : manifest.facet_files)
        CHECK(std::filesystem::exists(tmp.path / f));

    auto back = read_projection_run(tmp.path / "manifest.json");
    CHECK(back.dim == sets.dim);
    CHECK(back.count == sets.count);
    REQUIRE(back.per_facet.size() == sets.per_facet.size());
    for (size_t j = 0; j < sets.per_facet.size(); ++j) {
        REQUIRE(back.per_facet[j].size() == sets.per_facet[j].size());
        for (size_t i = 0; i < sets.per_facet[j].size(); ++i) {
            CHECK(back.per_facet[j][i].dropped == sets.per_facet[j][i].dropped);
            for (size_t c = 0; c < sets.per_facet[j][i].weights.size(); ++c)
                CHECK(back.per_facet[j][i].weights[c] ==
                      sets.per_facet[j][i].weights[c]);
        }
    }

    CHECK_THROWS_AS((void)read_manifest(tmp.path / "nope.json"), Error);
}
