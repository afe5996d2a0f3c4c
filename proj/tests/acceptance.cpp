// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. argv[1] is the path to the CLI binary (used by the end-to-end
// criterion).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "splx/density.hpp"
#include "splx/io.hpp"
#include "splx/render.hpp"
#include "splx/set_matching.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;
using namespace splx;
using splx::testing::random_simplex_point;

namespace {

int g_failures = 0;

void report(const std::string& name, bool ok, const std::string& detail = "") {
    std::printf("%s: %s%s%s\n", ok ? "PASS" : "FAIL", name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

double inf_norm_diff(const BarycentricPoint& a, const BarycentricPoint& b) {
    double d = 0.0;
    for (int n = 1; n <= a.dim(); ++n)
        d = std::max(d, std::abs(a.weight(n) - b.weight(n)));
    return d;
}

// Greedy multiset comparison under an inf-norm tolerance.
bool same_multiset(const std::vector<BarycentricPoint>& a,
                   const std::vector<BarycentricPoint>& b, double tol) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (const auto& p : a) {
        bool found = false;
        for (size_t i = 0; i < b.size(); ++i) {
            if (used[i] || p.dim() != b[i].dim()) continue;
            if (inf_norm_diff(p, b[i]) < tol) {
                used[i] = true;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

// ---- criteria 1 and 3 share one sample set -------------------------------

std::vector<std::vector<BarycentricPoint>> g_samples;  // per J in {3..8}

void criterion_bijection() {
    std::mt19937_64 rng(2024);
    auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (int J = 3; J <= 8; ++J) {
        std::vector<BarycentricPoint> pts;
        pts.reserve(1000);
        for (int i = 0; i < 1000; ++i) pts.push_back(random_simplex_point(rng, J));
        for (const auto& x : pts) {
            auto back = reconstruct(project_all(x));
            worst = std::max(worst, inf_norm_diff(x, back));
        }
        g_samples.push_back(std::move(pts));
    }
    double elapsed = seconds_since(t0);
    char detail[128];
    std::snprintf(detail, sizeof(detail), "max error %.3e, %.2f s", worst,
                  elapsed);
    report("bijective round trip over 6000 points, J=3..8",
           worst < 1e-10 && elapsed < 5.0, detail);
}

void criterion_two_facets() {
    std::mt19937_64 rng(77);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        auto x = random_simplex_point(rng, 4);
        auto bundle = project_all(x);
        auto full = reconstruct(bundle);
        for (int n = 1; n <= 4; ++n) {
            for (int m = n + 1; m <= 4; ++m) {
                auto two =
                    reconstruct_from_two(bundle.facet(n), bundle.facet(m));
                worst = std::max(worst, inf_norm_diff(full, two));
            }
        }
    }
    char detail[64];
    std::snprintf(detail, sizeof(detail), "max disagreement %.3e", worst);
    report("two projections suffice on all 6 facet pairs, J=4", worst < 1e-10,
           detail);
}

void criterion_cycle_product() {
    double worst = 0.0;
    for (const auto& pts : g_samples) {
        for (const auto& x : pts) {
            auto cycle = extract_cycle(project_all(x));
            worst = std::max(worst, std::abs(cycle.product() - 1.0));
        }
    }
    char detail[64];
    std::snprintf(detail, sizeof(detail), "max |product - 1| %.3e", worst);
    report("ratio cycle product equals one on all sampled points",
           worst < 1e-10, detail);
}

void criterion_set_recovery() {
    std::mt19937_64 rng(909);
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    double worst = 0.0;
    for (int J : {3, 4}) {
        for (int L : {2, 5, 10, 15}) {
            for (int trial = 0; trial < 50 && ok; ++trial) {
                std::vector<BarycentricPoint> pts;
                pts.reserve(static_cast<size_t>(L));
                for (int i = 0; i < L; ++i)
                    pts.push_back(random_simplex_point(rng, J));
                std::uint64_t seed = rng();
                if (seed == 0) seed = 1;
                try {
                    auto sets = project_set(pts, seed);
                    auto assignment = match(sets);
                    auto rec = reconstruct_set(sets, assignment);
                    if (assignment.tuples.size() != static_cast<size_t>(L)) {
                        ok = false;
                        detail = "tuple count != L";
                        break;
                    }
                    if (!same_multiset(pts, rec, 1e-8)) {
                        ok = false;
                        detail = "multiset mismatch";
                        break;
                    }
                    for (size_t i = 0; i < rec.size(); ++i) {
                        // tightest pairing distance for this reconstruction
                        double best = 1e9;
                        for (const auto& p : pts)
                            best = std::min(best, inf_norm_diff(p, rec[i]));
                        worst = std::max(worst, best);
                    }
                } catch (const Error& e) {
                    ok = false;
                    detail = std::string("threw ") + error_code_name(e.code());
                }
            }
        }
    }
    double elapsed = seconds_since(t0);
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s max error %.3e, %.1f s", detail.c_str(),
                  worst, elapsed);
    report("unlabeled set recovery, J in {3,4}, L in {2,5,10,15}, 50 trials",
           ok && elapsed < 60.0, buf);
}

// Independent quadrature oracle for the projected density at a facet node:
// composite Simpson over the segment from the dropped vertex to the node.
double marginal_oracle(const DirichletParams& params, int facet,
                       std::span<const double> node) {
    const int J = params.dim();
    const int steps = 4096;  // even
    auto integrand = [&](double u) {
        std::vector<double> x(static_cast<size_t>(J));
        size_t k = 0;
        for (int n = 1; n <= J; ++n) {
            if (n == facet) {
                x[static_cast<size_t>(n - 1)] = 1.0 - u;
            } else {
                x[static_cast<size_t>(n - 1)] = u * node[k++];
            }
        }
        double p = dirichlet_pdf_raw(params, x);
        if (!std::isfinite(p)) return 0.0;
        return p * std::pow(u, J - 2);
    };
    double h = 1.0 / steps;
    double acc = integrand(0.0) + integrand(1.0);
    for (int i = 1; i < steps; ++i)
        acc += integrand(i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

std::vector<DensityGrid> g_pushforward_grids;

void criterion_dirichlet_validation() {
    DirichletParams params{{2.0, 5.0, 3.0}};
    auto density = make_dirichlet_density(params);
    double push_worst = 0.0;
    double line_worst = 0.0;
    for (int facet = 1; facet <= 3; ++facet) {
        auto push =
            marginalize(density, facet, 10, 1000, MarginalMode::Pushforward);
        auto line =
            marginalize(density, facet, 10, 1000, MarginalMode::LineIntegral);
        for (size_t i = 0; i < push.nodes.size(); ++i) {
            double oracle = marginal_oracle(params, facet, push.nodes[i]);
            push_worst = std::max(push_worst, std::abs(push.values[i] - oracle));
            line_worst = std::max(line_worst, std::abs(line.values[i] - oracle));
        }
        g_pushforward_grids.push_back(std::move(push));
    }
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "pushforward max error %.3e (bound 5e-3); line-integral "
                  "deviation %.3e (reported only)",
                  push_worst, line_worst);
    report("Dirichlet(2,5,3) edge marginals vs quadrature oracle, D=10 M=1000",
           push_worst <= 5e-3, detail);
}

void criterion_normalization() {
    double worst = 0.0;
    for (const auto& grid : g_pushforward_grids)
        worst = std::max(worst, std::abs(grid_integral(grid) - 1.0));
    char detail[64];
    std::snprintf(detail, sizeof(detail), "max |integral - 1| %.3e", worst);
    report("every pushforward grid integrates to one within 1e-3",
           worst <= 1e-3 && !g_pushforward_grids.empty(), detail);
}

void criterion_recursive_marginals() {
    DirichletParams params{{2.0, 5.0, 3.0, 2.0}};
    auto density = make_dirichlet_density(params);
    auto tri = marginalize(density, 4, 8, 500, MarginalMode::Pushforward);
    g_pushforward_grids.push_back(tri);
    double worst = 0.0;
    // dropping local component f keeps the other two original components
    for (int f = 1; f <= 3; ++f) {
        auto edge = recursive_marginalize(tri, f, 8, 500);
        std::vector<double> kept;
        for (int n = 1; n <= 3; ++n)
            if (n != f) kept.push_back(params.alpha[static_cast<size_t>(n - 1)]);
        DirichletParams beta{kept};
        for (size_t i = 0; i < edge.nodes.size(); ++i) {
            double analytic = dirichlet_pdf_raw(beta, edge.nodes[i]);
            worst = std::max(worst, std::abs(edge.values[i] - analytic));
        }
        g_pushforward_grids.push_back(std::move(edge));
    }
    char detail[64];
    std::snprintf(detail, sizeof(detail), "max error %.3e", worst);
    report("recursive edge marginals of Dirichlet(2,5,3,2), D=8 M=500",
           worst < 2e-2, detail);
}

// Intersection of line (p,q) with line (a,b).
CartesianPoint2D line_cross(CartesianPoint2D p, CartesianPoint2D q,
                            CartesianPoint2D a, CartesianPoint2D b) {
    double d1x = q.x - p.x, d1y = q.y - p.y;
    double d2x = b.x - a.x, d2y = b.y - a.y;
    double den = d1x * d2y - d1y * d2x;
    double t = ((a.x - p.x) * d2y - (a.y - p.y) * d2x) / den;
    return {p.x + t * d1x, p.y + t * d1y};
}

void criterion_rendering() {
    auto x = BarycentricPoint::validate(std::vector{0.1, 0.2, 0.3, 0.4});
    FigureSpec spec;
    spec.kind = FigureKind::NetScatter;
    spec.bundles.push_back(project_all(x));
    auto svg1 = render(spec);
    auto svg2 = render(spec);
    bool deterministic = svg1 == svg2 && !svg1.empty();

    auto net = layout_net(4);
    auto tf = net_canvas_transform(spec.style);
    const NetTriangle* central = nullptr;
    for (const auto& tri : net)
        if (tri.facet == 4) central = &tri;

    // marker pixel positions, and check the SVG actually places them there
    auto marker_px = [&](const NetTriangle& tri) {
        return tf.apply(
            facet_point_position(tri, spec.bundles[0].facet(tri.facet)));
    };
    bool in_svg = true;
    for (const auto& tri : net) {
        auto m = marker_px(tri);
        char want[96];
        std::snprintf(want, sizeof(want), "cx=\"%.6f\" cy=\"%.6f\"", m.x, m.y);
        if (svg1.find(want) == std::string::npos) in_svg = false;
    }

    // Adjacent triangles agree on the shared edge: the line from the corner
    // opposite the shared edge through the marker must cross the shared edge
    // at the point fixed by the renormalization onto the two shared labels.
    double worst_px = 0.0;
    for (const auto& tri : net) {
        if (tri.facet == 4) continue;
        // shared labels are the two central labels present in this triangle
        int a_label = 0, b_label = 0;
        CartesianPoint2D ca{}, cb{}, apex{}, copp{};
        for (size_t k = 0; k < 3; ++k) {
            if (tri.labels[k] == 4) {
                apex = tf.apply(tri.corners[k]);
            } else if (a_label == 0) {
                a_label = tri.labels[k];
                ca = tf.apply(tri.corners[k]);
            } else {
                b_label = tri.labels[k];
                cb = tf.apply(tri.corners[k]);
            }
        }
        for (size_t k = 0; k < 3; ++k)
            if (central->labels[k] != a_label && central->labels[k] != b_label)
                copp = tf.apply(central->corners[k]);

        double wa = x.weight(a_label), wb = x.weight(b_label);
        CartesianPoint2D expect{(wa * ca.x + wb * cb.x) / (wa + wb),
                                (wa * ca.y + wb * cb.y) / (wa + wb)};
        auto from_central = line_cross(copp, marker_px(*central), ca, cb);
        auto from_outer = line_cross(apex, marker_px(tri), ca, cb);
        worst_px = std::max(worst_px, std::hypot(from_central.x - expect.x,
                                                 from_central.y - expect.y));
        worst_px = std::max(worst_px, std::hypot(from_outer.x - expect.x,
                                                 from_outer.y - expect.y));
    }
    char detail[128];
    std::snprintf(detail, sizeof(detail),
                  "byte-identical %s, markers in SVG %s, cevian error %.3f px",
                  deterministic ? "yes" : "no", in_svg ? "yes" : "no",
                  worst_px);
    report("rendering is byte deterministic; markers sit on shared cevians",
           deterministic && in_svg && worst_px < 0.5, detail);
}

int run_cli(const std::string& binary, const std::string& args) {
    std::string cmd = "\"" + binary + "\" " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    if (status == -1) return -1;
    return WEXITSTATUS(status);
}

void criterion_cli_round_trip(const std::string& binary) {
    std::mt19937_64 rng(4242);
    fs::path tmp = fs::temp_directory_path() /
                   ("splx_accept_" + std::to_string(rng()));
    fs::create_directories(tmp);

    std::vector<BarycentricPoint> pts;
    for (int i = 0; i < 10; ++i) pts.push_back(random_simplex_point(rng, 4));
    write_points_csv(tmp / "points.csv", pts);

    int rc1 = run_cli(binary, "project --input " + (tmp / "points.csv").string() +
                                  " --output " + (tmp / "run").string() +
                                  " --seed 7");
    int rc2 = run_cli(binary, "match --input " +
                                  (tmp / "run" / "manifest.json").string() +
                                  " --output " + (tmp / "out.csv").string());
    bool ok = rc1 == 0 && rc2 == 0;
    std::string detail;
    if (ok) {
        try {
            auto rec =
                ingest_csv(tmp / "out.csv", BarycentricPoint::Policy::Strict);
            ok = same_multiset(pts, rec, 1e-8);
            if (!ok) detail = "multiset mismatch";
        } catch (const Error& e) {
            ok = false;
            detail = std::string("reading output threw ") +
                     error_code_name(e.code());
        }
    } else {
        detail = "exit codes " + std::to_string(rc1) + "/" + std::to_string(rc2);
    }
    std::error_code ec;
    fs::remove_all(tmp, ec);
    report("CLI project -> shuffle -> match round trip on 10 points", ok,
           detail);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <path-to-cli-binary>\n");
        return 2;
    }
    criterion_bijection();
    criterion_two_facets();
    criterion_cycle_product();
    criterion_set_recovery();
    criterion_dirichlet_validation();
    criterion_normalization();
    criterion_recursive_marginals();
    criterion_rendering();
    criterion_cli_round_trip(argv[1]);
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all 9 criteria passed\n");
    return 0;
}
