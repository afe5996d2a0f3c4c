#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "splx/density.hpp"
#include "splx/io.hpp"
#include "splx/render.hpp"

namespace fs = std::filesystem;
using namespace splx;

namespace {

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::ParseError:
        case ErrorCode::IoError:
            return 4;
        case ErrorCode::NoFeasibleAssignment:
        case ErrorCode::AmbiguousAssignment:
            return 3;
        default:
            return 2;
    }
}

std::vector<double> parse_alpha(const std::string& text) {
    std::vector<double> alpha;
    std::istringstream is(text);
    std::string field;
    while (std::getline(is, field, ',')) {
        try {
            alpha.push_back(std::stod(field));
        } catch (const std::exception&) {
            throw Error(ErrorCode::ParseError, "bad alpha entry: '" + field + "'");
        }
    }
    if (alpha.size() < 2) {
        throw Error(ErrorCode::ParseError, "--alpha needs at least 2 entries");
    }
    return alpha;
}

BarycentricPoint::Policy parse_policy(const std::string& name) {
    if (name == "strict") return BarycentricPoint::Policy::Strict;
    if (name == "renormalize") return BarycentricPoint::Policy::Renormalize;
    throw Error(ErrorCode::ParseError, "unknown policy: " + name);
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::IoError, "cannot write " + path.string());
    }
    out << content;
}

struct Options {
    std::string input;
    std::string output;
    std::string policy = "strict";
    std::string mode = "pushforward";
    std::string alpha;
    std::string kind;
    std::string facets;  // "n,m" for two-facet reconstruction
    std::vector<std::string> grids;
    std::string report;
    int facet = 1;
    int depth = 6;
    int accuracy = 200;
    double tol_cycle = kCycleTolerance;
    double tol_compat = kFullCompatTolerance;
    std::uint64_t seed = 1;
    bool no_shuffle = false;
    std::string palette = "viridis";
};

void cmd_project(const Options& opt) {
    auto points = ingest_csv(opt.input, parse_policy(opt.policy));
    std::uint64_t seed = opt.no_shuffle ? 0 : opt.seed;
    auto sets = project_set(points, seed);
    write_projection_run(opt.output, sets, seed, seed != 0);
}

void cmd_reconstruct(const Options& opt) {
    auto manifest = read_manifest(opt.input);
    if (manifest.shuffled) {
        throw Error(ErrorCode::ValidationError,
                    "manifest records shuffled facets; row-aligned "
                    "reconstruction is not possible, use 'match'");
    }
    auto sets = read_projection_run(opt.input);
    std::vector<BarycentricPoint> points;
    points.reserve(static_cast<size_t>(sets.count));
    if (!opt.facets.empty()) {
        int n = 0, m = 0;
        if (std::sscanf(opt.facets.c_str(), "%d,%d", &n, &m) != 2) {
            throw Error(ErrorCode::ParseError, "--facets expects 'n,m'");
        }
        for (int l = 0; l < sets.count; ++l) {
            points.push_back(reconstruct_from_two(
                sets.per_facet[static_cast<size_t>(n - 1)][static_cast<size_t>(l)],
                sets.per_facet[static_cast<size_t>(m - 1)][static_cast<size_t>(l)],
                opt.tol_compat));
        }
    } else {
        for (int l = 0; l < sets.count; ++l) {
            ProjectionBundle bundle;
            bundle.dim = sets.dim;
            for (int j = 1; j <= sets.dim; ++j)
                bundle.projections.push_back(
                    sets.per_facet[static_cast<size_t>(j - 1)][static_cast<size_t>(l)]);
            points.push_back(reconstruct(bundle, opt.tol_compat));
        }
    }
    write_points_csv(opt.output, points);
}

void cmd_match(const Options& opt) {
    auto sets = read_projection_run(opt.input);
    auto assignment = match(sets, opt.tol_cycle);
    auto points = reconstruct_set(sets, assignment, opt.tol_compat);
    write_points_csv(opt.output, points);
    nlohmann::json report;
    report["count"] = sets.count;
    report["residuals"] = assignment.residuals;
    report["tuples"] = assignment.tuples;
    report["degeneracy_notes"] = assignment.degeneracy_notes;
    if (!opt.report.empty()) write_text_file(opt.report, report.dump(2) + "\n");
}

void cmd_marginalize(const Options& opt) {
    DirichletParams params{parse_alpha(opt.alpha)};
    auto density = make_dirichlet_density(params);
    auto grid = marginalize(density, opt.facet, opt.depth, opt.accuracy,
                            mode_from_name(opt.mode));
    write_text_file(opt.output, grid_to_json(grid));
}

void cmd_recursive(const Options& opt) {
    std::ifstream in(opt.input);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open " + opt.input);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    auto grid = grid_from_json(buf.str());
    auto out = recursive_marginalize(grid, opt.facet, opt.depth, opt.accuracy);
    write_text_file(opt.output, grid_to_json(out));
}

void cmd_render(const Options& opt) {
    FigureSpec spec;
    spec.style.palette = opt.palette;
    spec.style.seed = opt.seed;
    if (opt.kind == "ternary-scatter") {
        spec.kind = FigureKind::TernaryScatter;
        spec.points = ingest_csv(opt.input, parse_policy(opt.policy));
    } else if (opt.kind == "net-scatter") {
        spec.kind = FigureKind::NetScatter;
        for (const auto& p : ingest_csv(opt.input, parse_policy(opt.policy)))
            spec.bundles.push_back(project_all(p));
    } else if (opt.kind == "net-density" || opt.kind == "edge-curves") {
        spec.kind = opt.kind == "net-density" ? FigureKind::NetDensity
                                              : FigureKind::EdgeCurves;
        for (const auto& path : opt.grids) {
            std::ifstream in(path);
            if (!in) {
                throw Error(ErrorCode::IoError, "cannot open " + path);
            }
            std::stringstream buf;
            buf << in.rdbuf();
            spec.grids.push_back(grid_from_json(buf.str()));
        }
        if (spec.grids.empty()) {
            throw Error(ErrorCode::ValidationError,
                        "--grids required for " + opt.kind);
        }
    } else {
        throw Error(ErrorCode::ParseError, "unknown render kind: " + opt.kind);
    }
    write_text_file(opt.output, render(spec));
}

// Reproduces the Dirichlet benchmark: numeric marginals on every edge of the
// triangle against the analytic two-parameter marginals.
void cmd_validate_dirichlet(const Options& opt) {
    DirichletParams params{parse_alpha(opt.alpha)};
    if (params.dim() != 3) {
        throw Error(ErrorCode::ValidationError,
                    "validate-dirichlet expects a 3-component alpha");
    }
    auto density = make_dirichlet_density(params);
    nlohmann::json report;
    report["alpha"] = params.alpha;
    report["depth"] = opt.depth;
    report["accuracy"] = opt.accuracy;
    auto edges = nlohmann::json::array();
    for (int facet = 1; facet <= 3; ++facet) {
        std::vector<int> keep;
        for (int k = 1; k <= 3; ++k)
            if (k != facet) keep.push_back(k);
        DirichletParams marg = dirichlet_marginal(params, keep);

        auto push = marginalize(density, facet, opt.depth, opt.accuracy,
                                MarginalMode::Pushforward);
        auto line = marginalize(density, facet, opt.depth, opt.accuracy,
                                MarginalMode::LineIntegral);
        double push_err = 0.0, line_err = 0.0;
        for (size_t i = 0; i < push.nodes.size(); ++i) {
            if (push.is_boundary_node(i)) continue;
            double analytic = dirichlet_pdf_raw(marg, push.nodes[i]);
            push_err = std::max(push_err, std::abs(push.values[i] - analytic));
            line_err = std::max(line_err, std::abs(line.values[i] - analytic));
        }
        nlohmann::json edge;
        edge["facet"] = facet;
        edge["marginal_alpha"] = marg.alpha;
        edge["pushforward_max_abs_error"] = push_err;
        edge["line_integral_max_abs_deviation"] = line_err;
        edge["pushforward_integral"] = grid_integral(push);
        edges.push_back(edge);
    }
    report["edges"] = edges;
    std::string text = report.dump(2) + "\n";
    if (!opt.output.empty()) {
        write_text_file(opt.output, text);
    } else {
        std::cout << text;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"simplex projection toolkit: lossless facet projections of "
                 "compositional data, set matching, density marginalization, "
                 "and SVG rendering"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--tol-cycle", opt.tol_cycle, "cycle product tolerance");
        cmd->add_option("--tol-compat", opt.tol_compat,
                        "pairwise compatibility tolerance");
    };

    auto* project = app.add_subcommand("project", "project points onto all facets");
    project->add_option("--input", opt.input, "points CSV")->required();
    project->add_option("--output", opt.output, "output directory")->required();
    project->add_option("--policy", opt.policy, "strict|renormalize");
    project->add_option("--seed", opt.seed, "shuffle seed");
    project->add_flag("--no-shuffle", opt.no_shuffle,
                      "keep per-facet row order aligned with the input");

    auto* reconstruct = app.add_subcommand(
        "reconstruct", "invert projections from an unshuffled run");
    reconstruct->add_option("--input", opt.input, "manifest.json")->required();
    reconstruct->add_option("--output", opt.output, "points CSV")->required();
    reconstruct->add_option("--facets", opt.facets,
                            "'n,m': reconstruct from two facets only");
    add_common(reconstruct);

    auto* match_cmd = app.add_subcommand(
        "match", "recover points from shuffled, unlabeled projections");
    match_cmd->add_option("--input", opt.input, "manifest.json")->required();
    match_cmd->add_option("--output", opt.output, "points CSV")->required();
    match_cmd->add_option("--report", opt.report, "residual report JSON");
    add_common(match_cmd);

    auto* marg = app.add_subcommand("marginalize",
                                    "marginalize a Dirichlet density onto a facet");
    marg->add_option("--alpha", opt.alpha, "comma-separated concentrations")
        ->required();
    marg->add_option("--facet", opt.facet, "facet index (dropped vertex)")
        ->required();
    marg->add_option("--depth", opt.depth, "subdivision depth D")
        ->check(CLI::Range(1, 14));
    marg->add_option("--accuracy", opt.accuracy, "integration accuracy M")
        ->check(CLI::Range(2, 1 << 24));
    marg->add_option("--mode", opt.mode, "line-integral|pushforward");
    marg->add_option("--output", opt.output, "grid JSON")->required();

    auto* rec = app.add_subcommand("recursive",
                                   "marginalize a stored grid one level further");
    rec->add_option("--input", opt.input, "grid JSON")->required();
    rec->add_option("--facet", opt.facet, "component of the grid to drop")
        ->required();
    rec->add_option("--depth", opt.depth, "subdivision depth D")
        ->check(CLI::Range(1, 14));
    rec->add_option("--accuracy", opt.accuracy, "integration accuracy M")
        ->check(CLI::Range(2, 1 << 24));
    rec->add_option("--output", opt.output, "grid JSON")->required();

    auto* render_cmd = app.add_subcommand("render", "emit a deterministic SVG");
    render_cmd
        ->add_option("--kind", opt.kind,
                     "ternary-scatter|net-scatter|net-density|edge-curves")
        ->required();
    render_cmd->add_option("--input", opt.input, "points CSV (scatter kinds)");
    render_cmd->add_option("--grids", opt.grids, "grid JSON files (density kinds)");
    render_cmd->add_option("--output", opt.output, "SVG file")->required();
    render_cmd->add_option("--policy", opt.policy, "strict|renormalize");
    render_cmd->add_option("--palette", opt.palette, "viridis|plasma");
    render_cmd->add_option("--seed", opt.seed, "jitter seed");

    auto* validate = app.add_subcommand(
        "validate-dirichlet",
        "compare numeric edge marginals against analytic Dirichlet marginals");
    validate->add_option("--alpha", opt.alpha, "comma-separated concentrations")
        ->required();
    validate->add_option("--depth", opt.depth, "subdivision depth D")
        ->check(CLI::Range(1, 14));
    validate->add_option("--accuracy", opt.accuracy, "integration accuracy M")
        ->check(CLI::Range(2, 1 << 24));
    validate->add_option("--output", opt.output, "report JSON (stdout if absent)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (project->parsed()) cmd_project(opt);
        if (reconstruct->parsed()) cmd_reconstruct(opt);
        if (match_cmd->parsed()) cmd_match(opt);
        if (marg->parsed()) cmd_marginalize(opt);
        if (rec->parsed()) cmd_recursive(opt);
        if (render_cmd->parsed()) cmd_render(opt);
        if (validate->parsed()) cmd_validate_dirichlet(opt);
    } catch (const Error& e) {
        nlohmann::json err;
        err["error"] = error_code_name(e.code());
        err["message"] = e.what();
        std::cerr << err.dump() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        nlohmann::json err;
        err["error"] = "InternalError";
        err["message"] = e.what();
        std::cerr << err.dump() << "\n";
        return 2;
    }
    return 0;
}
