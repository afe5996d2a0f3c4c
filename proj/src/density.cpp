#include "splx/density.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace splx {

const char* mode_name(MarginalMode mode) {
    return mode == MarginalMode::LineIntegral ? "line_integral" : "pushforward";
}

MarginalMode mode_from_name(const std::string& name) {
    if (name == "line_integral" || name == "line-integral")
        return MarginalMode::LineIntegral;
    if (name == "pushforward") return MarginalMode::Pushforward;
    throw Error(ErrorCode::ParseError, "unknown marginalization mode: " + name);
}

bool DensityGrid::is_boundary_node(size_t index) const {
    for (double c : nodes[index])
        if (c == 0.0) return true;
    return false;
}

double dirichlet_pdf_raw(const DirichletParams& params,
                         std::span<const double> weights) {
    if (static_cast<int>(weights.size()) != params.dim()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "point has " + std::to_string(weights.size()) +
                        " components, alpha has " + std::to_string(params.dim()));
    }
    double alpha_sum = 0.0;
    double log_norm = 0.0;
    for (double a : params.alpha) {
        if (!(a > 0.0)) {
            throw Error(ErrorCode::ValidationError,
                        "Dirichlet concentration parameters must be positive");
        }
        alpha_sum += a;
        log_norm -= std::lgamma(a);
    }
    log_norm += std::lgamma(alpha_sum);
    double log_kernel = 0.0;
    for (size_t j = 0; j < weights.size(); ++j) {
        double pi = weights[j];
        double a = params.alpha[j];
        if (pi == 0.0) {
            if (a > 1.0) return 0.0;
            if (a == 1.0) continue;  // 0^0 term
            return std::numeric_limits<double>::infinity();
        }
        log_kernel += (a - 1.0) * std::log(pi);
    }
    return std::exp(log_norm + log_kernel);
}

double dirichlet_pdf(const DirichletParams& params, const BarycentricPoint& p) {
    if (p.dim() != params.dim()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "point dimension " + std::to_string(p.dim()) +
                        " != alpha dimension " + std::to_string(params.dim()));
    }
    return dirichlet_pdf_raw(params, p.weights());
}

SimplexDensity make_dirichlet_density(const DirichletParams& params) {
    return SimplexDensity{params.dim(),
                          [params](std::span<const double> w) {
                              return dirichlet_pdf_raw(params, w);
                          }};
}

DirichletParams dirichlet_marginal(const DirichletParams& params,
                                   const std::vector<int>& keep) {
    if (keep.empty()) {
        throw Error(ErrorCode::EmptyIndexSet, "marginal over an empty index set");
    }
    std::vector<int> sorted = keep;
    std::sort(sorted.begin(), sorted.end());
    DirichletParams out;
    for (int k : sorted) {
        if (k < 1 || k > params.dim()) {
            throw Error(ErrorCode::IndexOutOfRange,
                        "alpha index " + std::to_string(k) + " out of range");
        }
        out.alpha.push_back(params.alpha[static_cast<size_t>(k - 1)]);
    }
    return out;
}

namespace {

void enumerate_compositions(int parts, int total, std::vector<int>& current,
                            std::vector<std::vector<int>>& out) {
    if (parts == 1) {
        current.push_back(total);
        out.push_back(current);
        current.pop_back();
        return;
    }
    for (int i = 0; i <= total; ++i) {
        current.push_back(i);
        enumerate_compositions(parts - 1, total - i, current, out);
        current.pop_back();
    }
}

int edge_steps(int depth) { return 1 << depth; }

// Node index in the lexicographic enumeration of a triangle grid from its
// first two lattice coordinates.
size_t tri_index(int i, int j, int n) {
    return static_cast<size_t>(i * (n + 1) - i * (i - 1) / 2 + j);
}

}  // namespace

std::vector<std::vector<double>> subdivision_nodes(int J, int facet, int depth) {
    if (depth < 1 || depth > 14) {
        throw Error(ErrorCode::DepthOutOfRange,
                    "subdivision depth must be in [1, 14], got " +
                        std::to_string(depth));
    }
    if (J < 3) {
        throw Error(ErrorCode::DimensionTooSmall,
                    "facet grids need J >= 3");
    }
    if (facet < 1 || facet > J) {
        throw Error(ErrorCode::IndexOutOfRange, "facet index out of range");
    }
    const int n = edge_steps(depth);
    std::vector<std::vector<int>> lattice;
    std::vector<int> current;
    enumerate_compositions(J - 1, n, current, lattice);
    std::vector<std::vector<double>> nodes;
    nodes.reserve(lattice.size());
    for (const auto& comp : lattice) {
        std::vector<double> coords(comp.size());
        for (size_t c = 0; c < comp.size(); ++c)
            coords[c] = static_cast<double>(comp[c]) / n;
        nodes.push_back(std::move(coords));
    }
    return nodes;
}

DensityGrid marginalize(const SimplexDensity& density, int facet, int depth,
                        int accuracy, MarginalMode mode) {
    if (accuracy < 2) {
        throw Error(ErrorCode::AccuracyTooLow,
                    "integration accuracy M must be >= 2");
    }
    const int J = density.dim;
    DensityGrid grid;
    grid.dim = J;
    grid.facet = facet;
    grid.depth = depth;
    grid.mode = mode;
    grid.nodes = subdivision_nodes(J, facet, depth);
    grid.values.resize(grid.nodes.size(), 0.0);

    const int M = accuracy;
    const auto vertices = regular_simplex_vertices(J);
    const auto& apex = vertices[static_cast<size_t>(facet - 1)];

    std::vector<double> x(static_cast<size_t>(J));
    std::vector<double> z_full(static_cast<size_t>(J));
    for (size_t node_idx = 0; node_idx < grid.nodes.size(); ++node_idx) {
        const auto& z = grid.nodes[node_idx];
        // embed the facet node into the full simplex (zero at the apex label)
        size_t c = 0;
        for (int k = 1; k <= J; ++k) {
            z_full[static_cast<size_t>(k - 1)] =
                (k == facet) ? 0.0 : z[c++];
        }
        // |s|: distance from the apex to z in the regular unit-edge embedding
        double d2 = 0.0;
        for (size_t a = 0; a < apex.size(); ++a) {
            double za = 0.0;
            for (int k = 0; k < J; ++k)
                za += z_full[static_cast<size_t>(k)] * vertices[static_cast<size_t>(k)][a];
            double diff = za - apex[a];
            d2 += diff * diff;
        }
        const double seg_len = std::sqrt(d2);

        double acc = 0.0;
        for (int m = 2; m < M; ++m) {  // endpoints carry zero density
            double u = static_cast<double>(m - 1) / (M - 1);  // 0 at the apex
            for (int k = 1; k <= J; ++k) {
                x[static_cast<size_t>(k - 1)] =
                    (k == facet) ? (1.0 - u)
                                 : u * z_full[static_cast<size_t>(k - 1)];
            }
            double p;
            try {
                p = density.eval(x);
            } catch (const std::exception& e) {
                throw Error(ErrorCode::EvalFailure,
                            std::string("density evaluation failed: ") + e.what());
            }
            if (!std::isfinite(p) || p < 0.0) {
                throw Error(ErrorCode::EvalFailure,
                            "density evaluation returned a non-finite or "
                            "negative value at an interior point");
            }
            if (mode == MarginalMode::LineIntegral) {
                acc += p * seg_len / M;
            } else {
                acc += p * std::pow(u, J - 2) / M;
            }
        }
        grid.values[node_idx] = acc;
    }

    if (mode == MarginalMode::Pushforward) {
        double integral = grid_integral(grid);
        if (!(integral > 0.0) || !std::isfinite(integral)) {
            throw Error(ErrorCode::EvalFailure,
                        "pushforward grid has non-positive mass");
        }
        for (double& v : grid.values) v /= integral;
    }
    return grid;
}

double interpolate(const DensityGrid& grid, std::span<const double> x) {
    const int d = grid.facet_dim();
    if (static_cast<int>(x.size()) != grid.dim - 1) {
        throw Error(ErrorCode::OutsideFacet,
                    "query point has wrong coordinate count");
    }
    double sum = 0.0;
    for (double c : x) {
        if (c < -1e-12) {
            throw Error(ErrorCode::OutsideFacet,
                        "query point has a negative facet coordinate");
        }
        sum += c;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw Error(ErrorCode::OutsideFacet,
                    "query coordinates do not sum to one");
    }
    const int n = edge_steps(grid.depth);
    if (d == 1) {
        double u = std::clamp(x[0], 0.0, 1.0) * n;
        int i = std::min(static_cast<int>(u), n - 1);
        double f = u - i;
        return (1.0 - f) * grid.values[static_cast<size_t>(i)] +
               f * grid.values[static_cast<size_t>(i + 1)];
    }
    if (d == 2) {
        double u = std::clamp(x[0], 0.0, 1.0) * n;
        double v = std::clamp(x[1], 0.0, 1.0) * n;
        int i = std::min(static_cast<int>(u), n - 1);
        int j = std::min(static_cast<int>(v), n - 1);
        double f = u - i;
        double g = v - j;
        if (i + j >= n) {
            // lattice node on the far edge; step back into a valid cell
            if (i > 0) { --i; f = 1.0; } else { --j; g = 1.0; }
        }
        if (f + g <= 1.0) {
            return (1.0 - f - g) * grid.values[tri_index(i, j, n)] +
                   f * grid.values[tri_index(i + 1, j, n)] +
                   g * grid.values[tri_index(i, j + 1, n)];
        }
        if (i + j == n - 1) {
            // rounding pushed the point just beyond the far edge of the last
            // cell row; project back onto it
            double s = f + g;
            f /= s;
            g = 1.0 - f;
            return f * grid.values[tri_index(i + 1, j, n)] +
                   g * grid.values[tri_index(i, j + 1, n)];
        }
        return (1.0 - g) * grid.values[tri_index(i + 1, j, n)] +
               (1.0 - f) * grid.values[tri_index(i, j + 1, n)] +
               (f + g - 1.0) * grid.values[tri_index(i + 1, j + 1, n)];
    }
    throw Error(ErrorCode::UnsupportedDimension,
                "interpolation supports edge and triangle facets");
}

DensityGrid recursive_marginalize(const DensityGrid& grid, int sub_facet,
                                  int depth, int accuracy) {
    if (grid.facet_dim() < 2) {
        throw Error(ErrorCode::FacetTooSmall,
                    "a line segment cannot be marginalized further");
    }
    const DensityGrid* parent = &grid;
    SimplexDensity density{
        grid.dim - 1,
        [parent](std::span<const double> w) { return interpolate(*parent, w); }};
    return marginalize(density, sub_facet, depth, accuracy, grid.mode);
}

double grid_integral(const DensityGrid& grid) {
    const int d = grid.facet_dim();
    const int n = edge_steps(grid.depth);
    if (d == 1) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            acc += (grid.values[static_cast<size_t>(i)] +
                    grid.values[static_cast<size_t>(i + 1)]) /
                   (2.0 * n);
        }
        return acc;
    }
    if (d == 2) {
        const double cell_area = 0.5 / (static_cast<double>(n) * n);
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n - i; ++j) {
                acc += cell_area / 3.0 *
                       (grid.values[tri_index(i, j, n)] +
                        grid.values[tri_index(i + 1, j, n)] +
                        grid.values[tri_index(i, j + 1, n)]);
                if (i + j <= n - 2) {
                    acc += cell_area / 3.0 *
                           (grid.values[tri_index(i + 1, j, n)] +
                            grid.values[tri_index(i, j + 1, n)] +
                            grid.values[tri_index(i + 1, j + 1, n)]);
                }
            }
        }
        return acc;
    }
    throw Error(ErrorCode::UnsupportedDimension,
                "quadrature supports edge and triangle facets");
}

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string grid_to_json(const DensityGrid& grid) {
    std::ostringstream os;
    os << "{\"dim\": " << grid.dim << ", \"facet\": " << grid.facet
       << ", \"depth\": " << grid.depth << ", \"mode\": \""
       << mode_name(grid.mode) << "\", \"nodes\": [";
    for (size_t i = 0; i < grid.nodes.size(); ++i) {
        if (i) os << ", ";
        os << "[";
        for (size_t c = 0; c < grid.nodes[i].size(); ++c) {
            if (c) os << ", ";
            os << format_double(grid.nodes[i][c]);
        }
        os << "]";
    }
    os << "], \"values\": [";
    for (size_t i = 0; i < grid.values.size(); ++i) {
        if (i) os << ", ";
        os << format_double(grid.values[i]);
    }
    os << "]}\n";
    return os.str();
}

DensityGrid grid_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw Error(ErrorCode::ParseError,
                    std::string("invalid grid JSON: ") + e.what());
    }
    DensityGrid grid;
    try {
        grid.dim = doc.at("dim").get<int>();
        grid.facet = doc.at("facet").get<int>();
        grid.depth = doc.at("depth").get<int>();
        grid.mode = mode_from_name(doc.at("mode").get<std::string>());
        grid.nodes = doc.at("nodes").get<std::vector<std::vector<double>>>();
        grid.values = doc.at("values").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError,
                    std::string("grid JSON missing fields: ") + e.what());
    }
    if (grid.nodes.size() != grid.values.size()) {
        throw Error(ErrorCode::ParseError,
                    "grid JSON: node and value counts differ");
    }
    return grid;
}

}  // namespace splx
