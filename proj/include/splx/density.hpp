#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "splx/geometry.hpp"

namespace splx {

/// Concentration parameters of a Dirichlet distribution.
struct DirichletParams {
    std::vector<double> alpha;

    int dim() const { return static_cast<int>(alpha.size()); }
};

/// A density over the open simplex with J = dim components. The callable
/// receives raw barycentric weights (closed simplex; boundary points occur
/// at integration segment ends and subdivision boundary nodes) and returns a
/// nonnegative value, +inf for an integrable singularity, or throws.
struct SimplexDensity {
    int dim = 0;
    std::function<double(std::span<const double>)> eval;
};

enum class MarginalMode { LineIntegral, Pushforward };

const char* mode_name(MarginalMode mode);
MarginalMode mode_from_name(const std::string& name);

/// Approximated marginal density on the facet sigma_-facet of a
/// (dim-1)-simplex: a regular barycentric grid of depth `depth` (2^depth
/// steps per edge) with one value per node. Node coordinates are barycentric
/// over the facet's components in ascending label order.
struct DensityGrid {
    int dim = 0;
    int facet = 0;
    int depth = 0;
    MarginalMode mode = MarginalMode::Pushforward;
    std::vector<std::vector<double>> nodes;
    std::vector<double> values;

    int facet_dim() const { return dim - 2; }
    bool is_boundary_node(size_t index) const;
};

/// Dirichlet density with respect to the coordinate patch (pi_1..pi_{J-1});
/// the normalizing constant is Gamma(sum alpha) / prod Gamma(alpha_j).
double dirichlet_pdf(const DirichletParams& params, const BarycentricPoint& p);

/// Same density on raw weights, with closed-simplex boundary rules:
/// a zero component contributes 0 (alpha > 1), is skipped (alpha == 1), or
/// yields +inf (alpha < 1).
double dirichlet_pdf_raw(const DirichletParams& params,
                         std::span<const double> weights);

SimplexDensity make_dirichlet_density(const DirichletParams& params);

/// Marginal of the renormalized subvector: the kept alphas.
DirichletParams dirichlet_marginal(const DirichletParams& params,
                                   const std::vector<int>& keep);

/// Regular barycentric grid on sigma_-facet with 2^depth steps per edge
/// ("depth D" subdivision; a depth-D edge has 2^D intervals and 2^D + 1
/// nodes). Depth above 14 is refused as a memory guard.
std::vector<std::vector<double>> subdivision_nodes(int J, int facet, int depth);

/// Algorithm: for each grid node z, sample M equidistant points on the
/// segment from the opposing vertex to z and accumulate the density.
/// LineIntegral uses the literal weight |s|/M with zeroed segment endpoints.
/// Pushforward weights samples by the ray Jacobian u^(J-2), u being the
/// fractional distance from the vertex, and renormalizes the grid to
/// integrate to one, which makes it the exact density of the projected
/// point.
DensityGrid marginalize(const SimplexDensity& density, int facet, int depth,
                        int accuracy, MarginalMode mode);

/// Linear barycentric interpolation in the enclosing subdivision cell.
/// `x` holds facet barycentric coordinates (dim-1 entries summing to one).
double interpolate(const DensityGrid& grid, std::span<const double> x);

/// Marginalizes a grid one dimension further, with the density supplied by
/// interpolation. The grid's facet is treated as a simplex whose components
/// are renumbered 1..dim-1; sub_facet names the component to drop.
DensityGrid recursive_marginalize(const DensityGrid& grid, int sub_facet,
                                  int depth, int accuracy);

/// Composite affine-cell quadrature of the grid over its facet's coordinate
/// patch (trapezoid on edges, corner-average triangles on triangle facets).
double grid_integral(const DensityGrid& grid);

/// JSON document {dim, facet, depth, mode, nodes, values}; reals are printed
/// with 17 significant digits for a bit-faithful round trip.
std::string grid_to_json(const DensityGrid& grid);
DensityGrid grid_from_json(const std::string& text);

}  // namespace splx
