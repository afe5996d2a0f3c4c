#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "splx/density.hpp"
#include "splx/projection.hpp"

namespace splx {

enum class FigureKind { TernaryScatter, NetScatter, NetDensity, EdgeCurves };

struct FigureStyle {
    double width = 720.0;   // px
    double height = 720.0;  // px
    double margin = 48.0;   // px
    double point_radius = 3.5;
    double curve_height = 0.18;  // edge-curve amplitude, fraction of a side
    std::string palette = "viridis";
    std::string curve_palette = "plasma";
    std::uint64_t seed = 0;  // jitter seed
    double jitter = 0.0;     // px; 0 disables jitter
};

/// Figure description; `content` fields are used per kind:
/// TernaryScatter: points (J=3). NetScatter: bundles (J=4).
/// NetDensity: grids (triangle grids of a tetrahedron, keyed by facet).
/// EdgeCurves: grids (edge grids of a triangle, keyed by facet).
struct FigureSpec {
    FigureKind kind = FigureKind::TernaryScatter;
    FigureStyle style;
    std::vector<BarycentricPoint> points;
    std::vector<ProjectionBundle> bundles;
    std::vector<DensityGrid> grids;
};

/// One triangle of the unfolded tetrahedron net: the facet it shows, the
/// component label at each corner (ascending), and the corner positions in
/// unit net coordinates (central triangle has unit sides).
struct NetTriangle {
    int facet = 0;
    std::array<int, 3> labels{};
    std::array<CartesianPoint2D, 3> corners{};
};

/// Unfolded net of the tetrahedron: sigma_-4 in the center (vertices
/// v1 v2 v3), the other three facets folded outward across the shared edges
/// so each outer apex is a copy of v4.
std::vector<NetTriangle> layout_net(int J);

/// Position of a facet point inside a net triangle (unit net coordinates):
/// the weight-average of the triangle corners.
CartesianPoint2D facet_point_position(const NetTriangle& tri,
                                      const FacetProjection& proj);

/// Affine unit-coordinates -> canvas pixels map (uniform scale, y flipped).
struct CanvasTransform {
    double scale = 1.0;
    double offset_x = 0.0;
    double offset_y = 0.0;

    CartesianPoint2D apply(const CartesianPoint2D& p) const {
        return {offset_x + scale * p.x, offset_y - scale * p.y};
    }
};

CanvasTransform net_canvas_transform(const FigureStyle& style);
CanvasTransform ternary_canvas_transform(const FigureStyle& style);

/// Byte-deterministic SVG 1.1 document for the given figure.
std::string render(const FigureSpec& spec);

}  // namespace splx
