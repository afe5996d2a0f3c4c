#include "splx/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>

#include "splx/palettes.hpp"

namespace splx {

namespace {

const double kRoot3Half = std::sqrt(3.0) / 2.0;

std::string fmt(double v) {
    if (v == 0.0) v = 0.0;  // normalize -0
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string svg_header(const FigureStyle& style) {
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
       << fmt(style.width) << "\" height=\"" << fmt(style.height)
       << "\" viewBox=\"0 0 " << fmt(style.width) << " " << fmt(style.height)
       << "\">\n"
       << "<rect x=\"0\" y=\"0\" width=\"" << fmt(style.width)
       << "\" height=\"" << fmt(style.height) << "\" fill=\"#ffffff\"/>\n";
    return os.str();
}

void emit_triangle_outline(std::ostringstream& os,
                           const std::array<CartesianPoint2D, 3>& c,
                           const CanvasTransform& t) {
    os << "<polygon points=\"";
    for (int i = 0; i < 3; ++i) {
        auto p = t.apply(c[static_cast<size_t>(i)]);
        if (i) os << " ";
        os << fmt(p.x) << "," << fmt(p.y);
    }
    os << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
}

void emit_vertex_label(std::ostringstream& os, const CartesianPoint2D& unit,
                       const CanvasTransform& t, int label, double dx,
                       double dy) {
    auto p = t.apply(unit);
    os << "<text x=\"" << fmt(p.x + dx) << "\" y=\"" << fmt(p.y + dy)
       << "\" font-family=\"sans-serif\" font-size=\"14\" fill=\"#333333\">v"
       << label << "</text>\n";
}

void emit_marker(std::ostringstream& os, const CartesianPoint2D& px,
                 double radius, const std::string& color) {
    os << "<circle cx=\"" << fmt(px.x) << "\" cy=\"" << fmt(px.y) << "\" r=\""
       << fmt(radius) << "\" fill=\"" << color << "\" stroke=\"#222222\" "
       << "stroke-width=\"0.5\"/>\n";
}

CanvasTransform fit_box(const FigureStyle& style, double min_x, double max_x,
                        double min_y, double max_y) {
    double usable_w = style.width - 2.0 * style.margin;
    double usable_h = style.height - 2.0 * style.margin;
    double scale = std::min(usable_w / (max_x - min_x), usable_h / (max_y - min_y));
    CanvasTransform t;
    t.scale = scale;
    t.offset_x = style.margin + (usable_w - scale * (max_x - min_x)) / 2.0 -
                 scale * min_x;
    t.offset_y = style.height - style.margin -
                 (usable_h - scale * (max_y - min_y)) / 2.0 + scale * min_y;
    return t;
}

size_t tri_node_index(int i, int j, int n) {
    return static_cast<size_t>(i * (n + 1) - i * (i - 1) / 2 + j);
}

std::string marker_color(const FigureStyle& style, size_t index, size_t total) {
    double t = total > 1 ? static_cast<double>(index) / (total - 1) : 0.5;
    return to_hex(palette_lookup(palette_by_name(style.palette), t));
}

}  // namespace

std::vector<NetTriangle> layout_net(int J) {
    if (J != 4) {
        throw Error(ErrorCode::UnsupportedDimension,
                    "the unfolded net is defined for J = 4");
    }
    const CartesianPoint2D v1{0.0, 0.0};
    const CartesianPoint2D v2{1.0, 0.0};
    const CartesianPoint2D v3{0.5, kRoot3Half};
    // v4 unfolds to three positions, one across each shared edge
    const CartesianPoint2D v4_below{0.5, -kRoot3Half};
    const CartesianPoint2D v4_right{1.5, kRoot3Half};
    const CartesianPoint2D v4_left{-0.5, kRoot3Half};
    return {
        NetTriangle{4, {1, 2, 3}, {v1, v2, v3}},
        NetTriangle{3, {1, 2, 4}, {v1, v2, v4_below}},
        NetTriangle{1, {2, 3, 4}, {v2, v3, v4_right}},
        NetTriangle{2, {1, 3, 4}, {v1, v3, v4_left}},
    };
}

CartesianPoint2D facet_point_position(const NetTriangle& tri,
                                      const FacetProjection& proj) {
    if (proj.dropped != tri.facet) {
        throw Error(ErrorCode::InconsistentSpec,
                    "projection does not belong to this net triangle");
    }
    CartesianPoint2D p{0.0, 0.0};
    for (size_t c = 0; c < 3; ++c) {
        double w = proj.weight_of(tri.labels[c]);
        p.x += w * tri.corners[c].x;
        p.y += w * tri.corners[c].y;
    }
    return p;
}

CanvasTransform net_canvas_transform(const FigureStyle& style) {
    return fit_box(style, -0.5, 1.5, -kRoot3Half, kRoot3Half);
}

CanvasTransform ternary_canvas_transform(const FigureStyle& style) {
    return fit_box(style, 0.0, 1.0, 0.0, kRoot3Half);
}

namespace {

std::string render_ternary_scatter(const FigureSpec& spec) {
    for (const auto& p : spec.points) {
        if (p.dim() != 3) {
            throw Error(ErrorCode::InconsistentSpec,
                        "ternary scatter requires 3-component points");
        }
    }
    const auto verts = embed_regular_simplex(3);
    const auto t = ternary_canvas_transform(spec.style);
    std::ostringstream os;
    os << svg_header(spec.style);
    emit_triangle_outline(os, {verts[0], verts[1], verts[2]}, t);
    emit_vertex_label(os, verts[0], t, 1, -18.0, 14.0);
    emit_vertex_label(os, verts[1], t, 2, 6.0, 14.0);
    emit_vertex_label(os, verts[2], t, 3, -5.0, -8.0);

    std::mt19937_64 rng(spec.style.seed);
    std::uniform_real_distribution<double> offset(-spec.style.jitter,
                                                  spec.style.jitter);
    for (size_t i = 0; i < spec.points.size(); ++i) {
        const auto& w = spec.points[i].weights();
        CartesianPoint2D unit{0.0, 0.0};
        for (size_t c = 0; c < 3; ++c) {
            unit.x += w[c] * verts[c].x;
            unit.y += w[c] * verts[c].y;
        }
        auto px = t.apply(unit);
        if (spec.style.jitter > 0.0) {
            px.x += offset(rng);
            px.y += offset(rng);
        }
        emit_marker(os, px, spec.style.point_radius,
                    marker_color(spec.style, i, spec.points.size()));
    }
    os << "</svg>\n";
    return os.str();
}

std::string render_net_scatter(const FigureSpec& spec) {
    const auto net = layout_net(4);
    const auto t = net_canvas_transform(spec.style);
    std::ostringstream os;
    os << svg_header(spec.style);
    for (const auto& tri : net) emit_triangle_outline(os, tri.corners, t);
    emit_vertex_label(os, {0.0, 0.0}, t, 1, -18.0, 4.0);
    emit_vertex_label(os, {1.0, 0.0}, t, 2, 8.0, 4.0);
    emit_vertex_label(os, {0.5, kRoot3Half}, t, 3, -5.0, -8.0);
    // v4 appears once per outer triangle
    emit_vertex_label(os, {0.5, -kRoot3Half}, t, 4, -5.0, 16.0);
    emit_vertex_label(os, {1.5, kRoot3Half}, t, 4, 8.0, 4.0);
    emit_vertex_label(os, {-0.5, kRoot3Half}, t, 4, -22.0, 4.0);

    std::mt19937_64 rng(spec.style.seed);
    std::uniform_real_distribution<double> offset(-spec.style.jitter,
                                                  spec.style.jitter);
    for (size_t i = 0; i < spec.bundles.size(); ++i) {
        const auto& bundle = spec.bundles[i];
        if (bundle.dim != 4) {
            throw Error(ErrorCode::InconsistentSpec,
                        "net scatter requires 4-component bundles");
        }
        const std::string color =
            marker_color(spec.style, i, spec.bundles.size());
        for (const auto& tri : net) {
            auto px = t.apply(facet_point_position(tri, bundle.facet(tri.facet)));
            if (spec.style.jitter > 0.0) {
                px.x += offset(rng);
                px.y += offset(rng);
            }
            emit_marker(os, px, spec.style.point_radius, color);
        }
    }
    os << "</svg>\n";
    return os.str();
}

std::string render_net_density(const FigureSpec& spec) {
    const auto net = layout_net(4);
    const auto t = net_canvas_transform(spec.style);
    for (const auto& grid : spec.grids) {
        if (grid.dim != 4 || grid.facet_dim() != 2) {
            throw Error(ErrorCode::InconsistentSpec,
                        "net density requires triangle grids of a tetrahedron");
        }
    }
    double vmin = std::numeric_limits<double>::infinity();
    double vmax = -std::numeric_limits<double>::infinity();
    for (const auto& grid : spec.grids) {
        for (double v : grid.values) {
            vmin = std::min(vmin, v);
            vmax = std::max(vmax, v);
        }
    }
    if (!(vmax > vmin)) vmax = vmin + 1.0;
    const auto& table = palette_by_name(spec.style.palette);

    std::ostringstream os;
    os << svg_header(spec.style);
    for (const auto& grid : spec.grids) {
        const NetTriangle* tri = nullptr;
        for (const auto& cand : net)
            if (cand.facet == grid.facet) tri = &cand;
        if (!tri) {
            throw Error(ErrorCode::InconsistentSpec,
                        "grid facet index outside 1..4");
        }
        const int n = 1 << grid.depth;
        auto corner_pos = [&](int i, int j) {
            double a = static_cast<double>(i) / n;
            double b = static_cast<double>(j) / n;
            double c = 1.0 - a - b;
            CartesianPoint2D p;
            p.x = a * tri->corners[0].x + b * tri->corners[1].x + c * tri->corners[2].x;
            p.y = a * tri->corners[0].y + b * tri->corners[1].y + c * tri->corners[2].y;
            return t.apply(p);
        };
        auto emit_cell = [&](std::array<std::pair<int, int>, 3> corners) {
            double mean = 0.0;
            for (auto [i, j] : corners)
                mean += grid.values[tri_node_index(i, j, n)] / 3.0;
            double norm = (mean - vmin) / (vmax - vmin);
            std::string color = to_hex(palette_lookup(table, norm));
            os << "<polygon points=\"";
            bool first = true;
            for (auto [i, j] : corners) {
                auto p = corner_pos(i, j);
                if (!first) os << " ";
                first = false;
                os << fmt(p.x) << "," << fmt(p.y);
            }
            os << "\" fill=\"" << color << "\" stroke=\"none\"/>\n";
        };
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n - i; ++j) {
                emit_cell({{{i, j}, {i + 1, j}, {i, j + 1}}});
                if (i + j <= n - 2)
                    emit_cell({{{i + 1, j}, {i, j + 1}, {i + 1, j + 1}}});
            }
        }
    }
    for (const auto& tri : net) emit_triangle_outline(os, tri.corners, t);
    // annotate the color scale; the palette is normalized per figure
    os << "<text x=\"" << fmt(spec.style.margin) << "\" y=\""
       << fmt(spec.style.height - 8.0)
       << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#333333\">"
       << spec.style.palette << " scale: " << fmt(vmin) << " to " << fmt(vmax)
       << "</text>\n";
    os << "</svg>\n";
    return os.str();
}

std::string render_edge_curves(const FigureSpec& spec) {
    for (const auto& grid : spec.grids) {
        if (grid.dim != 3 || grid.facet_dim() != 1) {
            throw Error(ErrorCode::InconsistentSpec,
                        "edge curves require edge grids of a triangle");
        }
    }
    const auto verts = embed_regular_simplex(3);
    const auto t = ternary_canvas_transform(spec.style);
    double vmax = 0.0;
    for (const auto& grid : spec.grids)
        for (double v : grid.values) vmax = std::max(vmax, v);
    if (!(vmax > 0.0)) vmax = 1.0;
    const auto& table = palette_by_name(spec.style.curve_palette);

    std::ostringstream os;
    os << svg_header(spec.style);
    emit_triangle_outline(os, {verts[0], verts[1], verts[2]}, t);
    emit_vertex_label(os, verts[0], t, 1, -18.0, 14.0);
    emit_vertex_label(os, verts[1], t, 2, 6.0, 14.0);
    emit_vertex_label(os, verts[2], t, 3, -5.0, -8.0);
    const CartesianPoint2D centroid{0.5, kRoot3Half / 3.0};
    for (size_t g = 0; g < spec.grids.size(); ++g) {
        const auto& grid = spec.grids[g];
        // edge opposite vertex `facet`, endpoints in ascending label order
        std::array<int, 2> lab{};
        size_t c = 0;
        for (int k = 1; k <= 3; ++k)
            if (k != grid.facet) lab[c++] = k;
        const auto& a = verts[static_cast<size_t>(lab[0] - 1)];
        const auto& b = verts[static_cast<size_t>(lab[1] - 1)];
        // outward unit normal (away from the centroid)
        double nx = -(b.y - a.y);
        double ny = b.x - a.x;
        double mid_x = (a.x + b.x) / 2.0 - centroid.x;
        double mid_y = (a.y + b.y) / 2.0 - centroid.y;
        if (nx * mid_x + ny * mid_y < 0.0) {
            nx = -nx;
            ny = -ny;
        }
        std::string color = to_hex(palette_lookup(
            table, spec.grids.size() > 1
                       ? static_cast<double>(g) / (spec.grids.size() - 1)
                       : 0.5));
        os << "<polyline points=\"";
        for (size_t i = 0; i < grid.nodes.size(); ++i) {
            double w0 = grid.nodes[i][0];  // weight of the lower label
            double amp = spec.style.curve_height * grid.values[i] / vmax;
            CartesianPoint2D unit{w0 * a.x + (1.0 - w0) * b.x + amp * nx,
                                  w0 * a.y + (1.0 - w0) * b.y + amp * ny};
            auto p = t.apply(unit);
            if (i) os << " ";
            os << fmt(p.x) << "," << fmt(p.y);
        }
        os << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
    }
    os << "<text x=\"" << fmt(spec.style.margin) << "\" y=\""
       << fmt(spec.style.height - 8.0)
       << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#333333\">"
       << "curve scale: 0 to " << fmt(vmax) << "</text>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace

std::string render(const FigureSpec& spec) {
    bool wants_grids = spec.kind == FigureKind::NetDensity ||
                       spec.kind == FigureKind::EdgeCurves;
    if (wants_grids ? spec.grids.empty()
                    : (spec.points.empty() && spec.bundles.empty())) {
        throw Error(ErrorCode::InconsistentSpec,
                    "figure has no content for its kind");
    }
    switch (spec.kind) {
        case FigureKind::TernaryScatter: return render_ternary_scatter(spec);
        case FigureKind::NetScatter: return render_net_scatter(spec);
        case FigureKind::NetDensity: return render_net_density(spec);
        case FigureKind::EdgeCurves: return render_edge_curves(spec);
    }
    throw Error(ErrorCode::InconsistentSpec, "unknown figure kind");
}

}  // namespace splx
