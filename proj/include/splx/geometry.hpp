#pragma once

#include <span>
#include <vector>

#include "splx/error.hpp"

namespace splx {

constexpr double kSumTolerance = 1e-9;
constexpr double kCompatTolerance = 1e-10;

/// A point in the open simplex: strictly positive weights summing to one.
/// Component indices are 1-based everywhere in the public interface.
class BarycentricPoint {
public:
    enum class Policy { Strict, Renormalize };

    /// Validates `raw` as barycentric coordinates. Strict mode accepts the
    /// weights unchanged and requires the sum to be within kSumTolerance of
    /// one; Renormalize divides by the sum as long as it is within 1e-3 of
    /// one. Neither policy accepts zero or negative components.
    static BarycentricPoint validate(std::span<const double> raw,
                                     Policy policy = Policy::Strict);

    int dim() const { return static_cast<int>(weights_.size()); }
    const std::vector<double>& weights() const { return weights_; }
    double weight(int component) const;  // 1-based

private:
    explicit BarycentricPoint(std::vector<double> w) : weights_(std::move(w)) {}
    std::vector<double> weights_;
};

/// Perspective projection of a point onto the facet opposite vertex
/// `dropped`: the surviving components, renormalized. Surviving labels are
/// {1..J} minus `dropped`, in ascending order.
struct FacetProjection {
    int dim = 0;      // J of the parent simplex
    int dropped = 0;  // 1-based vertex index the projection is about
    std::vector<double> weights;  // J-1 renormalized weights

    std::vector<int> labels() const;
    bool has_label(int component) const;
    double weight_of(int component) const;  // by original component label
};

struct CartesianPoint2D {
    double x = 0.0;
    double y = 0.0;
};

/// Renormalized subvector of `p` on the index set `keep` (1-based labels).
/// Output order follows ascending label order.
std::vector<double> renormalize(const BarycentricPoint& p,
                                const std::vector<int>& keep);
std::vector<double> renormalize(const FacetProjection& p,
                                const std::vector<int>& keep);

/// Ratio of two components, invariant under any renormalization that keeps
/// both labels.
double ratio(const BarycentricPoint& p, int n, int m);
double ratio(const FacetProjection& p, int n, int m);

FacetProjection perspective_project(const BarycentricPoint& p, int j);

/// Two facet points are compatible when their renormalized coordinates agree
/// on the shared surviving labels.
bool is_compatible(const FacetProjection& a, const FacetProjection& b,
                   double tol = kCompatTolerance);

/// Vertices of the regular (J-1)-simplex embedding used for rendering.
/// J=3: equilateral triangle with unit side, v1 at the origin, base
/// horizontal. Larger J is handled by the unfolded-net layout in render.
std::vector<CartesianPoint2D> embed_regular_simplex(int J);

/// Vertices of a regular unit-edge (J-1)-simplex in R^{J-1}; used for
/// segment lengths in density integration.
std::vector<std::vector<double>> regular_simplex_vertices(int J);

}  // namespace splx
