#pragma once

#include <vector>

#include "splx/geometry.hpp"

namespace splx {

/// All J perspective projections of one point; the j-th entry has
/// dropped == j. Valid bundles are pairwise compatible.
struct ProjectionBundle {
    int dim = 0;
    std::vector<FacetProjection> projections;

    const FacetProjection& facet(int j) const;  // dropped == j
};

/// The cycle of consecutive-component ratios r_{1,2}, ..., r_{J-1,J}, r_{J,1}.
/// For ratios extracted from one point the cycle product is 1 (generalized
/// Ceva condition).
struct RatioCycle {
    std::vector<double> ratios;
    bool ill_conditioned = false;  // some ratio outside [1e-12, 1e12]

    double product() const;
};

/// Facet that supplies the cycle ratio r_{j, j+1}: the ratio needs both
/// labels j and j+1 (mod J) surviving, and each facet must contribute
/// exactly one ratio. sigma_-(j+2 mod J) satisfies both for every J >= 3.
int cycle_ratio_facet(int j, int J);

ProjectionBundle project_all(const BarycentricPoint& p);

/// True iff every pair of projections in the bundle is compatible, i.e. the
/// bundle is the image of some single point.
bool validate_image(const ProjectionBundle& b, double tol = kCompatTolerance);

RatioCycle extract_cycle(const ProjectionBundle& b);

/// Inverts the projection. Default path is closed-form back-substitution of
/// the ratio chain; `use_matrix_solver` switches to the explicit JxJ linear
/// system for cross-validation.
BarycentricPoint reconstruct(const ProjectionBundle& b,
                             double tol = kCompatTolerance,
                             bool use_matrix_solver = false);

/// Recovers the original point from two projections onto different facets.
BarycentricPoint reconstruct_from_two(const FacetProjection& a,
                                      const FacetProjection& b,
                                      double tol = kCompatTolerance);

}  // namespace splx
