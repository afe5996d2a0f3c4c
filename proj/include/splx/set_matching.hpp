#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "splx/projection.hpp"

namespace splx {

/// The facet multisets of a projected point set after label loss: for each
/// facet j, the L projections with dropped == j in arbitrary order.
struct UnlabeledFacetSets {
    int dim = 0;  // J
    int count = 0;  // L
    std::vector<std::vector<FacetProjection>> per_facet;  // [facet-1][l]
};

/// One recovered labeling: tuple t selects projection index tuples[t][f] on
/// facet f+1. Residuals are |Ceva cycle product - 1| per tuple.
struct MatchAssignment {
    std::vector<std::vector<int>> tuples;
    std::vector<double> residuals;
    std::vector<std::string> degeneracy_notes;
};

constexpr double kCycleTolerance = 1e-6;
constexpr double kFullCompatTolerance = 1e-8;

/// Projects every point onto every facet and discards the tuple structure.
/// Each facet's multiset is independently shuffled with a seeded permutation
/// to model label loss; seed 0 keeps the original order.
UnlabeledFacetSets project_set(const std::vector<BarycentricPoint>& points,
                               std::uint64_t seed = 0);

/// Candidate values for the cycle ratio r_{j,j+1}, one per unlabeled
/// projection on the facet assigned by cycle_ratio_facet(j, J). Outer index
/// is j-1, inner index is the projection's position in that facet multiset.
std::vector<std::vector<double>> candidate_ratio_sets(
    const UnlabeledFacetSets& u);

/// Recovers the lost labels: selects L disjoint tuples, one projection per
/// facet each, whose ratio cycles multiply to 1 within tol, minimizing the
/// total residual.
MatchAssignment match(const UnlabeledFacetSets& u,
                      double tol = kCycleTolerance);

/// Reassembles a full bundle per matched tuple, verifies pairwise
/// compatibility (stronger than the cycle test) and inverts it.
std::vector<BarycentricPoint> reconstruct_set(
    const UnlabeledFacetSets& u, const MatchAssignment& m,
    double compat_tol = kFullCompatTolerance);

}  // namespace splx
