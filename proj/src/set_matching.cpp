#include "splx/set_matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace splx {

namespace {

constexpr double kCoincidentPointTolerance = 1e-7;
constexpr int kMaxEnumeratedAssignments = 5000;

// One tuple candidate: projection index per facet plus its cycle residual.
struct TupleCandidate {
    std::vector<int> facet_index;  // [facet-1] -> index into that multiset
    double residual = 0.0;
};

std::vector<double> point_from_cycle(const std::vector<double>& ratios) {
    const int J = static_cast<int>(ratios.size());
    std::vector<double> pi(static_cast<size_t>(J));
    pi[static_cast<size_t>(J - 1)] = 1.0;
    for (int j = J - 2; j >= 0; --j)
        pi[static_cast<size_t>(j)] =
            ratios[static_cast<size_t>(j)] * pi[static_cast<size_t>(j + 1)];
    double sum = 0.0;
    for (double x : pi) sum += x;
    for (double& x : pi) x /= sum;
    return pi;
}

}  // namespace

UnlabeledFacetSets project_set(const std::vector<BarycentricPoint>& points,
                               std::uint64_t seed) {
    if (points.empty()) {
        throw Error(ErrorCode::DimensionTooSmall, "empty point set");
    }
    const int J = points.front().dim();
    for (const auto& p : points) {
        if (p.dim() != J) {
            throw Error(ErrorCode::MixedDimensions,
                        "points of different dimension in one set");
        }
    }
    UnlabeledFacetSets u;
    u.dim = J;
    u.count = static_cast<int>(points.size());
    u.per_facet.resize(static_cast<size_t>(J));
    for (int j = 1; j <= J; ++j) {
        auto& facet = u.per_facet[static_cast<size_t>(j - 1)];
        facet.reserve(points.size());
        for (const auto& p : points) facet.push_back(perspective_project(p, j));
        if (seed != 0) {
            // Independent permutation per facet; this is the label loss.
            std::mt19937_64 rng(seed + static_cast<std::uint64_t>(j) * 0x9e3779b97f4a7c15ULL);
            std::shuffle(facet.begin(), facet.end(), rng);
        }
    }
    return u;
}

std::vector<std::vector<double>> candidate_ratio_sets(
    const UnlabeledFacetSets& u) {
    const int J = u.dim;
    std::vector<std::vector<double>> sets(static_cast<size_t>(J));
    for (int j = 1; j <= J; ++j) {
        int next = j % J + 1;
        int f = cycle_ratio_facet(j, J);
        const auto& facet = u.per_facet[static_cast<size_t>(f - 1)];
        auto& out = sets[static_cast<size_t>(j - 1)];
        out.reserve(facet.size());
        for (const auto& proj : facet) out.push_back(ratio(proj, j, next));
    }
    return sets;
}

namespace {

// Enumerates tuples (one candidate per ratio set) whose cycle product is
// within tol of 1, with min/max partial-product pruning.
std::vector<TupleCandidate> enumerate_tuples(
    const std::vector<std::vector<double>>& ratio_sets, int J, double tol) {
    std::vector<double> min_tail(static_cast<size_t>(J + 1), 1.0);
    std::vector<double> max_tail(static_cast<size_t>(J + 1), 1.0);
    for (int j = J - 1; j >= 0; --j) {
        const auto& set = ratio_sets[static_cast<size_t>(j)];
        double lo = *std::min_element(set.begin(), set.end());
        double hi = *std::max_element(set.begin(), set.end());
        min_tail[static_cast<size_t>(j)] = min_tail[static_cast<size_t>(j + 1)] * lo;
        max_tail[static_cast<size_t>(j)] = max_tail[static_cast<size_t>(j + 1)] * hi;
    }

    std::vector<TupleCandidate> out;
    std::vector<int> choice(static_cast<size_t>(J), 0);
    auto dfs = [&](auto&& self, int j, double product) -> void {
        if (j == J) {
            double residual = std::abs(product - 1.0);
            if (residual <= tol) {
                TupleCandidate c;
                c.residual = residual;
                // ratio set j draws from facet cycle_ratio_facet(j); store the
                // selection keyed by facet for the disjointness search.
                c.facet_index.assign(static_cast<size_t>(J), -1);
                for (int k = 1; k <= J; ++k) {
                    c.facet_index[static_cast<size_t>(cycle_ratio_facet(k, J) - 1)] =
                        choice[static_cast<size_t>(k - 1)];
                }
                out.push_back(std::move(c));
            }
            return;
        }
        if (product * max_tail[static_cast<size_t>(j)] < 1.0 - tol) return;
        if (product * min_tail[static_cast<size_t>(j)] > 1.0 + tol) return;
        const auto& set = ratio_sets[static_cast<size_t>(j)];
        for (int l = 0; l < static_cast<int>(set.size()); ++l) {
            choice[static_cast<size_t>(j)] = l;
            self(self, j + 1, product * set[static_cast<size_t>(l)]);
        }
    };
    dfs(dfs, 0, 1.0);
    return out;
}

struct Assignment {
    std::vector<int> tuple_ids;  // indices into the candidate list
    double total_residual = 0.0;
};

// Exact minimum-residual disjoint selection: cover every projection index on
// every facet exactly once with L candidate tuples. Enumerates complete
// assignments depth-first (branching on the lowest free index of facet 1),
// keeping the best and a bounded sample of alternatives for ambiguity
// detection.
void search_assignments(const std::vector<TupleCandidate>& candidates, int J,
                        int L, Assignment& best,
                        std::vector<Assignment>& alternatives) {
    // candidates grouped by their facet-1 projection index
    std::vector<std::vector<int>> by_first(static_cast<size_t>(L));
    for (int c = 0; c < static_cast<int>(candidates.size()); ++c) {
        by_first[static_cast<size_t>(candidates[static_cast<size_t>(c)].facet_index[0])]
            .push_back(c);
    }
    std::vector<std::vector<char>> used(
        static_cast<size_t>(J), std::vector<char>(static_cast<size_t>(L), 0));
    std::vector<int> chosen;
    chosen.reserve(static_cast<size_t>(L));
    int enumerated = 0;

    auto dfs = [&](auto&& self, int depth, double sum) -> void {
        if (enumerated >= kMaxEnumeratedAssignments) return;
        if (depth == L) {
            ++enumerated;
            Assignment a{chosen, sum};
            if (best.tuple_ids.empty() || sum < best.total_residual) {
                if (!best.tuple_ids.empty()) alternatives.push_back(best);
                best = std::move(a);
            } else {
                alternatives.push_back(std::move(a));
            }
            return;
        }
        // next facet-1 index to cover
        int target = 0;
        while (used[0][static_cast<size_t>(target)]) ++target;
        for (int c : by_first[static_cast<size_t>(target)]) {
            const auto& cand = candidates[static_cast<size_t>(c)];
            bool free = true;
            for (int f = 0; f < J; ++f) {
                if (used[static_cast<size_t>(f)][static_cast<size_t>(cand.facet_index[static_cast<size_t>(f)])]) {
                    free = false;
                    break;
                }
            }
            if (!free) continue;
            for (int f = 0; f < J; ++f)
                used[static_cast<size_t>(f)][static_cast<size_t>(cand.facet_index[static_cast<size_t>(f)])] = 1;
            chosen.push_back(c);
            self(self, depth + 1, sum + cand.residual);
            chosen.pop_back();
            for (int f = 0; f < J; ++f)
                used[static_cast<size_t>(f)][static_cast<size_t>(cand.facet_index[static_cast<size_t>(f)])] = 0;
        }
    };
    dfs(dfs, 0, 0.0);
}

std::vector<std::vector<double>> assignment_points(
    const UnlabeledFacetSets& u, const std::vector<TupleCandidate>& candidates,
    const Assignment& a) {
    const int J = u.dim;
    std::vector<std::vector<double>> pts;
    pts.reserve(a.tuple_ids.size());
    for (int c : a.tuple_ids) {
        const auto& cand = candidates[static_cast<size_t>(c)];
        std::vector<double> ratios(static_cast<size_t>(J));
        for (int j = 1; j <= J; ++j) {
            int f = cycle_ratio_facet(j, J);
            const auto& proj =
                u.per_facet[static_cast<size_t>(f - 1)]
                           [static_cast<size_t>(cand.facet_index[static_cast<size_t>(f - 1)])];
            ratios[static_cast<size_t>(j - 1)] = ratio(proj, j, j % J + 1);
        }
        pts.push_back(point_from_cycle(ratios));
    }
    return pts;
}

// Multiset equality of reconstructed point lists within tol (greedy match).
bool same_point_multiset(std::vector<std::vector<double>> a,
                         std::vector<std::vector<double>> b, double tol) {
    if (a.size() != b.size()) return false;
    for (const auto& pa : a) {
        bool found = false;
        for (auto it = b.begin(); it != b.end(); ++it) {
            double d = 0.0;
            for (size_t k = 0; k < pa.size(); ++k)
                d = std::max(d, std::abs(pa[k] - (*it)[k]));
            if (d <= tol) {
                b.erase(it);
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

}  // namespace

MatchAssignment match(const UnlabeledFacetSets& u, double tol) {
    const int J = u.dim;
    const int L = u.count;
    if (J < 3) {
        throw Error(ErrorCode::DimensionTooSmall,
                    "set matching requires J >= 3");
    }
    auto ratio_sets = candidate_ratio_sets(u);
    auto candidates = enumerate_tuples(ratio_sets, J, tol);
    // Tolerance ladder: the cycle product is only a necessary condition, so
    // spurious tuples are weeded out by full pairwise compatibility before
    // the disjoint selection.
    std::erase_if(candidates, [&](const TupleCandidate& cand) {
        ProjectionBundle bundle;
        bundle.dim = J;
        for (int f = 1; f <= J; ++f) {
            bundle.projections.push_back(
                u.per_facet[static_cast<size_t>(f - 1)]
                           [static_cast<size_t>(cand.facet_index[static_cast<size_t>(f - 1)])]);
        }
        return !validate_image(bundle, kFullCompatTolerance);
    });
    if (static_cast<int>(candidates.size()) < L) {
        throw Error(ErrorCode::NoFeasibleAssignment,
                    "only " + std::to_string(candidates.size()) +
                        " tuples pass the cycle test, need " + std::to_string(L));
    }
    Assignment best;
    std::vector<Assignment> alternatives;
    search_assignments(candidates, J, L, best, alternatives);
    if (best.tuple_ids.empty()) {
        throw Error(ErrorCode::NoFeasibleAssignment,
                    "no disjoint complete assignment within cycle tolerance " +
                        std::to_string(tol));
    }

    MatchAssignment result;
    auto best_points = assignment_points(u, candidates, best);

    // Alternatives recovering a genuinely different point set mean the input
    // is ambiguous at this tolerance; interchangeable tuples from
    // (near-)coincident points are accepted with a note.
    for (const auto& alt : alternatives) {
        auto alt_points = assignment_points(u, candidates, alt);
        if (!same_point_multiset(best_points, alt_points,
                                 kCoincidentPointTolerance)) {
            std::ostringstream os;
            os << "two disjoint complete assignments within tolerance: "
               << "residual sums " << best.total_residual << " and "
               << alt.total_residual;
            throw Error(ErrorCode::AmbiguousAssignment, os.str());
        }
    }
    for (size_t i = 0; i < best_points.size(); ++i) {
        for (size_t k = i + 1; k < best_points.size(); ++k) {
            double d = 0.0;
            for (size_t c = 0; c < best_points[i].size(); ++c)
                d = std::max(d, std::abs(best_points[i][c] - best_points[k][c]));
            if (d < kCoincidentPointTolerance) {
                std::ostringstream os;
                os << "tuples " << i << " and " << k
                   << " reconstruct coincident points (max diff " << d
                   << "); assignments are interchangeable";
                result.degeneracy_notes.push_back(os.str());
            }
        }
    }

    for (int c : best.tuple_ids) {
        result.tuples.push_back(candidates[static_cast<size_t>(c)].facet_index);
        result.residuals.push_back(candidates[static_cast<size_t>(c)].residual);
    }
    return result;
}

std::vector<BarycentricPoint> reconstruct_set(const UnlabeledFacetSets& u,
                                              const MatchAssignment& m,
                                              double compat_tol) {
    std::vector<BarycentricPoint> out;
    out.reserve(m.tuples.size());
    for (size_t t = 0; t < m.tuples.size(); ++t) {
        ProjectionBundle bundle;
        bundle.dim = u.dim;
        for (int f = 1; f <= u.dim; ++f) {
            bundle.projections.push_back(
                u.per_facet[static_cast<size_t>(f - 1)]
                           [static_cast<size_t>(m.tuples[t][static_cast<size_t>(f - 1)])]);
        }
        if (!validate_image(bundle, compat_tol)) {
            throw Error(ErrorCode::PostMatchIncompatibility,
                        "tuple " + std::to_string(t) +
                            " passed the cycle test but fails full pairwise "
                            "compatibility");
        }
        out.push_back(reconstruct(bundle, compat_tol));
    }
    return out;
}

}  // namespace splx
