#include "splx/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace splx {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonPositiveComponent: return "NonPositiveComponent";
        case ErrorCode::SumOutOfTolerance: return "SumOutOfTolerance";
        case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
        case ErrorCode::EmptyIndexSet: return "EmptyIndexSet";
        case ErrorCode::IndexAbsent: return "IndexAbsent";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::UnsupportedDimensionForRendering:
            return "UnsupportedDimensionForRendering";
        case ErrorCode::IncompatibleBundle: return "IncompatibleBundle";
        case ErrorCode::SingularSystem: return "SingularSystem";
        case ErrorCode::IncompatiblePair: return "IncompatiblePair";
        case ErrorCode::SameFacet: return "SameFacet";
        case ErrorCode::MixedDimensions: return "MixedDimensions";
        case ErrorCode::NoFeasibleAssignment: return "NoFeasibleAssignment";
        case ErrorCode::AmbiguousAssignment: return "AmbiguousAssignment";
        case ErrorCode::PostMatchIncompatibility:
            return "PostMatchIncompatibility";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::DepthOutOfRange: return "DepthOutOfRange";
        case ErrorCode::AccuracyTooLow: return "AccuracyTooLow";
        case ErrorCode::EvalFailure: return "EvalFailure";
        case ErrorCode::OutsideFacet: return "OutsideFacet";
        case ErrorCode::FacetTooSmall: return "FacetTooSmall";
        case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
        case ErrorCode::InconsistentSpec: return "InconsistentSpec";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ValidationError: return "ValidationError";
        case ErrorCode::IoError: return "IoError";
    }
    return "UnknownError";
}

BarycentricPoint BarycentricPoint::validate(std::span<const double> raw,
                                            Policy policy) {
    if (raw.size() < 2) {
        throw Error(ErrorCode::DimensionTooSmall,
                    "barycentric point needs at least 2 components, got " +
                        std::to_string(raw.size()));
    }
    std::vector<double> w(raw.begin(), raw.end());
    const double sum = std::accumulate(w.begin(), w.end(), 0.0);
    if (policy == Policy::Strict) {
        if (std::abs(sum - 1.0) > kSumTolerance) {
            std::ostringstream os;
            os << "weights sum to " << sum << ", outside 1 +/- " << kSumTolerance;
            throw Error(ErrorCode::SumOutOfTolerance, os.str());
        }
    } else {
        if (std::abs(sum - 1.0) > 1e-3) {
            std::ostringstream os;
            os << "weights sum to " << sum
               << ", outside the renormalization window 1 +/- 1e-3";
            throw Error(ErrorCode::SumOutOfTolerance, os.str());
        }
        for (double& x : w) x /= sum;
    }
    for (size_t i = 0; i < w.size(); ++i) {
        // Open simplex: boundary points are rejected in both policies.
        if (!(w[i] > 0.0) || !std::isfinite(w[i]) || w[i] >= 1.0) {
            std::ostringstream os;
            os << "component " << (i + 1) << " = " << w[i]
               << " is not in the open interval (0,1)";
            throw Error(ErrorCode::NonPositiveComponent, os.str());
        }
    }
    return BarycentricPoint(std::move(w));
}

double BarycentricPoint::weight(int component) const {
    if (component < 1 || component > dim()) {
        throw Error(ErrorCode::IndexOutOfRange,
                    "component " + std::to_string(component) +
                        " out of range 1.." + std::to_string(dim()));
    }
    return weights_[static_cast<size_t>(component - 1)];
}

std::vector<int> FacetProjection::labels() const {
    std::vector<int> out;
    out.reserve(static_cast<size_t>(dim - 1));
    for (int k = 1; k <= dim; ++k)
        if (k != dropped) out.push_back(k);
    return out;
}

bool FacetProjection::has_label(int component) const {
    return component >= 1 && component <= dim && component != dropped;
}

double FacetProjection::weight_of(int component) const {
    if (!has_label(component)) {
        throw Error(ErrorCode::IndexAbsent,
                    "component " + std::to_string(component) +
                        " is not a surviving label of facet sigma_-" +
                        std::to_string(dropped));
    }
    size_t pos = static_cast<size_t>(component - 1 - (component > dropped ? 1 : 0));
    return weights[pos];
}

namespace {

template <typename Point>
std::vector<double> renormalize_impl(const Point& p,
                                     const std::vector<int>& keep,
                                     auto&& get_weight) {
    if (keep.empty()) {
        throw Error(ErrorCode::EmptyIndexSet, "renormalize over an empty index set");
    }
    std::vector<int> sorted = keep;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> out;
    out.reserve(sorted.size());
    double sum = 0.0;
    for (int k : sorted) {
        double w = get_weight(p, k);
        out.push_back(w);
        sum += w;
    }
    for (double& x : out) x /= sum;
    return out;
}

}  // namespace

std::vector<double> renormalize(const BarycentricPoint& p,
                                const std::vector<int>& keep) {
    return renormalize_impl(p, keep, [](const BarycentricPoint& q, int k) {
        return q.weight(k);
    });
}

std::vector<double> renormalize(const FacetProjection& p,
                                const std::vector<int>& keep) {
    return renormalize_impl(p, keep, [](const FacetProjection& q, int k) {
        return q.weight_of(k);
    });
}

double ratio(const BarycentricPoint& p, int n, int m) {
    if (n == m) {
        throw Error(ErrorCode::IndexAbsent, "ratio requires two distinct components");
    }
    return p.weight(n) / p.weight(m);
}

double ratio(const FacetProjection& p, int n, int m) {
    if (n == m) {
        throw Error(ErrorCode::IndexAbsent, "ratio requires two distinct components");
    }
    return p.weight_of(n) / p.weight_of(m);
}

FacetProjection perspective_project(const BarycentricPoint& p, int j) {
    if (j < 1 || j > p.dim()) {
        throw Error(ErrorCode::IndexOutOfRange,
                    "projection vertex " + std::to_string(j) +
                        " out of range 1.." + std::to_string(p.dim()));
    }
    FacetProjection out;
    out.dim = p.dim();
    out.dropped = j;
    double sum = 1.0 - p.weight(j);
    out.weights.reserve(static_cast<size_t>(p.dim() - 1));
    for (int k = 1; k <= p.dim(); ++k) {
        if (k == j) continue;
        out.weights.push_back(p.weight(k) / sum);
    }
    return out;
}

bool is_compatible(const FacetProjection& a, const FacetProjection& b,
                   double tol) {
    std::vector<int> shared;
    for (int k : a.labels())
        if (b.has_label(k)) shared.push_back(k);
    if (shared.empty()) return true;
    std::vector<double> ra = renormalize(a, shared);
    std::vector<double> rb = renormalize(b, shared);
    for (size_t i = 0; i < ra.size(); ++i) {
        if (std::abs(ra[i] - rb[i]) > tol) return false;
    }
    return true;
}

std::vector<CartesianPoint2D> embed_regular_simplex(int J) {
    if (J != 3) {
        throw Error(ErrorCode::UnsupportedDimensionForRendering,
                    "direct 2D embedding exists for J=3 only; J=4 uses the "
                    "unfolded net layout");
    }
    return {{0.0, 0.0}, {1.0, 0.0}, {0.5, std::sqrt(3.0) / 2.0}};
}

std::vector<std::vector<double>> regular_simplex_vertices(int J) {
    if (J < 2) {
        throw Error(ErrorCode::DimensionTooSmall, "need J >= 2");
    }
    // Build v_1..v_J in R^{J-1}, pairwise distance 1, incrementally: vertex
    // k+1 sits above the centroid of the first k vertices.
    int d = J - 1;
    std::vector<std::vector<double>> v(static_cast<size_t>(J),
                                       std::vector<double>(static_cast<size_t>(d), 0.0));
    for (int k = 1; k < J; ++k) {
        std::vector<double> centroid(static_cast<size_t>(d), 0.0);
        for (int i = 0; i < k; ++i)
            for (int c = 0; c < d; ++c) centroid[static_cast<size_t>(c)] += v[static_cast<size_t>(i)][static_cast<size_t>(c)] / k;
        double dist2 = 0.0;
        for (int c = 0; c < d; ++c) {
            double diff = v[0][static_cast<size_t>(c)] - centroid[static_cast<size_t>(c)];
            dist2 += diff * diff;
        }
        // |v_{k+1} - v_i| = 1 for all previous i, so the height over the
        // centroid is sqrt(1 - |centroid - v_i|^2).
        double h = std::sqrt(1.0 - dist2);
        v[static_cast<size_t>(k)] = centroid;
        v[static_cast<size_t>(k)][static_cast<size_t>(k - 1)] += h;
    }
    return v;
}

}  // namespace splx
