#include "splx/projection.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

namespace splx {

const FacetProjection& ProjectionBundle::facet(int j) const {
    if (j < 1 || j > dim) {
        throw Error(ErrorCode::IndexOutOfRange,
                    "facet index " + std::to_string(j) + " out of range 1.." +
                        std::to_string(dim));
    }
    return projections[static_cast<size_t>(j - 1)];
}

double RatioCycle::product() const {
    double p = 1.0;
    for (double r : ratios) p *= r;
    return p;
}

int cycle_ratio_facet(int j, int J) {
    return (j + 1) % J + 1;
}

ProjectionBundle project_all(const BarycentricPoint& p) {
    ProjectionBundle b;
    b.dim = p.dim();
    b.projections.reserve(static_cast<size_t>(p.dim()));
    for (int j = 1; j <= p.dim(); ++j) {
        b.projections.push_back(perspective_project(p, j));
    }
    return b;
}

bool validate_image(const ProjectionBundle& b, double tol) {
    for (int n = 1; n <= b.dim; ++n) {
        for (int m = n + 1; m <= b.dim; ++m) {
            if (!is_compatible(b.facet(n), b.facet(m), tol)) return false;
        }
    }
    return true;
}

RatioCycle extract_cycle(const ProjectionBundle& b) {
    const int J = b.dim;
    RatioCycle cycle;
    cycle.ratios.reserve(static_cast<size_t>(J));
    for (int j = 1; j <= J; ++j) {
        int next = j % J + 1;
        double r = ratio(b.facet(cycle_ratio_facet(j, J)), j, next);
        if (r > 1e12 || r < 1e-12) cycle.ill_conditioned = true;
        cycle.ratios.push_back(r);
    }
    return cycle;
}

namespace {

BarycentricPoint solve_from_ratios(const std::vector<double>& ratios,
                                   bool use_matrix_solver) {
    const int J = static_cast<int>(ratios.size());
    std::vector<double> pi(static_cast<size_t>(J));
    if (use_matrix_solver) {
        // Explicit dense system: bidiagonal ratio rows plus the
        // sum-to-one row.
        Eigen::MatrixXd A = Eigen::MatrixXd::Zero(J, J);
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(J);
        for (int j = 0; j < J - 1; ++j) {
            A(j, j) = 1.0;
            A(j, j + 1) = -ratios[static_cast<size_t>(j)];
        }
        A.row(J - 1).setOnes();
        rhs(J - 1) = 1.0;
        Eigen::VectorXd x = A.partialPivLu().solve(rhs);
        for (int j = 0; j < J; ++j) pi[static_cast<size_t>(j)] = x(j);
    } else {
        // Back-substitution: seed the last component with 1, chain the
        // ratios upward, divide by the sum.
        pi[static_cast<size_t>(J - 1)] = 1.0;
        for (int j = J - 2; j >= 0; --j) {
            pi[static_cast<size_t>(j)] =
                ratios[static_cast<size_t>(j)] * pi[static_cast<size_t>(j + 1)];
        }
        double sum = 0.0;
        for (double x : pi) sum += x;
        for (double& x : pi) x /= sum;
    }
    for (double x : pi) {
        if (!std::isfinite(x) || x <= 0.0) {
            throw Error(ErrorCode::SingularSystem,
                        "ratio chain produced a non-finite or non-positive "
                        "component");
        }
    }
    return BarycentricPoint::validate(pi, BarycentricPoint::Policy::Renormalize);
}

}  // namespace

BarycentricPoint reconstruct(const ProjectionBundle& b, double tol,
                             bool use_matrix_solver) {
    if (!validate_image(b, tol)) {
        throw Error(ErrorCode::IncompatibleBundle,
                    "bundle is not the image of a single point at tolerance " +
                        std::to_string(tol));
    }
    RatioCycle cycle = extract_cycle(b);
    return solve_from_ratios(cycle.ratios, use_matrix_solver);
}

BarycentricPoint reconstruct_from_two(const FacetProjection& a,
                                      const FacetProjection& b, double tol) {
    if (a.dim != b.dim) {
        throw Error(ErrorCode::MixedDimensions,
                    "facet projections come from different simplex dimensions");
    }
    if (a.dropped == b.dropped) {
        throw Error(ErrorCode::SameFacet,
                    "two projections onto the same facet cannot recover the "
                    "dropped component");
    }
    if (!is_compatible(a, b, tol)) {
        throw Error(ErrorCode::IncompatiblePair,
                    "projections disagree on shared labels");
    }
    const int J = a.dim;
    const int n = a.dropped;
    // All surviving proportions come from a; the missing component n is fixed
    // by one ratio against a reference label available on b.
    int q = 0;
    for (int k : b.labels()) {
        if (k != n) { q = k; break; }
    }
    std::vector<double> pi(static_cast<size_t>(J), 0.0);
    for (int k : a.labels()) pi[static_cast<size_t>(k - 1)] = a.weight_of(k);
    pi[static_cast<size_t>(n - 1)] =
        ratio(b, n, q) * pi[static_cast<size_t>(q - 1)];
    double sum = 0.0;
    for (double x : pi) sum += x;
    for (double& x : pi) x /= sum;
    return BarycentricPoint::validate(pi, BarycentricPoint::Policy::Renormalize);
}

}  // namespace splx
