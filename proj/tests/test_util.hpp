#pragma once

#include <random>
#include <vector>

#include "splx/geometry.hpp"

namespace splx::testing {

/// Uniform sample from the open simplex (normalized exponentials).
inline BarycentricPoint random_simplex_point(std::mt19937_64& rng, int J) {
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> w(static_cast<size_t>(J));
    for (;;) {
        double sum = 0.0;
        for (double& x : w) {
            x = expo(rng);
            sum += x;
        }
        bool ok = true;
        for (double& x : w) {
            x /= sum;
            if (x <= 1e-12) ok = false;
        }
        if (ok) break;
    }
    return BarycentricPoint::validate(w);
}

inline double max_abs_diff(const std::vector<double>& a,
                           const std::vector<double>& b) {
    double d = 0.0;
    for (size_t i = 0; i < a.size(); ++i)
        d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

}  // namespace splx::testing
