#pragma once

// Central finite differences over LossSpec::value. The oracle side of every
// gradient contract in the test suite; it must never call the analytic
// backward path.

#include <algorithm>
#include <cmath>
#include <vector>

#include "weakforge/model.hpp"

namespace weakforge::testsupport {

inline std::vector<double> finite_diff_grad(const PolicySnapshot& snap, const LossSpec& loss,
                                            double h = 1e-5) {
    const std::size_t n = snap.params().size();
    std::vector<double> base(snap.params().begin(), snap.params().end());
    std::vector<double> grad(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> plus = base;
        std::vector<double> minus = base;
        plus[i] += h;
        minus[i] -= h;
        const double f_plus = loss.value(PolicySnapshot::from_params(snap.arch(), snap.vocab_hash(), plus));
        const double f_minus = loss.value(PolicySnapshot::from_params(snap.arch(), snap.vocab_hash(), minus));
        grad[i] = (f_plus - f_minus) / (2.0 * h);
    }
    return grad;
}

// Relative error with a floor so near-zero coordinate pairs compare on
// absolute terms.
inline double rel_err(double a, double b, double floor = 1e-3) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

inline double max_rel_err(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, rel_err(a[i], b[i]));
    return worst;
}

}  // namespace weakforge::testsupport
