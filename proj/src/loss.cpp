#include "chainbench/loss.hpp"

#include <cmath>
#include <vector>

namespace chainbench {

bool verify_regularity(const LossFunction& loss, int resolution, double tolerance) {
    if (resolution < 2) throw std::invalid_argument("verify_regularity: resolution must be >= 2");

    std::vector<double> y(resolution), v(resolution);
    for (int i = 0; i < resolution; ++i) {
        y[i] = static_cast<double>(i) / static_cast<double>(resolution - 1);
        v[i] = loss(y[i]);
    }

    for (int i = 0; i < resolution; ++i) {
        for (int j = i + 1; j < resolution; ++j) {
            const double delta = y[j] - y[i];
            if (loss.regularity() == Regularity::Lipschitz1) {
                if (std::abs(v[j] - v[i]) > delta + tolerance) return false;
            } else {
                // SemiLipschitz: moving right by delta may lower the loss
                // by at most delta.
                if (v[j] < v[i] - delta - tolerance) return false;
            }
        }
    }
    return true;
}

} // namespace chainbench
