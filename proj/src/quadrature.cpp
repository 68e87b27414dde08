#include "thirring/quadrature.hpp"

#include <numbers>
#include <stdexcept>

namespace thirring {

GaussLegendre::GaussLegendre(int order) {
    if (order < 1) {
        throw std::invalid_argument("GaussLegendre: order must be >= 1");
    }
    nodes_.resize(static_cast<std::size_t>(order));
    weights_.resize(static_cast<std::size_t>(order));
    const int half = (order + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Newton on P_n from the Chebyshev-like initial guess.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double derivative = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            derivative = order * (x * p1 - p0) / (x * x - 1.0);
            const double step = p1 / derivative;
            x -= step;
            if (std::abs(step) < 1e-16) {
                break;
            }
        }
        // Recompute the derivative at the converged root.
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= order; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        derivative = order * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * derivative * derivative);
        nodes_[static_cast<std::size_t>(i)] = -x;
        nodes_[static_cast<std::size_t>(order - 1 - i)] = x;
        weights_[static_cast<std::size_t>(i)] = w;
        weights_[static_cast<std::size_t>(order - 1 - i)] = w;
    }
    if (order % 2 == 1) {
        nodes_[static_cast<std::size_t>(order / 2)] = 0.0;
    }
}

}  // namespace thirring
