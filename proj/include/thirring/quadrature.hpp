#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

namespace thirring {

/// Gauss–Legendre rule on [−1, 1].
class GaussLegendre {
public:
    explicit GaussLegendre(int order);

    int order() const { return static_cast<int>(nodes_.size()); }
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }

    /// Composite rule over [a, b] split into `subcells` equal pieces.
    template <class F>
    auto integrate(const F& f, double a, double b, int subcells = 1) const {
        using Value = decltype(f(a));
        Value sum{};
        const double width = (b - a) / subcells;
        for (int c = 0; c < subcells; ++c) {
            const double lo = a + c * width;
            const double half = 0.5 * width;
            const double mid = lo + half;
            Value cell{};
            for (std::size_t i = 0; i < nodes_.size(); ++i) {
                cell += weights_[i] * f(mid + half * nodes_[i]);
            }
            sum += half * cell;
        }
        return sum;
    }

    /// Largest |f| over the composite rule's nodes.
    template <class F>
    double max_abs(const F& f, double a, double b, int subcells = 1) const {
        double best = 0.0;
        const double width = (b - a) / subcells;
        for (int c = 0; c < subcells; ++c) {
            const double mid = a + (c + 0.5) * width;
            for (double node : nodes_) {
                best = std::max(best, static_cast<double>(std::abs(f(mid + 0.5 * width * node))));
            }
        }
        return best;
    }

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

struct GradedOptions {
    int layers = 64;          ///< dyadic layers toward each graded endpoint
    int order = 20;           ///< Gauss–Legendre points per cell
    int subcells = 1;         ///< equal cells per layer
    bool extrapolate_tail = true;
};

template <class Value>
struct GradedResult {
    Value value{};
    Value tail{};             ///< geometric estimate of the unresolved innermost piece
    double last_ratio = 0.0;  ///< |c_J| / |c_{J−1}| of the last two layers
    bool divergent = false;
    double sup_abs = 0.0;     ///< largest |f| seen at a quadrature node
};

namespace detail {

template <class Value>
double magnitude(const Value& v) {
    return static_cast<double>(std::abs(v));
}

// ∫ over the interval between `end` and `other`, with cells
// [end + h 2^{−j−1}, end + h 2^{−j}], h = other − end.
template <class F>
auto integrate_toward(const F& f, double end, double other, const GradedOptions& opts,
                      const GaussLegendre& rule) {
    using Value = decltype(f(end));
    GradedResult<Value> result;
    const double h = other - end;
    if (h == 0.0) {
        return result;
    }
    Value previous{};
    Value last{};
    int used = 0;
    // Below ~1000 ulp of `end` the cell widths are quantised and the layer
    // ratio stops being 1/2; the tail estimate covers the rest.
    const double width_floor =
        std::max(1024.0 * std::numeric_limits<double>::epsilon() * std::abs(end), 1e-280);
    for (int j = 0; j < opts.layers; ++j) {
        if (std::abs(std::ldexp(h, -j - 1)) < width_floor) {
            break;
        }
        const double far = end + std::ldexp(h, -j);
        const double near = end + std::ldexp(h, -j - 1);
        if (near == end || near == far) {
            break;
        }
        const double lo = std::min(near, far);
        const double hi = std::max(near, far);
        Value c = rule.integrate(f, lo, hi, opts.subcells);
        result.sup_abs = std::max(result.sup_abs, rule.max_abs(f, lo, hi, opts.subcells));
        if (!std::isfinite(magnitude(c))) {
            result.divergent = true;
            return result;
        }
        result.value += c;
        previous = last;
        last = c;
        ++used;
    }
    if (used >= 2 && opts.extrapolate_tail) {
        const double prev_mag = magnitude(previous);
        const double last_mag = magnitude(last);
        if (prev_mag > 0.0) {
            const double r = last_mag / prev_mag;
            result.last_ratio = r;
            // Layers that stop shrinking mean the partial sums are not Cauchy.
            if (r >= 1.0 - 1e-9) {
                result.divergent = true;
                return result;
            }
            result.tail = last * (r / (1.0 - r));
            result.value += result.tail;
        }
    }
    return result;
}

}  // namespace detail

/// ∫_a^b f with geometric refinement (ratio 1/2) toward a, b and every
/// declared singular point inside (a, b). Each piece between consecutive
/// break points is halved and each half graded toward its outer end.
template <class F>
auto integrate_graded(const F& f, double a, double b, const std::vector<double>& singular_points,
                      const GradedOptions& opts = {}) {
    using Value = decltype(f(a));
    GaussLegendre rule(opts.order);
    std::vector<double> breaks{a};
    std::vector<double> inner;
    for (double p : singular_points) {
        if (p > a && p < b) {
            inner.push_back(p);
        }
    }
    std::sort(inner.begin(), inner.end());
    inner.erase(std::unique(inner.begin(), inner.end()), inner.end());
    breaks.insert(breaks.end(), inner.begin(), inner.end());
    breaks.push_back(b);

    GradedResult<Value> total;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double lo = breaks[i];
        const double hi = breaks[i + 1];
        const double mid = 0.5 * (lo + hi);
        for (auto piece : {detail::integrate_toward(f, lo, mid, opts, rule),
                           detail::integrate_toward(f, hi, mid, opts, rule)}) {
            total.value += piece.value;
            total.tail += piece.tail;
            total.last_ratio = std::max(total.last_ratio, piece.last_ratio);
            total.divergent = total.divergent || piece.divergent;
            total.sup_abs = std::max(total.sup_abs, piece.sup_abs);
        }
    }
    return total;
}

}  // namespace thirring
