#pragma once

#include <complex>
#include <functional>

#include "thirring/config.hpp"

namespace thirring {

using Complex = std::complex<double>;

/// Field values (u, v) of the spinor at one spacetime point.
struct SpinorSample {
    Complex u{};
    Complex v{};
};

/// The two-sided power family
///   f(x) = κ±/(ε+|x|)^{1/2},  g(x) = λ±/(ε+|x|)^{1/2}   (± = sign x),
/// optionally multiplied by the indicator of (−1, 1).
struct DataSpec {
    Complex kappa_plus{1.0, 0.0};
    Complex kappa_minus{1.0, 0.0};
    Complex lambda_plus{1.0, 0.0};
    Complex lambda_minus{1.0, 0.0};
    double epsilon = 0.0;
    bool cutoff = true;
    double mass = 0.0;

    /// κ± = λ± = 1, the data used throughout the ill-posedness argument.
    static DataSpec unit(double epsilon, bool cutoff, double mass = 0.0);

    /// Throws DomainError unless ε ≥ 0 and m ≥ 0.
    void validate() const;

    KeyValueSection to_section() const;
    static DataSpec from_section(const KeyValueSection& section);

    friend bool operator==(const DataSpec&, const DataSpec&) = default;
};

using SpinorSampler = std::function<SpinorSample(double)>;

/// (f(x), g(x)). Throws SingularPointError for ε = 0 at x = 0.
/// x = 0 with ε > 0 takes the `+` constants.
SpinorSample data_sample(const DataSpec& spec, double x);

SpinorSampler make_sampler(const DataSpec& spec);

/// λ^{1/2}·sample(λx). Throws DomainError for λ ≤ 0.
SpinorSample rescale_data(const SpinorSampler& sampler, double lambda, double x);

enum class Region { Left, Cone, Right };

const char* to_string(Region region);

/// Region of (x, t) for t > 0. Points with |x| = t are reported as Cone.
Region classify(double x, double t);

/// True on the characteristic lines |x| = t, where two regions meet.
bool on_cone_boundary(double x, double t);

/// Null coordinates y = x + t, s = t − x.
struct WaveCoords {
    double y = 0.0;
    double s = 0.0;
};

struct SpacetimePoint {
    double x = 0.0;
    double t = 0.0;
};

WaveCoords to_wave(double x, double t);
SpacetimePoint from_wave(const WaveCoords& w);

}  // namespace thirring
