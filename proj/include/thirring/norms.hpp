#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "thirring/config.hpp"

namespace thirring {

using ScalarSampler = std::function<std::complex<double>(double)>;

struct LebesgueSpec {
    double p = 1.0;   ///< exponent in [1, ∞]; use infinity() for the sup norm
    double a = -1.0;
    double b = 1.0;
    /// Points toward which the quadrature mesh is graded.
    std::vector<double> singular_points{0.0};

    void validate() const;
};

struct SobolevSpec {
    double s = 0.0;
    int grid_points = 1 << 12;   ///< power of two, >= 2^10
    double freq_cutoff = 200.0;
    double half_width = 1.0;     ///< sampler support ⊂ [−half_width, half_width]
    std::vector<double> singular_points{0.0};
    double resolution_tolerance = 1e-2;  ///< allowed relative change under grid doubling

    void validate() const;
};

using NormSpec = std::variant<LebesgueSpec, SobolevSpec>;

enum class NormStatus {
    Ok,
    Divergent,   ///< partial sums not Cauchy under refinement
    Unresolved,  ///< unstable under doubling of the Fourier grid
};

const char* to_string(NormStatus status);

/// A norm value or a distinguished non-numeric outcome. `value` is meaningful
/// only when status == Ok.
struct NormValue {
    NormStatus status = NormStatus::Ok;
    double value = 0.0;
    /// Quadrature: |refined − coarse|. Sobolev: estimated truncation error
    /// from the ⟨ξ⟩^{−1/2} decay model (infinite when s ≥ 0).
    double error_estimate = 0.0;
    /// Sobolev only: relative change when grid_points doubles.
    double refinement_delta = 0.0;

    bool ok() const { return status == NormStatus::Ok; }
};

/// ‖sampler‖_{L^p(a,b)} by graded Gauss–Legendre quadrature. `resolution` is
/// the number of dyadic layers per graded endpoint (>= 64); it is doubled
/// until consecutive estimates agree to 1e−10.
NormValue lp_norm(const ScalarSampler& sampler, const LebesgueSpec& spec, int resolution = 64);

/// Samples of |ĥ(ξ)| for ξ = kπ/W ≥ 0, W = 2·half_width, computed as the
/// exact transform of the cell-average reconstruction on `grid_points` cells.
struct Spectrum {
    std::vector<double> xi;
    std::vector<double> magnitude;
    double window = 0.0;   ///< W
};

Spectrum fourier_spectrum(const ScalarSampler& sampler, int grid_points, double half_width,
                          const std::vector<double>& singular_points);

/// ‖h‖_{H^s} = ((2π)^{−1} ∫_{|ξ|≤cutoff} (1+ξ²)^s |ĥ|² dξ)^{1/2}.
NormValue hs_norm(const ScalarSampler& sampler, const SobolevSpec& spec);

/// sup_{|ξ| ≤ freq_window} ⟨ξ⟩^{1/2}|ĥ(ξ)|. Unresolved when the sup moves by
/// more than spec.resolution_tolerance under grid doubling.
NormValue fourier_decay_sup(const ScalarSampler& sampler, const SobolevSpec& spec,
                            double freq_window);

NormValue evaluate_norm(const ScalarSampler& sampler, const NormSpec& spec);

std::string describe(const NormSpec& spec);
KeyValueSection to_section(const NormSpec& spec);
NormSpec norm_spec_from_section(const KeyValueSection& section);
/// JSON object text describing the norm.
std::string norm_spec_json(const NormSpec& spec);

struct ConvergenceRow {
    double epsilon = 0.0;
    NormValue distance;
};

struct ConvergenceTable {
    std::string family_id;
    NormSpec spec;
    std::vector<ConvergenceRow> rows;

    /// Every row Ok and the distance column strictly decreasing.
    bool monotone_decreasing() const;

    /// CSV with header `epsilon,distance,status`.
    void write_csv(std::ostream& out) const;
    /// JSON sidecar carrying the norm spec and family id.
    std::string sidecar_json() const;
};

/// Distances ‖family(ε) − target‖ for each ε. Throws DomainError unless the
/// ε list is positive and strictly decreasing.
ConvergenceTable convergence_table(const std::string& family_id,
                                   const std::function<ScalarSampler(double)>& family,
                                   const ScalarSampler& target, const NormSpec& spec,
                                   const std::vector<double>& epsilons);

}  // namespace thirring
