#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "thirring/field_model.hpp"

namespace thirring {

/// log ε stored as base + (π/4)·eighth_turns. Whole multiples of π/4 are kept
/// as an integer so that e^{i c log ε} for integer c is exact in its
/// turn count; only the base part is rounded.
struct ExactLog {
    double base = 0.0;
    std::int64_t eighth_turns = 0;

    double value() const;
    /// e^{i·multiplier·log ε}.
    Complex exp_i(std::int64_t multiplier) const;
};

enum class SequenceKind {
    TwoLog,        ///< e^{−2i log ε_n} = e^{iα}
    FourLogPlus,   ///< e^{4i log ε_n} = +1
    FourLogMinus,  ///< e^{4i log ε_n} = −1
};

const char* to_string(SequenceKind kind);
SequenceKind sequence_kind_from_string(const std::string& name);

struct EpsilonSequence {
    SequenceKind kind = SequenceKind::TwoLog;
    double alpha = 0.0;
    std::vector<double> values;   ///< strictly decreasing, all < 1
    std::vector<ExactLog> logs;   ///< log of each value, exact turn count
};

/// Closed-form inversion of the phase condition, n = 1..count:
///   TwoLog        ε_n = exp(−(α̃ + 2πn)/2), α̃ = α reduced to [0, 2π)
///   FourLogPlus   ε_n = exp(−πn/2)
///   FourLogMinus  ε_n = exp(−π(2n+1)/4)
EpsilonSequence epsilon_sequence(SequenceKind kind, double alpha, int count);

/// φ_ε(x,t) = ∫_{x−t}^{x+t} dy/(ε+|y|), unwrapped, for t ≥ 0.
/// Throws SingularPointError for ε = 0 on |x| = t or inside the cone, where
/// the integral diverges.
double phi_epsilon(double x, double t, double eps);

/// Integrating-factor phases of the massless solution: u = f(x−t)e^{iφ₊},
/// v = g(x+t)e^{iφ₋}, with φ₊ = ∫|g|², φ₋ = ∫|f|² over [x−t, x+t].
struct MasslessPhases {
    double phi_plus = 0.0;
    double phi_minus = 0.0;
};

MasslessPhases massless_phases(const DataSpec& spec, double x, double t);

/// Massless solution of the power-family data at (x, t), t ≥ 0.
/// Requires mass = 0. With cutoff = true only |x| + t < 1 is accepted, where
/// the cutoff is invisible by finite speed of propagation.
SpinorSample eval_exact(const DataSpec& spec, double x, double t);

/// The α-indexed limit solution (κ± = λ± = 1, ε = 0). t = 0 returns the data
/// |x|^{−1/2}. Throws SingularPointError on |x| = t.
SpinorSample eval_limit(double alpha, double x, double t);

/// eval_limit in null coordinates. Throws DomainError in the quadrant
/// y < 0, s < 0 and on the axes.
SpinorSample eval_limit_wave(double alpha, double y, double s);

/// e^{2i log(ε+x+t)}/(ε+x+t)^{1/2} · e^{2i log(ε+t−x)}/(ε+t−x)^{1/2}; the
/// right-hand side of e^{4i log ε}u_ε v_ε in the cone t > |x|. ε = 0 gives
/// the common limit of both sign sequences.
Complex product_main_term(double x, double t, double eps);

/// Phase of e^{2i log(ε+x+t)} e^{2i log(ε+t−x)}.
double product_main_phase(double x, double t, double eps);

struct GridPoint {
    double x = 0.0;
    double t = 0.0;
    SpinorSample value;
};

/// Columnar text: header `x,t,re_u,im_u,re_v,im_v`, one row per point.
void write_grid_csv(std::ostream& out, const std::vector<GridPoint>& points);

}  // namespace thirring
