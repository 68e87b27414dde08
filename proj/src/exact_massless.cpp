#include "thirring/exact_massless.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "thirring/errors.hpp"

namespace thirring {

namespace {

constexpr double kPi = std::numbers::pi;

Complex eighth_turn(std::int64_t k) {
    constexpr double h = std::numbers::sqrt2 / 2.0;
    switch (((k % 8) + 8) % 8) {
        case 0: return {1.0, 0.0};
        case 1: return {h, h};
        case 2: return {0.0, 1.0};
        case 3: return {-h, h};
        case 4: return {-1.0, 0.0};
        case 5: return {-h, -h};
        case 6: return {0.0, -1.0};
        default: return {h, -h};
    }
}

Complex unit(double phase) {
    return std::polar(1.0, phase);
}

// ∫ dy/(ε+y) over [a, b] with 0 ≤ a ≤ b, as log1p to keep ε ≪ b accurate.
double log_ratio(double eps, double a, double b) {
    return std::log1p((b - a) / (eps + a));
}

void require_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw DomainError("time must be finite and >= 0");
    }
}

}  // namespace

double ExactLog::value() const {
    return base + 0.25 * kPi * static_cast<double>(eighth_turns);
}

Complex ExactLog::exp_i(std::int64_t multiplier) const {
    return unit(static_cast<double>(multiplier) * base) * eighth_turn(multiplier * eighth_turns);
}

const char* to_string(SequenceKind kind) {
    switch (kind) {
        case SequenceKind::TwoLog: return "two-log";
        case SequenceKind::FourLogPlus: return "four-log-plus";
        case SequenceKind::FourLogMinus: return "four-log-minus";
    }
    return "?";
}

SequenceKind sequence_kind_from_string(const std::string& name) {
    if (name == "two-log") return SequenceKind::TwoLog;
    if (name == "four-log-plus") return SequenceKind::FourLogPlus;
    if (name == "four-log-minus") return SequenceKind::FourLogMinus;
    throw ConfigError("unknown epsilon sequence kind '" + name + "'");
}

EpsilonSequence epsilon_sequence(SequenceKind kind, double alpha, int count) {
    if (count < 1) {
        throw DomainError("epsilon_sequence: count must be >= 1");
    }
    if (!std::isfinite(alpha)) {
        throw DomainError("epsilon_sequence: alpha must be finite");
    }
    EpsilonSequence seq;
    seq.kind = kind;
    seq.alpha = alpha;
    seq.values.reserve(static_cast<std::size_t>(count));
    seq.logs.reserve(static_cast<std::size_t>(count));

    double reduced = std::fmod(alpha, 2.0 * kPi);
    if (reduced < 0.0) {
        reduced += 2.0 * kPi;
    }
    for (int n = 1; n <= count; ++n) {
        ExactLog log;
        switch (kind) {
            case SequenceKind::TwoLog:
                log = {-0.5 * reduced, -4 * static_cast<std::int64_t>(n)};
                break;
            case SequenceKind::FourLogPlus:
                log = {0.0, -2 * static_cast<std::int64_t>(n)};
                break;
            case SequenceKind::FourLogMinus:
                log = {0.0, -(2 * static_cast<std::int64_t>(n) + 1)};
                break;
        }
        seq.values.push_back(std::exp(log.value()));
        seq.logs.push_back(log);
    }
    return seq;
}

double phi_epsilon(double x, double t, double eps) {
    require_time(t);
    if (!(eps >= 0.0)) {
        throw DomainError("phi_epsilon: eps must be >= 0");
    }
    if (t == 0.0) {
        return 0.0;
    }
    if (x > t) {
        if (eps == 0.0 && x - t == 0.0) {
            throw SingularPointError("phi_epsilon: characteristic line");
        }
        return log_ratio(eps, x - t, x + t);
    }
    if (x < -t) {
        return log_ratio(eps, -x - t, t - x);
    }
    if (eps == 0.0) {
        throw SingularPointError("phi_epsilon: eps = 0 phase diverges on the closed cone |x| <= t");
    }
    return log_ratio(eps, 0.0, t - x) + log_ratio(eps, 0.0, x + t);
}

MasslessPhases massless_phases(const DataSpec& spec, double x, double t) {
    require_time(t);
    spec.validate();
    const double eps = spec.epsilon;
    if (t == 0.0) {
        return {};
    }
    const double kp = std::norm(spec.kappa_plus);
    const double km = std::norm(spec.kappa_minus);
    const double lp = std::norm(spec.lambda_plus);
    const double lm = std::norm(spec.lambda_minus);
    if (x > t) {
        if (eps == 0.0 && x - t == 0.0) {
            throw SingularPointError("massless_phases: characteristic line");
        }
        const double w = log_ratio(eps, x - t, x + t);
        return {lp * w, kp * w};
    }
    if (x < -t) {
        const double w = log_ratio(eps, -x - t, t - x);
        return {lm * w, km * w};
    }
    if (eps == 0.0) {
        throw SingularPointError("massless_phases: eps = 0 phase diverges on the closed cone");
    }
    const double right = log_ratio(eps, 0.0, x + t);
    const double left = log_ratio(eps, 0.0, t - x);
    return {lp * right + lm * left, kp * right + km * left};
}

SpinorSample eval_exact(const DataSpec& spec, double x, double t) {
    require_time(t);
    spec.validate();
    if (spec.mass != 0.0) {
        throw DomainError("eval_exact: closed forms exist only for mass = 0");
    }
    if (spec.cutoff && !(std::abs(x) + t < 1.0)) {
        throw DomainError("eval_exact: cutoff data are evaluated only where |x| + t < 1");
    }
    if (t == 0.0) {
        return data_sample(spec, x);
    }
    const MasslessPhases phases = massless_phases(spec, x, t);
    const double eps = spec.epsilon;

    // Moduli are transported: |u(x,t)| = |f(x−t)|, |v(x,t)| = |g(x+t)|.
    // Cone points take the left constant for u and the right one for v,
    // which also fixes the convention on |x| = t.
    const Complex kappa = (x > t) ? spec.kappa_plus : spec.kappa_minus;
    const Complex lambda = (x < -t) ? spec.lambda_minus : spec.lambda_plus;
    const double u_mod = 1.0 / std::sqrt(eps + std::abs(x - t));
    const double v_mod = 1.0 / std::sqrt(eps + std::abs(x + t));
    return {kappa * u_mod * unit(phases.phi_plus), lambda * v_mod * unit(phases.phi_minus)};
}

SpinorSample eval_limit(double alpha, double x, double t) {
    require_time(t);
    if (t == 0.0) {
        if (x == 0.0) {
            throw SingularPointError("eval_limit: data singular at x = 0");
        }
        const double a = 1.0 / std::sqrt(std::abs(x));
        return {a, a};
    }
    if (std::abs(x) == t) {
        throw SingularPointError("eval_limit: characteristic line |x| = t");
    }
    if (x > t) {
        const Complex phase = unit(std::log(x + t) - std::log(x - t));
        return {phase / std::sqrt(x - t), phase / std::sqrt(x + t)};
    }
    if (x < -t) {
        const Complex phase = unit(std::log(t - x) - std::log(-x - t));
        return {phase / std::sqrt(t - x), phase / std::sqrt(-x - t)};
    }
    const Complex phase = unit(alpha + std::log(t - x) + std::log(x + t));
    return {phase / std::sqrt(t - x), phase / std::sqrt(x + t)};
}

SpinorSample eval_limit_wave(double alpha, double y, double s) {
    if (y == 0.0 || s == 0.0) {
        throw DomainError("eval_limit_wave: null axes y = 0 or s = 0 are excluded");
    }
    if (y < 0.0 && s < 0.0) {
        throw DomainError("eval_limit_wave: quadrant y < 0, s < 0 lies in t < 0");
    }
    if (s < 0.0) {  // Ω₃
        const Complex common = unit(std::log(y) - std::log(-s));
        return {common / std::sqrt(-s), common / std::sqrt(y)};
    }
    if (y > 0.0) {  // Ω₂
        const Complex common = unit(alpha + std::log(y) + std::log(s));
        return {common / std::sqrt(s), common / std::sqrt(y)};
    }
    // Ω₁
    const Complex common = unit(std::log(s) - std::log(-y));
    return {common / std::sqrt(s), common / std::sqrt(-y)};
}

double product_main_phase(double x, double t, double eps) {
    return 2.0 * std::log(eps + x + t) + 2.0 * std::log(eps + t - x);
}

Complex product_main_term(double x, double t, double eps) {
    if (!(t > std::abs(x))) {
        throw DomainError("product_main_term: requires t > |x|");
    }
    if (!(eps >= 0.0)) {
        throw DomainError("product_main_term: eps must be >= 0");
    }
    const double modulus = 1.0 / std::sqrt((eps + x + t) * (eps + t - x));
    return modulus * unit(product_main_phase(x, t, eps));
}

void write_grid_csv(std::ostream& out, const std::vector<GridPoint>& points) {
    out << "x,t,re_u,im_u,re_v,im_v\n";
    for (const auto& p : points) {
        out << format_double(p.x) << ',' << format_double(p.t) << ','
            << format_double(p.value.u.real()) << ',' << format_double(p.value.u.imag()) << ','
            << format_double(p.value.v.real()) << ',' << format_double(p.value.v.imag()) << '\n';
    }
}

}  // namespace thirring
