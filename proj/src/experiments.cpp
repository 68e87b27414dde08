#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "thirring/errors.hpp"
#include "thirring/exact_massless.hpp"
#include "thirring/experiments.hpp"
#include "thirring/norms.hpp"
#include "thirring/solver.hpp"

namespace thirring {

namespace {

constexpr double kPi = std::numbers::pi;

ExperimentReport start(const ExperimentConfig& config) {
    config.validate();
    ExperimentReport rep;
    rep.experiment = config.id;
    rep.config = config.to_json();
    return rep;
}

std::string tag(double value) { return format_double(value); }

bool strictly_decreasing(const std::vector<double>& xs) {
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (!(xs[i] < xs[i - 1])) {
            return false;
        }
    }
    return !xs.empty();
}

// Least-squares slope of ys against xs.
double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    return sxy / sxx;
}

std::vector<double> unwrap(const std::vector<double>& phases) {
    std::vector<double> out(phases.size());
    double shift = 0.0;
    for (std::size_t i = 0; i < phases.size(); ++i) {
        if (i > 0) {
            const double jump = phases[i] - phases[i - 1];
            shift -= 2.0 * kPi * std::round(jump / (2.0 * kPi));
        }
        out[i] = phases[i] + shift;
    }
    return out;
}

Json status_cell(const NormValue& v) { return to_string(v.status); }

void add_convergence_rows(Table& table, const ConvergenceTable& ct) {
    for (const auto& row : ct.rows) {
        table.add({row.epsilon, row.distance.ok() ? Json(row.distance.value) : Json(nullptr),
                   status_cell(row.distance), row.distance.error_estimate});
    }
}

double final_distance(const ConvergenceTable& ct) {
    if (ct.rows.empty() || !ct.rows.back().distance.ok()) {
        return std::numeric_limits<double>::infinity();
    }
    return ct.rows.back().distance.value;
}

}  // namespace

ExperimentReport run_data_convergence(const ExperimentConfig& config) {
    ExperimentReport rep = start(config);
    std::vector<double> eps;
    for (int k = 1; k <= config.eps_count; ++k) {
        eps.push_back(std::ldexp(1.0, -k));
    }
    const auto family = [](double e) -> ScalarSampler {
        const DataSpec spec = DataSpec::unit(e, true);
        return [spec](double x) { return data_sample(spec, x).u; };
    };
    const ScalarSampler target = family(0.0);
    const std::vector<std::string> columns{"epsilon", "distance", "status", "error_estimate"};

    for (double p : config.p_values) {
        const LebesgueSpec spec{p, -1.0, 1.0, {0.0}};
        const ConvergenceTable ct = convergence_table("power-data", family, target, spec, eps);
        add_convergence_rows(rep.table("lp_p" + tag(p), columns), ct);
        if (p < 2.0) {
            rep.verdicts.push_back(make_verdict("L^" + tag(p) + " distance strictly decreasing",
                                                ct.monotone_decreasing() ? 1.0 : 0.0, "==", 1.0));
            rep.verdicts.push_back(make_verdict("L^" + tag(p) + " distance at smallest epsilon", final_distance(ct),
                                                "<", 0.05));
            continue;
        }
        double divergent = 0.0;
        for (const auto& row : ct.rows) {
            divergent += row.distance.status == NormStatus::Divergent ? 1.0 : 0.0;
        }
        rep.verdicts.push_back(make_verdict("L^2 distance rows flagged divergent", divergent, "==",
                                            static_cast<double>(ct.rows.size())));

        // ‖f_ε‖²_{L²(−1,1)} against 2 log(1 + 1/ε).
        Table& sq = rep.table("l2_norm_squared", {"epsilon", "norm_squared", "closed_form", "abs_error"});
        std::vector<double> sq_eps = eps;
        sq_eps.push_back(0.01);
        double worst = 0.0;
        double at_hundredth = 0.0;
        for (double e : sq_eps) {
            const NormValue nv = lp_norm(family(e), LebesgueSpec{2.0, -1.0, 1.0, {0.0}});
            const double value = nv.ok() ? nv.value * nv.value : std::numeric_limits<double>::infinity();
            const double closed = 2.0 * std::log1p(1.0 / e);
            const double err = std::abs(value - closed);
            worst = std::max(worst, err);
            if (e == 0.01) {
                at_hundredth = value;
            }
            sq.add({e, value, closed, err});
        }
        rep.verdicts.push_back(make_verdict("squared L^2 norm vs 2 log(1+1/eps), max abs error", worst, "<=", 1e-6));
        rep.verdicts.push_back(make_verdict("squared L^2 norm at eps = 0.01", at_hundredth, ">", 9.2));
    }
    for (double s : config.s_values) {
        SobolevSpec spec;
        spec.s = s;
        const ConvergenceTable ct = convergence_table("power-data", family, target, spec, eps);
        add_convergence_rows(rep.table("hs_s" + tag(s), columns), ct);
        rep.verdicts.push_back(make_verdict("H^" + tag(s) + " distance strictly decreasing",
                                            ct.monotone_decreasing() ? 1.0 : 0.0, "==", 1.0));
        rep.notes.push_back("H^" + tag(s) + " norm: " + describe(NormSpec{spec}));
    }
    return rep;
}

ExperimentReport run_bifurcation(const ExperimentConfig& config) {
    ExperimentReport rep = start(config);
    const double t = config.probe_time;
    const double w = config.probe_half_width;
    if (!(w > 0.0 && w < t)) {
        throw DomainError("bifurcation: probe interval must lie inside the cone |x| < t");
    }
    const double p = config.p_values.front();
    constexpr int samples = 401;
    std::vector<double> xs;
    for (int i = 0; i < samples; ++i) {
        xs.push_back(-w + 2.0 * w * i / (samples - 1.0));
    }
    const LebesgueSpec interval{p, -w, w, {}};

    Table& dist = rep.table("approach", {"alpha", "n", "epsilon", "sup_distance", "lp_distance"});
    for (double alpha : config.alphas) {
        const EpsilonSequence seq = epsilon_sequence(SequenceKind::TwoLog, alpha, config.eps_count);
        std::vector<double> sups;
        for (std::size_t n = 0; n < seq.values.size(); ++n) {
            const DataSpec spec = DataSpec::unit(seq.values[n], false);
            double sup = 0.0;
            for (double x : xs) {
                const SpinorSample a = eval_exact(spec, x, t);
                const SpinorSample b = eval_limit(alpha, x, t);
                sup = std::max({sup, std::abs(a.u - b.u), std::abs(a.v - b.v)});
            }
            const NormValue lp = lp_norm(
                [&](double x) { return eval_exact(spec, x, t).u - eval_limit(alpha, x, t).u; }, interval);
            sups.push_back(sup);
            dist.add({alpha, static_cast<int>(n + 1), seq.values[n], sup,
                      lp.ok() ? Json(lp.value) : Json(nullptr)});
        }
        rep.verdicts.push_back(make_verdict("alpha=" + tag(alpha) + ": sup distance strictly decreasing in n",
                                            strictly_decreasing(sups) ? 1.0 : 0.0, "==", 1.0));
        rep.verdicts.push_back(make_verdict("alpha=" + tag(alpha) + ": sup distance at n=" +
                                                std::to_string(config.eps_count),
                                            sups.empty() ? std::numeric_limits<double>::infinity() : sups.back(),
                                            "<", 1e-3));
    }

    const NormValue base = lp_norm([&](double x) { return eval_limit(0.0, x, t).u; }, interval);
    Table& cross = rep.table("cross_distance", {"alpha_a", "alpha_b", "distance", "expected", "abs_error"});
    double worst = 0.0;
    for (std::size_t i = 0; i < config.alphas.size(); ++i) {
        for (std::size_t j = i; j < config.alphas.size(); ++j) {
            const double a = config.alphas[i];
            const double b = config.alphas[j];
            const NormValue d = lp_norm([&](double x) { return eval_limit(a, x, t).u - eval_limit(b, x, t).u; },
                                        interval);
            const double expected = std::abs(std::polar(1.0, a) - std::polar(1.0, b)) * base.value;
            const double err = std::abs(d.value - expected);
            worst = std::max(worst, err);
            cross.add({a, b, d.value, expected, err});
        }
    }
    rep.verdicts.push_back(make_verdict("cross distance vs |e^{ia}-e^{ib}| * ||u_limit||, max abs error", worst,
                                        "<=", 1e-6));
    rep.notes.push_back("slice t = " + tag(t) + ", |x| <= " + tag(w) + ", p = " + tag(p));
    return rep;
}

ExperimentReport run_product_dichotomy(const ExperimentConfig& config) {
    ExperimentReport rep = start(config);
    const SequenceKind kinds[] = {SequenceKind::FourLogPlus, SequenceKind::FourLogMinus};
    Table& rows = rep.table("product", {"mass", "sequence", "n", "epsilon", "x", "t", "main_abs", "remainder_sum",
                                        "key_residual", "phase_defect", "sign"});
    Table& skipped = rep.table("skipped", {"mass", "sequence", "n", "epsilon", "reason"});

    for (double m : config.masses) {
        const double c_const = remainder_constant(m);
        const double delta = m > 0.0 ? 1.0 / (16.0 * c_const) : 0.25;
        const int q = config.ball_refinement;
        const double h = delta / (8.0 * q);
        struct Point {
            double x;
            double t;
        };
        std::vector<Point> ball;
        for (int i = -2; i <= 2; ++i) {
            for (int j = -2; j <= 2; ++j) {
                if (i * i + j * j <= 4) {
                    ball.push_back({i * q * h, (8 * q + j * q) * h});
                }
            }
        }
        const std::string mtag = "m=" + tag(m);
        rep.notes.push_back(mtag + ": ball radius delta/4 around (0, delta), delta = " + tag(delta) +
                            (m > 0.0 ? " = 1/(16C), C = " + tag(c_const) : " (massless, any delta)"));

        if (m == 0.0) {
            double worst_rel = 0.0;
            double worst_sign = 0.0;
            for (SequenceKind kind : kinds) {
                const EpsilonSequence seq = epsilon_sequence(kind, 0.0, config.eps_count);
                const double expected_sign = kind == SequenceKind::FourLogPlus ? 1.0 : -1.0;
                for (std::size_t n = 0; n < seq.values.size(); ++n) {
                    const DataSpec spec = DataSpec::unit(seq.values[n], false);
                    for (const Point& pt : ball) {
                        const SpinorSample s = eval_exact(spec, pt.x, pt.t);
                        const Complex product = s.u * s.v;
                        const Complex main = product_main_term(pt.x, pt.t, seq.values[n]);
                        const Complex scaled = seq.logs[n].exp_i(4) * product;
                        const double rel = std::abs(scaled - main) / std::abs(main);
                        const double sign = std::real(product * std::conj(main)) / std::norm(main);
                        worst_rel = std::max(worst_rel, rel);
                        worst_sign = std::max(worst_sign, std::abs(sign - expected_sign));
                        rows.add({m, to_string(kind), static_cast<int>(n + 1), seq.values[n], pt.x, pt.t,
                                  std::abs(main), 0.0, rel, 0.0, sign});
                    }
                }
            }
            rep.verdicts.push_back(make_verdict(mtag + ": e^{4i log eps} uv vs main term, max relative error",
                                                worst_rel, "<=", 1e-12));
            rep.verdicts.push_back(make_verdict(mtag + ": uv / main equals +1 (plus) and -1 (minus), max deviation",
                                                worst_sign, "<=", 1e-12));
            continue;
        }

        MeshParams params = MeshParams::local(h, 1.25 * delta, 1.5 * delta + 4.0 * h);
        double min_main = std::numeric_limits<double>::infinity();
        double min_main_late = std::numeric_limits<double>::infinity();
        double max_main = 0.0;
        double max_rem = 0.0;
        double min_margin = std::numeric_limits<double>::infinity();
        double max_key = 0.0;
        std::vector<Complex> last_product[2];
        std::vector<Complex> last_limit;
        for (const Point& pt : ball) {
            last_limit.push_back(product_main_term(pt.x, pt.t, 0.0));
        }
        int used[2] = {0, 0};
        for (int k = 0; k < 2; ++k) {
            const SequenceKind kind = kinds[k];
            const EpsilonSequence seq = epsilon_sequence(kind, 0.0, config.eps_count);
            for (std::size_t n = 0; n < seq.values.size(); ++n) {
                const double e = seq.values[n];
                if (e >= delta) {
                    skipped.add({m, to_string(kind), static_cast<int>(n + 1), e, "epsilon >= delta"});
                    continue;
                }
                if (e < 10.0 * h) {
                    skipped.add({m, to_string(kind), static_cast<int>(n + 1), e, "epsilon below 10 mesh steps"});
                    continue;
                }
                const DataSpec spec = DataSpec::unit(e, true, m);
                const CharacteristicMesh mesh = solve(spec, params);
                last_product[k].clear();
                for (const Point& pt : ball) {
                    const RemainderBundle rb = remainders(mesh, spec, pt.x, pt.t);
                    const int j = mesh.node_index(pt.x);
                    const int lvl = mesh.level_index(pt.t);
                    const Complex product = mesh.u(j, lvl) * mesh.v(j, lvl);
                    const Complex limit = product_main_term(pt.x, pt.t, 0.0);
                    const double main_abs = std::abs(rb.main_term);
                    const double rem = rb.remainder_sum_abs();
                    const double sign = std::real(product * std::conj(limit)) / std::norm(limit);
                    // The lower bound 1/(2δ) needs ε + 5δ/4 ≤ 2δ at the top of B.
                    if (e <= 0.75 * delta) {
                        min_main = std::min(min_main, main_abs);
                    } else {
                        min_main_late = std::min(min_main_late, main_abs);
                    }
                    max_main = std::max(max_main, main_abs);
                    max_rem = std::max(max_rem, rem);
                    min_margin = std::min(min_margin, main_abs - rem);
                    max_key = std::max(max_key, rb.key_residual / main_abs);
                    last_product[k].push_back(product);
                    rows.add({m, to_string(kind), static_cast<int>(n + 1), e, pt.x, pt.t, main_abs, rem,
                              rb.key_residual, rb.phase_defect, sign});
                }
                ++used[k];
            }
        }
        rep.verdicts.push_back(make_verdict(mtag + ": admissible epsilons (plus sequence)", used[0], ">=", 1.0));
        rep.verdicts.push_back(make_verdict(mtag + ": admissible epsilons (minus sequence)", used[1], ">=", 1.0));
        if (used[0] == 0 || used[1] == 0) {
            continue;
        }
        rep.verdicts.push_back(make_verdict(mtag + ": min over B of |main| - sum|R_j|", min_margin, ">", 0.0));
        rep.verdicts.push_back(make_verdict(mtag + ": min over B of |main| - sum|R_j| vs 2C", min_margin, ">=",
                                            2.0 * c_const));
        rep.verdicts.push_back(make_verdict(mtag + ": min |main| on B, epsilon <= 3 delta/4", min_main, ">=",
                                            1.0 / (2.0 * delta)));
        if (std::isfinite(min_main_late)) {
            rep.notes.push_back(mtag + ": rows with 3 delta/4 < epsilon < delta reach min |main| = " +
                                tag(min_main_late) + " against 1/(2 delta) = " + tag(1.0 / (2.0 * delta)) +
                                "; at (0, 5 delta/4) the modulus is 1/(epsilon + 5 delta/4)");
        }
        rep.verdicts.push_back(make_verdict(mtag + ": max |main| on B", max_main, "<=", 2.0 / delta));
        rep.verdicts.push_back(make_verdict(mtag + ": max sum|R_j| on B", max_rem, "<=", c_const));
        rep.verdicts.push_back(make_verdict(mtag + ": discrete identity residual relative to |main|", max_key, "<=",
                                            1e-9));

        Table& limits = rep.table("sign_separation", {"mass", "x", "t", "cos_angle", "gap"});
        double worst_cos = -1.0;
        double min_gap = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < ball.size(); ++i) {
            const Complex a = last_product[0][i];
            const Complex b = last_product[1][i];
            const double cos_angle = std::real(a * std::conj(b)) / (std::abs(a) * std::abs(b));
            const double gap = std::abs(a - b);
            worst_cos = std::max(worst_cos, cos_angle);
            min_gap = std::min(min_gap, gap);
            limits.add({m, ball[i].x, ball[i].t, cos_angle, gap});
        }
        rep.verdicts.push_back(make_verdict(mtag + ": smallest-epsilon products of the two sequences, max cos(angle)",
                                            worst_cos, "<", 0.0, "opposite signs at every sampled point"));
        rep.verdicts.push_back(make_verdict(mtag + ": min |uv(plus) - uv(minus)| on B", min_gap, ">=",
                                            1.0 / (2.0 * delta) - 2.0 * c_const));
        rep.notes.push_back(mtag + ": mesh step " + tag(h) + " on [-1.5 delta, 1.5 delta]; sequences truncated to " +
                            "10 h <= epsilon < delta");
    }
    return rep;
}

ExperimentReport run_self_similar(const ExperimentConfig& config) {
    ExperimentReport rep = start(config);
    struct Tuple {
        std::string name;
        DataSpec spec;
    };
    std::vector<Tuple> tuples;
    tuples.push_back({"configured", config.data});
    {
        DataSpec zero;
        zero.kappa_plus = zero.kappa_minus = zero.lambda_plus = zero.lambda_minus = 0.0;
        tuples.push_back({"zero", zero});
        DataSpec mixed;
        mixed.lambda_plus = mixed.lambda_minus = 0.0;
        tuples.push_back({"kappa-only", mixed});
    }
    std::mt19937_64 rng(config.tuple_seed);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    for (int i = 0; i < config.tuple_count; ++i) {
        DataSpec s;
        s.kappa_plus = {coord(rng), coord(rng)};
        s.kappa_minus = {coord(rng), coord(rng)};
        s.lambda_plus = {coord(rng), coord(rng)};
        s.lambda_minus = {coord(rng), coord(rng)};
        tuples.push_back({"random-" + std::to_string(i + 1), s});
    }

    const std::vector<std::pair<double, double>> points{{0.0, 0.25}, {0.1, 0.3}, {-0.2, 0.45}};
    constexpr int sweep = 401;
    const double lo = std::log(1e-16);
    const double hi = std::log(1e-12);
    std::vector<double> log_eps;
    for (int i = 0; i < sweep; ++i) {
        log_eps.push_back(lo + (hi - lo) * i / (sweep - 1.0));
    }

    Table& table = rep.table("cone_phase_slopes", {"tuple", "x", "t", "slope_phi_plus", "slope_arg_u", "expected_u",
                                                   "slope_phi_minus", "slope_arg_v", "expected_v",
                                                   "non_convergent"});
    double worst = 0.0;
    double mismatched_flags = 0.0;
    for (const Tuple& tp : tuples) {
        const double expected_u = -(std::norm(tp.spec.lambda_plus) + std::norm(tp.spec.lambda_minus));
        const double expected_v = -(std::norm(tp.spec.kappa_plus) + std::norm(tp.spec.kappa_minus));
        for (const auto& [x, t] : points) {
            std::vector<double> phi_u;
            std::vector<double> phi_v;
            std::vector<double> arg_u;
            std::vector<double> arg_v;
            bool u_zero = false;
            bool v_zero = false;
            for (double le : log_eps) {
                DataSpec s = tp.spec;
                s.epsilon = std::exp(le);
                s.cutoff = false;
                s.mass = 0.0;
                const MasslessPhases ph = massless_phases(s, x, t);
                const SpinorSample value = eval_exact(s, x, t);
                phi_u.push_back(ph.phi_plus);
                phi_v.push_back(ph.phi_minus);
                arg_u.push_back(std::arg(value.u));
                arg_v.push_back(std::arg(value.v));
                u_zero = u_zero || value.u == Complex{};
                v_zero = v_zero || value.v == Complex{};
            }
            const double su = fit_slope(log_eps, phi_u);
            const double sv = fit_slope(log_eps, phi_v);
            worst = std::max({worst, std::abs(su - expected_u), std::abs(sv - expected_v)});
            // The argument of a vanishing component carries no phase.
            Json au = nullptr;
            Json av = nullptr;
            if (!u_zero) {
                const double slope = fit_slope(log_eps, unwrap(arg_u));
                worst = std::max(worst, std::abs(slope - expected_u));
                au = slope;
            }
            if (!v_zero) {
                const double slope = fit_slope(log_eps, unwrap(arg_v));
                worst = std::max(worst, std::abs(slope - expected_v));
                av = slope;
            }
            const bool flag = std::abs(su) > 1e-9 || std::abs(sv) > 1e-9;
            const bool expected_flag = expected_u != 0.0 || expected_v != 0.0;
            mismatched_flags += flag != expected_flag ? 1.0 : 0.0;
            table.add({tp.name, x, t, su, au, expected_u, sv, av, expected_v, flag});
        }
    }
    rep.verdicts.push_back(make_verdict("max |fitted cone-phase slope - expected|", worst, "<=", 1e-9));
    rep.verdicts.push_back(make_verdict("non-convergence flags disagreeing with nonzero expected slope",
                                        mismatched_flags, "==", 0.0));
    rep.notes.push_back("phases unwrapped over log eps in [log 1e-16, log 1e-12], " + std::to_string(sweep) +
                        " samples per point");
    rep.notes.push_back(
        "coverage gap: stability as a solution concept quantifies over every approximating sequence of the "
        "data; this experiment probes only the canonical eps-regularised family, so a nonzero slope rules out "
        "convergence of that family and nothing more");
    return rep;
}

ExperimentReport run_pv_residual(const ExperimentConfig& config) {
    ExperimentReport rep = start(config);
    const TestFunction theta = make_test_function(config.theta);
    const double lip = theta.lipschitz();
    const double theta0 = std::abs(theta.value(0.0));
    rep.notes.push_back("test function " + theta.name + ", theta(0) = " + tag(theta.value(0.0)) +
                        ", Lip = " + tag(lip));

    Table& special = rep.table("two_log", {"alpha", "n", "delta", "abs_residual", "bound"});
    Table& generic = rep.table("generic", {"alpha", "n", "delta", "abs_residual", "winding", "in_subsequence"});
    for (double alpha : config.alphas) {
        const EpsilonSequence seq = epsilon_sequence(SequenceKind::TwoLog, alpha, config.eps_count);
        double worst = 0.0;
        for (std::size_t n = 0; n < seq.values.size(); ++n) {
            const double d = seq.values[n];
            const Complex r = pv_residual(alpha, seq.logs[n].base, seq.logs[n].eighth_turns, theta.value(d),
                                          theta.value(-d));
            const double bound = 2.0 * lip * d;
            worst = std::max(worst, std::abs(r) / bound);
            special.add({alpha, static_cast<int>(n + 1), d, std::abs(r), bound});
        }
        rep.verdicts.push_back(make_verdict("alpha=" + tag(alpha) + ": max |R(delta_n)| / (2 Lip delta_n)", worst,
                                            "<=", 1.0));

        double limsup = 0.0;
        for (int n = 1; n <= config.generic_count; ++n) {
            const double d = std::ldexp(1.0, -n);
            const double log_d = -n * std::numbers::ln2;
            const Complex r = pv_residual(alpha, log_d, 0, theta.value(d), theta.value(-d));
            const double winding = std::abs(std::polar(1.0, alpha + 2.0 * log_d) - 1.0);
            const bool in_sub = winding >= 1.0;
            if (n > config.generic_count / 2) {
                limsup = std::max(limsup, std::abs(r));
            }
            generic.add({alpha, n, d, std::abs(r), winding, in_sub});
        }
        if (theta0 > 0.0) {
            rep.verdicts.push_back(make_verdict("alpha=" + tag(alpha) + ": generic 2^-n, max |R| over the upper half "
                                                "of n",
                                                limsup, ">=", 0.5 * theta0));
        }
    }
    if (theta0 == 0.0) {
        rep.notes.push_back("theta(0) = 0: the generic-sequence lower bound is vacuous and not asserted");
    }
    return rep;
}

ExperimentReport run_solver_validation(const ExperimentConfig& config) {
    ExperimentReport rep = start(config);
    const double d0 = config.mesh_delta;
    const double horizon = 0.5;

    // Order against the closed form (m = 0, ε = 0.1).
    Table& order = rep.table("convergence_order", {"delta", "max_error", "ratio"});
    {
        const DataSpec spec = DataSpec::unit(0.1, true, 0.0);
        double previous = 0.0;
        std::vector<double> errors;
        for (double d : {2.0 * d0, d0, 0.5 * d0}) {
            const CharacteristicMesh mesh = solve(spec, MeshParams::covering_cutoff(d, horizon));
            double err = 0.0;
            for (int n = 1; n < mesh.level_count(); ++n) {
                for (int j = 0; j < mesh.node_count(); ++j) {
                    const double x = mesh.x(j);
                    if (std::abs(x) > 0.5 + 1e-12 || std::abs(x) + mesh.t(n) >= 1.0 - 1e-12) {
                        continue;
                    }
                    const SpinorSample e = eval_exact(spec, x, mesh.t(n));
                    err = std::max({err, std::abs(mesh.u(j, n) - e.u), std::abs(mesh.v(j, n) - e.v)});
                }
            }
            const double ratio = previous > 0.0 ? previous / err : 0.0;
            order.add({d, err, previous > 0.0 ? Json(ratio) : Json(nullptr)});
            if (previous > 0.0) {
                rep.verdicts.push_back(make_range_verdict("error ratio " + tag(2.0 * d) + " -> " + tag(d), ratio, 3.5,
                                                          4.5));
            }
            previous = err;
            errors.push_back(err);
        }
        rep.verdicts.push_back(make_verdict("max node error vs closed form at delta=" + tag(d0), errors[1], "<=",
                                            1e-3, "eps=0.1, m=0, |x|<=0.5, t<=0.5, |x|+t<1"));
    }

    Table& drift = rep.table("charge_drift", {"mass", "epsilon", "delta", "charge_0", "charge_T", "relative_drift"});
    Table& cone = rep.table("cone_residual", {"mass", "epsilon", "delta", "x", "t", "flux_left", "flux_right",
                                              "base", "residual"});
    Table& cone_order = rep.table("cone_residual_order", {"mass", "epsilon", "max_residual_delta",
                                                          "max_residual_half_delta", "ratio"});
    Table& gron = rep.table("gronwall", {"mass", "epsilon", "levels", "max_ratio", "violations"});

    double worst_drift = 0.0;
    double worst_cone = 0.0;
    double worst_cone_ratio_dev = 0.0;
    double violations_total = 0.0;
    for (double m : config.masses) {
        for (double e : config.epsilons) {
            const DataSpec spec = DataSpec::unit(e, true, m);
            double max_res[2] = {0.0, 0.0};
            for (int level = 0; level < 2; ++level) {
                const double d = level == 0 ? d0 : 0.5 * d0;
                const CharacteristicMesh mesh = solve(spec, MeshParams::covering_cutoff(d, horizon));
                const double q0 = global_charge(mesh, 0);
                const double qt = global_charge(mesh, mesh.level_count() - 1);
                const double rel = std::abs(qt - q0) / q0;
                drift.add({m, e, d, q0, qt, rel});
                if (level == 0) {
                    worst_drift = std::max(worst_drift, rel);
                }
                for (int ix = -4; ix <= 4; ++ix) {
                    for (int it = 1; it <= 5; ++it) {
                        const ConeDiagnostics c = cone_charge(mesh, spec, 0.1 * ix, 0.1 * it);
                        max_res[level] = std::max(max_res[level], c.residual);
                        if (level == 0) {
                            cone.add({m, e, d, c.x, c.t, c.flux_left, c.flux_right, c.base, c.residual});
                        }
                    }
                }
                if (level == 0) {
                    const std::vector<double> a = a_functional_series(mesh);
                    double worst_ratio = 0.0;
                    int bad = 0;
                    for (int n = 1; n < mesh.level_count(); ++n) {
                        const double ratio = a[static_cast<std::size_t>(n)] / gronwall_bound(mesh.t(n), m);
                        worst_ratio = std::max(worst_ratio, ratio);
                        bad += ratio > 1.0 ? 1 : 0;
                    }
                    violations_total += bad;
                    gron.add({m, e, mesh.level_count() - 1, worst_ratio, bad});
                }
            }
            worst_cone = std::max(worst_cone, max_res[0]);
            const double ratio = max_res[0] / max_res[1];
            worst_cone_ratio_dev = std::max(worst_cone_ratio_dev, std::abs(ratio - 4.0));
            cone_order.add({m, e, max_res[0], max_res[1], ratio});
        }
    }
    rep.verdicts.push_back(make_verdict("max relative charge drift at t=0.5, delta=" + tag(d0), worst_drift, "<=",
                                        1e-6));
    rep.verdicts.push_back(make_verdict("max cone residual over the apex grid, delta=" + tag(d0), worst_cone, "<=",
                                        1e-5));
    rep.verdicts.push_back(make_verdict("cone residual ratio under halving, max |ratio - 4|", worst_cone_ratio_dev,
                                        "<=", 0.5, "second-order local conservation"));
    rep.verdicts.push_back(make_verdict("Gronwall bound violations", violations_total, "==", 0.0));
    rep.notes.push_back("cone apex grid x in {-0.4,...,0.4}, t in {0.1,...,0.5}; domains cover [-1-T, 1+T]");
    return rep;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
    const auto start_time = std::chrono::steady_clock::now();
    ExperimentReport rep;
    if (config.id == "data-convergence") {
        rep = run_data_convergence(config);
    } else if (config.id == "bifurcation") {
        rep = run_bifurcation(config);
    } else if (config.id == "product-dichotomy") {
        rep = run_product_dichotomy(config);
    } else if (config.id == "self-similar") {
        rep = run_self_similar(config);
    } else if (config.id == "pv-residual") {
        rep = run_pv_residual(config);
    } else if (config.id == "solver-validation") {
        rep = run_solver_validation(config);
    } else {
        throw ConfigError("unknown experiment id: " + config.id);
    }
    rep.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
    return rep;
}

}  // namespace thirring
