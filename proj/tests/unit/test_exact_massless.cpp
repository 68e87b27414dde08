#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <doctest.h>

#include "thirring/errors.hpp"
#include "thirring/exact_massless.hpp"

using namespace thirring;

namespace {

constexpr double kPi = std::numbers::pi;

double phi_oracle(double x, double t, double eps) {
    using boost::math::quadrature::gauss_kronrod;
    auto f = [eps](double y) { return 1.0 / (eps + std::abs(y)); };
    const double a = x - t;
    const double b = x + t;
    if (a < 0.0 && b > 0.0) {
        return gauss_kronrod<double, 61>::integrate(f, a, 0.0, 20, 1e-15) +
               gauss_kronrod<double, 61>::integrate(f, 0.0, b, 20, 1e-15);
    }
    return gauss_kronrod<double, 61>::integrate(f, a, b, 20, 1e-15);
}

DataSpec generic_spec(double eps) {
    DataSpec spec;
    spec.kappa_plus = {0.8, -0.3};
    spec.kappa_minus = {0.2, 1.1};
    spec.lambda_plus = {-0.5, 0.4};
    spec.lambda_minus = {1.0, 0.0};
    spec.epsilon = eps;
    spec.cutoff = false;
    return spec;
}

// Centered-difference residual of the massless system at (x, t).
double pde_residual(const std::function<SpinorSample(double, double)>& field, double x, double t, double h) {
    const SpinorSample c = field(x, t);
    const SpinorSample xp = field(x + h, t);
    const SpinorSample xm = field(x - h, t);
    const SpinorSample tp = field(x, t + h);
    const SpinorSample tm = field(x, t - h);
    const Complex i(0.0, 1.0);
    const Complex ru = (tp.u - tm.u) / (2 * h) + (xp.u - xm.u) / (2 * h) - 2.0 * i * std::norm(c.v) * c.u;
    const Complex rv = (tp.v - tm.v) / (2 * h) - (xp.v - xm.v) / (2 * h) - 2.0 * i * std::norm(c.u) * c.v;
    return std::max(std::abs(ru), std::abs(rv));
}

}  // namespace

TEST_CASE("phi_epsilon examples") {
    CHECK(phi_epsilon(0.0, 1.0, 1.0) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-15));
    CHECK(phi_epsilon(2.0, 1.0, 0.0) == doctest::Approx(std::log(3.0)).epsilon(1e-15));
    CHECK(std::abs(phi_epsilon(0.3, 1e-14, 1.0)) < 1e-13);
    CHECK(phi_epsilon(0.3, 0.0, 1.0) == 0.0);
    CHECK_THROWS_AS(phi_epsilon(1.0, 1.0, 0.0), SingularPointError);
    CHECK_THROWS_AS(phi_epsilon(-1.0, 1.0, 0.0), SingularPointError);
}

TEST_CASE("phi_epsilon against Gauss-Kronrod quadrature") {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> log_eps(std::log(1e-4), 0.0);
    std::uniform_real_distribution<double> ts(0.0, 1.0);
    std::uniform_real_distribution<double> xs(-1.5, 1.5);
    double worst = 0.0;
    for (int i = 0; i < 300; ++i) {
        const double eps = std::exp(log_eps(rng));
        const double t = ts(rng);
        const double x = xs(rng);
        const double exact = phi_oracle(x, t, eps);
        worst = std::max(worst, std::abs(phi_epsilon(x, t, eps) - exact) / exact);
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("phi_epsilon is continuous across x = +-t") {
    for (double eps : {1.0, 0.1, 1e-3}) {
        for (double t : {0.1, 0.7, 2.0}) {
            for (double sign : {-1.0, 1.0}) {
                const double edge = sign * t;
                const double inside = phi_epsilon(std::nextafter(edge, 0.0), t, eps);
                const double outside = phi_epsilon(std::nextafter(edge, 10.0 * sign), t, eps);
                const double on = phi_epsilon(edge, t, eps);
                CHECK(std::abs(inside - on) <= 1e-12);
                CHECK(std::abs(outside - on) <= 1e-12);
            }
        }
    }
}

TEST_CASE("eval_exact examples") {
    const SpinorSample s = eval_exact(DataSpec::unit(1.0, false), 0.0, 1.0);
    const Complex expected = std::polar(1.0 / std::sqrt(2.0), 2.0 * std::log(2.0));
    CHECK(std::abs(s.u - expected) < 1e-15);
    CHECK(std::abs(s.v - expected) < 1e-15);

    DataSpec zero = DataSpec::unit(0.3, false);
    zero.kappa_plus = zero.kappa_minus = zero.lambda_plus = zero.lambda_minus = Complex{};
    for (double x : {-2.0, 0.0, 0.4, 3.0}) {
        const SpinorSample z = eval_exact(zero, x, 1.0);
        CHECK(std::abs(z.u) == 0.0);
        CHECK(std::abs(z.v) == 0.0);
    }

    const SpinorSample r = eval_exact(DataSpec::unit(0.1, false), 3.0, 1.0);
    CHECK(std::abs(r.u) == doctest::Approx(1.0 / std::sqrt(2.1)).epsilon(1e-15));
    CHECK(std::abs(r.v) == doctest::Approx(1.0 / std::sqrt(4.1)).epsilon(1e-15));
}

TEST_CASE("eval_exact preconditions") {
    CHECK_THROWS_AS(eval_exact(DataSpec::unit(0.1, true), 0.5, 0.6), DomainError);
    CHECK_NOTHROW(eval_exact(DataSpec::unit(0.1, true), 0.5, 0.4));
    CHECK_THROWS_AS(eval_exact(DataSpec::unit(0.1, false, 1.0), 0.0, 0.5), DomainError);
}

TEST_CASE("modulus transport for unit data") {
    const DataSpec spec = DataSpec::unit(0.05, false);
    for (double x = -2.0; x <= 2.0; x += 0.125) {
        for (double t : {0.1, 0.5, 1.0, 1.7}) {
            const SpinorSample s = eval_exact(spec, x, t);
            CHECK(std::abs(s.u) == doctest::Approx(std::abs(data_sample(spec, x - t).u)).epsilon(1e-14));
            CHECK(std::abs(s.v) == doctest::Approx(std::abs(data_sample(spec, x + t).v)).epsilon(1e-14));
        }
    }
}

TEST_CASE("integrating-factor phases add up to twice phi_epsilon") {
    const DataSpec spec = DataSpec::unit(0.02, false);
    for (double x : {-0.8, -0.1, 0.0, 0.3, 1.5}) {
        for (double t : {0.2, 0.9}) {
            const MasslessPhases ph = massless_phases(spec, x, t);
            CHECK(ph.phi_plus == doctest::Approx(ph.phi_minus).epsilon(1e-14));
            CHECK(ph.phi_plus + ph.phi_minus == doctest::Approx(2.0 * phi_epsilon(x, t, 0.02)).epsilon(1e-13));
        }
    }
}

TEST_CASE("closed forms solve the massless system to second order") {
    const DataSpec spec = generic_spec(0.1);
    auto exact = [&](double x, double t) { return eval_exact(spec, x, t); };
    auto limit = [](double x, double t) { return eval_limit(0.7, x, t); };
    for (auto [x, t] : {std::pair{0.1, 0.5}, std::pair{0.9, 0.3}, std::pair{-0.8, 0.4}}) {
        const double r1 = pde_residual(exact, x, t, 1e-2);
        const double r2 = pde_residual(exact, x, t, 5e-3);
        CHECK(r1 < 1e-2);
        CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.1));
        const double l1 = pde_residual(limit, x, t, 1e-2);
        const double l2 = pde_residual(limit, x, t, 5e-3);
        CHECK(l1 / l2 == doctest::Approx(4.0).epsilon(0.1));
    }
}

TEST_CASE("eval_limit examples") {
    const SpinorSample a0 = eval_limit(0.0, 0.0, 1.0);
    CHECK(std::abs(a0.u - Complex(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(a0.v - Complex(1.0, 0.0)) < 1e-15);
    const SpinorSample api = eval_limit(kPi, 0.0, 1.0);
    CHECK(std::abs(api.u - Complex(-1.0, 0.0)) < 1e-15);
    CHECK(std::abs(api.v - Complex(-1.0, 0.0)) < 1e-15);
    const SpinorSample o1 = eval_limit(0.0, 3.0, 1.0);
    const SpinorSample o2 = eval_limit(2.3, 3.0, 1.0);
    CHECK(o1.u == o2.u);
    CHECK(o1.v == o2.v);
    const SpinorSample w1 = eval_limit(0.4, 0.2, 0.5);
    const SpinorSample w2 = eval_limit(0.4 + 2.0 * kPi, 0.2, 0.5);
    CHECK(std::abs(w1.u - w2.u) < 1e-14);
    CHECK_THROWS_AS(eval_limit(0.0, 1.0, 1.0), SingularPointError);
    CHECK_THROWS_AS(eval_limit(0.0, -1.0, 1.0), SingularPointError);
}

TEST_CASE("eval_limit_wave examples") {
    for (double alpha : {0.0, 1.3}) {
        const SpinorSample w = eval_limit_wave(alpha, 1.0, 1.0);
        const SpinorSample e = eval_limit(alpha, 0.0, 1.0);
        CHECK(std::abs(w.u - e.u) < 1e-15);
        CHECK(std::abs(w.v - e.v) < 1e-15);
        const double ee = std::numbers::e;
        const SpinorSample c = eval_limit_wave(alpha, ee, ee);
        CHECK(std::abs(c.u - std::polar(1.0 / std::sqrt(ee), alpha + 2.0)) < 1e-14);
    }
    const SpinorSample q = eval_limit_wave(0.0, 1.0, -1.0);
    CHECK(std::abs(q.u) == doctest::Approx(1.0));
    CHECK(std::abs(q.v) == doctest::Approx(1.0));
    CHECK_THROWS_AS(eval_limit_wave(0.0, -1.0, -1.0), DomainError);
    CHECK_THROWS_AS(eval_limit_wave(0.0, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(eval_limit_wave(0.0, 1.0, 0.0), DomainError);
}

TEST_CASE("epsilon sequences") {
    const EpsilonSequence two = epsilon_sequence(SequenceKind::TwoLog, 0.0, 3);
    REQUIRE(two.values.size() == 3);
    CHECK(two.values[0] == doctest::Approx(std::exp(-kPi)).epsilon(1e-15));
    CHECK(std::abs(two.logs[0].exp_i(-2) - Complex(1.0, 0.0)) < 1e-15);

    const EpsilonSequence plus = epsilon_sequence(SequenceKind::FourLogPlus, 0.0, 4);
    CHECK(plus.values[1] == doctest::Approx(std::exp(-kPi)).epsilon(1e-15));
    const EpsilonSequence minus = epsilon_sequence(SequenceKind::FourLogMinus, 0.0, 4);
    CHECK(minus.values[0] == doctest::Approx(std::exp(-0.75 * kPi)).epsilon(1e-15));
    for (std::size_t n = 0; n < 4; ++n) {
        CHECK(std::abs(plus.logs[n].exp_i(4) - Complex(1.0, 0.0)) < 1e-15);
        CHECK(std::abs(minus.logs[n].exp_i(4) - Complex(-1.0, 0.0)) < 1e-15);
    }

    for (double alpha : {-1.0, 0.5, 3.0, 9.0}) {
        const EpsilonSequence s = epsilon_sequence(SequenceKind::TwoLog, alpha, 20);
        for (std::size_t n = 0; n < s.values.size(); ++n) {
            CHECK(s.values[n] < 1.0);
            if (n > 0) {
                CHECK(s.values[n] < s.values[n - 1]);
            }
            CHECK(s.logs[n].value() == doctest::Approx(std::log(s.values[n])).epsilon(1e-14));
            CHECK(std::abs(s.logs[n].exp_i(-2) - std::polar(1.0, alpha)) < 4e-15);
        }
    }
    CHECK(sequence_kind_from_string("four-log-minus") == SequenceKind::FourLogMinus);
    CHECK(std::string(to_string(SequenceKind::TwoLog)) == "two-log");
}

TEST_CASE("TwoLog sequence converges to the alpha limit") {
    for (double alpha : {0.0, 2.0}) {
        const EpsilonSequence seq = epsilon_sequence(SequenceKind::TwoLog, alpha, 8);
        double previous = 1e300;
        for (double eps : seq.values) {
            double worst = 0.0;
            for (double x = -0.2; x <= 0.2 + 1e-12; x += 0.05) {
                const SpinorSample a = eval_exact(DataSpec::unit(eps, false), x, 0.25);
                const SpinorSample b = eval_limit(alpha, x, 0.25);
                worst = std::max({worst, std::abs(a.u - b.u), std::abs(a.v - b.v)});
            }
            CHECK(worst < previous);
            previous = worst;
        }
        CHECK(previous < 1e-3);
    }
}

TEST_CASE("scaled product equals the main term for every eps") {
    for (double eps : {0.3, 0.01, 1e-5}) {
        for (auto [x, t] : {std::pair{0.0, 0.5}, std::pair{0.2, 0.3}, std::pair{-0.05, 0.1}}) {
            const SpinorSample s = eval_exact(DataSpec::unit(eps, false), x, t);
            const Complex lhs = std::polar(1.0, 4.0 * std::log(eps)) * s.u * s.v;
            const Complex main = product_main_term(x, t, eps);
            CHECK(std::abs(lhs - main) <= 1e-12 * std::abs(main));
        }
    }
}

TEST_CASE("FourLog sequences give products of opposite sign") {
    const EpsilonSequence plus = epsilon_sequence(SequenceKind::FourLogPlus, 0.0, 12);
    const EpsilonSequence minus = epsilon_sequence(SequenceKind::FourLogMinus, 0.0, 12);
    for (auto [x, t] : {std::pair{0.0, 0.5}, std::pair{0.1, 0.2}}) {
        const Complex limit = product_main_term(x, t, 0.0);
        const SpinorSample up = eval_exact(DataSpec::unit(plus.values.back(), false), x, t);
        const SpinorSample um = eval_exact(DataSpec::unit(minus.values.back(), false), x, t);
        CHECK(std::abs(up.u * up.v - limit) < 1e-6 * std::abs(limit));
        CHECK(std::abs(um.u * um.v + limit) < 1e-6 * std::abs(limit));
    }
}

TEST_CASE("self-similar constants: cone value is not Cauchy along 2^-n") {
    for (double weight : {2.0, 0.1}) {
        DataSpec spec = DataSpec::unit(1.0, false);
        spec.lambda_plus = {std::sqrt(weight / 2.0), 0.0};
        spec.lambda_minus = {0.0, std::sqrt(weight / 2.0)};
        std::vector<double> gaps;
        for (int n = 10; n <= 40; ++n) {
            spec.epsilon = std::ldexp(1.0, -n);
            const Complex a = eval_exact(spec, 0.1, 0.5).u;
            spec.epsilon = std::ldexp(1.0, -n - 1);
            const Complex b = eval_exact(spec, 0.1, 0.5).u;
            gaps.push_back(std::abs(a - b));
        }
        const double expected = 2.0 * std::sin(0.5 * weight * std::log(2.0)) / std::sqrt(0.4);
        CHECK(gaps.back() == doctest::Approx(expected).epsilon(1e-6));
        CHECK(gaps.back() >= 0.9 * gaps.front());
    }
}

TEST_CASE("grid csv output") {
    std::ostringstream out;
    write_grid_csv(out, {GridPoint{0.0, 1.0, eval_limit(0.0, 0.0, 1.0)}});
    const std::string text = out.str();
    CHECK(text.rfind("x,t,re_u,im_u,re_v,im_v\n", 0) == 0);
    CHECK(text.find("\n0,1,1,0,1,0") != std::string::npos);
}
