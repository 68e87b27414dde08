#include <cmath>
#include <random>

#include <doctest.h>

#include "thirring/errors.hpp"
#include "thirring/field_model.hpp"
#include "thirring/norms.hpp"

using namespace thirring;

TEST_CASE("data_sample at the origin with eps = 1") {
    const DataSpec spec = DataSpec::unit(1.0, false);
    const SpinorSample s = data_sample(spec, 0.0);
    CHECK(s.u == Complex(1.0, 0.0));
    CHECK(s.v == Complex(1.0, 0.0));
}

TEST_CASE("cutoff data vanish outside (-1, 1)") {
    const DataSpec spec = DataSpec::unit(0.0, true);
    const SpinorSample s = data_sample(spec, 2.0);
    CHECK(s.u == Complex(0.0, 0.0));
    CHECK(s.v == Complex(0.0, 0.0));
    CHECK(std::abs(data_sample(spec, 1.0).u) == 0.0);
    CHECK(std::abs(data_sample(spec, 0.999).u) > 0.0);
}

TEST_CASE("eps = 0.25 at x = -0.75 gives unit amplitude") {
    const SpinorSample s = data_sample(DataSpec::unit(0.25, false), -0.75);
    CHECK(s.u.real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s.v.real() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("singular data point") {
    CHECK_THROWS_AS(data_sample(DataSpec::unit(0.0, false), 0.0), SingularPointError);
    DataSpec bad = DataSpec::unit(-1.0, false);
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad = DataSpec::unit(0.1, false, -1.0);
    CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("sign-dependent constants") {
    DataSpec spec;
    spec.kappa_plus = {2.0, 0.0};
    spec.kappa_minus = {0.0, 3.0};
    spec.lambda_plus = {-1.0, 0.0};
    spec.lambda_minus = {0.0, 0.0};
    spec.epsilon = 0.0;
    spec.cutoff = false;
    const SpinorSample right = data_sample(spec, 4.0);
    const SpinorSample left = data_sample(spec, -4.0);
    CHECK(right.u.real() == doctest::Approx(1.0));
    CHECK(right.v.real() == doctest::Approx(-0.5));
    CHECK(left.u.imag() == doctest::Approx(1.5));
    CHECK(std::abs(left.v) == 0.0);
    spec.epsilon = 1.0;
    CHECK(data_sample(spec, 0.0).u.real() == doctest::Approx(2.0));
}

TEST_CASE("rescale_data examples") {
    const SpinorSampler zero_eps = make_sampler(DataSpec::unit(0.0, false));
    CHECK(std::abs(rescale_data(zero_eps, 4.0, 1.0).u - zero_eps(1.0).u) < 1e-15);
    const SpinorSampler one_eps = make_sampler(DataSpec::unit(1.0, false));
    CHECK(rescale_data(one_eps, 4.0, 0.0).u.real() == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(rescale_data(zero_eps, 1.0, -0.3).v == zero_eps(-0.3).v);
    CHECK_THROWS_AS(rescale_data(zero_eps, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(rescale_data(zero_eps, -2.0, 1.0), DomainError);
}

TEST_CASE("scale invariance of eps = 0 uncut data") {
    DataSpec spec;
    spec.kappa_plus = {0.3, -1.2};
    spec.kappa_minus = {2.0, 0.5};
    spec.lambda_plus = {-0.7, 0.1};
    spec.lambda_minus = {1.0, 1.0};
    spec.epsilon = 0.0;
    spec.cutoff = false;
    const SpinorSampler sampler = make_sampler(spec);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> log_lambda(-6.0, 6.0);
    std::uniform_real_distribution<double> xs(-5.0, 5.0);
    for (int i = 0; i < 500; ++i) {
        const double lambda = std::exp(log_lambda(rng));
        double x = xs(rng);
        if (x == 0.0) {
            x = 0.5;
        }
        const SpinorSample a = rescale_data(sampler, lambda, x);
        const SpinorSample b = data_sample(spec, x);
        CHECK(std::abs(a.u - b.u) <= 1e-14 * std::abs(b.u));
        CHECK(std::abs(a.v - b.v) <= 1e-14 * std::abs(b.v));
    }
}

TEST_CASE("L^p norm of rescaled data scales like lambda^{1/2-1/p}") {
    const SpinorSampler sampler = make_sampler(DataSpec::unit(0.0, false));
    for (double lambda : {0.5, 2.0, 5.0}) {
        for (double p : {1.0, 1.5}) {
            LebesgueSpec base{p, -1.0, 1.0, {0.0}};
            LebesgueSpec scaled{p, -1.0 / lambda, 1.0 / lambda, {0.0}};
            const NormValue n0 = lp_norm([&](double x) { return sampler(x).u; }, base);
            const NormValue n1 = lp_norm([&](double x) { return rescale_data(sampler, lambda, x).u; }, scaled);
            REQUIRE(n0.ok());
            REQUIRE(n1.ok());
            CHECK(n1.value / n0.value == doctest::Approx(std::pow(lambda, 0.5 - 1.0 / p)).epsilon(1e-9));
        }
    }
}

TEST_CASE("region classification") {
    CHECK(classify(0.0, 1.0) == Region::Cone);
    CHECK(classify(2.0, 1.0) == Region::Right);
    CHECK(classify(-2.0, 1.0) == Region::Left);
    CHECK(classify(-1.0, 1.0) == Region::Cone);
    CHECK(classify(1.0, 1.0) == Region::Cone);
    CHECK(on_cone_boundary(-1.0, 1.0));
    CHECK_FALSE(on_cone_boundary(0.5, 1.0));
    CHECK(std::string(to_string(Region::Right)) == "right");
}

TEST_CASE("wave coordinates") {
    const WaveCoords w = to_wave(2.0, 1.0);
    CHECK(w.y == 3.0);
    CHECK(w.s == -1.0);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> d(-10.0, 10.0);
    for (int i = 0; i < 100; ++i) {
        const double x = d(rng);
        const double t = d(rng);
        const SpacetimePoint p = from_wave(to_wave(x, t));
        CHECK(p.x == doctest::Approx(x).epsilon(1e-14));
        CHECK(p.t == doctest::Approx(t).epsilon(1e-14));
    }
}

TEST_CASE("DataSpec round trip through a config section") {
    DataSpec spec;
    spec.kappa_plus = {0.1, 0.2};
    spec.kappa_minus = {-0.3, 0.4};
    spec.lambda_plus = {0.5, -0.6};
    spec.lambda_minus = {0.7, 0.8};
    spec.epsilon = 0.0125;
    spec.cutoff = false;
    spec.mass = 0.75;
    const KeyValueSection section = spec.to_section();
    CHECK(section.contains("kappa_plus_re"));
    CHECK(section.contains("cutoff"));
    CHECK(DataSpec::from_section(section) == spec);
}
