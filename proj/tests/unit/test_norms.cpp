#include <cmath>
#include <sstream>

#include <doctest.h>

#include "thirring/errors.hpp"
#include "thirring/field_model.hpp"
#include "thirring/norms.hpp"

using namespace thirring;

namespace {

ScalarSampler power_data(double eps) {
    const DataSpec spec = DataSpec::unit(eps, true);
    return [spec](double x) { return data_sample(spec, x).u; };
}

std::complex<double> bump(double x) {
    if (std::abs(x) >= 0.5) {
        return 0.0;
    }
    const double y = 2.0 * x;
    return std::exp(y * y / (y * y - 1.0));
}

const ScalarSampler zero = [](double) { return std::complex<double>{}; };

}  // namespace

TEST_CASE("L^1 norm of the singular data is 4") {
    const NormValue n = lp_norm(power_data(0.0), LebesgueSpec{1.0, -1.0, 1.0, {0.0}});
    REQUIRE(n.ok());
    CHECK(n.value == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("L^2 norm of the singular data is flagged divergent") {
    const NormValue n = lp_norm(power_data(0.0), LebesgueSpec{2.0, -1.0, 1.0, {0.0}});
    CHECK(n.status == NormStatus::Divergent);
    CHECK_FALSE(n.ok());
}

TEST_CASE("zero sampler has zero norm") {
    for (double p : {1.0, 1.5, 2.0, 4.0, std::numeric_limits<double>::infinity()}) {
        const NormValue n = lp_norm(zero, LebesgueSpec{p, -1.0, 1.0, {0.0}});
        REQUIRE(n.ok());
        CHECK(n.value == 0.0);
    }
    SobolevSpec hs;
    hs.s = -0.25;
    CHECK(hs_norm(zero, hs).value == 0.0);
    CHECK(fourier_decay_sup(zero, hs, 100.0).value == 0.0);
}

TEST_CASE("graded quadrature against integral of x^{-p/2} on (0, 1)") {
    const ScalarSampler root = [](double x) { return std::complex<double>(1.0 / std::sqrt(x)); };
    for (double p : {1.0, 1.25, 1.5, 1.8}) {
        const NormValue n = lp_norm(root, LebesgueSpec{p, 0.0, 1.0, {}});
        REQUIRE(n.ok());
        CHECK(std::pow(n.value, p) == doctest::Approx(1.0 / (1.0 - 0.5 * p)).epsilon(1e-9));
    }
}

TEST_CASE("squared L^2 norm of the regularised data") {
    for (double eps : {0.5, 0.01, 1e-4}) {
        const NormValue n = lp_norm(power_data(eps), LebesgueSpec{2.0, -1.0, 1.0, {0.0}});
        REQUIRE(n.ok());
        CHECK(std::abs(n.value * n.value - 2.0 * std::log1p(1.0 / eps)) <= 1e-9);
    }
}

TEST_CASE("sup norm") {
    const NormValue n = lp_norm(power_data(0.25), LebesgueSpec{std::numeric_limits<double>::infinity(), -1.0, 1.0,
                                                              {0.0}});
    REQUIRE(n.ok());
    CHECK(n.value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("Parseval: H^0 matches L^2 for a smooth bump") {
    SobolevSpec hs;
    hs.s = 0.0;
    hs.singular_points = {};
    const NormValue h = hs_norm(bump, hs);
    const NormValue l = lp_norm(bump, LebesgueSpec{2.0, -1.0, 1.0, {}});
    REQUIRE(h.ok());
    REQUIRE(l.ok());
    CHECK(std::abs(h.value - l.value) <= 1e-3 * l.value);
}

TEST_CASE("H^s norm grows with s") {
    double previous = -1.0;
    for (double s : {-0.4, -0.25, -0.1, 0.0}) {
        SobolevSpec hs;
        hs.s = s;
        const NormValue n = hs_norm(power_data(0.01), hs);
        REQUIRE(n.ok());
        CHECK(n.value >= previous);
        previous = n.value;
    }
}

TEST_CASE("singular data in H^{-1/4}: finite and stable under grid doubling") {
    SobolevSpec hs;
    hs.s = -0.25;
    const NormValue n = hs_norm(power_data(0.0), hs);
    REQUIRE(n.ok());
    CHECK(std::isfinite(n.value));
    CHECK(n.refinement_delta <= 0.01);
    CHECK(std::isfinite(n.error_estimate));
}

TEST_CASE("Fourier decay of the singular data") {
    SobolevSpec hs;
    const NormValue a = fourier_decay_sup(power_data(0.0), hs, 100.0);
    const NormValue b = fourier_decay_sup(power_data(0.0), hs, 200.0);
    REQUIRE(a.ok());
    REQUIRE(b.ok());
    CHECK(b.value == doctest::Approx(a.value).epsilon(0.05));

    const Spectrum spec = fourier_spectrum(bump, 1 << 12, 1.0, {});
    double edge = 0.0;
    double peak = 0.0;
    for (std::size_t k = 0; k < spec.xi.size(); ++k) {
        const double weighted = std::sqrt(std::hypot(1.0, spec.xi[k])) * spec.magnitude[k];
        peak = std::max(peak, weighted);
        if (spec.xi[k] > 150.0 && spec.xi[k] <= 200.0) {
            edge = std::max(edge, weighted);
        }
    }
    CHECK(edge < 1e-3 * peak);
}

TEST_CASE("convergence tables") {
    const std::vector<double> eps{0.5, 0.25, 0.125, 0.0625, 0.03125};
    const ConvergenceTable l1 = convergence_table("power-data", power_data, power_data(0.0),
                                                  LebesgueSpec{1.0, -1.0, 1.0, {0.0}}, eps);
    CHECK(l1.monotone_decreasing());
    for (const auto& row : l1.rows) {
        // ‖f_ε − f‖_{L¹(−1,1)} = 4(√(1+ε) − 1 − √ε) in absolute value.
        const double closed = 4.0 * (1.0 - std::sqrt(1.0 + row.epsilon) + std::sqrt(row.epsilon));
        CHECK(row.distance.value == doctest::Approx(closed).epsilon(1e-9));
    }

    const ConvergenceTable l2 = convergence_table("power-data", power_data, power_data(0.0),
                                                  LebesgueSpec{2.0, -1.0, 1.0, {0.0}}, eps);
    CHECK_FALSE(l2.monotone_decreasing());
    for (const auto& row : l2.rows) {
        CHECK(row.distance.status == NormStatus::Divergent);
    }

    SobolevSpec hs;
    hs.s = -0.25;
    const ConvergenceTable sob = convergence_table("power-data", power_data, power_data(0.0), hs, eps);
    CHECK(sob.monotone_decreasing());

    const ScalarSampler constant = bump;
    const ConvergenceTable flat = convergence_table(
        "constant", [&](double) { return constant; }, constant, LebesgueSpec{1.5, -1.0, 1.0, {}}, eps);
    for (const auto& row : flat.rows) {
        CHECK(row.distance.value == 0.0);
    }

    CHECK_THROWS_AS(convergence_table("bad", power_data, power_data(0.0), LebesgueSpec{}, {0.1, 0.2}),
                    DomainError);
    CHECK_THROWS_AS(convergence_table("bad", power_data, power_data(0.0), LebesgueSpec{}, {0.1, -0.2}),
                    DomainError);
}

TEST_CASE("convergence table serialisation") {
    const ConvergenceTable ct = convergence_table("power-data", power_data, power_data(0.0),
                                                  LebesgueSpec{1.0, -1.0, 1.0, {0.0}}, {0.5, 0.25});
    std::ostringstream csv;
    ct.write_csv(csv);
    CHECK(csv.str().rfind("epsilon,distance,status\n", 0) == 0);
    CHECK(ct.sidecar_json().find("power-data") != std::string::npos);
    CHECK(ct.sidecar_json().find("lebesgue") != std::string::npos);
}

TEST_CASE("norm spec validation and round trip") {
    CHECK_THROWS_AS((LebesgueSpec{0.5, -1.0, 1.0, {}}.validate()), DomainError);
    CHECK_THROWS_AS((LebesgueSpec{1.0, 1.0, -1.0, {}}.validate()), DomainError);
    SobolevSpec hs;
    hs.grid_points = 1000;
    CHECK_THROWS_AS(hs.validate(), DomainError);
    hs.grid_points = 512;
    CHECK_THROWS_AS(hs.validate(), DomainError);
    hs.grid_points = 2048;
    hs.freq_cutoff = 0.0;
    CHECK_THROWS_AS(hs.validate(), DomainError);

    hs.freq_cutoff = 150.0;
    hs.s = -0.3;
    const NormSpec back = norm_spec_from_section(to_section(NormSpec{hs}));
    REQUIRE(std::holds_alternative<SobolevSpec>(back));
    CHECK(std::get<SobolevSpec>(back).s == -0.3);
    CHECK(std::get<SobolevSpec>(back).grid_points == 2048);
    const NormSpec leb = norm_spec_from_section(to_section(NormSpec{LebesgueSpec{1.5, -2.0, 3.0, {0.0}}}));
    REQUIRE(std::holds_alternative<LebesgueSpec>(leb));
    CHECK(std::get<LebesgueSpec>(leb).b == 3.0);
}
