#include "thirring/field_model.hpp"

#include <cmath>
#include <string>

#include "thirring/errors.hpp"

namespace thirring {

DataSpec DataSpec::unit(double epsilon, bool cutoff, double mass) {
    DataSpec spec;
    spec.epsilon = epsilon;
    spec.cutoff = cutoff;
    spec.mass = mass;
    return spec;
}

void DataSpec::validate() const {
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
        throw DomainError("epsilon must be finite and >= 0");
    }
    if (!(mass >= 0.0) || !std::isfinite(mass)) {
        throw DomainError("mass must be finite and >= 0");
    }
}

namespace {

void put_complex(KeyValueSection& section, const std::string& name, Complex value) {
    section.set(name + "_re", value.real());
    section.set(name + "_im", value.imag());
}

Complex get_complex(const KeyValueSection& section, const std::string& name, Complex fallback) {
    return {section.get_double(name + "_re", fallback.real()),
            section.get_double(name + "_im", fallback.imag())};
}

}  // namespace

KeyValueSection DataSpec::to_section() const {
    KeyValueSection section;
    put_complex(section, "kappa_plus", kappa_plus);
    put_complex(section, "kappa_minus", kappa_minus);
    put_complex(section, "lambda_plus", lambda_plus);
    put_complex(section, "lambda_minus", lambda_minus);
    section.set("epsilon", epsilon);
    section.set("cutoff", cutoff);
    section.set("mass", mass);
    return section;
}

DataSpec DataSpec::from_section(const KeyValueSection& section) {
    DataSpec spec;
    spec.kappa_plus = get_complex(section, "kappa_plus", spec.kappa_plus);
    spec.kappa_minus = get_complex(section, "kappa_minus", spec.kappa_minus);
    spec.lambda_plus = get_complex(section, "lambda_plus", spec.lambda_plus);
    spec.lambda_minus = get_complex(section, "lambda_minus", spec.lambda_minus);
    spec.epsilon = section.get_double("epsilon", spec.epsilon);
    spec.cutoff = section.get_bool("cutoff", spec.cutoff);
    spec.mass = section.get_double("mass", spec.mass);
    spec.validate();
    return spec;
}

SpinorSample data_sample(const DataSpec& spec, double x) {
    if (spec.epsilon == 0.0 && x == 0.0) {
        throw SingularPointError("data_sample: epsilon = 0 data is singular at x = 0");
    }
    if (spec.cutoff && !(std::abs(x) < 1.0)) {
        return {};
    }
    const double amplitude = 1.0 / std::sqrt(spec.epsilon + std::abs(x));
    if (x >= 0.0) {
        return {spec.kappa_plus * amplitude, spec.lambda_plus * amplitude};
    }
    return {spec.kappa_minus * amplitude, spec.lambda_minus * amplitude};
}

SpinorSampler make_sampler(const DataSpec& spec) {
    spec.validate();
    return [spec](double x) { return data_sample(spec, x); };
}

SpinorSample rescale_data(const SpinorSampler& sampler, double lambda, double x) {
    if (!(lambda > 0.0)) {
        throw DomainError("rescale_data: lambda must be > 0");
    }
    const SpinorSample base = sampler(lambda * x);
    const double factor = std::sqrt(lambda);
    return {base.u * factor, base.v * factor};
}

const char* to_string(Region region) {
    switch (region) {
        case Region::Left: return "left";
        case Region::Cone: return "cone";
        case Region::Right: return "right";
    }
    return "?";
}

Region classify(double x, double t) {
    if (!(t > 0.0)) {
        throw DomainError("classify: t must be > 0");
    }
    if (x > t) {
        return Region::Right;
    }
    if (x < -t) {
        return Region::Left;
    }
    return Region::Cone;
}

bool on_cone_boundary(double x, double t) {
    return std::abs(x) == t;
}

WaveCoords to_wave(double x, double t) {
    return {x + t, t - x};
}

SpacetimePoint from_wave(const WaveCoords& w) {
    return {0.5 * (w.y - w.s), 0.5 * (w.y + w.s)};
}

}  // namespace thirring
