#include "thirring/norms.hpp"

#include <fftw3.h>

#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "thirring/errors.hpp"
#include "thirring/quadrature.hpp"

namespace thirring {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_power_of_two(int n) {
    return n > 0 && (n & (n - 1)) == 0;
}

double sinc(double z) {
    return z == 0.0 ? 1.0 : std::sin(z) / z;
}

struct FftwPlan {
    explicit FftwPlan(int n)
        : in(fftw_alloc_complex(static_cast<std::size_t>(n))),
          out(fftw_alloc_complex(static_cast<std::size_t>(n))),
          plan(fftw_plan_dft_1d(n, in, out, FFTW_FORWARD, FFTW_ESTIMATE)) {}
    ~FftwPlan() {
        fftw_destroy_plan(plan);
        fftw_free(in);
        fftw_free(out);
    }
    FftwPlan(const FftwPlan&) = delete;
    FftwPlan& operator=(const FftwPlan&) = delete;

    fftw_complex* in;
    fftw_complex* out;
    fftw_plan plan;
};

}  // namespace

void LebesgueSpec::validate() const {
    if (!(p >= 1.0)) {
        throw DomainError("Lebesgue exponent must be >= 1");
    }
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
        throw DomainError("Lebesgue interval must satisfy a < b");
    }
}

void SobolevSpec::validate() const {
    if (!is_power_of_two(grid_points) || grid_points < (1 << 10)) {
        throw DomainError("Sobolev grid_points must be a power of two >= 1024");
    }
    if (!(freq_cutoff > 0.0)) {
        throw DomainError("Sobolev freq_cutoff must be > 0");
    }
    if (!(half_width > 0.0)) {
        throw DomainError("Sobolev half_width must be > 0");
    }
    if (!std::isfinite(s)) {
        throw DomainError("Sobolev order must be finite");
    }
}

const char* to_string(NormStatus status) {
    switch (status) {
        case NormStatus::Ok: return "ok";
        case NormStatus::Divergent: return "divergent";
        case NormStatus::Unresolved: return "unresolved";
    }
    return "?";
}

NormValue lp_norm(const ScalarSampler& sampler, const LebesgueSpec& spec, int resolution) {
    spec.validate();
    if (resolution < 64) {
        throw DomainError("lp_norm: resolution must be >= 64");
    }
    constexpr double kRelTol = 1e-10;
    constexpr int kMaxLayers = 1024;

    if (std::isinf(spec.p)) {
        auto modulus = [&](double x) { return std::abs(sampler(x)); };
        double previous = -1.0;
        for (int layers = resolution; layers <= kMaxLayers; layers *= 2) {
            GradedOptions opts;
            opts.layers = layers;
            opts.extrapolate_tail = false;
            const auto r = integrate_graded(modulus, spec.a, spec.b, spec.singular_points, opts);
            if (!std::isfinite(r.sup_abs)) {
                return {NormStatus::Divergent, 0.0, kInf};
            }
            if (previous >= 0.0 && std::abs(r.sup_abs - previous) <= kRelTol * r.sup_abs) {
                return {NormStatus::Ok, r.sup_abs, std::abs(r.sup_abs - previous)};
            }
            previous = r.sup_abs;
        }
        return {NormStatus::Divergent, 0.0, kInf};
    }

    auto integrand = [&](double x) { return std::pow(std::abs(sampler(x)), spec.p); };
    double previous = -1.0;
    for (int layers = resolution; layers <= kMaxLayers; layers *= 2) {
        GradedOptions opts;
        opts.layers = layers;
        const auto r = integrate_graded(integrand, spec.a, spec.b, spec.singular_points, opts);
        if (r.divergent || !std::isfinite(r.value)) {
            return {NormStatus::Divergent, 0.0, kInf};
        }
        if (previous >= 0.0 && std::abs(r.value - previous) <= kRelTol * r.value + 1e-300) {
            const double norm = std::pow(r.value, 1.0 / spec.p);
            const double coarse = std::pow(previous, 1.0 / spec.p);
            return {NormStatus::Ok, norm, std::abs(norm - coarse)};
        }
        previous = r.value;
    }
    return {NormStatus::Divergent, 0.0, kInf};
}

Spectrum fourier_spectrum(const ScalarSampler& sampler, int grid_points, double half_width,
                          const std::vector<double>& singular_points) {
    if (!is_power_of_two(grid_points)) {
        throw DomainError("fourier_spectrum: grid_points must be a power of two");
    }
    const int n = grid_points;
    const double window = 2.0 * half_width;
    const double dx = 2.0 * window / n;

    FftwPlan fft(n);
    const GaussLegendre cell_rule(8);
    GradedOptions graded;
    graded.layers = 64;
    for (int j = 0; j < n; ++j) {
        const double lo = -window + j * dx;
        const double hi = lo + dx;
        bool singular = false;
        for (double p : singular_points) {
            singular = singular || (p >= lo && p <= hi);
        }
        std::complex<double> cell;
        if (singular) {
            cell = integrate_graded(sampler, lo, hi, singular_points, graded).value;
        } else {
            cell = cell_rule.integrate(sampler, lo, hi);
        }
        fft.in[j][0] = cell.real();
        fft.in[j][1] = cell.imag();
    }
    fftw_execute(fft.plan);

    // Cell centres sit at −W + (j+½)dx, so ĥ(ξ_k) differs from the DFT by a
    // unimodular factor; only magnitudes are kept.
    Spectrum spectrum;
    spectrum.window = window;
    spectrum.xi.reserve(static_cast<std::size_t>(n));
    spectrum.magnitude.reserve(static_cast<std::size_t>(n));
    for (int k = -n / 2; k < n / 2; ++k) {
        const int index = (k + n) % n;
        const double xi = k * std::numbers::pi / window;
        const double mag = std::hypot(fft.out[index][0], fft.out[index][1]) * std::abs(sinc(0.5 * xi * dx));
        spectrum.xi.push_back(xi);
        spectrum.magnitude.push_back(mag);
    }
    return spectrum;
}

namespace {

struct SobolevPass {
    double norm = 0.0;
    double decay_sup = 0.0;
};

SobolevPass sobolev_pass(const ScalarSampler& sampler, const SobolevSpec& spec, int grid_points,
                         double decay_window) {
    const Spectrum spectrum = fourier_spectrum(sampler, grid_points, spec.half_width, spec.singular_points);
    const double dxi = std::numbers::pi / spectrum.window;
    double sum = 0.0;
    double sup = 0.0;
    for (std::size_t k = 0; k < spectrum.xi.size(); ++k) {
        const double xi = spectrum.xi[k];
        const double mag = spectrum.magnitude[k];
        const double bracket = 1.0 + xi * xi;
        if (std::abs(xi) <= spec.freq_cutoff) {
            sum += std::pow(bracket, spec.s) * mag * mag;
        }
        if (std::abs(xi) <= decay_window) {
            sup = std::max(sup, std::pow(bracket, 0.25) * mag);
        }
    }
    return {std::sqrt(sum * dxi / (2.0 * std::numbers::pi)), sup};
}

double nyquist(const SobolevSpec& spec) {
    return std::numbers::pi * spec.grid_points / (4.0 * spec.half_width);
}

}  // namespace

NormValue hs_norm(const ScalarSampler& sampler, const SobolevSpec& spec) {
    spec.validate();
    if (spec.freq_cutoff > 0.5 * nyquist(spec)) {
        return {NormStatus::Unresolved, 0.0, kInf, kInf};
    }
    const SobolevPass coarse = sobolev_pass(sampler, spec, spec.grid_points, spec.freq_cutoff);
    const SobolevPass fine = sobolev_pass(sampler, spec, 2 * spec.grid_points, spec.freq_cutoff);

    NormValue result;
    result.value = coarse.norm;
    result.refinement_delta = fine.norm > 0.0 ? std::abs(fine.norm - coarse.norm) / fine.norm : 0.0;
    if (result.refinement_delta > spec.resolution_tolerance) {
        result.status = NormStatus::Unresolved;
    }
    // |ĥ| ≤ C⟨ξ⟩^{−1/2} beyond the cutoff, C = sup over the computed window:
    // tail² ≤ (C²/π) ∫_Ξ^∞ ⟨ξ⟩^{2s−1} dξ ≤ (C²/π) Ξ^{2s}/(−2s) for s < 0.
    if (spec.s < 0.0) {
        const double c = coarse.decay_sup;
        const double tail_sq = c * c / std::numbers::pi * std::pow(spec.freq_cutoff, 2.0 * spec.s) / (-2.0 * spec.s);
        result.error_estimate = std::sqrt(coarse.norm * coarse.norm + tail_sq) - coarse.norm;
    } else {
        result.error_estimate = kInf;
    }
    return result;
}

NormValue fourier_decay_sup(const ScalarSampler& sampler, const SobolevSpec& spec, double freq_window) {
    spec.validate();
    if (!(freq_window > 0.0) || freq_window > 0.5 * nyquist(spec)) {
        return {NormStatus::Unresolved, 0.0, kInf, kInf};
    }
    const SobolevPass coarse = sobolev_pass(sampler, spec, spec.grid_points, freq_window);
    const SobolevPass fine = sobolev_pass(sampler, spec, 2 * spec.grid_points, freq_window);
    NormValue result;
    result.value = coarse.decay_sup;
    result.error_estimate = std::abs(fine.decay_sup - coarse.decay_sup);
    result.refinement_delta = fine.decay_sup > 0.0 ? result.error_estimate / fine.decay_sup : 0.0;
    if (result.refinement_delta > spec.resolution_tolerance) {
        result.status = NormStatus::Unresolved;
    }
    return result;
}

NormValue evaluate_norm(const ScalarSampler& sampler, const NormSpec& spec) {
    if (const auto* lebesgue = std::get_if<LebesgueSpec>(&spec)) {
        return lp_norm(sampler, *lebesgue);
    }
    return hs_norm(sampler, std::get<SobolevSpec>(spec));
}

std::string describe(const NormSpec& spec) {
    std::ostringstream out;
    if (const auto* l = std::get_if<LebesgueSpec>(&spec)) {
        out << "L^" << (std::isinf(l->p) ? std::string("inf") : format_double(l->p)) << "("
            << format_double(l->a) << "," << format_double(l->b) << ")";
    } else {
        const auto& h = std::get<SobolevSpec>(spec);
        out << "H^" << format_double(h.s);
    }
    return out.str();
}

namespace {

std::string join(const std::vector<double>& values) {
    std::string text;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i != 0) {
            text += ",";
        }
        text += format_double(values[i]);
    }
    return text;
}

}  // namespace

KeyValueSection to_section(const NormSpec& spec) {
    KeyValueSection section;
    if (const auto* l = std::get_if<LebesgueSpec>(&spec)) {
        section.set("kind", std::string("lebesgue"));
        section.set("p", std::isinf(l->p) ? std::string("inf") : format_double(l->p));
        section.set("a", l->a);
        section.set("b", l->b);
        section.set("singular_points", join(l->singular_points));
    } else {
        const auto& h = std::get<SobolevSpec>(spec);
        section.set("kind", std::string("sobolev"));
        section.set("s", h.s);
        section.set("grid_points", std::to_string(h.grid_points));
        section.set("freq_cutoff", h.freq_cutoff);
        section.set("half_width", h.half_width);
        section.set("singular_points", join(h.singular_points));
        section.set("resolution_tolerance", h.resolution_tolerance);
    }
    return section;
}

NormSpec norm_spec_from_section(const KeyValueSection& section) {
    const std::string kind = section.get("kind").value_or("lebesgue");
    if (kind == "lebesgue") {
        LebesgueSpec l;
        const std::string p = section.get("p").value_or("1");
        l.p = (p == "inf") ? kInf : section.get_double("p", 1.0);
        l.a = section.get_double("a", l.a);
        l.b = section.get_double("b", l.b);
        if (section.contains("singular_points")) {
            l.singular_points = section.get_double_list("singular_points");
        }
        l.validate();
        return l;
    }
    if (kind == "sobolev") {
        SobolevSpec h;
        h.s = section.get_double("s", h.s);
        h.grid_points = static_cast<int>(section.get_int("grid_points", h.grid_points));
        h.freq_cutoff = section.get_double("freq_cutoff", h.freq_cutoff);
        h.half_width = section.get_double("half_width", h.half_width);
        if (section.contains("singular_points")) {
            h.singular_points = section.get_double_list("singular_points");
        }
        h.resolution_tolerance = section.get_double("resolution_tolerance", h.resolution_tolerance);
        h.validate();
        return h;
    }
    throw ConfigError("unknown norm kind '" + kind + "'");
}

std::string norm_spec_json(const NormSpec& spec) {
    nlohmann::ordered_json j;
    if (const auto* l = std::get_if<LebesgueSpec>(&spec)) {
        j["kind"] = "lebesgue";
        j["p"] = std::isinf(l->p) ? nlohmann::ordered_json("inf") : nlohmann::ordered_json(l->p);
        j["interval"] = {l->a, l->b};
        j["singular_points"] = l->singular_points;
    } else {
        const auto& h = std::get<SobolevSpec>(spec);
        j["kind"] = "sobolev";
        j["s"] = h.s;
        j["grid_points"] = h.grid_points;
        j["freq_cutoff"] = h.freq_cutoff;
        j["window"] = {-2.0 * h.half_width, 2.0 * h.half_width};
        j["support"] = {-h.half_width, h.half_width};
        j["singular_points"] = h.singular_points;
        j["resolution_tolerance"] = h.resolution_tolerance;
    }
    return j.dump();
}

bool ConvergenceTable::monotone_decreasing() const {
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].distance.ok()) {
            return false;
        }
        if (i > 0 && !(rows[i].distance.value < rows[i - 1].distance.value)) {
            return false;
        }
    }
    return true;
}

void ConvergenceTable::write_csv(std::ostream& out) const {
    out << "epsilon,distance,status\n";
    for (const auto& row : rows) {
        out << format_double(row.epsilon) << ','
            << (row.distance.ok() ? format_double(row.distance.value) : std::string("nan")) << ','
            << to_string(row.distance.status) << '\n';
    }
}

std::string ConvergenceTable::sidecar_json() const {
    nlohmann::ordered_json j;
    j["family"] = family_id;
    j["norm"] = nlohmann::ordered_json::parse(norm_spec_json(spec));
    j["rows"] = rows.size();
    j["monotone_decreasing"] = monotone_decreasing();
    return j.dump(2);
}

ConvergenceTable convergence_table(const std::string& family_id,
                                   const std::function<ScalarSampler(double)>& family,
                                   const ScalarSampler& target, const NormSpec& spec,
                                   const std::vector<double>& epsilons) {
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        if (!(epsilons[i] > 0.0)) {
            throw DomainError("convergence_table: epsilon values must be > 0");
        }
        if (i > 0 && !(epsilons[i] < epsilons[i - 1])) {
            throw DomainError("convergence_table: epsilon values must be strictly decreasing");
        }
    }
    ConvergenceTable table{family_id, spec, {}};
    table.rows.reserve(epsilons.size());
    for (double eps : epsilons) {
        ScalarSampler member = family(eps);
        ScalarSampler difference = [member, target](double x) { return member(x) - target(x); };
        table.rows.push_back({eps, evaluate_norm(difference, spec)});
    }
    return table;
}

}  // namespace thirring
