#include <cmath>
#include <fstream>
#include <numbers>

#include "thirring/errors.hpp"
#include "thirring/exact_massless.hpp"
#include "thirring/experiments.hpp"

namespace thirring {

namespace {

std::vector<double> list_or(const KeyValueSection& section, const std::string& key, std::vector<double> fallback) {
    if (!section.contains(key)) {
        return fallback;
    }
    return section.get_double_list(key);
}

std::string format_cell(const Json& cell) {
    if (cell.is_number_float()) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", cell.get<double>());
        return buf;
    }
    if (cell.is_string()) {
        return cell.get<std::string>();
    }
    if (cell.is_null()) {
        return "";
    }
    return cell.dump();
}

bool compare(double measured, const std::string& op, double threshold) {
    if (!std::isfinite(measured)) {
        return false;
    }
    if (op == "<=") return measured <= threshold;
    if (op == "<") return measured < threshold;
    if (op == ">=") return measured >= threshold;
    if (op == ">") return measured > threshold;
    if (op == "==") return measured == threshold;
    throw ConfigError("unknown comparator " + op);
}

// Non-finite doubles are not valid JSON numbers.
Json number(double value) {
    if (std::isfinite(value)) {
        return value;
    }
    return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
}

}  // namespace

const std::vector<std::string>& experiment_ids() {
    static const std::vector<std::string> ids{"data-convergence", "bifurcation", "product-dichotomy",
                                              "self-similar", "pv-residual", "solver-validation"};
    return ids;
}

ExperimentConfig ExperimentConfig::defaults(const std::string& id) {
    ExperimentConfig c;
    c.id = id;
    c.out_dir = std::filesystem::path("out") / id;
    if (id == "data-convergence") {
        c.p_values = {1.0, 1.5, 2.0};
        c.s_values = {-0.25};
        c.eps_count = 12;
    } else if (id == "bifurcation") {
        c.alphas = {0.0, std::numbers::pi};
        c.p_values = {1.0};
        c.eps_count = 8;
    } else if (id == "product-dichotomy") {
        c.masses = {0.0, 1.0};
        c.eps_count = 12;
    } else if (id == "self-similar") {
        c.tuple_count = 5;
    } else if (id == "pv-residual") {
        c.alphas = {0.0, 1.0, std::numbers::pi};
        c.eps_count = 12;
        c.generic_count = 40;
    } else if (id == "solver-validation") {
        c.masses = {0.0, 0.5, 1.0};
        c.epsilons = {0.5, 0.1, 0.01};
        c.mesh_delta = 1e-3;
    } else {
        throw ConfigError("unknown experiment id: " + id);
    }
    return c;
}

ExperimentConfig ExperimentConfig::from_config(const KeyValueConfig& config, const std::string& id) {
    ExperimentConfig c = defaults(id);
    if (config.has_section("data")) {
        c.data = DataSpec::from_section(config.section("data"));
    }
    if (!config.has_section(id)) {
        return c;
    }
    const KeyValueSection& s = config.section(id);
    if (auto out = s.get("out")) {
        c.out_dir = *out;
    }
    c.p_values = list_or(s, "p", c.p_values);
    c.s_values = list_or(s, "s", c.s_values);
    c.alphas = list_or(s, "alpha", c.alphas);
    c.masses = list_or(s, "mass", c.masses);
    c.epsilons = list_or(s, "epsilon", c.epsilons);
    c.eps_count = static_cast<int>(s.get_int("eps_count", c.eps_count));
    c.mesh_delta = s.get_double("mesh_delta", c.mesh_delta);
    c.probe_time = s.get_double("probe_time", c.probe_time);
    c.probe_half_width = s.get_double("probe_half_width", c.probe_half_width);
    c.tuple_count = static_cast<int>(s.get_int("tuple_count", c.tuple_count));
    c.tuple_seed = static_cast<std::uint64_t>(s.get_int("tuple_seed", static_cast<long long>(c.tuple_seed)));
    c.theta = s.get("theta").value_or(c.theta);
    c.generic_count = static_cast<int>(s.get_int("generic_count", c.generic_count));
    c.ball_refinement = static_cast<int>(s.get_int("ball_refinement", c.ball_refinement));
    return c;
}

void ExperimentConfig::validate() const {
    const auto& ids = experiment_ids();
    if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
        throw ConfigError("unknown experiment id: " + id);
    }
    for (double e : epsilons) {
        if (!(e > 0.0)) {
            throw ConfigError("epsilon values must be positive");
        }
    }
    for (double m : masses) {
        if (!(m >= 0.0)) {
            throw ConfigError("mass values must be non-negative");
        }
    }
    if (!(mesh_delta > 0.0)) {
        throw ConfigError("mesh_delta must be positive");
    }
    if (id == "data-convergence") {
        if (p_values.empty() && s_values.empty()) {
            throw ConfigError("data-convergence needs p or s values");
        }
        for (double p : p_values) {
            if (!(p >= 1.0 && p <= 2.0)) {
                throw ConfigError("data-convergence: p must lie in [1, 2]");
            }
        }
        for (double s : s_values) {
            if (!(s > -0.5 && s < 0.0)) {
                throw ConfigError("data-convergence: s must lie in (-1/2, 0)");
            }
        }
    }
    if (id == "bifurcation") {
        if (alphas.size() < 2) {
            throw ConfigError("bifurcation needs at least two alpha values");
        }
        if (!(probe_time > 0.0 && probe_time < 0.5)) {
            throw ConfigError("bifurcation: probe_time must lie in (0, 1/2)");
        }
        if (p_values.empty()) {
            throw ConfigError("bifurcation needs a p value");
        }
    }
    if ((id == "product-dichotomy" || id == "solver-validation") && masses.empty()) {
        throw ConfigError(id + " needs mass values");
    }
    if (id == "solver-validation" && epsilons.empty()) {
        throw ConfigError("solver-validation needs epsilon values");
    }
    if (id == "pv-residual" && alphas.empty()) {
        throw ConfigError("pv-residual needs alpha values");
    }
    if (eps_count < 0 || tuple_count < 0 || generic_count < 0 || ball_refinement < 1) {
        throw ConfigError("counts must be non-negative");
    }
}

Json ExperimentConfig::to_json() const {
    Json j;
    j["id"] = id;
    Json d;
    const KeyValueSection section = data.to_section();
    for (const auto& [key, value] : section.entries()) {
        d[key] = value;
    }
    j["data"] = d;
    j["p"] = p_values;
    j["s"] = s_values;
    j["eps_count"] = eps_count;
    j["alpha"] = alphas;
    j["mass"] = masses;
    j["epsilon"] = epsilons;
    j["mesh_delta"] = mesh_delta;
    j["probe_time"] = probe_time;
    j["probe_half_width"] = probe_half_width;
    j["tuple_count"] = tuple_count;
    j["tuple_seed"] = tuple_seed;
    j["theta"] = theta;
    j["generic_count"] = generic_count;
    j["ball_refinement"] = ball_refinement;
    return j;
}

Verdict make_verdict(std::string name, double measured, std::string comparator, double threshold, std::string note) {
    Verdict v;
    v.name = std::move(name);
    v.measured = measured;
    v.threshold = threshold;
    v.pass = compare(measured, comparator, threshold);
    v.comparator = std::move(comparator);
    v.note = std::move(note);
    return v;
}

Verdict make_range_verdict(std::string name, double measured, double lower, double upper, std::string note) {
    Verdict v;
    v.name = std::move(name);
    v.measured = measured;
    v.threshold = lower;
    v.upper = upper;
    v.comparator = "in";
    v.pass = std::isfinite(measured) && measured >= lower && measured <= upper;
    v.note = std::move(note);
    return v;
}

void Table::add(std::vector<Json> row) {
    if (row.size() != columns.size()) {
        throw ConfigError("table " + name + ": row width mismatch");
    }
    for (auto& cell : row) {
        if (cell.is_number_float()) {
            cell = number(cell.get<double>());
        }
    }
    rows.push_back(std::move(row));
}

void Table::write_csv(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot write " + path.string());
    }
    for (std::size_t i = 0; i < columns.size(); ++i) {
        out << (i ? "," : "") << columns[i];
    }
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << format_cell(row[i]);
        }
        out << '\n';
    }
}

bool ExperimentReport::all_pass() const {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

Table& ExperimentReport::table(const std::string& name, std::vector<std::string> columns) {
    for (auto& t : tables) {
        if (t.name == name) {
            return t;
        }
    }
    tables.push_back(Table{name, std::move(columns), {}});
    return tables.back();
}

Json ExperimentReport::to_json() const {
    Json j;
    j["experiment"] = experiment;
    j["config"] = config;
    Json tj = Json::object();
    for (const auto& t : tables) {
        Json rows = Json::array();
        for (const auto& row : t.rows) {
            rows.push_back(row);
        }
        tj[t.name] = {{"columns", t.columns}, {"rows", rows}};
    }
    j["tables"] = tj;
    Json vj = Json::array();
    for (const auto& v : verdicts) {
        Json e{{"name", v.name}, {"measured", number(v.measured)}, {"comparator", v.comparator},
               {"threshold", number(v.threshold)}};
        if (v.comparator == "in") {
            e["upper"] = number(v.upper);
        }
        e["pass"] = v.pass;
        if (!v.note.empty()) {
            e["note"] = v.note;
        }
        vj.push_back(e);
    }
    j["verdicts"] = vj;
    j["notes"] = notes;
    j["all_pass"] = all_pass();
    j["metadata"] = {{"runtime_seconds", runtime_seconds}};
    return j;
}

void ExperimentReport::write(const std::filesystem::path& dir) const {
    std::filesystem::create_directories(dir);
    std::ofstream out(dir / "report.json");
    if (!out) {
        throw ConfigError("cannot write " + (dir / "report.json").string());
    }
    out << to_json().dump(2) << '\n';
    for (const auto& t : tables) {
        t.write_csv(dir / (t.name + ".csv"));
    }
}

Complex pv_residual(double alpha, double log_base, std::int64_t eighth_turns, double theta_plus,
                    double theta_minus) {
    const ExactLog log{log_base, eighth_turns};
    // e^{i(α + 2 log δ)}: the whole-turn part 2·eighth_turns is applied exactly.
    const Complex winding = std::polar(1.0, alpha + 2.0 * log_base) * ExactLog{0.0, 2 * eighth_turns}.exp_i(1);
    return log.exp_i(-1) * (winding * theta_plus - theta_minus);
}

double TestFunction::value(double y) const {
    if (name == "gaussian") {
        return std::exp(-y * y);
    }
    if (std::abs(y) >= 1.0) {
        return 0.0;
    }
    const double bump = std::exp(y * y / (y * y - 1.0));
    return name == "odd-bump" ? y * bump : bump;
}

double TestFunction::derivative(double y) const {
    if (name == "gaussian") {
        return -2.0 * y * std::exp(-y * y);
    }
    if (std::abs(y) >= 1.0) {
        return 0.0;
    }
    const double q = y * y - 1.0;
    const double bump = std::exp(y * y / q);
    const double bump_prime = bump * (-2.0 * y / (q * q));
    return name == "odd-bump" ? bump + y * bump_prime : bump_prime;
}

double TestFunction::lipschitz() const {
    constexpr int samples = 200001;
    double best = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double y = -1.0 + 2.0 * i / (samples - 1.0);
        best = std::max(best, std::abs(derivative(y)));
    }
    return best;
}

TestFunction make_test_function(const std::string& name) {
    if (name != "bump" && name != "odd-bump" && name != "gaussian") {
        throw ConfigError("unknown test function: " + name);
    }
    TestFunction f{name};
    if (std::abs(f.value(1.0)) > 1e-12 || std::abs(f.value(-1.0)) > 1e-12) {
        throw ConfigError("test function " + name + " does not vanish at +-1");
    }
    return f;
}

}  // namespace thirring
