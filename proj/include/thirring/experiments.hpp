#pragma once

#include <cstdint>
#include <deque>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "thirring/config.hpp"
#include "thirring/field_model.hpp"

namespace thirring {

using Json = nlohmann::ordered_json;

const std::vector<std::string>& experiment_ids();

/// Parameters of one experiment. Fields that an experiment does not use are
/// ignored by it and still echoed in the report.
struct ExperimentConfig {
    std::string id;
    std::filesystem::path out_dir = "out";

    DataSpec data;                          ///< constants for self-similar
    std::vector<double> p_values;           ///< Lebesgue exponents
    std::vector<double> s_values;           ///< Sobolev exponents
    int eps_count = 0;                      ///< sequence length (experiment specific default)
    std::vector<double> alphas;
    std::vector<double> masses;
    std::vector<double> epsilons;           ///< solver-validation data widths
    double mesh_delta = 1e-3;
    double probe_time = 0.25;               ///< bifurcation slice t
    double probe_half_width = 0.2;          ///< bifurcation slice |x| ≤ this
    int tuple_count = 5;                    ///< self-similar random constant tuples
    std::uint64_t tuple_seed = 20240611;
    std::string theta = "bump";             ///< pv-residual test function
    int generic_count = 40;                 ///< pv-residual generic sequence length
    int ball_refinement = 250;              ///< product-dichotomy: Δ = δ/(8·this)

    /// Defaults for `id`; throws ConfigError for unknown ids.
    static ExperimentConfig defaults(const std::string& id);
    /// Defaults overridden by keys of section [id] (if present).
    static ExperimentConfig from_config(const KeyValueConfig& config, const std::string& id);

    /// Throws ConfigError on non-positive ε values, empty lists the
    /// experiment needs, or inconsistent mesh parameters.
    void validate() const;
    Json to_json() const;
};

struct Verdict {
    std::string name;
    double measured = 0.0;
    double threshold = 0.0;
    std::string comparator;   ///< "<=", "<", ">=", ">", "==", "in"
    double upper = 0.0;       ///< second bound for "in"
    bool pass = false;
    std::string note;
};

/// Evaluates `measured comparator threshold` and records the outcome.
Verdict make_verdict(std::string name, double measured, std::string comparator, double threshold,
                     std::string note = {});
Verdict make_range_verdict(std::string name, double measured, double lower, double upper,
                           std::string note = {});

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Json>> rows;

    void add(std::vector<Json> row);
    void write_csv(const std::filesystem::path& path) const;
};

struct ExperimentReport {
    std::string experiment;
    Json config;
    std::deque<Table> tables;   // stable references across table()
    std::vector<Verdict> verdicts;
    std::vector<std::string> notes;
    double runtime_seconds = 0.0;

    bool all_pass() const;
    Table& table(const std::string& name, std::vector<std::string> columns);

    /// Full report; runtime metadata sits under "metadata".
    Json to_json() const;
    /// report.json plus one CSV per table.
    void write(const std::filesystem::path& dir) const;
};

ExperimentReport run_data_convergence(const ExperimentConfig& config);
ExperimentReport run_bifurcation(const ExperimentConfig& config);
ExperimentReport run_product_dichotomy(const ExperimentConfig& config);
ExperimentReport run_self_similar(const ExperimentConfig& config);
ExperimentReport run_pv_residual(const ExperimentConfig& config);
ExperimentReport run_solver_validation(const ExperimentConfig& config);

ExperimentReport run_experiment(const ExperimentConfig& config);

/// R(δ) = e^{iα}e^{i log δ}θ(δ) − e^{−i log δ}θ(−δ), evaluated in the
/// factored form e^{−i log δ}[e^{i(α+2 log δ)}θ(δ) − θ(−δ)] with the
/// whole-turn part of log δ handled exactly.
Complex pv_residual(double alpha, double log_base, std::int64_t eighth_turns, double theta_plus,
                    double theta_minus);

/// Test functions for the principal-value experiment: "bump" exp(y²/(y²−1)),
/// "odd-bump" y·bump, "gaussian" exp(−y²) (rejected: not compactly supported).
struct TestFunction {
    std::string name;
    double value(double y) const;
    double derivative(double y) const;
    /// max |θ'| on a dense grid of (−1, 1).
    double lipschitz() const;
};

TestFunction make_test_function(const std::string& name);

}  // namespace thirring
