#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "thirring/errors.hpp"
#include "thirring/experiments.hpp"

namespace {

struct Overrides {
    std::string config_path;
    std::string out;
    std::optional<double> mesh_delta;
    std::optional<int> eps_count;
    std::vector<double> alphas;
    std::vector<double> masses;
    std::vector<double> p_values;
    std::vector<double> s_values;
    std::optional<std::uint64_t> seed;
};

void add_flags(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--config", o.config_path, "key-value config file (sections per experiment)");
    cmd->add_option("--out", o.out, "output directory");
    cmd->add_option("--mesh-delta", o.mesh_delta, "solver mesh step");
    cmd->add_option("--eps-count", o.eps_count, "length of epsilon sequences");
    cmd->add_option("--alpha", o.alphas, "alpha targets (repeatable)")->take_all();
    cmd->add_option("--mass", o.masses, "masses (repeatable)")->take_all();
    cmd->add_option("--p", o.p_values, "Lebesgue exponents (repeatable)")->take_all();
    cmd->add_option("--s", o.s_values, "Sobolev exponents (repeatable)")->take_all();
    cmd->add_option("--seed", o.seed, "reserved; every computation is deterministic");
}

thirring::ExperimentConfig build_config(const std::string& id, const Overrides& o,
                                        const std::filesystem::path& default_out) {
    thirring::ExperimentConfig c = thirring::ExperimentConfig::defaults(id);
    if (!o.config_path.empty()) {
        c = thirring::ExperimentConfig::from_config(thirring::KeyValueConfig::load(o.config_path), id);
    } else {
        c.out_dir = default_out;
    }
    if (o.mesh_delta) c.mesh_delta = *o.mesh_delta;
    if (o.eps_count) c.eps_count = *o.eps_count;
    if (!o.alphas.empty()) c.alphas = o.alphas;
    if (!o.masses.empty()) c.masses = o.masses;
    if (!o.p_values.empty()) c.p_values = o.p_values;
    if (!o.s_values.empty()) c.s_values = o.s_values;
    if (!o.out.empty()) c.out_dir = default_out;
    return c;
}

void print_summary(const thirring::ExperimentReport& rep) {
    for (const auto& v : rep.verdicts) {
        std::printf("[%s] %s: %s: measured %.6g %s %.6g%s\n", v.pass ? "PASS" : "FAIL", rep.experiment.c_str(),
                    v.name.c_str(), v.measured, v.comparator.c_str(), v.threshold,
                    v.comparator == "in" ? (" .. " + std::to_string(v.upper)).c_str() : "");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical experiments for the 1+1 dimensional Thirring model"};
    app.require_subcommand(1);
    Overrides o;
    std::vector<std::pair<std::string, CLI::App*>> commands;
    for (const auto& id : thirring::experiment_ids()) {
        commands.emplace_back(id, app.add_subcommand(id, "run the " + id + " experiment"));
    }
    commands.emplace_back("all", app.add_subcommand("all", "run every experiment"));
    for (auto& [id, cmd] : commands) {
        add_flags(cmd, o);
    }
    CLI11_PARSE(app, argc, argv);

    try {
        for (auto& [id, cmd] : commands) {
            if (!cmd->parsed()) {
                continue;
            }
            const std::filesystem::path root = o.out.empty() ? std::filesystem::path("out") : std::filesystem::path(o.out);
            if (id != "all") {
                const auto config = build_config(id, o, o.out.empty() ? root / id : root);
                const auto rep = thirring::run_experiment(config);
                rep.write(config.out_dir);
                print_summary(rep);
                return rep.all_pass() ? 0 : 1;
            }
            thirring::Json suite;
            suite["experiments"] = thirring::Json::array();
            bool pass = true;
            for (const auto& eid : thirring::experiment_ids()) {
                const auto config = build_config(eid, o, root / eid);
                const auto rep = thirring::run_experiment(config);
                rep.write(config.out_dir);
                print_summary(rep);
                suite["experiments"].push_back(rep.to_json());
                pass = pass && rep.all_pass();
            }
            suite["all_pass"] = pass;
            std::filesystem::create_directories(root);
            std::ofstream(root / "report.json") << suite.dump(2) << '\n';
            return pass ? 0 : 1;
        }
    } catch (const thirring::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
