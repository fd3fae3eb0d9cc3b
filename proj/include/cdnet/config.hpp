#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "cdnet/protocol.hpp"

namespace cdnet {

/// Configuration problem tied to a JSON pointer into the config document.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string path, const std::string& what)
        : std::runtime_error("config error at " + path + ": " + what), path_(std::move(path))
    {
    }
    [[nodiscard]] const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

struct TopologySpec {
    std::optional<std::size_t> tree_d;
    std::optional<std::size_t> tree_k;
    std::optional<std::string> adjacency_file;
};

struct AnalyticGrid {
    std::vector<double> p_gen;
    std::vector<double> p_cons;
    std::vector<int> r;
    double d_i = 1.0;
};

/**
 * Experiment description. Blocks are optional at parse time; each command
 * checks for the ones it needs. Unknown keys are rejected.
 *
 * {
 *   "topology": {"tree": {"d": 2, "k": 3}} | {"adjacency_file": "net.txt"},
 *   "hardware": {"p_gen", "F_new", "p_swap", "r", "T"},
 *   "software": {"F_app", "M", "p_cons", "t_cut"?},
 *   "protocol": {"q" | "q_grid", "consume_policy"?},
 *   "run":      {"N", "horizon"?, "window"?, "base_seed", "b_inflate"?, "report_nodes"?},
 *   "users": [...], "thresholds": [...],
 *   "analytic": {"p_gen", "p_cons", "r", "d_i"?}
 * }
 *
 * Grids are arrays or {"start", "stop", "step"} objects.
 */
struct ExperimentConfig {
    std::optional<TopologySpec> topology;

    bool has_hardware = false;
    double p_gen = 0.0;
    double F_new = 1.0;
    double p_swap = 1.0;
    int r = 1;
    double T = 1.0;

    bool has_software = false;
    double F_app = 0.6;
    int M = 1;
    double p_cons = 0.0;
    std::optional<int> t_cut_override;

    std::vector<double> q_values;  ///< single q or the sweep grid
    bool q_is_grid = false;
    ConsumePolicy consume_policy = ConsumePolicy::Oldest;

    bool has_run = false;
    std::size_t N = 1000;
    std::optional<std::size_t> horizon;
    std::optional<std::size_t> window;
    std::uint64_t base_seed = 1;
    double b_inflate = 1.0;
    std::optional<std::vector<std::size_t>> report_nodes;

    std::vector<std::size_t> users;
    std::vector<double> thresholds;

    std::optional<AnalyticGrid> analytic;

    /// Directory of the config file; relative adjacency paths resolve against it.
    std::string base_dir;
};

/// Parses and range-checks a config document. Throws ConfigError.
ExperimentConfig parse_config(const nlohmann::json& doc, const std::string& base_dir = ".");
ExperimentConfig load_config(const std::string& path);

/// Expands {"start","stop","step"} or an array into explicit values.
std::vector<double> expand_grid(const nlohmann::json& node, const std::string& path);

/// Everything a simulation needs once the config is resolved.
struct ResolvedExperiment {
    SimulationParams params;   ///< q set to the first q value
    double t_cut_bound = 0.0;  ///< real-valued fidelity bound
    std::size_t horizon = 0;
    std::size_t window = 0;
    std::vector<NodeId> report_nodes;
};

/// Builds topology, derives t_cut (or checks the override) and defaults.
/// Throws ConfigError when required blocks are missing or inconsistent.
ResolvedExperiment resolve_experiment(const ExperimentConfig& config);

/// The full resolved configuration, including derived cutoff and seed, as
/// embedded in every output file.
nlohmann::json resolved_config_json(const ExperimentConfig& config, const ResolvedExperiment* resolved);

}  // namespace cdnet
