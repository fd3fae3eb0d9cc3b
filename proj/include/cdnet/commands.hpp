#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cdnet/config.hpp"
#include "cdnet/stats.hpp"

namespace cdnet {

/// Steady-state outcome of one metric at one node.
struct MetricEstimate {
    double estimate = 0.0;
    double error_bar = 0.0;  ///< 2 sigma / sqrt(N)
    std::size_t alpha = 0;
    bool aborted = false;
};

struct SweepRow {
    double q = 0.0;
    NodeId node = 0;
    MetricEstimate v;
    MetricEstimate k;
};

/// Runs the SRS simulation at every q (all with the same base seed) and
/// detects the steady state of both metrics at each report node. Rows come
/// back sorted by q, then node.
std::vector<SweepRow> run_sweep(const ResolvedExperiment& experiment, std::vector<double> q_values,
                                const RunOptions& options);

/// Detection for both metrics of one node.
std::pair<MetricEstimate, MetricEstimate> node_estimates(const MetricSeries& series, NodeId node,
                                                         std::size_t window);

/// Command-line overrides shared by every subcommand.
struct CommandOptions {
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    unsigned jobs = 1;
    std::string input;  ///< sweep table for `pareto`
};

/// Each command writes its files into options.out_dir and reports warnings
/// on `log`. They throw ConfigError or std::runtime_error on failure.
void cmd_analytic(const ExperimentConfig& config, const CommandOptions& options, std::ostream& log);
void cmd_simulate(ExperimentConfig config, const CommandOptions& options, std::ostream& log);
void cmd_sweep(ExperimentConfig config, const CommandOptions& options, std::ostream& log);
void cmd_pareto(const ExperimentConfig& config, const CommandOptions& options, std::ostream& log);

/// Sweep table I/O. The CSV carries '# config: {...}' header lines.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, const nlohmann::json& config);
std::vector<SweepRow> read_sweep_csv(std::istream& in);

struct ParetoAnnotation {
    std::vector<double> q;  ///< distinct q values, ascending
    std::vector<bool> in_frontier;
    std::vector<bool> in_optimal_region;
};

/// Frontier and optimal region over the q values of a sweep, with the
/// objectives being the v estimates of `users`. Throws std::runtime_error if
/// some q lacks a row for a user node.
ParetoAnnotation annotate_sweep(const std::vector<SweepRow>& rows, const std::vector<NodeId>& users,
                                const std::vector<double>& thresholds);

}  // namespace cdnet
