#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cdnet/protocol.hpp"

namespace cdnet {

/// Per-time sample mean and standard deviation of a bounded process over N
/// independent realizations.
struct SampleSeries {
    std::vector<std::int64_t> times;
    std::vector<double> mean;
    std::vector<double> stddev;  ///< sample (N-1) standard deviation; 0 when N == 1
    std::size_t N = 0;
    double a = 0.0;  ///< lower bound of the process
    double b = 0.0;  ///< upper bound of the process

    [[nodiscard]] std::size_t size() const noexcept { return mean.size(); }
};

struct RunOptions {
    std::size_t realizations = 1000;  ///< N
    std::size_t horizon = 0;          ///< time steps per realization; 0 means 10 * t_cut
    std::uint64_t base_seed = 1;
    unsigned jobs = 1;
    double b_inflate = 1.0;  ///< multiplier on the upper bounds handed to detection
};

/// Sample series of both metrics for every node.
struct MetricSeries {
    std::vector<SampleSeries> v;  ///< indexed by node
    std::vector<SampleSeries> k;
};

/// Runs N realizations of the SRS protocol from the empty configuration.
/// Realization n draws from make_stream(base_seed, n), and the per-time sums
/// are exact integers, so results do not depend on `jobs`.
MetricSeries run_realizations(const SimulationParams& params, const RunOptions& options);

struct SteadyStateResult {
    bool aborted = false;
    std::size_t alpha = 0;       ///< first index of the steady state; meaningless if aborted
    double estimate = 0.0;       ///< mean at the final time
    double error_bar = 0.0;      ///< 2 * stddev / sqrt(N) at the final time
};

/// Window-overlap steady-state detector on the sample means of `series`.
/// epsilon = (b - a)/sqrt(N); the last w indices must pairwise satisfy
/// 2 epsilon - |X_i - X_j| >= 1.5 epsilon or the result is aborted, and the
/// window then grows backwards until some earlier index breaks that
/// condition against it. Requires w >= 2 and series.size() >= w.
SteadyStateResult detect_steady_state(const SampleSeries& series, std::size_t w);

struct Estimate {
    double value = 0.0;
    double error_bar = 0.0;       ///< 2 * sigma / sqrt(N)
    double standard_error = 0.0;  ///< sigma / sqrt(N)
};

/// Final-time mean with its error bar. Throws std::invalid_argument if the
/// detection was aborted.
Estimate steady_state_estimate(const SampleSeries& series, const SteadyStateResult& result);

/// CSV with columns time,node,mean_v,std_v,mean_k,std_k ordered by time then node.
void write_series_csv(std::ostream& out, const MetricSeries& series);

}  // namespace cdnet
