#include "cdnet/stats.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "cdnet/format.hpp"
#include "cdnet/metrics.hpp"

namespace cdnet {

namespace {

struct Accumulator {
    // [t * n + node]
    std::vector<std::uint64_t> sum_v, sumsq_v, sum_k, sumsq_k;

    Accumulator(std::size_t horizon, std::size_t n)
        : sum_v(horizon * n, 0), sumsq_v(horizon * n, 0), sum_k(horizon * n, 0), sumsq_k(horizon * n, 0)
    {
    }

    void merge(const Accumulator& other)
    {
        for (std::size_t x = 0; x < sum_v.size(); ++x) {
            sum_v[x] += other.sum_v[x];
            sumsq_v[x] += other.sumsq_v[x];
            sum_k[x] += other.sum_k[x];
            sumsq_k[x] += other.sumsq_k[x];
        }
    }
};

void run_range(const SimulationParams& params, std::size_t horizon, std::uint64_t base_seed,
               std::size_t first, std::size_t last, Accumulator& acc)
{
    const std::size_t n = params.topology->size();
    MetricSnapshot snap;
    for (std::size_t real = first; real < last; ++real) {
        Rng rng = make_stream(base_seed, real);
        NetworkState state(params.topology, params.r);
        std::size_t t = 0;
        const SlotObserver observe = [&](const NetworkState& s) {
            take_snapshot(s, snap);
            const std::size_t row = t * n;
            for (std::size_t i = 0; i < n; ++i) {
                const std::uint64_t v = snap.v[i];
                const std::uint64_t k = snap.k[i];
                acc.sum_v[row + i] += v;
                acc.sumsq_v[row + i] += v * v;
                acc.sum_k[row + i] += k;
                acc.sumsq_k[row + i] += k * k;
            }
        };
        for (t = 0; t < horizon; ++t) {
            srs_step(state, params, rng, observe);
        }
    }
}

__extension__ using u128 = unsigned __int128;

// Mean and unbiased standard deviation from exact integer moments.
void finalize(std::uint64_t sum, std::uint64_t sumsq, std::size_t N, double& mean, double& sd)
{
    const auto n = static_cast<long double>(N);
    mean = static_cast<double>(static_cast<long double>(sum) / n);
    if (N < 2) {
        sd = 0.0;
        return;
    }
    // N * sumsq - sum^2 is an exact nonnegative integer.
    const u128 num = static_cast<u128>(N) * sumsq - static_cast<u128>(sum) * sum;
    const long double var = static_cast<long double>(num) / (n * (n - 1.0L));
    sd = static_cast<double>(std::sqrt(var));
}

}  // namespace

MetricSeries run_realizations(const SimulationParams& params, const RunOptions& options)
{
    params.validate();
    if (options.realizations < 1) {
        throw std::invalid_argument("run_realizations: need at least one realization");
    }
    const std::size_t horizon =
        options.horizon > 0 ? options.horizon : static_cast<std::size_t>(10 * params.t_cut);
    const std::size_t n = params.topology->size();
    const std::size_t N = options.realizations;
    const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(N)));

    std::vector<Accumulator> partial(jobs, Accumulator(horizon, n));
    if (jobs == 1) {
        run_range(params, horizon, options.base_seed, 0, N, partial[0]);
    } else {
        std::vector<std::thread> workers;
        for (unsigned w = 0; w < jobs; ++w) {
            const std::size_t first = N * w / jobs;
            const std::size_t last = N * (w + 1) / jobs;
            workers.emplace_back(run_range, std::cref(params), horizon, options.base_seed, first, last,
                                 std::ref(partial[w]));
        }
        for (auto& worker : workers) {
            worker.join();
        }
        for (unsigned w = 1; w < jobs; ++w) {
            partial[0].merge(partial[w]);
        }
    }
    const Accumulator& acc = partial[0];

    MetricSeries out;
    out.v.resize(n);
    out.k.resize(n);
    const auto& topo = *params.topology;
    for (std::size_t i = 0; i < n; ++i) {
        const double qubits = static_cast<double>(params.r) * static_cast<double>(topo.degree(i));
        auto init = [&](SampleSeries& s, double b) {
            s.N = N;
            s.a = 0.0;
            s.b = b * options.b_inflate;
            s.times.resize(horizon);
            s.mean.resize(horizon);
            s.stddev.resize(horizon);
        };
        init(out.v[i], std::min(qubits, static_cast<double>(n)));
        init(out.k[i], qubits);
        for (std::size_t t = 0; t < horizon; ++t) {
            const std::size_t x = t * n + i;
            out.v[i].times[t] = out.k[i].times[t] = static_cast<std::int64_t>(t);
            finalize(acc.sum_v[x], acc.sumsq_v[x], N, out.v[i].mean[t], out.v[i].stddev[t]);
            finalize(acc.sum_k[x], acc.sumsq_k[x], N, out.k[i].mean[t], out.k[i].stddev[t]);
        }
    }
    return out;
}

SteadyStateResult detect_steady_state(const SampleSeries& series, std::size_t w)
{
    const std::size_t M = series.size();
    if (w < 2) {
        throw std::invalid_argument("detect_steady_state: window must be >= 2");
    }
    if (M < w) {
        throw std::invalid_argument("detect_steady_state: series shorter than the window");
    }
    if (series.N < 1) {
        throw std::invalid_argument("detect_steady_state: series has no realizations");
    }
    const auto& x = series.mean;
    const double eps = (series.b - series.a) / std::sqrt(static_cast<double>(series.N));
    const double threshold = 1.5 * eps;

    SteadyStateResult result;
    result.estimate = x[M - 1];
    result.error_bar = 2.0 * series.stddev[M - 1] / std::sqrt(static_cast<double>(series.N));

    // Within the window, the largest |X_i - X_k| for a fixed k is attained at
    // the window minimum or maximum, so tracking those two values decides
    // every Delta comparison against the grown window.
    double lo = x[M - w];
    double hi = x[M - w];
    for (std::size_t i = M - w; i < M; ++i) {
        lo = std::min(lo, x[i]);
        hi = std::max(hi, x[i]);
    }
    if (2.0 * eps - (hi - lo) < threshold) {
        result.aborted = true;
        return result;
    }

    std::size_t k = M - w;
    while (k > 0) {
        --k;
        const double gap = std::max(std::fabs(hi - x[k]), std::fabs(x[k] - lo));
        if (2.0 * eps - gap < threshold) {
            result.alpha = k + 1;
            return result;
        }
        lo = std::min(lo, x[k]);
        hi = std::max(hi, x[k]);
    }
    result.alpha = 0;
    return result;
}

Estimate steady_state_estimate(const SampleSeries& series, const SteadyStateResult& result)
{
    if (result.aborted) {
        throw std::invalid_argument("steady_state_estimate: steady state was not found");
    }
    if (series.size() == 0) {
        throw std::invalid_argument("steady_state_estimate: empty series");
    }
    const double root_n = std::sqrt(static_cast<double>(series.N));
    Estimate e;
    e.value = series.mean.back();
    e.standard_error = series.stddev.back() / root_n;
    e.error_bar = 2.0 * e.standard_error;
    return e;
}

void write_series_csv(std::ostream& out, const MetricSeries& series)
{
    out << "time,node,mean_v,std_v,mean_k,std_k\n";
    if (series.v.empty()) {
        return;
    }
    const std::size_t horizon = series.v.front().size();
    for (std::size_t t = 0; t < horizon; ++t) {
        for (std::size_t i = 0; i < series.v.size(); ++i) {
            out << series.v[i].times[t] << ',' << i << ',' << fmt_double(series.v[i].mean[t]) << ','
                << fmt_double(series.v[i].stddev[t]) << ',' << fmt_double(series.k[i].mean[t]) << ','
                << fmt_double(series.k[i].stddev[t]) << '\n';
        }
    }
}

}  // namespace cdnet
