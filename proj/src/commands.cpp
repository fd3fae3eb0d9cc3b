#include "cdnet/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "cdnet/analytic.hpp"
#include "cdnet/format.hpp"
#include "cdnet/pareto.hpp"

namespace cdnet {

using nlohmann::json;

namespace {

std::ofstream open_output(const std::string& dir, const std::string& name)
{
    std::filesystem::create_directories(dir);
    const auto path = std::filesystem::path(dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    return out;
}

void write_config_header(std::ostream& out, const json& config) { out << "# config: " << config.dump() << '\n'; }

MetricEstimate detect(const SampleSeries& s, std::size_t window)
{
    const auto res = detect_steady_state(s, window);
    return {res.estimate, res.error_bar, res.alpha, res.aborted};
}

json estimate_json(const MetricEstimate& e)
{
    json j = {{"aborted", e.aborted}, {"estimate", e.estimate}, {"error_bar", e.error_bar}};
    j["alpha"] = e.aborted ? json(nullptr) : json(e.alpha);
    return j;
}

void warn_aborted(std::ostream& log, double q, NodeId node, const SweepRow& row)
{
    if (row.v.aborted) log << "warning: steady state of v not detected at q=" << fmt_double(q) << " node " << node << '\n';
    if (row.k.aborted) log << "warning: steady state of k not detected at q=" << fmt_double(q) << " node " << node << '\n';
}

RunOptions run_options(const ExperimentConfig& cfg, const ResolvedExperiment& res, const CommandOptions& opt)
{
    RunOptions ro;
    ro.realizations = cfg.N;
    ro.horizon = res.horizon;
    ro.base_seed = cfg.base_seed;
    ro.jobs = std::max(1U, opt.jobs);
    ro.b_inflate = cfg.b_inflate;
    return ro;
}

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double to_double(const std::string& s, std::size_t line)
{
    try {
        std::size_t used = 0;
        const double x = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return x;
    } catch (const std::exception&) {
        throw std::runtime_error("sweep table line " + std::to_string(line) + ": bad number '" + s + "'");
    }
}

const char* bool_text(bool b) { return b ? "true" : "false"; }

bool to_bool(const std::string& s, std::size_t line)
{
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw std::runtime_error("sweep table line " + std::to_string(line) + ": bad flag '" + s + "'");
}

const std::vector<std::string> kSweepColumns = {"q",        "node",    "v",       "v_err",   "v_alpha",
                                                "v_aborted", "k",      "k_err",   "k_alpha", "k_aborted"};

void write_row_cells(std::ostream& out, const SweepRow& r)
{
    out << fmt_double(r.q) << ',' << r.node << ',' << fmt_double(r.v.estimate) << ',' << fmt_double(r.v.error_bar)
        << ',' << r.v.alpha << ',' << bool_text(r.v.aborted) << ',' << fmt_double(r.k.estimate) << ','
        << fmt_double(r.k.error_bar) << ',' << r.k.alpha << ',' << bool_text(r.k.aborted);
}

}  // namespace

std::pair<MetricEstimate, MetricEstimate> node_estimates(const MetricSeries& series, NodeId node,
                                                         std::size_t window)
{
    return {detect(series.v.at(node), window), detect(series.k.at(node), window)};
}

std::vector<SweepRow> run_sweep(const ResolvedExperiment& experiment, std::vector<double> q_values,
                                const RunOptions& options)
{
    std::sort(q_values.begin(), q_values.end());
    q_values.erase(std::unique(q_values.begin(), q_values.end()), q_values.end());
    std::vector<NodeId> nodes = experiment.report_nodes;
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

    std::vector<SweepRow> rows;
    for (double q : q_values) {
        SimulationParams p = experiment.params;
        p.q = q;
        const MetricSeries series = run_realizations(p, options);
        for (NodeId i : nodes) {
            auto [v, k] = node_estimates(series, i, experiment.window);
            rows.push_back({q, i, v, k});
        }
    }
    return rows;
}

void cmd_analytic(const ExperimentConfig& config, const CommandOptions& options, std::ostream& log)
{
    if (!config.analytic) {
        throw ConfigError("/analytic", "missing required block");
    }
    const AnalyticGrid& g = *config.analytic;
    const json cfg_json = resolved_config_json(config, nullptr);
    auto out = open_output(options.out_dir, "analytic.csv");
    write_config_header(out, cfg_json);

    int r_max = 0;
    for (int r : g.r) r_max = std::max(r_max, r);
    out << "p_gen,p_cons,r,d_i,v,k,v_over_d,k_over_d,v_limit,k_limit";
    for (int w = 0; w <= r_max; ++w) out << ",pi_" << w;
    out << '\n';

    for (double pg : g.p_gen) {
        for (double pc : g.p_cons) {
            std::string v_lim = "nan";
            std::string k_lim = "nan";
            if (analytic::closed_form_applicable(pg, pc)) {
                const auto lim = analytic::noswap_limits(g.d_i, pg, pc);
                v_lim = fmt_double(lim.v);
                k_lim = fmt_double(lim.k);
            }
            for (int r : g.r) {
                const double v = analytic::noswap_v(g.d_i, pg, pc, r);
                const double k = analytic::noswap_k(g.d_i, pg, pc, r);
                const auto pi = analytic::noswap_distribution(pg, pc, r);
                out << fmt_double(pg) << ',' << fmt_double(pc) << ',' << r << ',' << fmt_double(g.d_i) << ','
                    << fmt_double(v) << ',' << fmt_double(k) << ',' << fmt_double(v / g.d_i) << ','
                    << fmt_double(k / g.d_i) << ',' << v_lim << ',' << k_lim;
                for (int w = 0; w <= r_max; ++w) {
                    out << ',' << (w <= r ? fmt_double(pi[static_cast<std::size_t>(w)]) : std::string());
                }
                out << '\n';
            }
        }
    }
    if (g.p_gen.empty() || g.p_cons.empty() || g.r.empty()) {
        log << "note: analytic grid is empty; wrote header only\n";
    }
}

void cmd_simulate(ExperimentConfig config, const CommandOptions& options, std::ostream& log)
{
    if (options.seed) config.base_seed = *options.seed;
    if (config.q_is_grid && config.q_values.size() != 1) {
        throw ConfigError("/protocol/q_grid", "simulate takes a single q; use the sweep command for grids");
    }
    const ResolvedExperiment res = resolve_experiment(config);
    const json cfg_json = resolved_config_json(config, &res);
    for (const auto& w : analytic::validity_warnings(res.params.t_cut, res.params.r, res.params.p_cons)) {
        log << "warning: " << w << '\n';
    }

    const MetricSeries series = run_realizations(res.params, run_options(config, res, options));

    json report = {{"config", cfg_json}, {"nodes", json::array()}};
    for (NodeId i : res.report_nodes) {
        auto [v, k] = node_estimates(series, i, res.window);
        json node = {{"node", i}, {"degree", res.params.topology->degree(i)}, {"v", estimate_json(v)},
                     {"k", estimate_json(k)}};
        if (res.params.q == 0.0) {
            // Without swaps the closed forms give the reference values.
            const double d = static_cast<double>(res.params.topology->degree(i));
            node["noswap_v"] = analytic::noswap_v(d, res.params.p_gen, res.params.p_cons, res.params.r);
            node["noswap_k"] = analytic::noswap_k(d, res.params.p_gen, res.params.p_cons, res.params.r);
        }
        warn_aborted(log, res.params.q, i, SweepRow{res.params.q, i, v, k});
        report["nodes"].push_back(node);
    }

    {
        auto out = open_output(options.out_dir, "series.csv");
        write_config_header(out, cfg_json);
        write_series_csv(out, series);
    }
    open_output(options.out_dir, "steady_state.json") << report.dump(2) << '\n';
    open_output(options.out_dir, "resolved_config.json") << cfg_json.dump(2) << '\n';
}

void cmd_sweep(ExperimentConfig config, const CommandOptions& options, std::ostream& log)
{
    if (options.seed) config.base_seed = *options.seed;
    if (config.q_values.empty()) {
        throw ConfigError("/protocol/q_grid", "sweep needs a nonempty q grid");
    }
    const ResolvedExperiment res = resolve_experiment(config);
    const json cfg_json = resolved_config_json(config, &res);
    for (const auto& w : analytic::validity_warnings(res.params.t_cut, res.params.r, res.params.p_cons)) {
        log << "warning: " << w << '\n';
    }
    const auto rows = run_sweep(res, config.q_values, run_options(config, res, options));
    for (const auto& row : rows) warn_aborted(log, row.q, row.node, row);

    auto out = open_output(options.out_dir, "sweep.csv");
    write_sweep_csv(out, rows, cfg_json);
    open_output(options.out_dir, "resolved_config.json") << cfg_json.dump(2) << '\n';
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, const json& config)
{
    write_config_header(out, config);
    for (std::size_t c = 0; c < kSweepColumns.size(); ++c) {
        out << (c ? "," : "") << kSweepColumns[c];
    }
    out << '\n';
    for (const auto& r : rows) {
        write_row_cells(out, r);
        out << '\n';
    }
}

std::vector<SweepRow> read_sweep_csv(std::istream& in)
{
    std::string line;
    std::size_t lineno = 0;
    std::map<std::string, std::size_t> col;
    std::vector<SweepRow> rows;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto cells = split(line);
        if (col.empty()) {
            for (std::size_t c = 0; c < cells.size(); ++c) col[cells[c]] = c;
            for (const auto& name : kSweepColumns) {
                if (!col.count(name)) {
                    throw std::runtime_error("sweep table is missing column '" + name + "'");
                }
            }
            continue;
        }
        if (cells.size() < col.size()) {
            throw std::runtime_error("sweep table line " + std::to_string(lineno) + ": too few cells");
        }
        auto cell = [&](const char* name) -> const std::string& { return cells[col.at(name)]; };
        SweepRow r;
        r.q = to_double(cell("q"), lineno);
        r.node = static_cast<NodeId>(to_double(cell("node"), lineno));
        r.v = {to_double(cell("v"), lineno), to_double(cell("v_err"), lineno),
               static_cast<std::size_t>(to_double(cell("v_alpha"), lineno)), to_bool(cell("v_aborted"), lineno)};
        r.k = {to_double(cell("k"), lineno), to_double(cell("k_err"), lineno),
               static_cast<std::size_t>(to_double(cell("k_alpha"), lineno)), to_bool(cell("k_aborted"), lineno)};
        rows.push_back(r);
    }
    if (col.empty()) {
        throw std::runtime_error("sweep table has no header row");
    }
    return rows;
}

ParetoAnnotation annotate_sweep(const std::vector<SweepRow>& rows, const std::vector<NodeId>& users,
                                const std::vector<double>& thresholds)
{
    if (users.empty()) {
        throw std::runtime_error("pareto needs at least one user node");
    }
    std::map<double, std::map<NodeId, double>> by_q;
    for (const auto& r : rows) by_q[r.q][r.node] = r.v.estimate;

    ParetoAnnotation ann;
    std::vector<pareto::ParetoPoint> points;
    for (const auto& [q, nodes] : by_q) {
        pareto::ParetoPoint p{fmt_double(q), {}};
        for (NodeId u : users) {
            const auto it = nodes.find(u);
            if (it == nodes.end()) {
                throw std::runtime_error("sweep table has no row for user node " + std::to_string(u) +
                                         " at q=" + fmt_double(q));
            }
            p.objectives.push_back(it->second);
        }
        ann.q.push_back(q);
        points.push_back(std::move(p));
    }
    std::vector<double> c = thresholds.empty() ? std::vector<double>(users.size(), 0.0) : thresholds;
    if (c.size() != users.size()) {
        throw std::runtime_error("threshold count does not match user count");
    }
    ann.in_frontier.assign(points.size(), false);
    ann.in_optimal_region.assign(points.size(), false);
    for (std::size_t i : pareto::pareto_frontier(points)) ann.in_frontier[i] = true;
    for (std::size_t i : pareto::optimal_region(points, c)) ann.in_optimal_region[i] = true;
    return ann;
}

void cmd_pareto(const ExperimentConfig& config, const CommandOptions& options, std::ostream& log)
{
    if (options.input.empty()) {
        throw std::runtime_error("pareto needs --input pointing at a sweep table");
    }
    std::ifstream in(options.input);
    if (!in) {
        throw std::runtime_error("cannot open " + options.input);
    }
    const auto rows = read_sweep_csv(in);
    if (rows.empty()) {
        throw std::runtime_error("sweep table has no rows");
    }
    if (config.users.empty()) {
        throw ConfigError("/users", "pareto needs the user node list");
    }
    const auto ann = annotate_sweep(rows, config.users, config.thresholds);

    json cfg_json = resolved_config_json(config, nullptr);
    cfg_json["input"] = options.input;
    auto out = open_output(options.out_dir, "pareto.csv");
    write_config_header(out, cfg_json);
    for (const auto& name : kSweepColumns) out << name << ',';
    out << "in_frontier,in_optimal_region\n";
    std::size_t optimal = 0;
    for (const auto& r : rows) {
        const auto idx = static_cast<std::size_t>(std::lower_bound(ann.q.begin(), ann.q.end(), r.q) - ann.q.begin());
        write_row_cells(out, r);
        out << ',' << bool_text(ann.in_frontier[idx]) << ',' << bool_text(ann.in_optimal_region[idx]) << '\n';
    }
    for (bool b : ann.in_optimal_region) optimal += b ? 1 : 0;
    if (optimal == 0) {
        log << "note: optimal region is empty for the given thresholds\n";
    }
}

}  // namespace cdnet
