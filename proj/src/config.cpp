#include "cdnet/config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include "cdnet/physics.hpp"

namespace cdnet {

using nlohmann::json;

namespace {

/// Walks one JSON object, remembering which keys were read so leftovers
/// can be reported as unknown.
class Block {
public:
    Block(const json& node, std::string path) : node_(node), path_(std::move(path))
    {
        if (!node_.is_object()) {
            throw ConfigError(path_, "expected an object");
        }
    }

    [[nodiscard]] bool has(const std::string& key) const { return node_.contains(key); }
    [[nodiscard]] std::string path(const std::string& key) const { return path_ + "/" + key; }

    const json& at(const std::string& key)
    {
        seen_.insert(key);
        if (!node_.contains(key)) {
            throw ConfigError(path(key), "missing required key");
        }
        return node_.at(key);
    }

    double number(const std::string& key)
    {
        const json& v = at(key);
        if (!v.is_number()) {
            throw ConfigError(path(key), "expected a number");
        }
        return v.get<double>();
    }

    double probability(const std::string& key)
    {
        const double p = number(key);
        if (!(p >= 0.0 && p <= 1.0)) {
            throw ConfigError(path(key), "must lie in [0, 1]");
        }
        return p;
    }

    long long integer(const std::string& key, long long min_value)
    {
        const json& v = at(key);
        if (!v.is_number_integer()) {
            throw ConfigError(path(key), "expected an integer");
        }
        const auto x = v.get<long long>();
        if (x < min_value) {
            throw ConfigError(path(key), "must be >= " + std::to_string(min_value));
        }
        return x;
    }

    std::uint64_t unsigned_integer(const std::string& key)
    {
        const json& v = at(key);
        if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<long long>() < 0)) {
            throw ConfigError(path(key), "expected a nonnegative integer");
        }
        return v.get<std::uint64_t>();
    }

    void finish() const
    {
        for (const auto& [key, value] : node_.items()) {
            if (!seen_.count(key)) {
                throw ConfigError(path(key), "unknown key");
            }
        }
    }

private:
    const json& node_;
    std::string path_;
    std::set<std::string> seen_;
};

std::vector<std::size_t> index_list(const json& node, const std::string& path)
{
    if (!node.is_array()) {
        throw ConfigError(path, "expected an array of node indices");
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < node.size(); ++i) {
        if (!node[i].is_number_integer() || node[i].get<long long>() < 0) {
            throw ConfigError(path + "/" + std::to_string(i), "expected a nonnegative integer");
        }
        out.push_back(node[i].get<std::size_t>());
    }
    return out;
}

const char* policy_name(ConsumePolicy p) { return p == ConsumePolicy::Oldest ? "oldest" : "random"; }

}  // namespace

std::vector<double> expand_grid(const json& node, const std::string& path)
{
    std::vector<double> out;
    if (node.is_number()) {
        out.push_back(node.get<double>());
        return out;
    }
    if (node.is_array()) {
        for (std::size_t i = 0; i < node.size(); ++i) {
            if (!node[i].is_number()) {
                throw ConfigError(path + "/" + std::to_string(i), "expected a number");
            }
            out.push_back(node[i].get<double>());
        }
        return out;
    }
    Block b(node, path);
    const double start = b.number("start");
    const double stop = b.number("stop");
    const double step = b.number("step");
    b.finish();
    if (!(step > 0.0)) {
        throw ConfigError(path + "/step", "must be positive");
    }
    if (stop < start) {
        return out;
    }
    const auto count = static_cast<long long>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (long long i = 0; i < count; ++i) {
        // Round away accumulated binary noise so 0.05-steps print as 0.35, not 0.35000000000000003.
        out.push_back(std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12);
    }
    return out;
}

ExperimentConfig parse_config(const json& doc, const std::string& base_dir)
{
    ExperimentConfig cfg;
    cfg.base_dir = base_dir;
    Block root(doc, "");

    if (root.has("topology")) {
        Block topo(root.at("topology"), "/topology");
        TopologySpec spec;
        if (topo.has("tree") == topo.has("adjacency_file")) {
            throw ConfigError("/topology", "give exactly one of 'tree' or 'adjacency_file'");
        }
        if (topo.has("tree")) {
            Block tree(topo.at("tree"), "/topology/tree");
            spec.tree_d = static_cast<std::size_t>(tree.integer("d", 2));
            spec.tree_k = static_cast<std::size_t>(tree.integer("k", 1));
            tree.finish();
        } else {
            const json& f = topo.at("adjacency_file");
            if (!f.is_string()) {
                throw ConfigError("/topology/adjacency_file", "expected a path string");
            }
            spec.adjacency_file = f.get<std::string>();
        }
        topo.finish();
        cfg.topology = spec;
    }

    if (root.has("hardware")) {
        Block hw(root.at("hardware"), "/hardware");
        cfg.has_hardware = true;
        cfg.p_gen = hw.probability("p_gen");
        cfg.F_new = hw.number("F_new");
        if (!(cfg.F_new > 0.25 && cfg.F_new <= 1.0)) {
            throw ConfigError("/hardware/F_new", "must lie in (0.25, 1]");
        }
        cfg.p_swap = hw.probability("p_swap");
        cfg.r = static_cast<int>(hw.integer("r", 1));
        cfg.T = hw.number("T");
        if (!(cfg.T > 0.0)) {
            throw ConfigError("/hardware/T", "must be positive");
        }
        hw.finish();
    }

    if (root.has("software")) {
        Block sw(root.at("software"), "/software");
        cfg.has_software = true;
        cfg.F_app = sw.number("F_app");
        if (!(cfg.F_app > 0.25 && cfg.F_app <= 1.0)) {
            throw ConfigError("/software/F_app", "must lie in (0.25, 1]");
        }
        cfg.M = static_cast<int>(sw.integer("M", 1));
        cfg.p_cons = sw.probability("p_cons");
        if (sw.has("t_cut")) {
            cfg.t_cut_override = static_cast<int>(sw.integer("t_cut", 1));
        }
        sw.finish();
    }

    if (root.has("protocol")) {
        Block pr(root.at("protocol"), "/protocol");
        if (pr.has("q") == pr.has("q_grid")) {
            throw ConfigError("/protocol", "give exactly one of 'q' or 'q_grid'");
        }
        if (pr.has("q")) {
            cfg.q_values = {pr.probability("q")};
        } else {
            cfg.q_values = expand_grid(pr.at("q_grid"), "/protocol/q_grid");
            cfg.q_is_grid = true;
            for (std::size_t i = 0; i < cfg.q_values.size(); ++i) {
                const double q = cfg.q_values[i];
                if (!(q >= 0.0 && q <= 1.0)) {
                    throw ConfigError("/protocol/q_grid/" + std::to_string(i), "must lie in [0, 1]");
                }
            }
        }
        if (pr.has("consume_policy")) {
            const json& p = pr.at("consume_policy");
            if (p == "oldest") {
                cfg.consume_policy = ConsumePolicy::Oldest;
            } else if (p == "random") {
                cfg.consume_policy = ConsumePolicy::Random;
            } else {
                throw ConfigError("/protocol/consume_policy", "expected \"oldest\" or \"random\"");
            }
        }
        pr.finish();
    }

    if (root.has("run")) {
        Block run(root.at("run"), "/run");
        cfg.has_run = true;
        cfg.N = static_cast<std::size_t>(run.integer("N", 1));
        if (run.has("horizon")) {
            cfg.horizon = static_cast<std::size_t>(run.integer("horizon", 1));
        }
        if (run.has("window")) {
            cfg.window = static_cast<std::size_t>(run.integer("window", 2));
        }
        cfg.base_seed = run.unsigned_integer("base_seed");
        if (run.has("b_inflate")) {
            cfg.b_inflate = run.number("b_inflate");
            if (!(cfg.b_inflate >= 1.0)) {
                throw ConfigError("/run/b_inflate", "must be >= 1");
            }
        }
        if (run.has("report_nodes")) {
            cfg.report_nodes = index_list(run.at("report_nodes"), "/run/report_nodes");
        }
        run.finish();
    }

    if (root.has("users")) {
        cfg.users = index_list(root.at("users"), "/users");
    }
    if (root.has("thresholds")) {
        cfg.thresholds = expand_grid(root.at("thresholds"), "/thresholds");
        if (!root.at("thresholds").is_array()) {
            throw ConfigError("/thresholds", "expected an array");
        }
    }
    if (cfg.thresholds.size() != cfg.users.size() && !cfg.thresholds.empty()) {
        throw ConfigError("/thresholds", "needs one entry per user node");
    }

    if (root.has("analytic")) {
        Block an(root.at("analytic"), "/analytic");
        AnalyticGrid grid;
        grid.p_gen = expand_grid(an.at("p_gen"), "/analytic/p_gen");
        grid.p_cons = expand_grid(an.at("p_cons"), "/analytic/p_cons");
        for (double r : expand_grid(an.at("r"), "/analytic/r")) {
            if (r < 1.0 || r != std::floor(r)) {
                throw ConfigError("/analytic/r", "entries must be integers >= 1");
            }
            grid.r.push_back(static_cast<int>(r));
        }
        if (an.has("d_i")) {
            grid.d_i = an.number("d_i");
        }
        an.finish();
        for (double p : grid.p_gen) {
            if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("/analytic/p_gen", "entries must lie in [0, 1]");
        }
        for (double p : grid.p_cons) {
            if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("/analytic/p_cons", "entries must lie in [0, 1]");
        }
        cfg.analytic = grid;
    }

    root.finish();
    return cfg;
}

ExperimentConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("", "cannot open config file " + path);
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("invalid JSON: ") + e.what());
    }
    const auto dir = std::filesystem::path(path).parent_path();
    return parse_config(doc, dir.empty() ? "." : dir.string());
}

ResolvedExperiment resolve_experiment(const ExperimentConfig& cfg)
{
    if (!cfg.topology) throw ConfigError("/topology", "missing required block");
    if (!cfg.has_hardware) throw ConfigError("/hardware", "missing required block");
    if (!cfg.has_software) throw ConfigError("/software", "missing required block");
    if (cfg.q_values.empty()) throw ConfigError("/protocol", "missing required block");
    if (!cfg.has_run) throw ConfigError("/run", "missing required block");

    ResolvedExperiment out;
    auto& p = out.params;
    try {
        if (cfg.topology->tree_d) {
            p.topology = std::make_shared<const Topology>(tree_topology(*cfg.topology->tree_d, *cfg.topology->tree_k));
        } else {
            std::filesystem::path file(*cfg.topology->adjacency_file);
            if (file.is_relative()) {
                file = std::filesystem::path(cfg.base_dir) / file;
            }
            p.topology = std::make_shared<const Topology>(read_adjacency_file(file.string()));
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError("/topology", e.what());
    }

    p.p_gen = cfg.p_gen;
    p.F_new = cfg.F_new;
    p.p_swap = cfg.p_swap;
    p.r = cfg.r;
    p.T = cfg.T;
    p.M = cfg.M;
    p.p_cons = cfg.p_cons;
    p.F_app = cfg.F_app;
    p.q = cfg.q_values.front();
    p.consume_policy = cfg.consume_policy;

    try {
        out.t_cut_bound = physics::max_cutoff(p.fidelity());
        p.derive_cutoff();
    } catch (const std::exception& e) {
        throw ConfigError("/software/F_app", e.what());
    }
    if (cfg.t_cut_override) {
        if (*cfg.t_cut_override > p.t_cut) {
            throw ConfigError("/software/t_cut", "override " + std::to_string(*cfg.t_cut_override) +
                                                     " exceeds the fidelity bound " + std::to_string(p.t_cut));
        }
        p.t_cut = *cfg.t_cut_override;
    }

    out.horizon = cfg.horizon.value_or(static_cast<std::size_t>(10 * p.t_cut));
    out.window = cfg.window.value_or(static_cast<std::size_t>(2 * p.t_cut));
    if (out.window > out.horizon) {
        throw ConfigError("/run/window", "window (" + std::to_string(out.window) + ") exceeds horizon (" +
                                             std::to_string(out.horizon) + ")");
    }

    const std::size_t n = p.topology->size();
    if (cfg.report_nodes) {
        out.report_nodes = *cfg.report_nodes;
    } else {
        for (NodeId i = 0; i < n; ++i) out.report_nodes.push_back(i);
    }
    for (std::size_t i = 0; i < out.report_nodes.size(); ++i) {
        if (out.report_nodes[i] >= n) {
            throw ConfigError("/run/report_nodes/" + std::to_string(i), "node index out of range");
        }
    }
    for (std::size_t i = 0; i < cfg.users.size(); ++i) {
        if (cfg.users[i] >= n) {
            throw ConfigError("/users/" + std::to_string(i), "node index out of range");
        }
    }
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError("", e.what());
    }
    return out;
}

json resolved_config_json(const ExperimentConfig& cfg, const ResolvedExperiment* res)
{
    json j = json::object();
    if (cfg.topology) {
        if (cfg.topology->tree_d) {
            j["topology"] = {{"tree", {{"d", *cfg.topology->tree_d}, {"k", *cfg.topology->tree_k}}}};
        } else {
            j["topology"] = {{"adjacency_file", *cfg.topology->adjacency_file}};
        }
    }
    if (cfg.has_hardware) {
        j["hardware"] = {{"p_gen", cfg.p_gen}, {"F_new", cfg.F_new}, {"p_swap", cfg.p_swap}, {"r", cfg.r}, {"T", cfg.T}};
    }
    if (cfg.has_software) {
        j["software"] = {{"F_app", cfg.F_app}, {"M", cfg.M}, {"p_cons", cfg.p_cons}};
        if (res) {
            j["software"]["t_cut"] = res->params.t_cut;
            j["software"]["t_cut_bound"] = res->t_cut_bound;
        }
    }
    if (!cfg.q_values.empty()) {
        j["protocol"] = {{cfg.q_is_grid ? "q_grid" : "q", cfg.q_is_grid ? json(cfg.q_values) : json(cfg.q_values.front())},
                         {"consume_policy", policy_name(cfg.consume_policy)}};
    }
    if (cfg.has_run) {
        j["run"] = {{"N", cfg.N}, {"base_seed", cfg.base_seed}, {"b_inflate", cfg.b_inflate}};
        if (res) {
            j["run"]["horizon"] = res->horizon;
            j["run"]["window"] = res->window;
            j["run"]["report_nodes"] = res->report_nodes;
        }
    }
    if (!cfg.users.empty()) {
        j["users"] = cfg.users;
    }
    if (!cfg.thresholds.empty()) {
        j["thresholds"] = cfg.thresholds;
    }
    if (cfg.analytic) {
        j["analytic"] = {{"p_gen", cfg.analytic->p_gen},
                         {"p_cons", cfg.analytic->p_cons},
                         {"r", cfg.analytic->r},
                         {"d_i", cfg.analytic->d_i}};
    }
    return j;
}

}  // namespace cdnet
