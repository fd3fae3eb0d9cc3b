// Command-line front end: analytic, simulate, sweep, pareto.

#include <iostream>

#include "CLI11.hpp"

#include "cdnet/commands.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Continuous entanglement distribution experiments"};
    app.require_subcommand(1);

    std::string config_path;
    std::uint64_t seed = 0;
    cdnet::CommandOptions opts;

    auto add_common = [&](CLI::App* sub, bool runs) {
        sub->add_option("--config", config_path, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", opts.out_dir, "output directory")->capture_default_str();
        if (runs) {
            sub->add_option("--seed", seed, "base seed, overrides run.base_seed");
            sub->add_option("--jobs", opts.jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
        }
    };

    auto* analytic = app.add_subcommand("analytic", "closed-form no-swap steady state over a grid");
    add_common(analytic, false);
    auto* simulate = app.add_subcommand("simulate", "simulate one parameter point and detect the steady state");
    add_common(simulate, true);
    auto* sweep = app.add_subcommand("sweep", "steady-state estimates over a q grid");
    add_common(sweep, true);
    auto* pareto = app.add_subcommand("pareto", "annotate a sweep table with the Pareto frontier");
    add_common(pareto, false);
    pareto->add_option("--input", opts.input, "sweep.csv from the sweep command")->required()->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try {
        const auto config = cdnet::load_config(config_path);
        if (simulate->parsed() || sweep->parsed()) {
            auto* sub = simulate->parsed() ? simulate : sweep;
            if (sub->count("--seed")) opts.seed = seed;
        }
        if (analytic->parsed()) {
            cdnet::cmd_analytic(config, opts, std::cerr);
        } else if (simulate->parsed()) {
            cdnet::cmd_simulate(config, opts, std::cerr);
        } else if (sweep->parsed()) {
            cdnet::cmd_sweep(config, opts, std::cerr);
        } else {
            cdnet::cmd_pareto(config, opts, std::cerr);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
