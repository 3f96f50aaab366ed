#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qst/scenario.hpp"

int main(int argc, char** argv) {
    CLI::App app{"qst-sim: deterministic state transfer between fiber-linked mechanical resonators"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run a bundled scenario (fig2..fig7) or a custom config");
    std::string scenario;
    run->add_option("scenario", scenario, "scenario name: fig2..fig7 or custom")->required();
    std::string config_path, out_dir;
    int steps = 0, threads = 0;
    run->add_option("--config", config_path, "key = value configuration file overriding defaults");
    run->add_option("--out", out_dir, "output directory (default: current directory)");
    run->add_option("--steps", steps, "fixed integrator step count (default: automatic rule)");
    run->add_option("--threads", threads, "worker threads (default: QST_SIM_THREADS or all cores)");

    CLI11_PARSE(app, argc, argv);

    qst::CliOverrides cli;
    if (!config_path.empty()) cli.config_path = config_path;
    if (!out_dir.empty()) cli.out_dir = out_dir;
    if (steps > 0) cli.steps = steps;
    if (threads > 0) cli.threads = threads;
    return qst::run_scenario(scenario, cli);
}
