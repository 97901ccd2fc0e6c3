#include <cstdio>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rbyhj/experiments.hpp"

int main(int argc, char** argv) {
    CLI::App app{"rbyhj - pathwise curvature bounds for stochastically forced "
                 "Hamilton-Jacobi evolutions"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run an experiment from a JSON config");
    std::string config_path, out_dir = "out";
    bool plots = false;
    std::uint64_t seed = 0;
    bool have_seed = false;
    run->add_option("--config", config_path, "JSON config file")->required();
    run->add_option("--out", out_dir, "output directory (default: out)");
    run->add_flag("--plots", plots, "emit SVG plots alongside the CSV tables");
    run->add_option("--seed", seed, "override the path seed(s)")->each([&](const std::string&) {
        have_seed = true;
    });

    auto* list = app.add_subcommand("list", "list available experiments");

    CLI11_PARSE(app, argc, argv);

    if (list->parsed()) {
        for (const auto& e : rbyhj::list_experiments())
            std::printf("%-18s %s\n", e.name.c_str(), e.description.c_str());
        return 0;
    }

    nlohmann::json config;
    try {
        config = rbyhj::load_config(config_path);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    std::optional<std::uint64_t> seed_override;
    if (have_seed) seed_override = seed;
    rbyhj::RunOutcome outcome = rbyhj::run_experiment(config, out_dir, plots, seed_override);
    if (outcome.report.contains("error"))
        std::fprintf(stderr, "error: %s\n",
                     outcome.report.at("error").get<std::string>().c_str());
    else
        std::printf("%s: %s (report: %s/report.json)\n",
                    outcome.report.at("experiment").get<std::string>().c_str(),
                    outcome.pass ? "PASS" : "FAIL", out_dir.c_str());
    return outcome.exit_code;
}
