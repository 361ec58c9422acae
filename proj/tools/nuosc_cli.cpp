#include <iostream>

#include "CLI11.hpp"
#include "nuosc/scenario.hpp"

int main(int argc, char** argv) {
    CLI::App app{"collective neutrino oscillation circuit toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    nuosc::RunOptions options;
    std::uint64_t seed = 0;
    std::uint64_t shots = 0;
    bool seed_set = false, shots_set = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("config", config_path, "scenario JSON file")->required();
        cmd->add_option("--out-dir", options.out_dir, "output directory");
        cmd->add_option("--seed", seed, "override the scenario seed")
            ->each([&](const std::string&) { seed_set = true; });
        cmd->add_option("--shots", shots, "sample bitstrings with this many shots")
            ->each([&](const std::string&) { shots_set = true; });
    };

    auto* run = app.add_subcommand("run", "run a scenario and write CSV results");
    add_common(run);
    auto* compare = app.add_subcommand("compare", "print a circuit-vs-oracle summary");
    add_common(compare);
    auto* exportq = app.add_subcommand("export-qasm", "write per-step OpenQASM 3 files");
    add_common(exportq);

    CLI11_PARSE(app, argc, argv);

    try {
        nuosc::ScenarioConfig config = nuosc::load_scenario(config_path);
        if (seed_set) options.seed = seed;
        if (shots_set) options.shots = shots;
        if (run->parsed()) return nuosc::run_scenario(config, options);
        if (compare->parsed()) return nuosc::compare_report(config, std::cout);
        if (exportq->parsed()) return nuosc::export_scenario_qasm(config, options);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
