// Command-line driver: single runs, parameter sweeps and scheduler
// comparisons, written as CSV.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "agentsched/harness/config.hpp"
#include "agentsched/harness/simulation.hpp"
#include "agentsched/harness/sweep.hpp"

using namespace agentsched;

namespace {

constexpr int exit_config_error = 2;
constexpr int exit_runtime_error = 1;

std::vector<std::string> split(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

void write_rows(const std::string& path, const std::vector<harness::ResultRow>& rows, bool timing) {
    if (path == "-") {
        harness::write_csv(std::cout, rows, timing);
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw harness::ConfigError("cannot write '" + path + "'");
    }
    harness::write_csv(out, rows, timing);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Agent-based cloud task scheduling simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    bool timing = false;

    auto* run = app.add_subcommand("run", "Run one scenario");
    std::uint64_t seed = 0;
    std::string trace_path;
    run->add_option("--config", config_path, "Scenario JSON file")->required();
    auto* seed_opt = run->add_option("--seed", seed, "Override the config seed");
    run->add_option("--trace", trace_path, "Write a JSON-lines trace here");
    run->add_option("--out", out_path, "CSV output ('-' for stdout)")->required();
    run->add_flag("--timing", timing, "Add a wall_time_s column");

    auto* sweep = app.add_subcommand("sweep", "Vary one parameter");
    std::string axis_name;
    std::string values_text;
    int reps = 1;
    sweep->add_option("--config", config_path, "Scenario JSON file")->required();
    sweep->add_option("--axis", axis_name, "theta, hosts or probability")->required();
    sweep->add_option("--values", values_text, "e.g. 1..20, 0.1..1.0, 1,5,10")->required();
    sweep->add_option("--reps", reps, "Seeds per value (config seed, +1, ...)");
    sweep->add_option("--out", out_path, "CSV output ('-' for stdout)")->required();
    sweep->add_flag("--timing", timing, "Add a wall_time_s column");

    auto* compare = app.add_subcommand("compare", "Schedulers against event probability");
    std::string schedulers_text = "ara,mct,met,min_min,round_robin";
    std::string probability_text = "0.1..1.0";
    compare->add_option("--config", config_path, "Scenario JSON file")->required();
    compare->add_option("--schedulers", schedulers_text, "Comma-separated scheduler names");
    compare->add_option("--probability", probability_text, "Event probabilities, e.g. 0.1..1.0");
    compare->add_option("--reps", reps, "Seeds per probability");
    compare->add_option("--out", out_path, "CSV output ('-' for stdout)")->required();
    compare->add_flag("--timing", timing, "Add a wall_time_s column");

    CLI11_PARSE(app, argc, argv);

    harness::ScenarioConfig config;
    try {
        config = harness::load_config(config_path);
    } catch (const harness::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config_error;
    }

    try {
        std::vector<harness::ResultRow> rows;
        if (run->parsed()) {
            if (*seed_opt) {
                config.seed = seed;
            }
            std::ofstream trace_file;
            if (!trace_path.empty()) {
                trace_file.open(trace_path);
                if (!trace_file) {
                    throw harness::ConfigError("cannot write '" + trace_path + "'");
                }
            }
            rows.push_back(harness::run_row(config, harness::Axis::none, 0.0,
                                            trace_path.empty() ? nullptr : &trace_file));
        } else if (sweep->parsed()) {
            rows = harness::sweep(config, harness::axis_from_name(axis_name), harness::parse_values(values_text), reps);
        } else {
            rows = harness::compare(config, split(schedulers_text), harness::parse_values(probability_text), reps);
        }
        write_rows(out_path, rows, timing);
    } catch (const harness::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_runtime_error;
    }
    return 0;
}
