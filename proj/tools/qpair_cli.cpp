// Command-line driver: `qpair simulate <config.json> | --preset fig2|fig3`

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qpair/errors.hpp"
#include "qpair/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumeric = 2;

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dissipative dynamics and entanglement of two coupled qubits with independent thermal baths"};
    app.require_subcommand(1);

    std::string config_path;
    std::string preset;
    std::string output;
    bool emit_gnuplot = false;
    bool quiet = false;

    auto* simulate = app.add_subcommand("simulate", "Run a scenario and write CSV trajectories");
    simulate->add_option("config", config_path, "Scenario JSON file");
    simulate->add_option("--preset", preset, "Built-in scenario")->check(CLI::IsMember({"fig2", "fig3"}));
    simulate->add_option("-o,--output", output, "Override the output path prefix");
    simulate->add_flag("--emit-gnuplot", emit_gnuplot, "Write a gnuplot script next to each CSV");
    simulate->add_flag("-q,--quiet", quiet, "Suppress the summary lines");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (config_path.empty() == preset.empty()) {
            throw qpair::ConfigError("give exactly one of a config file or --preset");
        }
        qpair::ScenarioConfig config = preset.empty()
                                           ? qpair::load_config(config_path)
                                           : qpair::parse_config(qpair::preset_text(preset), "preset " + preset);
        if (!output.empty()) {
            config.output = output;
        }

        qpair::RunOptions options;
        options.emit_gnuplot = emit_gnuplot;
        const auto results = qpair::run(config, options);

        for (const auto& result : results) {
            if (result.weak_damping_warning) {
                std::cerr << "warning: "
                          << (result.sweep_label ? "[" + *result.sweep_label + "] " : std::string())
                          << "some rate exceeds 0.1 * omega_I; the weak-damping master equation may be inaccurate\n";
            }
            if (!quiet) {
                std::cout << qpair::summary_line(result) << '\n';
            }
        }
        return kExitOk;
    } catch (const qpair::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const qpair::OutputError& e) {
        std::cerr << "output error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const qpair::NumericFailure& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}
