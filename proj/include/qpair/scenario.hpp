// JSON scenario configuration, sweeps, and CSV output for the command-line driver

#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qpair/dynamics.hpp"
#include "qpair/entanglement.hpp"
#include "qpair/model.hpp"

namespace qpair {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class SolverKind { analytic, numeric, automatic };

const char* to_string(SolverKind solver);

struct Sweep {
    std::string param;
    std::vector<double> values;
};

struct ScenarioConfig {
    ModelParams model;
    InitialStateSpec initial;
    std::optional<double> t_end;  // default: 10 / smallest nonzero decay rate
    std::size_t samples{2001};
    SolverKind solver{SolverKind::automatic};
    std::string output{"trajectory"};
    std::optional<Sweep> sweep;
};

// Keys accepted at the top level of a scenario document.
const std::vector<std::string>& config_keys();
// Keys a sweep may vary.
const std::vector<std::string>& sweepable_keys();

// Parses and validates a scenario. `source` names the document in messages.
// Throws ConfigError naming the offending key or line.
ScenarioConfig parse_config(std::string_view json_text, std::string_view source = "<config>");
ScenarioConfig load_config(const std::filesystem::path& path);

// JSON text of a built-in preset ("fig2", "fig3"); throws ConfigError for other names.
std::string preset_text(std::string_view name);

// Copy of `config` with one sweepable key replaced; rejected values throw ConfigError.
ScenarioConfig with_parameter(const ScenarioConfig& config, const std::string& param, double value);

struct PointResult {
    std::filesystem::path csv_path;
    std::optional<std::filesystem::path> gnuplot_path;
    SolverKind solver_used{SolverKind::numeric};
    std::optional<std::array<double, 4>> stationary;
    double final_concurrence{0.0};
    bool weak_damping_warning{false};
    std::optional<std::string> sweep_label;  // "<param>=<value>"
};

struct RunOptions {
    bool emit_gnuplot{false};
};

struct SimulationResult {
    DressedBasis basis;
    LindbladRates rates;
    Trajectory trajectory;
    SolverKind solver_used{SolverKind::numeric};
    double t_end{0.0};
};

// Evolves one (non-sweep) scenario and fills the concurrence observables.
SimulationResult simulate(const ScenarioConfig& config);

// Writes the CSV table; throws NumericFailure when a row breaks the trace or
// positivity bounds (|trace - 1| <= 1e-9, min eigenvalue >= -1e-8).
void write_csv(std::ostream& out, const Trajectory& traj);

// Runs the scenario (every sweep point concurrently when a sweep is present)
// and writes one CSV per point.
std::vector<PointResult> run(const ScenarioConfig& config, const RunOptions& options = {});

std::string summary_line(const PointResult& result);

// Number formatting shared by CSV rows and sweep file names.
std::string format_number(double value);

} // namespace qpair
