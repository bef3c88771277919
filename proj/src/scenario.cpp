// Scenario parsing, execution and CSV emission

#include "qpair/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "qpair/errors.hpp"

namespace qpair {

namespace {

using nlohmann::json;

constexpr const char* kFig2 = R"({
  "omega1": 10,
  "omega2": 10,
  "lambda": 1,
  "gamma1_I": 0.01,
  "gamma1_II": 0.01,
  "gamma2_I": 0.01,
  "gamma2_II": 0.01,
  "T1": 0,
  "T2": 0,
  "initial_family": "one_excitation",
  "p": 1,
  "phi": 0,
  "t_end": 2000,
  "samples": 40001,
  "solver": "auto",
  "output": "fig2"
}
)";

constexpr const char* kFig3 = R"({
  "omega1": 10,
  "omega2": 10,
  "lambda": 1,
  "gamma1_I": 0.01,
  "gamma1_II": 0.01,
  "gamma2_I": 0.01,
  "gamma2_II": 0.01,
  "T1": 0,
  "T2": 0,
  "initial_family": "two_excitation",
  "p": 0,
  "phi": 0,
  "t_end": 2000,
  "samples": 40001,
  "solver": "auto",
  "output": "fig3"
}
)";

// Library field names -> scenario keys, for error messages.
std::string config_key_for(const std::string& field) {
    static const std::map<std::string, std::string> names{
        {"bath1.gamma_I", "gamma1_I"},    {"bath1.gamma_II", "gamma1_II"}, {"bath1.temperature", "T1"},
        {"bath2.gamma_I", "gamma2_I"},    {"bath2.gamma_II", "gamma2_II"}, {"bath2.temperature", "T2"},
    };
    const auto it = names.find(field);
    return it == names.end() ? field : it->second;
}

[[noreturn]] void fail(const std::string& key, const std::string& message) {
    throw ConfigError("invalid value for `" + key + "`: " + message);
}

double number_at(const json& doc, const std::string& key, const std::string& label) {
    const json& value = doc.at(key);
    if (!value.is_number()) {
        fail(label, "expected a number");
    }
    const double x = value.get<double>();
    if (!std::isfinite(x)) {
        fail(label, "must be finite");
    }
    return x;
}

double number_or(const json& doc, const std::string& key, double fallback, const std::string& label) {
    return doc.contains(key) ? number_at(doc, key, label) : fallback;
}

std::string string_at(const json& doc, const std::string& key) {
    const json& value = doc.at(key);
    if (!value.is_string()) {
        fail(key, "expected a string");
    }
    return value.get<std::string>();
}

void require(const json& doc, const char* key) {
    if (!doc.contains(key)) {
        throw ConfigError(std::string("missing required key `") + key + "`");
    }
}

double* sweep_target(ScenarioConfig& config, const std::string& param) {
    ModelParams& m = config.model;
    if (param == "omega1") return &m.omega1;
    if (param == "omega2") return &m.omega2;
    if (param == "lambda") return &m.lambda;
    if (param == "gamma1_I") return &m.bath1.gamma_at_omega_I;
    if (param == "gamma1_II") return &m.bath1.gamma_at_omega_II;
    if (param == "gamma2_I") return &m.bath2.gamma_at_omega_I;
    if (param == "gamma2_II") return &m.bath2.gamma_at_omega_II;
    if (param == "T1") return &m.bath1.temperature;
    if (param == "T2") return &m.bath2.temperature;
    if (param == "p") return &config.initial.p;
    if (param == "phi") return &config.initial.phi;
    return nullptr;
}

// Checks every physical invariant of one scenario point.
void validate_point(const ScenarioConfig& config) {
    DressedBasis basis;
    LindbladRates rates;
    try {
        validate(config.model);
        basis = diagonalize(config.model);
        rates = lindblad_rates(basis, config.model.bath1, config.model.bath2);
        build_initial(config.initial, basis);
    } catch (const InvalidArgument& e) {
        const std::string key = config_key_for(e.field());
        const std::string what = e.what();
        const auto colon = what.find(": ");
        fail(key, colon == std::string::npos ? what : what.substr(colon + 2));
    }
    if (config.t_end) {
        if (!(*config.t_end > 0.0)) {
            fail("t_end", "must be > 0");
        }
    } else if (!(rates.c_I > 0.0) && !(rates.c_II > 0.0)) {
        fail("t_end", "required when every decay rate is zero");
    }
    if (config.samples < 2) {
        fail("samples", "must be >= 2");
    }
    if (config.solver == SolverKind::analytic && !analytic_regime(rates)) {
        fail("solver", "the analytic solver requires T1 = T2 = 0, omega1 = omega2 and equal flat baths "
                       "(vanishing cross coefficients)");
    }
}

std::filesystem::path output_stem(const std::string& output) {
    std::filesystem::path path(output);
    if (path.extension() == ".csv") {
        path.replace_extension();
    }
    return path;
}

void write_gnuplot(const std::filesystem::path& script, const std::filesystem::path& csv) {
    std::ofstream out(script, std::ios::binary);
    if (!out) {
        throw OutputError("cannot open " + script.string() + " for writing");
    }
    const std::string data = csv.filename().string();
    out << "# columns: " << "t,rho_aa,rho_bb,rho_cc,rho_dd,concurrence,trace_error,min_eig\n"
        << "set datafile separator ','\n"
        << "set key autotitle columnhead\n"
        << "set xlabel 't  (1/lambda; divide by 10 for units of 10/lambda)'\n"
        << "set multiplot layout 2,1\n"
        << "set ylabel 'concurrence'\n"
        << "plot '" << data << "' using 1:6 with lines\n"
        << "set ylabel 'dressed populations'\n"
        << "plot '" << data << "' using 1:2 with lines, '' using 1:3 with lines, "
        << "'' using 1:4 with lines, '' using 1:5 with lines\n"
        << "unset multiplot\n";
    if (!out) {
        throw OutputError("failed writing " + script.string());
    }
}

PointResult run_point(const ScenarioConfig& config, const std::filesystem::path& csv_path,
                      const RunOptions& options) {
    SimulationResult sim = simulate(config);

    PointResult result;
    result.csv_path = csv_path;
    result.solver_used = sim.solver_used;
    result.final_concurrence = sim.trajectory.observables.back().concurrence.value_or(0.0);
    result.weak_damping_warning = weak_damping_violated(sim.basis, sim.rates);
    try {
        result.stationary = stationary_state(sim.rates);
    } catch (const InvalidArgument&) {
        result.stationary.reset();
    }

    // Serialize first so an unphysical row never leaves a partial file behind.
    std::ostringstream buffer;
    write_csv(buffer, sim.trajectory);
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) {
        throw OutputError("cannot open " + csv_path.string() + " for writing");
    }
    out << buffer.str();
    if (!out) {
        throw OutputError("failed writing " + csv_path.string());
    }
    if (options.emit_gnuplot) {
        std::filesystem::path script = csv_path;
        script.replace_extension(".gp");
        write_gnuplot(script, csv_path);
        result.gnuplot_path = script;
    }
    return result;
}

} // namespace

const char* to_string(SolverKind solver) {
    switch (solver) {
    case SolverKind::analytic:
        return "analytic";
    case SolverKind::numeric:
        return "numeric";
    case SolverKind::automatic:
        return "auto";
    }
    return "?";
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys{"omega1", "omega2", "lambda",  "gamma1_I",       "gamma1_II",
                                               "gamma2_I", "gamma2_II", "T1", "T2", "initial_family",
                                               "p",      "phi",    "t_end",   "samples",        "solver",
                                               "output", "sweep"};
    return keys;
}

const std::vector<std::string>& sweepable_keys() {
    static const std::vector<std::string> keys{"omega1",    "omega2", "lambda", "gamma1_I", "gamma1_II", "gamma2_I",
                                               "gamma2_II", "T1",     "T2",     "p",        "phi",       "t_end"};
    return keys;
}

std::string format_number(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.12g", value);
    return buffer;
}

ScenarioConfig parse_config(std::string_view json_text, std::string_view source) {
    json doc;
    try {
        doc = json::parse(json_text.begin(), json_text.end());
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string(source) + ": " + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError(std::string(source) + ": top-level value must be a JSON object");
    }
    const auto& known = config_keys();
    for (const auto& [key, value] : doc.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw ConfigError("unknown key `" + key + "`");
        }
    }
    for (const char* key : {"omega1", "omega2", "lambda", "gamma1_I", "gamma1_II", "gamma2_I", "gamma2_II",
                            "initial_family"}) {
        require(doc, key);
    }

    ScenarioConfig config;
    ModelParams& m = config.model;
    m.omega1 = number_at(doc, "omega1", "omega1");
    m.omega2 = number_at(doc, "omega2", "omega2");
    m.lambda = number_at(doc, "lambda", "lambda");
    m.bath1 = {number_at(doc, "gamma1_I", "gamma1_I"), number_at(doc, "gamma1_II", "gamma1_II"),
               number_or(doc, "T1", 0.0, "T1")};
    m.bath2 = {number_at(doc, "gamma2_I", "gamma2_I"), number_at(doc, "gamma2_II", "gamma2_II"),
               number_or(doc, "T2", 0.0, "T2")};

    const std::string family = string_at(doc, "initial_family");
    if (family == "one_excitation") {
        config.initial.family = StateFamily::one_excitation;
    } else if (family == "two_excitation") {
        config.initial.family = StateFamily::two_excitation;
    } else {
        fail("initial.family", "expected `one_excitation` or `two_excitation`, got `" + family + "`");
    }
    config.initial.p = number_or(doc, "p", 1.0, "initial.p");
    config.initial.phi = number_or(doc, "phi", 0.0, "initial.phi");

    if (doc.contains("t_end")) {
        config.t_end = number_at(doc, "t_end", "t_end");
    }
    if (doc.contains("samples")) {
        const json& s = doc.at("samples");
        if (!s.is_number_integer() || s.get<long long>() < 2) {
            fail("samples", "expected an integer >= 2");
        }
        config.samples = static_cast<std::size_t>(s.get<long long>());
    }
    if (doc.contains("solver")) {
        const std::string solver = string_at(doc, "solver");
        if (solver == "analytic") {
            config.solver = SolverKind::analytic;
        } else if (solver == "numeric") {
            config.solver = SolverKind::numeric;
        } else if (solver == "auto") {
            config.solver = SolverKind::automatic;
        } else {
            fail("solver", "expected `analytic`, `numeric` or `auto`, got `" + solver + "`");
        }
    }
    if (doc.contains("output")) {
        config.output = string_at(doc, "output");
        if (config.output.empty()) {
            fail("output", "must not be empty");
        }
    }
    if (doc.contains("sweep")) {
        const json& sweep = doc.at("sweep");
        if (!sweep.is_object()) {
            fail("sweep", "expected an object with `param` and `values`");
        }
        for (const auto& [key, value] : sweep.items()) {
            if (key != "param" && key != "values") {
                throw ConfigError("unknown key `sweep." + key + "`");
            }
        }
        if (!sweep.contains("param") || !sweep.contains("values")) {
            fail("sweep", "expected an object with `param` and `values`");
        }
        Sweep s;
        s.param = string_at(sweep, "param");
        const auto& allowed = sweepable_keys();
        if (std::find(allowed.begin(), allowed.end(), s.param) == allowed.end()) {
            fail("sweep.param", "`" + s.param + "` cannot be swept");
        }
        const json& values = sweep.at("values");
        if (!values.is_array() || values.empty()) {
            fail("sweep.values", "expected a non-empty array of numbers");
        }
        for (const json& v : values) {
            if (!v.is_number() || !std::isfinite(v.get<double>())) {
                fail("sweep.values", "expected finite numbers");
            }
            s.values.push_back(v.get<double>());
        }
        config.sweep = std::move(s);
    }

    if (config.sweep) {
        for (const double value : config.sweep->values) {
            with_parameter(config, config.sweep->param, value);
        }
    } else {
        validate_point(config);
    }
    return config;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open config file " + path.string());
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), path.string());
}

std::string preset_text(std::string_view name) {
    if (name == "fig2") {
        return kFig2;
    }
    if (name == "fig3") {
        return kFig3;
    }
    throw ConfigError("unknown preset `" + std::string(name) + "` (expected fig2 or fig3)");
}

ScenarioConfig with_parameter(const ScenarioConfig& config, const std::string& param, double value) {
    ScenarioConfig point = config;
    point.sweep.reset();
    if (param == "t_end") {
        point.t_end = value;
    } else if (double* target = sweep_target(point, param)) {
        *target = value;
    } else {
        fail("sweep.param", "`" + param + "` cannot be swept");
    }
    try {
        validate_point(point);
    } catch (const ConfigError& e) {
        throw ConfigError(std::string(e.what()) + " (sweep point " + param + "=" + format_number(value) + ")");
    }
    return point;
}

SimulationResult simulate(const ScenarioConfig& config) {
    SimulationResult sim;
    sim.basis = diagonalize(config.model);
    sim.rates = lindblad_rates(sim.basis, config.model.bath1, config.model.bath2);
    sim.t_end = config.t_end ? *config.t_end : default_horizon(sim.rates);

    const DensityMatrix rho0 = build_initial(config.initial, sim.basis);
    const bool use_analytic = config.solver == SolverKind::analytic ||
                              (config.solver == SolverKind::automatic && analytic_regime(sim.rates));
    if (use_analytic) {
        const auto grid = uniform_grid(sim.t_end, config.samples);
        sim.trajectory = analytic_zero_T(sim.basis, sim.rates, rho0, grid);
        sim.solver_used = SolverKind::analytic;
    } else {
        IntegrationOptions options;
        options.t_end = sim.t_end;
        options.samples = config.samples;
        sim.trajectory = integrate(sim.basis, sim.rates, rho0, options);
        sim.solver_used = SolverKind::numeric;
    }
    concurrence_series(sim.trajectory, sim.basis);
    return sim;
}

void write_csv(std::ostream& out, const Trajectory& traj) {
    out << "t,rho_aa,rho_bb,rho_cc,rho_dd,concurrence,trace_error,min_eig\n";
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const DensityMatrix& rho = traj.states[k];
        const Observables& obs = traj.observables[k];
        const double trace_error = rho.trace_error();
        const double min_eig = rho.min_eigenvalue();
        if (!(std::abs(trace_error) <= 1e-9) || !(min_eig >= -1e-8)) {
            throw NumericFailure("unphysical state at t = " + format_number(traj.times[k]) +
                                 " (trace error " + format_number(trace_error) + ", min eigenvalue " +
                                 format_number(min_eig) + ")");
        }
        if (!obs.concurrence) {
            throw NumericFailure("concurrence missing at t = " + format_number(traj.times[k]));
        }
        out << format_number(traj.times[k]);
        for (const double p : obs.populations) {
            out << ',' << format_number(p);
        }
        out << ',' << format_number(*obs.concurrence) << ',' << format_number(trace_error) << ','
            << format_number(min_eig) << '\n';
    }
}

std::vector<PointResult> run(const ScenarioConfig& config, const RunOptions& options) {
    const std::filesystem::path stem = output_stem(config.output);
    if (!config.sweep) {
        std::filesystem::path csv = stem;
        csv += ".csv";
        return {run_point(config, csv, options)};
    }

    const Sweep& sweep = *config.sweep;
    const std::size_t n = sweep.values.size();
    std::vector<ScenarioConfig> points;
    std::vector<std::filesystem::path> paths;
    std::vector<std::string> labels;
    for (const double value : sweep.values) {
        points.push_back(with_parameter(config, sweep.param, value));
        labels.push_back(sweep.param + "=" + format_number(value));
        std::filesystem::path csv = stem;
        csv += "_" + labels.back() + ".csv";
        paths.push_back(csv);
    }

    std::vector<PointResult> results(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                results[i] = run_point(points[i], paths[i], options);
                results[i].sweep_label = labels[i];
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t threads = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, n);
    {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }
    for (const auto& error : errors) {
        if (error) {
            std::rethrow_exception(error);
        }
    }
    return results;
}

std::string summary_line(const PointResult& result) {
    std::ostringstream line;
    if (result.sweep_label) {
        line << '[' << *result.sweep_label << "] ";
    }
    line << "solver=" << to_string(result.solver_used) << " stationary(aa,bb,cc,dd)=";
    if (result.stationary) {
        const auto& s = *result.stationary;
        line << '(' << format_number(s[0]) << ", " << format_number(s[1]) << ", " << format_number(s[2]) << ", "
             << format_number(s[3]) << ')';
    } else {
        line << "undefined";
    }
    line << " final_concurrence=" << format_number(result.final_concurrence) << " -> "
         << result.csv_path.string();
    return line.str();
}

} // namespace qpair
