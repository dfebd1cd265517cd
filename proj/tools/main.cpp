// lzbath command-line entry point: run / oracle / sweep / converge /
// analytic / defaults. Exit codes: 1 config, 2 numerical breakdown, 3 I/O.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "lzbath/analytics.hpp"
#include "lzbath/config.hpp"
#include "lzbath/csv.hpp"
#include "lzbath/fock.hpp"

namespace {

namespace fs = std::filesystem;
using namespace lzbath;

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    unsigned threads{0};
    std::optional<std::uint64_t> seed;

    unsigned resolved_threads() const {
        if (threads > 0) return threads;
        const unsigned hw = std::thread::hardware_concurrency();
        return hw > 0 ? hw : 1;
    }
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool needs_config = true) {
    auto* cfg = cmd->add_option("--config", opts.config_path, "Path to the config/spec file");
    if (needs_config) cfg->required();
    cmd->add_option("--out", opts.out_dir, "Output directory (overrides [output] directory)");
    cmd->add_option("--threads", opts.threads, "Worker threads, 0 = auto");
    cmd->add_option("--seed", opts.seed, "Seed override");
}

std::string prepare_out_dir(const std::string& requested) {
    std::error_code ec;
    fs::create_directories(requested, ec);
    if (ec || !fs::is_directory(requested))
        throw IoError("cannot create output directory: " + requested);
    return requested;
}

void write_meta(const std::string& dir, const FullConfig& cfg) {
    const std::string path = dir + "/meta.json";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open output file: " + path);
    out << meta_json(cfg);
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

FullConfig load_with_overrides(const CommonOpts& opts) {
    FullConfig cfg = load_config(opts.config_path);
    if (opts.seed) cfg.scenario.seed = *opts.seed;
    if (!opts.out_dir.empty()) cfg.output.directory = opts.out_dir;
    return cfg;
}

int cmd_run(const CommonOpts& opts) {
    const FullConfig cfg = load_with_overrides(opts);
    const std::string dir = prepare_out_dir(cfg.output.directory);

    const std::vector<BathMode> modes = cfg.scenario.bath.resolve();
    const Trajectory traj = run_scenario(cfg.scenario);
    if (traj.max_norm_drift > cfg.scenario.run.norm_drift_warn)
        std::cerr << "warning: norm drift reached " << traj.max_norm_drift << "\n";

    write_trajectory_csv(dir + "/trajectory.csv", traj);
    write_bosons_csv(dir + "/bosons.csv", traj, modes);
    write_meta(dir, cfg);

    const SteadyState steady = steady_state_probability(traj, cfg.scenario.run);
    std::cout << "steady p_down = " << steady.value << (steady.flat ? " (flat)" : " (not flat)")
              << ", norm drift " << traj.max_norm_drift << "\n";
    return 0;
}

int cmd_oracle(const CommonOpts& opts) {
    const FullConfig cfg = load_with_overrides(opts);
    const std::string dir = prepare_out_dir(cfg.output.directory);

    const FockConfig fc = make_fock_config(cfg);
    const Trajectory traj = fock_evolve(fc);
    write_trajectory_csv(dir + "/trajectory.csv", traj);
    write_bosons_csv(dir + "/bosons.csv", traj, fc.modes);
    write_meta(dir, cfg);

    const SteadyState steady = steady_state_probability(traj, cfg.scenario.run);
    std::cout << "steady p_down = " << steady.value << (steady.flat ? " (flat)" : " (not flat)")
              << ", norm drift " << traj.max_norm_drift << "\n";
    return 0;
}

int cmd_sweep(const CommonOpts& opts) {
    SweepFile file = load_sweep_spec(opts.config_path);
    if (opts.seed) file.spec.base.seed = *opts.seed;
    if (!opts.out_dir.empty()) file.output.directory = opts.out_dir;
    const std::string dir = prepare_out_dir(file.output.directory);

    const std::vector<SweepRow> rows = run_sweep(file.spec, opts.resolved_threads());
    std::vector<std::string> names;
    for (const auto& axis : file.spec.axes) names.push_back(axis.name);
    write_sweep_csv(dir + "/sweep.csv", names, rows);

    std::size_t failed = 0;
    for (const auto& row : rows)
        if (row.status != "ok") ++failed;
    std::cout << rows.size() << " runs, " << failed << " failed; table written to " << dir
              << "/sweep.csv\n";
    return 0;
}

int cmd_converge(const CommonOpts& opts) {
    ConvergeFile file = load_converge_spec(opts.config_path);
    if (opts.seed) file.base.seed = *opts.seed;
    if (!opts.out_dir.empty()) file.output.directory = opts.out_dir;
    const std::string dir = prepare_out_dir(file.output.directory);

    const ConvergenceScan scan =
        convergence_scan(file.kind, file.values, file.base, opts.resolved_threads());
    write_converge_csv(dir + "/converge.csv", scan);

    std::cout << "scan over " << scan.kind << ": last sup-diff "
              << (scan.sup_diffs.empty() ? 0.0 : scan.sup_diffs.back())
              << (scan.converged ? " (converged)" : " (not converged)") << "; table written to "
              << dir << "/converge.csv\n";
    return 0;
}

struct AnalyticOpts {
    std::string config_path;
    double delta{0.0};
    double v{1.0};
    double gamma{0.0};
    double theta{0.0};
    double big_s{0.0};
    double e0{0.0};
};

int cmd_analytic(const AnalyticOpts& opts, const CLI::App* cmd) {
    AnalyticOpts a = opts;
    if (!a.config_path.empty()) {
        const FullConfig cfg = load_config(a.config_path);
        const std::vector<BathMode> modes = cfg.scenario.bath.resolve();
        if (cmd->count("--delta") == 0) a.delta = cfg.scenario.qubit.delta;
        if (cmd->count("--v") == 0) a.v = cfg.scenario.qubit.v;
        if (!modes.empty()) {
            const IntegratedQuantities iq = integrated_quantities(modes);
            if (cmd->count("--S") == 0) a.big_s = iq.S;
            if (cmd->count("--E0") == 0) a.e0 = iq.E0;
            if (cmd->count("--gamma") == 0) a.gamma = modes.front().gamma;
            if (cmd->count("--theta") == 0) a.theta = modes.front().theta;
        }
    }

    nlohmann::json out;
    out["inputs"] = {{"delta", a.delta}, {"v", a.v},   {"gamma", a.gamma},
                     {"theta", a.theta}, {"S", a.big_s}, {"E0", a.e0}};
    out["lz_standard"] = lz_standard(a.delta, a.v);
    out["single_mode_final"] = single_mode_final(a.delta, a.gamma, a.v);
    out["multimode_final"] = multimode_final(a.delta, a.v, a.theta, a.big_s, a.e0);
    std::cout << out.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dissipative Landau-Zener dynamics with a multi-configuration "
                 "coherent-state ansatz"};
    app.require_subcommand(1);

    CommonOpts run_opts, oracle_opts, sweep_opts, converge_opts;
    AnalyticOpts analytic_opts;

    auto* run_cmd = app.add_subcommand("run", "Propagate one trajectory and write CSV output");
    add_common(run_cmd, run_opts);

    auto* oracle_cmd = app.add_subcommand(
        "oracle", "Exact truncated-Fock reference run (explicit baths, at most 3 modes)");
    add_common(oracle_cmd, oracle_opts);

    auto* sweep_cmd = app.add_subcommand("sweep", "Run the cartesian product of the [axes] lists");
    add_common(sweep_cmd, sweep_opts);

    auto* converge_cmd =
        app.add_subcommand("converge", "Convergence scan over M, N, omega_max or dt");
    add_common(converge_cmd, converge_opts);

    auto* analytic_cmd =
        app.add_subcommand("analytic", "Print closed-form final transition probabilities as JSON");
    analytic_cmd->add_option("--config", analytic_opts.config_path,
                             "Take unset parameters from this config's qubit/bath");
    analytic_cmd->add_option("--delta", analytic_opts.delta, "Tunneling strength")
        ->capture_default_str();
    analytic_cmd->add_option("--v", analytic_opts.v, "Sweep velocity")->capture_default_str();
    analytic_cmd->add_option("--gamma", analytic_opts.gamma, "Single-mode coupling")
        ->capture_default_str();
    analytic_cmd->add_option("--theta", analytic_opts.theta, "Interaction angle")
        ->capture_default_str();
    analytic_cmd->add_option("--S", analytic_opts.big_s, "Integrated spectral density Σγ²")
        ->capture_default_str();
    analytic_cmd->add_option("--E0", analytic_opts.e0, "Reorganization energy Σγ²/ω")
        ->capture_default_str();

    auto* defaults_cmd =
        app.add_subcommand("defaults", "Print the default configuration as an INI document");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (run_cmd->parsed()) return cmd_run(run_opts);
        if (oracle_cmd->parsed()) return cmd_oracle(oracle_opts);
        if (sweep_cmd->parsed()) return cmd_sweep(sweep_opts);
        if (converge_cmd->parsed()) return cmd_converge(converge_opts);
        if (analytic_cmd->parsed()) return cmd_analytic(analytic_opts, analytic_cmd);
        if (defaults_cmd->parsed()) {
            std::cout << defaults_ini();
            return 0;
        }
    } catch (const IoError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 3;
    } catch (const NumericError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const ConfigError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    } catch (const std::domain_error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 0;
}
