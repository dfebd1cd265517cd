#include "lzbath/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

namespace lzbath {

void Scenario::validate() const {
    qubit.validate();
    run.validate();
    solver.validate();
    if (multiplicity < 1) throw ConfigError("run: multiplicity M must be >= 1");
    if (!(delta_offset >= 0.0)) throw ConfigError("run: delta_offset must be >= 0");
}

Trajectory run_scenario(const Scenario& scenario) {
    scenario.validate();
    const std::vector<BathMode> modes = scenario.bath.resolve();
    const VariationalState initial = initialize(scenario.multiplicity,
                                                static_cast<Index>(modes.size()), scenario.seed,
                                                scenario.delta_offset);
    return run(initial, scenario.run, scenario.qubit, modes, scenario.solver);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    // splitmix64 over the combined value
    std::uint64_t z = base + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

void apply_axis(Scenario& scenario, const std::string& name, double value) {
    auto explicit_only = [&]() -> ExplicitBath& {
        if (!scenario.bath.is_explicit())
            throw ConfigError("sweep: axis '" + name + "' requires an explicit bath");
        return std::get<ExplicitBath>(scenario.bath.spec);
    };
    auto continuum_only = [&]() -> ContinuumBath& {
        if (scenario.bath.is_explicit())
            throw ConfigError("sweep: axis '" + name + "' requires a continuum bath");
        return std::get<ContinuumBath>(scenario.bath.spec);
    };
    auto positive_count = [&](double v) {
        const double r = std::round(v);
        if (!(r >= 1.0) || std::abs(v - r) > 1e-9)
            throw ConfigError("sweep: axis '" + name + "' needs a positive integer value");
        return static_cast<std::size_t>(r);
    };

    if (name == "delta") {
        scenario.qubit.delta = value;
    } else if (name == "gamma") {
        for (auto& m : explicit_only().modes) m.gamma = value;
    } else if (name == "omega") {
        for (auto& m : explicit_only().modes) m.omega = value;
    } else if (name == "theta") {
        if (scenario.bath.is_explicit())
            for (auto& m : std::get<ExplicitBath>(scenario.bath.spec).modes) m.theta = value;
        else
            std::get<ContinuumBath>(scenario.bath.spec).theta = value;
    } else if (name == "alpha") {
        continuum_only().density.alpha = value;
    } else if (name == "s") {
        continuum_only().density.s = value;
    } else if (name == "omega_max") {
        continuum_only().omega_max = value;
    } else if (name == "N") {
        continuum_only().n_modes = positive_count(value);
    } else if (name == "M") {
        scenario.multiplicity = static_cast<Index>(positive_count(value));
    } else if (name == "dt") {
        scenario.run.dt = value;
    } else {
        throw ConfigError("sweep: unknown axis '" + name + "'");
    }
}

std::size_t SweepSpec::run_count() const {
    std::size_t n = 1;
    for (const auto& axis : axes) n *= axis.values.size();
    return n;
}

void SweepSpec::validate() const {
    base.validate();
    for (const auto& axis : axes) {
        if (axis.values.empty()) throw ConfigError("sweep: axis '" + axis.name + "' has no values");
        Scenario probe = base;
        apply_axis(probe, axis.name, axis.values.front()); // checks name/bath compatibility
    }
    if (run_count() > cap)
        throw ConfigError("sweep: " + std::to_string(run_count()) + " runs exceed the cap of " +
                          std::to_string(cap));
}

namespace {

template <class Job>
void parallel_for(std::size_t count, unsigned threads, Job&& job) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t k = 0; k < count; ++k) job(k);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= count) return;
            job(k);
        }
    };
    std::vector<std::thread> pool;
    const unsigned n = std::min<unsigned>(threads, static_cast<unsigned>(count));
    pool.reserve(n);
    for (unsigned w = 0; w < n; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

} // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned threads) {
    spec.validate();
    const std::size_t total = spec.run_count();
    std::vector<SweepRow> rows(total);

    parallel_for(total, threads, [&](std::size_t index) {
        SweepRow& row = rows[index];
        Scenario scenario = spec.base;
        // Decode the run index into axis positions, first axis slowest.
        std::size_t rem = index;
        std::size_t block = total;
        for (const auto& axis : spec.axes) {
            block /= axis.values.size();
            const std::size_t pos = rem / block;
            rem %= block;
            const double value = axis.values[pos];
            row.axis_values.push_back(value);
            apply_axis(scenario, axis.name, value);
        }
        scenario.seed = derive_seed(spec.base.seed, index);

        const auto begin = std::chrono::steady_clock::now();
        try {
            const Trajectory traj = run_scenario(scenario);
            const SteadyState steady = steady_state_probability(traj, scenario.run);
            row.p_final = steady.value;
            row.flat = steady.flat;
            row.norm_drift = traj.max_norm_drift;
        } catch (const std::exception& err) {
            row.status = std::string("error: ") + err.what();
            row.p_final = std::nan("");
            row.norm_drift = std::nan("");
        }
        row.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count();
    });
    return rows;
}

ConvergenceScan convergence_scan(const std::string& kind, const std::vector<double>& values,
                                 const Scenario& base, unsigned threads) {
    if (values.size() < 2) throw ConfigError("converge: need at least 2 values");
    if (kind != "M" && kind != "N" && kind != "omega_max" && kind != "dt")
        throw ConfigError("converge: kind must be one of M, N, omega_max, dt");
    base.validate();

    ConvergenceScan scan;
    scan.kind = kind;
    scan.values = values;
    scan.trajectories.resize(values.size());

    std::vector<std::string> failures(values.size());
    parallel_for(values.size(), threads, [&](std::size_t k) {
        Scenario scenario = base;
        try {
            apply_axis(scenario, kind, values[k]);
            scan.trajectories[k] = run_scenario(scenario);
        } catch (const std::exception& err) {
            failures[k] = err.what();
        }
    });
    for (std::size_t k = 0; k < values.size(); ++k)
        if (!failures[k].empty())
            throw NumericError("converge: run at " + kind + " = " + std::to_string(values[k]) +
                               " failed: " + failures[k]);

    for (std::size_t k = 0; k + 1 < values.size(); ++k)
        scan.sup_diffs.push_back(sup_diff(scan.trajectories[k], scan.trajectories[k + 1]));
    scan.converged = scan.sup_diffs.back() <= scan.threshold;
    return scan;
}

} // namespace lzbath
