#include "lzbath/integrator.hpp"

#include <cmath>
#include <string>

namespace lzbath {

void RunConfig::validate() const {
    if (!(t_start < t_end)) throw ConfigError("run: t_start must be < t_end");
    if (!(dt > 0.0)) throw ConfigError("run: dt must be > 0");
    if (record_stride < 1) throw ConfigError("run: record_stride must be >= 1");
    if (!(steady_window_fraction > 0.0 && steady_window_fraction < 1.0))
        throw ConfigError("run: steady_window_fraction must lie in (0, 1)");
    if (!(norm_drift_abort > 0.0) || !(norm_drift_warn > 0.0))
        throw ConfigError("run: norm drift thresholds must be > 0");
    if (!(flatness_tol >= 0.0)) throw ConfigError("run: flatness_tol must be >= 0");
    if (snapshot_stride < 0) throw ConfigError("run: snapshot_stride must be >= 0");
}

namespace {

VariationalState advanced(const VariationalState& s, double c, const StateDerivative& d) {
    VariationalState out;
    out.A = s.A + c * d.Adot;
    out.B = s.B + c * d.Bdot;
    out.f = s.f + c * d.fdot;
    out.t = s.t;
    return out;
}

} // namespace

VariationalState rk4_step(const VariationalState& state, double t, double dt,
                          const QubitParams& qubit, const std::vector<BathMode>& modes,
                          const SolverPolicy& policy, SolveInfo* info) {
    SolveInfo stage;
    SolveInfo worst;
    auto track = [&]() {
        worst.condition = std::max(worst.condition, stage.condition);
        worst.residual = std::max(worst.residual, stage.residual);
        worst.used_fallback = worst.used_fallback || stage.used_fallback;
    };

    const StateDerivative k1 = solve_derivatives(state, t, qubit, modes, policy, &stage);
    track();
    const StateDerivative k2 =
        solve_derivatives(advanced(state, 0.5 * dt, k1), t + 0.5 * dt, qubit, modes, policy, &stage);
    track();
    const StateDerivative k3 =
        solve_derivatives(advanced(state, 0.5 * dt, k2), t + 0.5 * dt, qubit, modes, policy, &stage);
    track();
    const StateDerivative k4 =
        solve_derivatives(advanced(state, dt, k3), t + dt, qubit, modes, policy, &stage);
    track();

    VariationalState out;
    out.A = state.A + (dt / 6.0) * (k1.Adot + 2.0 * k2.Adot + 2.0 * k3.Adot + k4.Adot);
    out.B = state.B + (dt / 6.0) * (k1.Bdot + 2.0 * k2.Bdot + 2.0 * k3.Bdot + k4.Bdot);
    out.f = state.f + (dt / 6.0) * (k1.fdot + 2.0 * k2.fdot + 2.0 * k3.fdot + k4.fdot);
    out.t = t + dt;

    if (!out.is_finite())
        throw NumericError("rk4_step: non-finite state after step at t = " + std::to_string(t), t);
    if (info) *info = worst;
    return out;
}

Trajectory run(const VariationalState& initial, const RunConfig& config, const QubitParams& qubit,
               const std::vector<BathMode>& modes, const SolverPolicy& policy) {
    config.validate();
    qubit.validate();
    if (static_cast<Index>(modes.size()) != initial.mode_count())
        throw ConfigError("run: mode list does not match state");

    Trajectory traj;
    VariationalState state = initial;
    state.t = config.t_start;

    const double span = config.t_end - config.t_start;
    const long n_steps = static_cast<long>(std::llround(span / config.dt));
    const bool exact_grid = std::abs(n_steps * config.dt - span) <= 1e-9 * std::max(1.0, span);
    const long n_full = exact_grid ? n_steps : static_cast<long>(std::floor(span / config.dt));

    auto record = [&](const VariationalState& s, double t) {
        const double n = norm(s);
        const double drift = std::abs(n - 1.0);
        traj.max_norm_drift = std::max(traj.max_norm_drift, drift);
        if (drift > config.norm_drift_abort)
            throw NumericError("run: norm drift " + std::to_string(drift) + " at t = " +
                                   std::to_string(t) + " exceeds abort threshold",
                               t);
        traj.times.push_back(t);
        const double p = transition_probability(s);
        traj.p_down.push_back(p);
        traj.p_up.push_back(1.0 - p);
        traj.norm.push_back(n);
        traj.sigma_z.push_back(sigma_z_expectation(s));
        traj.energy.push_back(hamiltonian_expectation(s, t, qubit, modes));
        traj.boson.push_back(boson_numbers(s));
    };

    record(state, config.t_start);
    if (config.snapshot_stride > 0) traj.snapshots.push_back(state);

    SolveInfo info;
    for (long step = 0; step < n_full; ++step) {
        const double t = config.t_start + static_cast<double>(step) * config.dt;
        state = rk4_step(state, t, config.dt, qubit, modes, policy, &info);
        traj.max_condition = std::max(traj.max_condition, info.condition);
        if (info.used_fallback) ++traj.fallback_count;
        const long done = step + 1;
        if (done % config.record_stride == 0 && (done < n_full || !exact_grid))
            record(state, config.t_start + static_cast<double>(done) * config.dt);
        if (config.snapshot_stride > 0 && done % config.snapshot_stride == 0)
            traj.snapshots.push_back(state);
    }

    // Final (possibly short) step so the last record lands exactly on t_end.
    const double t_last = config.t_start + static_cast<double>(n_full) * config.dt;
    if (!exact_grid && config.t_end - t_last > 1e-12 * std::max(1.0, span)) {
        state = rk4_step(state, t_last, config.t_end - t_last, qubit, modes, policy, &info);
        traj.max_condition = std::max(traj.max_condition, info.condition);
        if (info.used_fallback) ++traj.fallback_count;
    }
    record(state, config.t_end);
    if (config.snapshot_stride > 0) traj.snapshots.push_back(state);

    return traj;
}

SteadyState steady_state_probability(const Trajectory& traj, const RunConfig& config) {
    config.validate();
    if (traj.size() == 0) throw ConfigError("steady_state_probability: empty trajectory");
    const std::size_t n = traj.size();
    const std::size_t window = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(config.steady_window_fraction * static_cast<double>(n))));
    const std::size_t begin = n - std::min(window, n);

    double mean = 0.0;
    for (std::size_t k = begin; k < n; ++k) mean += traj.p_down[k];
    mean /= static_cast<double>(n - begin);

    double var = 0.0;
    for (std::size_t k = begin; k < n; ++k) {
        const double d = traj.p_down[k] - mean;
        var += d * d;
    }
    var /= static_cast<double>(n - begin);

    return SteadyState{mean, std::sqrt(var) <= config.flatness_tol};
}

double sup_diff(const Trajectory& a, const Trajectory& b) {
    if (a.size() == 0 || b.size() == 0) throw ConfigError("sup_diff: empty trajectory");
    const bool same_grid =
        a.size() == b.size() && [&] {
            for (std::size_t k = 0; k < a.size(); ++k)
                if (std::abs(a.times[k] - b.times[k]) > 1e-9) return false;
            return true;
        }();
    if (same_grid) {
        double worst = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k)
            worst = std::max(worst, std::abs(a.p_down[k] - b.p_down[k]));
        return worst;
    }

    // Interpolate b onto a's grid over the overlapping range.
    double worst = 0.0;
    std::size_t j = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double t = a.times[k];
        if (t < b.times.front() - 1e-9 || t > b.times.back() + 1e-9) continue;
        while (j + 1 < b.size() && b.times[j + 1] < t) ++j;
        double value;
        if (j + 1 >= b.size()) {
            value = b.p_down.back();
        } else {
            const double t0 = b.times[j], t1 = b.times[j + 1];
            const double w = t1 > t0 ? (t - t0) / (t1 - t0) : 0.0;
            value = (1.0 - w) * b.p_down[j] + w * b.p_down[j + 1];
        }
        worst = std::max(worst, std::abs(a.p_down[k] - value));
    }
    return worst;
}

} // namespace lzbath
