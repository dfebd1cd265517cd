// integrator.hpp — Fixed-step fourth-order Runge-Kutta propagation of the
// variational state with observable recording.

#pragma once

#include <vector>

#include "lzbath/bath.hpp"
#include "lzbath/eom.hpp"
#include "lzbath/state.hpp"
#include "lzbath/trajectory.hpp"
#include "lzbath/types.hpp"

namespace lzbath {

struct RunConfig {
    double t_start{-20.0};
    double t_end{40.0};
    double dt{1e-3};
    long record_stride{100};            // steps between observable records
    double norm_drift_abort{1e-4};
    double norm_drift_warn{1e-6};
    double steady_window_fraction{0.1}; // trajectory tail used for the steady-state estimate
    double flatness_tol{0.005};         // max std of P_down inside that window
    long snapshot_stride{0};            // 0 disables raw-state snapshots

    void validate() const;
};

// One classical RK4 step; every stage re-solves the variational equations at
// the stage time, so the explicit vt drive is evaluated where it belongs.
VariationalState rk4_step(const VariationalState& state, double t, double dt,
                          const QubitParams& qubit, const std::vector<BathMode>& modes,
                          const SolverPolicy& policy, SolveInfo* info = nullptr);

// Propagates from t_start to t_end, recording every record_stride steps and
// always at t_end. Aborts with NumericError when |⟨ψ|ψ⟩ − 1| exceeds
// norm_drift_abort.
Trajectory run(const VariationalState& initial, const RunConfig& config, const QubitParams& qubit,
               const std::vector<BathMode>& modes, const SolverPolicy& policy);

struct SteadyState {
    double value{0.0};
    bool flat{false};
};

// Mean of P_down over the final steady_window_fraction of the records.
SteadyState steady_state_probability(const Trajectory& traj, const RunConfig& config);

} // namespace lzbath
