// sweep.hpp — Batch driver: parameter sweeps and convergence scans over
// independent trajectories.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lzbath/bath.hpp"
#include "lzbath/integrator.hpp"
#include "lzbath/trajectory.hpp"
#include "lzbath/types.hpp"

namespace lzbath {

// Everything needed to launch one trajectory.
struct Scenario {
    QubitParams qubit;
    BathSpec bath;
    RunConfig run;
    SolverPolicy solver;
    Index multiplicity{3};
    double delta_offset{1e-3};
    std::uint64_t seed{1};

    void validate() const;
};

// Resolves the bath, builds the initial state and propagates.
Trajectory run_scenario(const Scenario& scenario);

// Sweepable parameters: delta, gamma, omega, theta (explicit baths),
// alpha, s, omega_max, theta, N (continuum baths), M, dt (run).
struct SweepAxis {
    std::string name;
    std::vector<double> values;
};

struct SweepSpec {
    Scenario base;
    std::vector<SweepAxis> axes;
    std::size_t cap{512};

    std::size_t run_count() const;
    void validate() const;
};

struct SweepRow {
    std::vector<double> axis_values;
    double p_final{0.0};
    bool flat{false};
    double norm_drift{0.0};
    std::string status{"ok"};
    double wall_seconds{0.0};
};

// Deterministic per-run seed derived from the base seed and the run index.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

// Applies one axis value to a scenario; throws ConfigError for unknown names
// or axes incompatible with the bath type.
void apply_axis(Scenario& scenario, const std::string& name, double value);

// Executes the cartesian product of the axes (threads > 1 runs jobs
// concurrently). Individual run failures are recorded per row and never
// abort the sweep. Rows come out in product order, first axis slowest.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned threads = 1);

struct ConvergenceScan {
    std::string kind;
    std::vector<double> values;
    std::vector<Trajectory> trajectories;
    std::vector<double> sup_diffs; // between consecutive values
    double threshold{0.01};
    bool converged{false}; // last difference <= threshold
};

// Runs the base scenario once per value of kind ∈ {M, N, omega_max, dt} and
// reports sup-norm differences of P_down between consecutive values.
ConvergenceScan convergence_scan(const std::string& kind, const std::vector<double>& values,
                                 const Scenario& base, unsigned threads = 1);

} // namespace lzbath
