// trajectory.hpp — Recorded observable time series of one propagation

#pragma once

#include <vector>

#include "lzbath/state.hpp"
#include "lzbath/types.hpp"

namespace lzbath {

struct Trajectory {
    std::vector<double> times;
    std::vector<double> p_down;
    std::vector<double> p_up;
    std::vector<double> norm;
    std::vector<double> sigma_z;
    std::vector<double> energy;
    std::vector<RealVector> boson; // per record: occupation of each mode

    // Raw-state snapshots, only kept when snapshot_stride > 0.
    std::vector<VariationalState> snapshots;

    // Run diagnostics.
    double max_norm_drift{0.0};
    double max_condition{0.0};
    long fallback_count{0};

    std::size_t size() const { return times.size(); }
};

// Sup-norm of the p_down difference. Identical time grids compare directly;
// otherwise the second trajectory is linearly interpolated onto the first
// over the overlapping time range.
double sup_diff(const Trajectory& a, const Trajectory& b);

} // namespace lzbath
