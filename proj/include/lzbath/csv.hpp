// csv.hpp — Bit-stable CSV writers for trajectories and sweep tables

#pragma once

#include <string>
#include <vector>

#include "lzbath/bath.hpp"
#include "lzbath/sweep.hpp"
#include "lzbath/trajectory.hpp"

namespace lzbath {

// Shortest 17-significant-digit representation; round-trips doubles exactly.
std::string fmt17(double value);

// Header: t,p_down,p_up,norm,sigma_z,energy
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

// Long format, header: t,omega_q,n_q
void write_bosons_csv(const std::string& path, const Trajectory& traj,
                      const std::vector<BathMode>& modes);

// Header: <axis names...>,p_final,flat,norm_drift,status
void write_sweep_csv(const std::string& path, const std::vector<std::string>& axis_names,
                     const std::vector<SweepRow>& rows);

// Header: parameter,value_from,value_to,sup_diff,converged
void write_converge_csv(const std::string& path, const ConvergenceScan& scan);

} // namespace lzbath
