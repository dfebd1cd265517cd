#include "lzbath/csv.hpp"

#include <cstdio>
#include <fstream>

namespace lzbath {

std::string fmt17(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary); // keep '\n' line endings everywhere
    if (!out) throw IoError("cannot open output file: " + path);
    return out;
}

void close_checked(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

} // namespace

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
    std::ofstream out = open_out(path);
    out << "t,p_down,p_up,norm,sigma_z,energy\n";
    for (std::size_t k = 0; k < traj.size(); ++k)
        out << fmt17(traj.times[k]) << ',' << fmt17(traj.p_down[k]) << ',' << fmt17(traj.p_up[k])
            << ',' << fmt17(traj.norm[k]) << ',' << fmt17(traj.sigma_z[k]) << ','
            << fmt17(traj.energy[k]) << '\n';
    close_checked(out, path);
}

void write_bosons_csv(const std::string& path, const Trajectory& traj,
                      const std::vector<BathMode>& modes) {
    std::ofstream out = open_out(path);
    out << "t,omega_q,n_q\n";
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const RealVector& n = traj.boson[k];
        for (Index q = 0; q < n.size(); ++q)
            out << fmt17(traj.times[k]) << ',' << fmt17(modes[static_cast<std::size_t>(q)].omega)
                << ',' << fmt17(n(q)) << '\n';
    }
    close_checked(out, path);
}

void write_sweep_csv(const std::string& path, const std::vector<std::string>& axis_names,
                     const std::vector<SweepRow>& rows) {
    std::ofstream out = open_out(path);
    for (const auto& name : axis_names) out << name << ',';
    out << "p_final,flat,norm_drift,status\n";
    for (const auto& row : rows) {
        std::string status = row.status;
        for (char& ch : status)
            if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
        for (double v : row.axis_values) out << fmt17(v) << ',';
        out << fmt17(row.p_final) << ',' << (row.flat ? 1 : 0) << ',' << fmt17(row.norm_drift)
            << ',' << status << '\n';
    }
    close_checked(out, path);
}

void write_converge_csv(const std::string& path, const ConvergenceScan& scan) {
    std::ofstream out = open_out(path);
    out << "parameter,value_from,value_to,sup_diff,converged\n";
    for (std::size_t k = 0; k < scan.sup_diffs.size(); ++k)
        out << scan.kind << ',' << fmt17(scan.values[k]) << ',' << fmt17(scan.values[k + 1]) << ','
            << fmt17(scan.sup_diffs[k]) << ',' << (scan.sup_diffs[k] <= scan.threshold ? 1 : 0)
            << '\n';
    close_checked(out, path);
}

} // namespace lzbath
