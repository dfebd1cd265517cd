#include "lzbath/fock.hpp"

#include <cmath>
#include <string>

namespace lzbath {

FockBasis::FockBasis(Index mode_count, Index n_max) : n_(mode_count), n_max_(n_max) {
    if (mode_count < 0 || mode_count > 3) throw ConfigError("fock: mode count must be 0..3");
    if (n_max < 0) throw ConfigError("fock: n_max must be >= 0");
    boson_dim_ = 1;
    stride_.assign(static_cast<std::size_t>(mode_count), 0);
    for (Index q = mode_count - 1; q >= 0; --q) {
        stride_[static_cast<std::size_t>(q)] = boson_dim_;
        boson_dim_ *= n_max + 1;
        if (2 * boson_dim_ > (Index{1} << 20))
            throw ConfigError("fock: basis dimension exceeds the 2^20 cap");
    }
}

Index FockBasis::index(Index spin, const std::vector<Index>& occupation) const {
    Index idx = spin * boson_dim_;
    for (Index q = 0; q < n_; ++q) {
        const Index nq = occupation[static_cast<std::size_t>(q)];
        if (nq < 0 || nq > n_max_) throw ConfigError("fock: occupation out of range");
        idx += nq * stride_[static_cast<std::size_t>(q)];
    }
    return idx;
}

Index FockBasis::occupation(Index basis_index, Index mode) const {
    return (basis_index / stride_[static_cast<std::size_t>(mode)]) % (n_max_ + 1);
}

Index FockBasis::stride(Index mode) const { return stride_[static_cast<std::size_t>(mode)]; }

FockHamiltonian::FockHamiltonian(const FockBasis& basis, const QubitParams& qubit,
                                 const std::vector<BathMode>& modes)
    : basis_(basis), qubit_(qubit), modes_(modes) {
    if (static_cast<Index>(modes.size()) != basis.mode_count())
        throw ConfigError("fock: mode list does not match basis");
    qubit.validate();
    diag0_ = RealVector::Zero(basis_.boson_dim());
    for (Index b = 0; b < basis_.boson_dim(); ++b)
        for (Index q = 0; q < basis_.mode_count(); ++q)
            diag0_(b) += modes_[static_cast<std::size_t>(q)].omega *
                         static_cast<double>(basis_.occupation(b, q));
}

void FockHamiltonian::apply(double t, const ComplexVector& psi, ComplexVector& out) const {
    const Index bd = basis_.boson_dim();
    out.setZero(basis_.dim());

    const double drive = 0.5 * qubit_.v * t;
    const double tun = 0.5 * qubit_.delta;

    for (Index spin = 0; spin < 2; ++spin) {
        const double sz = spin == 0 ? 1.0 : -1.0;
        const Index base = spin * bd;
        const Index flip = (1 - spin) * bd;
        for (Index b = 0; b < bd; ++b) {
            const Complex amp = psi(base + b);
            if (amp == Complex{0.0, 0.0}) continue;
            out(base + b) += (drive * sz + diag0_(b)) * amp;
            if (tun != 0.0) out(flip + b) += tun * amp;
            for (Index q = 0; q < basis_.mode_count(); ++q) {
                const auto& m = modes_[static_cast<std::size_t>(q)];
                if (m.gamma == 0.0) continue;
                const double cd = 0.5 * m.gamma * std::cos(m.theta) * sz;
                const double co = 0.5 * m.gamma * std::sin(m.theta);
                const Index nq = basis_.occupation(b, q);
                const Index st = basis_.stride(q);
                if (nq < basis_.n_max()) { // b†_q
                    const double elem = std::sqrt(static_cast<double>(nq + 1));
                    out(base + b + st) += cd * elem * amp;
                    out(flip + b + st) += co * elem * amp;
                }
                if (nq > 0) { // b_q
                    const double elem = std::sqrt(static_cast<double>(nq));
                    out(base + b - st) += cd * elem * amp;
                    out(flip + b - st) += co * elem * amp;
                }
            }
        }
    }
}

ComplexMatrix FockHamiltonian::dense(double t) const {
    if (basis_.dim() > 4096) throw ConfigError("fock: dense matrix requested above dim 4096");
    ComplexMatrix h(basis_.dim(), basis_.dim());
    ComplexVector unit = ComplexVector::Zero(basis_.dim());
    ComplexVector column(basis_.dim());
    for (Index j = 0; j < basis_.dim(); ++j) {
        unit(j) = 1.0;
        apply(t, unit, column);
        h.col(j) = column;
        unit(j) = 0.0;
    }
    return h;
}

Index FockConfig::resolved_n_max() const {
    if (n_max > 0) return n_max;
    switch (modes.size()) {
        case 0:
        case 1: return 40;
        case 2: return 12;
        default: return 8;
    }
}

void FockConfig::validate() const {
    qubit.validate();
    if (modes.size() > 3) throw ConfigError("fock: at most 3 modes supported");
    run.validate();
    if (verify_margin < 1) throw ConfigError("fock: verify_margin must be >= 1");
    if (!(verify_tol > 0.0)) throw ConfigError("fock: verify_tol must be > 0");
    FockBasis probe(static_cast<Index>(modes.size()),
                    resolved_n_max() + (verify ? verify_margin : 0)); // checks the 2^20 cap
    (void)probe;
}

ComplexVector expand_coherent(const FockBasis& basis, const ComplexVector& A,
                              const ComplexVector& B, const ComplexMatrix& f) {
    if (A.size() != B.size() || f.rows() != A.size() || f.cols() != basis.mode_count())
        throw ConfigError("expand_coherent: inconsistent dimensions");

    ComplexVector psi = ComplexVector::Zero(basis.dim());
    const Index m = A.size();
    const Index nmax = basis.n_max();

    for (Index i = 0; i < m; ++i) {
        // Per-mode amplitude tables c_q(n) = e^{-|z|²/2} z^n/√(n!).
        ComplexMatrix table(basis.mode_count(), nmax + 1);
        for (Index q = 0; q < basis.mode_count(); ++q) {
            const Complex z = f(i, q);
            Complex amp = std::exp(-0.5 * std::norm(z));
            table(q, 0) = amp;
            for (Index n = 1; n <= nmax; ++n) {
                amp *= z / std::sqrt(static_cast<double>(n));
                table(q, n) = amp;
            }
        }
        for (Index b = 0; b < basis.boson_dim(); ++b) {
            Complex amp = 1.0;
            for (Index q = 0; q < basis.mode_count(); ++q) amp *= table(q, basis.occupation(b, q));
            psi(b) += A(i) * amp;
            psi(basis.boson_dim() + b) += B(i) * amp;
        }
    }
    return psi;
}

FockObservables observe(const FockHamiltonian& h, double t, const ComplexVector& psi) {
    const FockBasis& basis = h.basis();
    const Index bd = basis.boson_dim();

    FockObservables obs;
    obs.norm = psi.squaredNorm();
    if (!(obs.norm > 0.0)) throw NumericError("fock observe: vanishing norm", t);

    const double p_up = psi.head(bd).squaredNorm() / obs.norm;
    const double p_down = psi.tail(bd).squaredNorm() / obs.norm;
    obs.p_down = p_down;
    obs.sigma_z = p_up - p_down;

    obs.boson = RealVector::Zero(basis.mode_count());
    for (Index b = 0; b < bd; ++b) {
        const double w = std::norm(psi(b)) + std::norm(psi(bd + b));
        if (w == 0.0) continue;
        for (Index q = 0; q < basis.mode_count(); ++q)
            obs.boson(q) += w * static_cast<double>(basis.occupation(b, q));
    }
    obs.boson /= obs.norm;

    ComplexVector hpsi(basis.dim());
    h.apply(t, psi, hpsi);
    obs.energy = psi.dot(hpsi).real() / obs.norm;
    return obs;
}

namespace {

Trajectory evolve_once(const FockConfig& config, Index n_max) {
    const Index n = static_cast<Index>(config.modes.size());
    const FockBasis basis(n, n_max);
    const FockHamiltonian h(basis, config.qubit, config.modes);
    const RunConfig& rc = config.run;

    ComplexVector psi = ComplexVector::Zero(basis.dim());
    psi(0) = 1.0; // |↑⟩ ⊗ |0…0⟩

    Trajectory traj;
    auto record = [&](double t) {
        const FockObservables obs = observe(h, t, psi);
        traj.max_norm_drift = std::max(traj.max_norm_drift, std::abs(obs.norm - 1.0));
        traj.times.push_back(t);
        traj.p_down.push_back(obs.p_down);
        traj.p_up.push_back(1.0 - obs.p_down);
        traj.norm.push_back(obs.norm);
        traj.sigma_z.push_back(obs.sigma_z);
        traj.energy.push_back(obs.energy);
        traj.boson.push_back(obs.boson);
    };

    const double span = rc.t_end - rc.t_start;
    const long n_steps = static_cast<long>(std::llround(span / rc.dt));
    const bool exact_grid = std::abs(n_steps * rc.dt - span) <= 1e-9 * std::max(1.0, span);
    const long n_full = exact_grid ? n_steps : static_cast<long>(std::floor(span / rc.dt));

    ComplexVector k1(basis.dim()), k2(basis.dim()), k3(basis.dim()), k4(basis.dim()),
        stage(basis.dim());
    auto rk4 = [&](double t, double dt) {
        h.apply(t, psi, k1);
        stage = psi - (0.5 * dt) * (imag_unit * k1);
        h.apply(t + 0.5 * dt, stage, k2);
        stage = psi - (0.5 * dt) * (imag_unit * k2);
        h.apply(t + 0.5 * dt, stage, k3);
        stage = psi - dt * (imag_unit * k3);
        h.apply(t + dt, stage, k4);
        psi -= (dt / 6.0) * (imag_unit * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
    };

    record(rc.t_start);
    for (long step = 0; step < n_full; ++step) {
        const double t = rc.t_start + static_cast<double>(step) * rc.dt;
        rk4(t, rc.dt);
        const long done = step + 1;
        if (done % rc.record_stride == 0 && (done < n_full || !exact_grid))
            record(rc.t_start + static_cast<double>(done) * rc.dt);
    }
    const double t_last = rc.t_start + static_cast<double>(n_full) * rc.dt;
    if (!exact_grid && rc.t_end - t_last > 1e-12 * std::max(1.0, span)) rk4(t_last, rc.t_end - t_last);
    record(rc.t_end);
    return traj;
}

} // namespace

Trajectory fock_evolve(const FockConfig& config) {
    config.validate();
    const Index n_max = config.resolved_n_max();
    Trajectory traj = evolve_once(config, n_max);
    if (config.verify && !config.modes.empty()) {
        const Trajectory check = evolve_once(config, n_max + config.verify_margin);
        double worst = 0.0;
        for (std::size_t k = 0; k < traj.size(); ++k)
            worst = std::max(worst, std::abs(traj.p_down[k] - check.p_down[k]));
        if (worst > config.verify_tol)
            throw NumericError("fock_evolve: truncation check failed (sup difference " +
                                   std::to_string(worst) + "); rerun with n_max >= " +
                                   std::to_string(n_max + config.verify_margin),
                               config.run.t_end);
    }
    return traj;
}

} // namespace lzbath
