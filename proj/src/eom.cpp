#include "lzbath/eom.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace lzbath {

void SolverPolicy::validate() const {
    if (!(tikhonov_eps > 0.0)) throw ConfigError("solver: tikhonov_eps must be > 0");
    if (!(svd_cutoff > 0.0)) throw ConfigError("solver: svd_cutoff must be > 0");
    if (!(condition_warn > 0.0)) throw ConfigError("solver: condition_warn must be > 0");
}

RealVector pack_derivative(const StateDerivative& d) {
    const DerivativePacking pk{d.Adot.size(), d.fdot.cols()};
    RealVector x(pk.real_dim());
    for (Index i = 0; i < pk.multiplicity; ++i) {
        x(2 * pk.a_index(i)) = d.Adot(i).real();
        x(2 * pk.a_index(i) + 1) = d.Adot(i).imag();
        x(2 * pk.b_index(i)) = d.Bdot(i).real();
        x(2 * pk.b_index(i) + 1) = d.Bdot(i).imag();
        for (Index q = 0; q < pk.mode_count; ++q) {
            x(2 * pk.f_index(i, q)) = d.fdot(i, q).real();
            x(2 * pk.f_index(i, q) + 1) = d.fdot(i, q).imag();
        }
    }
    return x;
}

StateDerivative unpack_derivative(const RealVector& x, Index multiplicity, Index mode_count) {
    const DerivativePacking pk{multiplicity, mode_count};
    if (x.size() != pk.real_dim()) throw ConfigError("unpack_derivative: size mismatch");
    StateDerivative d;
    d.Adot.resize(multiplicity);
    d.Bdot.resize(multiplicity);
    d.fdot.resize(multiplicity, mode_count);
    for (Index i = 0; i < multiplicity; ++i) {
        d.Adot(i) = {x(2 * pk.a_index(i)), x(2 * pk.a_index(i) + 1)};
        d.Bdot(i) = {x(2 * pk.b_index(i)), x(2 * pk.b_index(i) + 1)};
        for (Index q = 0; q < mode_count; ++q)
            d.fdot(i, q) = {x(2 * pk.f_index(i, q)), x(2 * pk.f_index(i, q) + 1)};
    }
    return d;
}

namespace {

struct ModeArrays {
    RealVector omega, gcos, gsin;

    ModeArrays(const std::vector<BathMode>& modes, Index n) : omega(n), gcos(n), gsin(n) {
        if (static_cast<Index>(modes.size()) != n)
            throw ConfigError("eom: mode list does not match state dimensions");
        for (Index q = 0; q < n; ++q) {
            const auto& m = modes[static_cast<std::size_t>(q)];
            omega(q) = m.omega;
            gcos(q) = m.gamma * std::cos(m.theta);
            gsin(q) = m.gamma * std::sin(m.theta);
        }
    }
};

// Pairwise kernels shared by the rows: the overlap matrix and the
// Hamiltonian bilinears evaluated between configurations.
struct Kernels {
    ComplexMatrix S;        // ⟨f_k|f_i⟩
    ComplexMatrix RS;       // (A*_k A_i + B*_k B_i) S_ki
    ComplexMatrix ZS;       // (A*_k A_i − B*_k B_i) S_ki
    ComplexMatrix XS;       // (A*_k B_i + B*_k A_i) S_ki
    ComplexMatrix KS;       // local energy kernel, see below
    ComplexMatrix hAA, hBB, hAB; // Hamiltonian kernels (hBA = hAB)
    ComplexMatrix bathF;    // Σ_p ω_p f*_kp f_ip
    ComplexVector uc, us;   // Σ_q γ_q cosθ_q f_iq and the sinθ analogue

    Kernels(const VariationalState& st, double t, const QubitParams& qubit, const ModeArrays& ma) {
        const Index m = st.multiplicity();
        const ComplexMatrix cross = st.f.conjugate() * st.f.transpose();
        const RealVector sq = st.f.rowwise().squaredNorm();
        S.resize(m, m);
        for (Index k = 0; k < m; ++k)
            for (Index i = 0; i < m; ++i) S(k, i) = std::exp(cross(k, i) - 0.5 * (sq(k) + sq(i)));

        bathF = st.f.conjugate() * ma.omega.asDiagonal() * st.f.transpose();
        uc = st.f * ma.gcos.cast<Complex>();
        us = st.f * ma.gsin.cast<Complex>();

        hAA.resize(m, m);
        hBB.resize(m, m);
        hAB.resize(m, m);
        RS.resize(m, m);
        ZS.resize(m, m);
        XS.resize(m, m);
        KS.resize(m, m);
        const double drive = 0.5 * qubit.v * t;
        const double tun = 0.5 * qubit.delta;
        for (Index k = 0; k < m; ++k) {
            for (Index i = 0; i < m; ++i) {
                const Complex gdiag = uc(i) + std::conj(uc(k));
                const Complex goff = us(i) + std::conj(us(k));
                hAA(k, i) = drive + bathF(k, i) + 0.5 * gdiag;
                hBB(k, i) = -drive + bathF(k, i) - 0.5 * gdiag;
                hAB(k, i) = tun + 0.5 * goff;
                const Complex aa = std::conj(st.A(k)) * st.A(i);
                const Complex bb = std::conj(st.B(k)) * st.B(i);
                const Complex ab = std::conj(st.A(k)) * st.B(i);
                const Complex ba = std::conj(st.B(k)) * st.A(i);
                RS(k, i) = (aa + bb) * S(k, i);
                ZS(k, i) = (aa - bb) * S(k, i);
                XS(k, i) = (ab + ba) * S(k, i);
                KS(k, i) = (aa * hAA(k, i) + bb * hBB(k, i) + (ab + ba) * hAB(k, i)) * S(k, i);
            }
        }
    }
};

} // namespace

EomSystem assemble(const VariationalState& state, double t, const QubitParams& qubit,
                   const std::vector<BathMode>& modes) {
    const Index m = state.multiplicity();
    const Index n = state.mode_count();
    if (state.B.size() != m || state.f.rows() != m)
        throw ConfigError("assemble: inconsistent state dimensions");
    const ModeArrays ma(modes, n);
    const Kernels kr(state, t, qubit, ma);
    const DerivativePacking pk{m, n};
    const Index dim = pk.real_dim();

    EomSystem sys;
    sys.lhs = RealMatrix::Zero(dim, dim);
    sys.rhs = RealVector::Zero(dim);

    // Writes the 2x2 real block of complex row r, complex unknown d with
    // complex-linear coefficient c and anti-linear (conjugate) coefficient e.
    auto put = [&](Index r, Index d, Complex c, Complex e) {
        sys.lhs(2 * r, 2 * d) += c.real() + e.real();
        sys.lhs(2 * r, 2 * d + 1) += -c.imag() + e.imag();
        sys.lhs(2 * r + 1, 2 * d) += c.imag() + e.imag();
        sys.lhs(2 * r + 1, 2 * d + 1) += c.real() - e.real();
    };
    auto put_rhs = [&](Index r, Complex b) {
        sys.rhs(2 * r) = b.real();
        sys.rhs(2 * r + 1) = b.imag();
    };

    for (Index k = 0; k < m; ++k) {
        Complex rhsA = 0.0, rhsB = 0.0;
        for (Index i = 0; i < m; ++i) {
            const Complex iS = imag_unit * kr.S(k, i);
            put(pk.a_index(k), pk.a_index(i), iS, 0.0);
            put(pk.b_index(k), pk.b_index(i), iS, 0.0);

            // Derivative-of-overlap terms: coefficient of ḟ_ip is
            // (f*_kp − f*_ip/2), of ḟ*_ip is −f_ip/2.
            for (Index p = 0; p < n; ++p) {
                const Complex v1 = std::conj(state.f(k, p)) - 0.5 * std::conj(state.f(i, p));
                const Complex v2 = -0.5 * state.f(i, p);
                put(pk.a_index(k), pk.f_index(i, p), iS * state.A(i) * v1, iS * state.A(i) * v2);
                put(pk.b_index(k), pk.f_index(i, p), iS * state.B(i) * v1, iS * state.B(i) * v2);
            }

            rhsA += kr.hAA(k, i) * kr.S(k, i) * state.A(i) + kr.hAB(k, i) * kr.S(k, i) * state.B(i);
            rhsB += kr.hBB(k, i) * kr.S(k, i) * state.B(i) + kr.hAB(k, i) * kr.S(k, i) * state.A(i);
        }
        put_rhs(pk.a_index(k), rhsA);
        put_rhs(pk.b_index(k), rhsB);
    }

    for (Index k = 0; k < m; ++k) {
        for (Index i = 0; i < m; ++i) {
            const Complex iS = imag_unit * kr.S(k, i);
            const Complex iRS = imag_unit * kr.RS(k, i);
            for (Index q = 0; q < n; ++q) {
                const Index row = pk.f_index(k, q);
                const Complex fiq = state.f(i, q);
                put(row, pk.a_index(i), iS * std::conj(state.A(k)) * fiq, 0.0);
                put(row, pk.b_index(i), iS * std::conj(state.B(k)) * fiq, 0.0);
                for (Index p = 0; p < n; ++p) {
                    const Complex v1 = std::conj(state.f(k, p)) - 0.5 * std::conj(state.f(i, p));
                    Complex c = iRS * fiq * v1;
                    if (p == q) c += iRS;
                    put(row, pk.f_index(i, p), c, -0.5 * iRS * fiq * state.f(i, p));
                }
            }
        }
    }

    // Displacement rows, right-hand side:
    //   (KS f)_kq + ω_q (RS f)_kq + (γ_q/2)(cosθ_q Σ_i ZS_ki + sinθ_q Σ_i XS_ki)
    const ComplexMatrix ksf = kr.KS * state.f;
    const ComplexMatrix rsf = kr.RS * state.f;
    const ComplexVector zrow = kr.ZS.rowwise().sum();
    const ComplexVector xrow = kr.XS.rowwise().sum();
    for (Index k = 0; k < m; ++k)
        for (Index q = 0; q < n; ++q)
            put_rhs(pk.f_index(k, q), ksf(k, q) + ma.omega(q) * rsf(k, q) +
                                          0.5 * (ma.gcos(q) * zrow(k) + ma.gsin(q) * xrow(k)));

    return sys;
}

RealVector solve_system(const EomSystem& system, const SolverPolicy& policy, double t,
                        SolveInfo* info) {
    policy.validate();
    const Index dim = system.lhs.rows();
    const RealMatrix& a = system.lhs;
    const RealVector& b = system.rhs;

    // Tikhonov least squares on the normal equations. The parametrization is
    // redundant, so the system carries near-null directions whose velocities
    // are physically irrelevant but numerically violent; the floor
    // λ = svd_cutoff·σ_max caps them while biasing well-resolved directions
    // by (λ/σ)² only. Squaring also widens the spectral gap, which is what
    // makes a plain diagonal shift sufficient here.
    RealMatrix normal = RealMatrix::Zero(dim, dim);
    normal.template selfadjointView<Eigen::Lower>().rankUpdate(a.transpose());
    const double scale = std::max(normal.diagonal().maxCoeff(), 1e-300);
    const double shift = (policy.svd_cutoff * policy.svd_cutoff + policy.tikhonov_eps) * scale;
    normal.diagonal().array() += shift;

    const RealVector bn = a.transpose() * b;

    Eigen::LDLT<RealMatrix> ldlt(normal.template selfadjointView<Eigen::Lower>());

    // Applies (N + shift)⁻¹ with iterative refinement; the shifted matrix has
    // condition up to 1/svd_cutoff², refinement restores working precision.
    double residual = 0.0;
    auto solve_shifted = [&](const RealVector& w) {
        const double w_norm = std::max(w.norm(), 1e-300);
        RealVector z = ldlt.solve(w);
        double rel = std::numeric_limits<double>::infinity();
        if (!z.allFinite()) {
            residual = std::max(residual, rel);
            return z;
        }
        for (int iter = 0; iter < 8; ++iter) {
            const RealVector r = w - a.transpose() * (a * z) - shift * z;
            rel = r.norm() / w_norm;
            if (rel <= 1e-13) break;
            const RealVector dz = ldlt.solve(r);
            if (!dz.allFinite()) break;
            z += dz;
        }
        const RealVector r = w - a.transpose() * (a * z) - shift * z;
        residual = std::max(residual, z.allFinite()
                                          ? r.norm() / w_norm
                                          : std::numeric_limits<double>::infinity());
        return z;
    };

    // Second-order spectral filter x = (N+λ²)⁻¹ N (N+λ²)⁻¹ bn: responses go
    // as σ³/(σ²+λ²)² — exact on resolved directions, but suppressing the
    // floored ones by (σ/λ)⁴ instead of (σ/λ)², which keeps the redundant
    // configurations quiet enough for a fixed-step integrator.
    RealVector x = solve_shifted(bn);
    if (x.allFinite()) x = solve_shifted(a.transpose() * (a * x));

    double condition = std::numeric_limits<double>::infinity();
    const RealVector d = ldlt.vectorD();
    const double dmax = d.maxCoeff();
    const double dmin = d.minCoeff();
    if (dmin > 0.0) condition = dmax / dmin;

    bool fallback = false;
    if (!(x.allFinite() && residual <= 1e-8)) {
        // Minimum-norm least squares with hard singular-value truncation.
        fallback = true;
        Eigen::BDCSVD<RealMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
        svd.setThreshold(policy.svd_cutoff);
        x = svd.solve(b);
        // Judge the solve on the retained subspace; the truncated directions
        // carry an inevitable remainder.
        const Index rank = svd.rank();
        const RealVector full = b - a * x;
        const double retained =
            (svd.matrixU().leftCols(rank).transpose() * full).norm() / std::max(b.norm(), 1e-300);
        residual = x.allFinite() ? retained : std::numeric_limits<double>::infinity();
        if (!(residual <= 1e-6))
            throw NumericError("solve_system: residual " + std::to_string(residual) +
                                   " after SVD fallback (condition " + std::to_string(condition) +
                                   ", dim " + std::to_string(dim) + ") at t = " + std::to_string(t),
                               t);
    }

    if (info) {
        info->condition = condition;
        info->residual = residual;
        info->used_fallback = fallback;
    }
    return x;
}

StateDerivative solve_derivatives(const VariationalState& state, double t,
                                  const QubitParams& qubit, const std::vector<BathMode>& modes,
                                  const SolverPolicy& policy, SolveInfo* info) {
    const EomSystem sys = assemble(state, t, qubit, modes);
    const RealVector x = solve_system(sys, policy, t, info);
    StateDerivative d = unpack_derivative(x, state.multiplicity(), state.mode_count());

    // The manifold contains scalar multiples of the state, so adding c·(A, B)
    // to the amplitude derivatives moves only norm and global phase. Use that
    // gauge freedom to cancel the residual norm rate the regularization
    // introduces; the projective trajectory is untouched.
    const double total = norm(state);
    const double correction = -0.5 * norm_rate(state, d) / total;
    d.Adot += correction * state.A;
    d.Bdot += correction * state.B;
    return d;
}

double norm_rate(const VariationalState& state, const StateDerivative& d) {
    const ComplexMatrix S = overlap_matrix(state);
    Complex acc = 0.0;
    const Index m = state.multiplicity();
    for (Index k = 0; k < m; ++k) {
        for (Index i = 0; i < m; ++i) {
            Complex t_ki = 0.0;
            for (Index p = 0; p < state.mode_count(); ++p) {
                t_ki += (std::conj(state.f(k, p)) - 0.5 * std::conj(state.f(i, p))) * d.fdot(i, p);
                t_ki -= 0.5 * state.f(i, p) * std::conj(d.fdot(i, p));
            }
            const Complex amp = std::conj(state.A(k)) * d.Adot(i) + std::conj(state.B(k)) * d.Bdot(i);
            const Complex pop = std::conj(state.A(k)) * state.A(i) + std::conj(state.B(k)) * state.B(i);
            acc += (amp + pop * t_ki) * S(k, i);
        }
    }
    return 2.0 * acc.real();
}

} // namespace lzbath
