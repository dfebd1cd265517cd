// eom.hpp — Assembly and solution of the implicit variational equations of
// motion for the multi-D2 state.
//
// Projecting the time-dependent variational principle onto each configuration
// bra (for the qubit amplitudes) and each (configuration, mode) pair (for the
// displacements) yields an implicit linear system for the parameter
// derivatives. The left-hand side contains both ḟ_iq and its conjugate
// (through d|f_iq|²/dt), so the system is real-linear rather than
// complex-linear: it is assembled over 2D real unknowns, D = M(N+2).

#pragma once

#include <cstddef>
#include <vector>

#include "lzbath/bath.hpp"
#include "lzbath/state.hpp"
#include "lzbath/types.hpp"

namespace lzbath {

// Canonical ordering of the D = M(N+2) complex unknowns:
//   [Ȧ_1..Ȧ_M, Ḃ_1..Ḃ_M, ḟ_11..ḟ_1N, ..., ḟ_M1..ḟ_MN]
// Each complex entry occupies two adjacent real slots (real, imag).
struct DerivativePacking {
    Index multiplicity{0};
    Index mode_count{0};

    Index complex_dim() const { return multiplicity * (mode_count + 2); }
    Index real_dim() const { return 2 * complex_dim(); }

    Index a_index(Index i) const { return i; }
    Index b_index(Index i) const { return multiplicity + i; }
    Index f_index(Index i, Index q) const { return 2 * multiplicity + i * mode_count + q; }
};

struct StateDerivative {
    ComplexVector Adot;
    ComplexVector Bdot;
    ComplexMatrix fdot;
};

RealVector pack_derivative(const StateDerivative& d);
StateDerivative unpack_derivative(const RealVector& x, Index multiplicity, Index mode_count);

struct SolverPolicy {
    double tikhonov_eps{1e-12};  // extra relative ridge on the normal matrix
    double svd_cutoff{1e-5};     // relative singular-value floor / fallback cutoff
    double condition_warn{1e12}; // condition-number level worth flagging

    void validate() const;
};

struct EomSystem {
    RealMatrix lhs; // 2D x 2D
    RealVector rhs; // 2D
};

// Builds the real-linear system at the given state and time.
EomSystem assemble(const VariationalState& state, double t, const QubitParams& qubit,
                   const std::vector<BathMode>& modes);

struct SolveInfo {
    double condition{0.0};
    double residual{0.0};
    bool used_fallback{false};
};

// Solves an assembled system: ridge-regularized pivoted LU with a
// minimum-norm SVD fallback. Throws NumericError if the fallback residual
// still exceeds 1e-6.
RealVector solve_system(const EomSystem& system, const SolverPolicy& policy, double t,
                        SolveInfo* info = nullptr);

StateDerivative solve_derivatives(const VariationalState& state, double t,
                                  const QubitParams& qubit, const std::vector<BathMode>& modes,
                                  const SolverPolicy& policy, SolveInfo* info = nullptr);

// d⟨ψ|ψ⟩/dt implied by a derivative vector; vanishes identically on exact
// solutions of the variational equations.
double norm_rate(const VariationalState& state, const StateDerivative& d);

} // namespace lzbath
