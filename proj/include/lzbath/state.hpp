// state.hpp — Multi-configuration coherent-state (multi-D2) variational state
// and its physical observables.
//
// The state is  |ψ⟩ = Σ_i (A_i|↑⟩ + B_i|↓⟩) |f_i⟩  where |f_i⟩ is the
// multimode coherent state with displacements f_iq. All observables are
// reported normalized (divided by ⟨ψ|ψ⟩).

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lzbath/bath.hpp"
#include "lzbath/types.hpp"

namespace lzbath {

struct VariationalState {
    ComplexVector A; // amplitudes of |↑⟩, length M
    ComplexVector B; // amplitudes of |↓⟩, length M
    ComplexMatrix f; // displacements, M x N (row i = configuration i)
    double t{0.0};

    Index multiplicity() const { return A.size(); }
    Index mode_count() const { return f.cols(); }

    bool is_finite() const {
        return A.allFinite() && B.allFinite() && f.allFinite();
    }
};

// Coherent-state overlap ⟨f_j|f_i⟩ = exp{Σ_q [−(|f_jq|²+|f_iq|²)/2 + f*_jq f_iq]}.
Complex debye_waller(const VariationalState& state, Index j, Index i);

// Full M x M overlap matrix, entry (j, i) = ⟨f_j|f_i⟩.
ComplexMatrix overlap_matrix(const VariationalState& state);

// ⟨ψ|ψ⟩ = Σ_ij (A*_j A_i + B*_j B_i) S_ji. Throws NumericError if the
// imaginary part fails to cancel or the result is not positive.
double norm(const VariationalState& state);

// Population of |↓⟩, in [0, 1].
double transition_probability(const VariationalState& state);

// Population of |↑⟩, in [0, 1].
double occupation_up(const VariationalState& state);

// ⟨σz⟩, in [−1, 1].
double sigma_z_expectation(const VariationalState& state);

// Per-mode occupation ⟨b†_q b_q⟩, length N.
RealVector boson_numbers(const VariationalState& state);

// ⟨H(t)⟩ for the driven qubit + bath + coupling Hamiltonian.
double hamiltonian_expectation(const VariationalState& state, double t, const QubitParams& qubit,
                               const std::vector<BathMode>& modes);

// Initial state: A_1 = 1, B = 0, with deterministic seeded offsets of size
// delta_offset on the redundant configurations (A_{i>1} and f_{i>1,q};
// f_{1q} stays exactly zero). Renormalized to ⟨ψ|ψ⟩ = 1.
VariationalState initialize(Index multiplicity, Index mode_count, std::uint64_t seed,
                            double delta_offset);

} // namespace lzbath
