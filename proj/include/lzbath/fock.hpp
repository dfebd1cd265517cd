// fock.hpp — Exact reference propagation in a truncated Fock product basis.
//
// Brute-force Schrödinger integration for small mode counts, used to certify
// the variational engine. Independent of the coherent-state machinery: it
// only shares the Hamiltonian parameters.

#pragma once

#include <cstddef>
#include <vector>

#include "lzbath/bath.hpp"
#include "lzbath/integrator.hpp"
#include "lzbath/trajectory.hpp"
#include "lzbath/types.hpp"

namespace lzbath {

// Truncated product basis: spin ⊗ (n_max+1)^N number states.
// Basis index = spin · (n_max+1)^N + Σ_q n_q · stride_q, spin 0 = |↑⟩.
class FockBasis {
public:
    FockBasis(Index mode_count, Index n_max);

    Index mode_count() const { return n_; }
    Index n_max() const { return n_max_; }
    Index dim() const { return 2 * boson_dim_; }
    Index boson_dim() const { return boson_dim_; }

    Index index(Index spin, const std::vector<Index>& occupation) const;
    Index occupation(Index basis_index, Index mode) const;
    Index spin(Index basis_index) const { return basis_index / boson_dim_; }
    Index stride(Index mode) const;

private:
    Index n_;
    Index n_max_;
    Index boson_dim_;
    std::vector<Index> stride_;
};

// Time-dependent Hamiltonian split as H(t) = H0 + t·H1 with H1 = (v/2)σz.
class FockHamiltonian {
public:
    FockHamiltonian(const FockBasis& basis, const QubitParams& qubit,
                    const std::vector<BathMode>& modes);

    const FockBasis& basis() const { return basis_; }

    // out = H(t)·psi, matrix-free.
    void apply(double t, const ComplexVector& psi, ComplexVector& out) const;

    // Dense H(t); intended for small dimensions and tests.
    ComplexMatrix dense(double t) const;

private:
    FockBasis basis_;
    QubitParams qubit_;
    std::vector<BathMode> modes_;
    RealVector diag0_; // Σ_q ω_q n_q per basis state
};

struct FockConfig {
    QubitParams qubit;
    std::vector<BathMode> modes; // at most 3 modes
    Index n_max{0};              // 0 selects a mode-count-dependent default
    RunConfig run;
    Index verify_margin{8};      // truncation check reruns at n_max + margin
    double verify_tol{1e-4};
    bool verify{true};

    Index resolved_n_max() const;
    void validate() const;
};

// Expands a multi-D2 parameter set in the truncated basis (coherent-state
// amplitudes z^n e^{-|z|^2/2}/√n!). Used to cross-check observables.
ComplexVector expand_coherent(const FockBasis& basis, const ComplexVector& A,
                              const ComplexVector& B, const ComplexMatrix& f);

// Observables of a Fock vector, normalized by ⟨ψ|ψ⟩.
struct FockObservables {
    double norm;
    double p_down;
    double sigma_z;
    RealVector boson;
    double energy;
};
FockObservables observe(const FockHamiltonian& h, double t, const ComplexVector& psi);

// RK4 integration of the Schrödinger equation from |↑⟩⊗|0…0⟩, recording the
// same observable schema as the variational engine. When verify is set the
// evolution is repeated at n_max + verify_margin and the two transition
// curves must agree within verify_tol.
Trajectory fock_evolve(const FockConfig& config);

} // namespace lzbath
