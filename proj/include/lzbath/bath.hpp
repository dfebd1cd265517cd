// bath.hpp — Qubit/bath parameters and spectral-density discretization

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "lzbath/types.hpp"

namespace lzbath {

// Linear sweep (vt/2)σz plus tunneling (Δ/2)σx.
struct QubitParams {
    double v{1.0};      // sweep velocity, > 0
    double delta{0.0};  // tunneling strength Δ, >= 0

    void validate() const;
};

// Power-law spectral density J(ω) = 2α ω_c^{1−s} ω^s e^{−ω/ω_c}.
struct SpectralDensity {
    double alpha{0.002};  // dimensionless coupling strength, >= 0
    double s{1.0};        // spectral exponent (ohmic=1, sub-ohmic<1, super-ohmic>1), > 0
    double omega_c{10.0}; // cutoff frequency, > 0

    void validate() const;
};

// Evaluates J(ω); ω must be non-negative.
double evaluate_spectral_density(const SpectralDensity& sd, double omega);

// One bath oscillator: frequency, coupling strength, interaction angle.
// θ = 0 couples through σz only, θ = π/2 through σx only.
struct BathMode {
    double omega{1.0};
    double gamma{0.0};
    double theta{0.0};
};

enum class Scheme { Linear, Logarithmic };

// Midpoint grid ω_q = (q − 1/2)·Δω with Δω = ω_max/N and γ_q² = J(ω_q)·Δω,
// so Σ_q γ_q² is a Riemann sum of ∫ J dω.
std::vector<BathMode> discretize_linear(const SpectralDensity& sd, std::size_t n_modes,
                                        double omega_max, double theta);

// Geometric bin edges between ω_min and ω_max; per bin γ_q² is the exact bin
// integral of J (quadrature, relative error <= 1e-8) and ω_q the J-weighted
// centroid.
std::vector<BathMode> discretize_logarithmic(const SpectralDensity& sd, std::size_t n_modes,
                                             double omega_min, double omega_max, double theta);

struct IntegratedQuantities {
    double S{0.0};  // Σ_q γ_q²
    double E0{0.0}; // Σ_q γ_q²/ω_q
};

IntegratedQuantities integrated_quantities(const std::vector<BathMode>& modes);

// Bath definition as it appears in configs: either explicit modes or a
// continuum to be discretized.
struct ExplicitBath {
    std::vector<BathMode> modes;
};

struct ContinuumBath {
    SpectralDensity density;
    std::size_t n_modes{80};
    double omega_max{0.0};  // 0 means the default 5·ω_c
    double omega_min{1e-3}; // lower edge for the logarithmic scheme
    Scheme scheme{Scheme::Linear};
    double theta{0.0};      // shared interaction angle

    double resolved_omega_max() const { return omega_max > 0.0 ? omega_max : 5.0 * density.omega_c; }
};

struct BathSpec {
    std::variant<ExplicitBath, ContinuumBath> spec{ExplicitBath{}};

    bool is_explicit() const { return std::holds_alternative<ExplicitBath>(spec); }
    const ExplicitBath& explicit_bath() const { return std::get<ExplicitBath>(spec); }
    const ContinuumBath& continuum() const { return std::get<ContinuumBath>(spec); }

    // Validates and produces the concrete mode list.
    std::vector<BathMode> resolve() const;
};

// Checks γ_q >= 0, θ_q within [0, π/2] and ω_q positive, strictly increasing.
void validate_modes(const std::vector<BathMode>& modes);

} // namespace lzbath
