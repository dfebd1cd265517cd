// analytics.hpp — Closed-form final transition probabilities

#pragma once

#include <cmath>
#include <stdexcept>

#include "lzbath/types.hpp"

namespace lzbath {

// 1 − exp(−πΔ²/2ħ|v|), the bare sweep result.
inline double lz_standard(double delta, double v) {
    if (!(v > 0.0)) throw std::domain_error("lz_standard: v must be > 0");
    return 1.0 - std::exp(-pi * delta * delta / (2.0 * v));
}

// 1 − exp(−π(Δ²+γ²)/2ħ|v|): tunneling and off-diagonal coupling to a single
// mode act additively in the exponent (symmetric under Δ ↔ γ).
inline double single_mode_final(double delta, double gamma, double v) {
    if (!(v > 0.0)) throw std::domain_error("single_mode_final: v must be > 0");
    return 1.0 - std::exp(-pi * (delta * delta + gamma * gamma) / (2.0 * v));
}

// Multimode zero-temperature result with shared interaction angle θ:
// 1 − exp{−π(|Δ − ½E0·sin2θ|² + S·sin²θ)/2ħv}, with S = Σγ_q² and
// E0 = Σγ_q²/ω_q taken from the discretized bath.
inline double multimode_final(double delta, double v, double theta, double S, double E0) {
    if (!(v > 0.0)) throw std::domain_error("multimode_final: v must be > 0");
    if (!(S >= 0.0)) throw std::domain_error("multimode_final: S must be >= 0");
    const double sin_t = std::sin(theta);
    const double shifted = delta - 0.5 * E0 * std::sin(2.0 * theta);
    return 1.0 - std::exp(-pi * (shifted * shifted + S * sin_t * sin_t) / (2.0 * v));
}

} // namespace lzbath
