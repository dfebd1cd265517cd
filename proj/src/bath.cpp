#include "lzbath/bath.hpp"

#include <cmath>

#include "lzbath/quadrature.hpp"

namespace lzbath {

void QubitParams::validate() const {
    if (!(v > 0.0)) throw ConfigError("qubit: sweep velocity v must be > 0");
    if (!(delta >= 0.0)) throw ConfigError("qubit: tunneling delta must be >= 0");
    if (!std::isfinite(v) || !std::isfinite(delta)) throw ConfigError("qubit: non-finite parameter");
}

void SpectralDensity::validate() const {
    if (!(alpha >= 0.0)) throw ConfigError("bath: alpha must be >= 0");
    if (!(s > 0.0)) throw ConfigError("bath: spectral exponent s must be > 0");
    if (!(omega_c > 0.0)) throw ConfigError("bath: cutoff omega_c must be > 0");
}

double evaluate_spectral_density(const SpectralDensity& sd, double omega) {
    if (omega < 0.0) throw std::domain_error("evaluate_spectral_density: omega must be >= 0");
    if (omega == 0.0) return 0.0; // ω^s with s > 0
    return 2.0 * sd.alpha * std::pow(sd.omega_c, 1.0 - sd.s) * std::pow(omega, sd.s) *
           std::exp(-omega / sd.omega_c);
}

std::vector<BathMode> discretize_linear(const SpectralDensity& sd, std::size_t n_modes,
                                        double omega_max, double theta) {
    sd.validate();
    if (n_modes == 0) throw ConfigError("discretize_linear: mode count must be >= 1");
    if (!(omega_max > 0.0)) throw ConfigError("discretize_linear: omega_max must be > 0");

    const double dw = omega_max / static_cast<double>(n_modes);
    std::vector<BathMode> modes(n_modes);
    for (std::size_t q = 0; q < n_modes; ++q) {
        const double w = (static_cast<double>(q) + 0.5) * dw;
        modes[q] = BathMode{w, std::sqrt(evaluate_spectral_density(sd, w) * dw), theta};
    }
    return modes;
}

std::vector<BathMode> discretize_logarithmic(const SpectralDensity& sd, std::size_t n_modes,
                                             double omega_min, double omega_max, double theta) {
    sd.validate();
    if (n_modes == 0) throw ConfigError("discretize_logarithmic: mode count must be >= 1");
    if (!(omega_min > 0.0) || !(omega_max > omega_min))
        throw ConfigError("discretize_logarithmic: need 0 < omega_min < omega_max");

    const double ratio = omega_max / omega_min;
    auto edge = [&](std::size_t k) {
        return omega_min * std::pow(ratio, static_cast<double>(k) / static_cast<double>(n_modes));
    };
    auto J = [&](double w) { return evaluate_spectral_density(sd, w); };

    std::vector<BathMode> modes(n_modes);
    for (std::size_t q = 0; q < n_modes; ++q) {
        const double lo = edge(q);
        const double hi = edge(q + 1);
        const double weight = quad::integrate(J, lo, hi, 1e-10);
        const double first = quad::integrate([&](double w) { return J(w) * w; }, lo, hi, 1e-10);
        const double centroid = weight > 0.0 ? first / weight : 0.5 * (lo + hi);
        modes[q] = BathMode{centroid, std::sqrt(std::max(weight, 0.0)), theta};
    }
    return modes;
}

IntegratedQuantities integrated_quantities(const std::vector<BathMode>& modes) {
    if (modes.empty()) throw std::domain_error("integrated_quantities: empty mode list");
    IntegratedQuantities out;
    for (const auto& m : modes) {
        if (!(m.omega > 0.0)) throw std::domain_error("integrated_quantities: mode frequency must be > 0");
        out.S += m.gamma * m.gamma;
        out.E0 += m.gamma * m.gamma / m.omega;
    }
    return out;
}

void validate_modes(const std::vector<BathMode>& modes) {
    double prev = 0.0;
    for (const auto& m : modes) {
        if (!(m.omega > prev))
            throw ConfigError("bath: mode frequencies must be positive and strictly increasing");
        if (!(m.gamma >= 0.0)) throw ConfigError("bath: mode couplings must be >= 0");
        if (!(m.theta >= 0.0 && m.theta <= pi / 2.0 + 1e-12))
            throw ConfigError("bath: interaction angle must lie in [0, pi/2]");
        prev = m.omega;
    }
}

std::vector<BathMode> BathSpec::resolve() const {
    if (is_explicit()) {
        validate_modes(explicit_bath().modes);
        return explicit_bath().modes;
    }
    const auto& c = continuum();
    std::vector<BathMode> modes;
    if (c.scheme == Scheme::Linear)
        modes = discretize_linear(c.density, c.n_modes, c.resolved_omega_max(), c.theta);
    else
        modes = discretize_logarithmic(c.density, c.n_modes, c.omega_min, c.resolved_omega_max(),
                                       c.theta);
    validate_modes(modes);
    return modes;
}

} // namespace lzbath
