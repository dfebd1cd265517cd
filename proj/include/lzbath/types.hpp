// types.hpp — Shared scalar/matrix aliases and error categories

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace lzbath {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using Index = Eigen::Index;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr Complex imag_unit{0.0, 1.0};

// Invalid parameters, malformed config files, unknown keys.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical breakdown during a solve or a propagation (carries the time
// at which it happened when known).
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg, double when = 0.0)
        : std::runtime_error(msg), t(when) {}
    double t;
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace lzbath
