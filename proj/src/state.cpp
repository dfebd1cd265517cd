#include "lzbath/state.hpp"

#include <cmath>
#include <random>

namespace lzbath {

namespace {

double real_checked(Complex z, const char* what) {
    if (std::abs(z.imag()) > 1e-10 * std::max(1.0, std::abs(z.real())))
        throw NumericError(std::string(what) + ": imaginary part failed to cancel");
    return z.real();
}

// (A*_j A_i + B*_j B_i) ⊙ S — the bilinear weight behind most observables.
ComplexMatrix population_kernel(const VariationalState& state, const ComplexMatrix& S) {
    return (state.A.conjugate() * state.A.transpose() + state.B.conjugate() * state.B.transpose())
        .cwiseProduct(S);
}

} // namespace

Complex debye_waller(const VariationalState& state, Index j, Index i) {
    const Complex cross = state.f.row(j).dot(state.f.row(i)); // Σ_q f*_jq f_iq
    const double nj = state.f.row(j).squaredNorm();
    const double ni = state.f.row(i).squaredNorm();
    return std::exp(cross - 0.5 * (nj + ni));
}

ComplexMatrix overlap_matrix(const VariationalState& state) {
    const Index m = state.multiplicity();
    const ComplexMatrix cross = state.f.conjugate() * state.f.transpose(); // (j,i) = Σ_q f*_jq f_iq
    const RealVector sq = state.f.rowwise().squaredNorm();
    ComplexMatrix S(m, m);
    for (Index j = 0; j < m; ++j)
        for (Index i = 0; i < m; ++i)
            S(j, i) = std::exp(cross(j, i) - 0.5 * (sq(j) + sq(i)));
    return S;
}

double norm(const VariationalState& state) {
    const ComplexMatrix S = overlap_matrix(state);
    const Complex n = state.A.dot(S * state.A) + state.B.dot(S * state.B);
    const double value = real_checked(n, "norm");
    if (!(value > 0.0)) throw NumericError("norm: non-positive state norm", state.t);
    return value;
}

double transition_probability(const VariationalState& state) {
    const ComplexMatrix S = overlap_matrix(state);
    const Complex up = state.A.dot(S * state.A);
    const Complex down = state.B.dot(S * state.B);
    const double total = real_checked(up + down, "transition_probability");
    if (!(total > 0.0)) throw NumericError("transition_probability: norm underflow", state.t);
    return real_checked(down, "transition_probability") / total;
}

double occupation_up(const VariationalState& state) {
    return 1.0 - transition_probability(state);
}

double sigma_z_expectation(const VariationalState& state) {
    const ComplexMatrix S = overlap_matrix(state);
    const Complex up = state.A.dot(S * state.A);
    const Complex down = state.B.dot(S * state.B);
    const double total = real_checked(up + down, "sigma_z");
    if (!(total > 0.0)) throw NumericError("sigma_z: norm underflow", state.t);
    return real_checked(up - down, "sigma_z") / total;
}

RealVector boson_numbers(const VariationalState& state) {
    const ComplexMatrix S = overlap_matrix(state);
    const ComplexMatrix R = population_kernel(state, S);
    const double total = real_checked(state.A.dot(S * state.A) + state.B.dot(S * state.B), "boson_numbers");
    if (!(total > 0.0)) throw NumericError("boson_numbers: norm underflow", state.t);
    // n_q = Σ_ji R(j,i) f*_jq f_iq
    const ComplexMatrix rf = R * state.f; // (j,q) = Σ_i R(j,i) f_iq
    return state.f.conjugate().cwiseProduct(rf).colwise().sum().real().transpose() / total;
}

double hamiltonian_expectation(const VariationalState& state, double t, const QubitParams& qubit,
                               const std::vector<BathMode>& modes) {
    const Index m = state.multiplicity();
    const Index n = state.mode_count();
    if (static_cast<Index>(modes.size()) != n)
        throw ConfigError("hamiltonian_expectation: mode list does not match state");

    RealVector omega(n), gcos(n), gsin(n);
    for (Index q = 0; q < n; ++q) {
        omega(q) = modes[static_cast<std::size_t>(q)].omega;
        gcos(q) = modes[static_cast<std::size_t>(q)].gamma * std::cos(modes[static_cast<std::size_t>(q)].theta);
        gsin(q) = modes[static_cast<std::size_t>(q)].gamma * std::sin(modes[static_cast<std::size_t>(q)].theta);
    }

    const ComplexMatrix S = overlap_matrix(state);
    const ComplexMatrix bath = state.f.conjugate() * omega.asDiagonal() * state.f.transpose();
    const ComplexVector uc = state.f * gcos.cast<Complex>(); // Σ_q γ_q cosθ_q f_iq
    const ComplexVector us = state.f * gsin.cast<Complex>();

    Complex acc = 0.0;
    for (Index j = 0; j < m; ++j) {
        for (Index i = 0; i < m; ++i) {
            const Complex aa = std::conj(state.A(j)) * state.A(i);
            const Complex bb = std::conj(state.B(j)) * state.B(i);
            const Complex ab = std::conj(state.A(j)) * state.B(i);
            const Complex ba = std::conj(state.B(j)) * state.A(i);
            const Complex gdiag = uc(i) + std::conj(uc(j));
            const Complex goff = us(i) + std::conj(us(j));
            Complex term = 0.5 * qubit.v * t * (aa - bb) + 0.5 * qubit.delta * (ab + ba);
            term += (aa + bb) * bath(j, i);
            term += 0.5 * (aa - bb) * gdiag;
            term += 0.5 * (ab + ba) * goff;
            acc += term * S(j, i);
        }
    }

    const double total = real_checked(state.A.dot(S * state.A) + state.B.dot(S * state.B),
                                      "hamiltonian_expectation");
    if (!(total > 0.0)) throw NumericError("hamiltonian_expectation: norm underflow", state.t);
    return real_checked(acc, "hamiltonian_expectation") / total;
}

namespace {

// Deterministic standard complex normal stream: mt19937_64 feeding a
// hand-rolled Box-Muller so the draw sequence is pinned across platforms.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : gen_(seed) {}

    Complex next() {
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log1p(-u1)); // u1 in [0,1) keeps the log finite
        return {r * std::cos(2.0 * pi * u2) / std::sqrt(2.0), r * std::sin(2.0 * pi * u2) / std::sqrt(2.0)};
    }

private:
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
    std::mt19937_64 gen_;
};

} // namespace

VariationalState initialize(Index multiplicity, Index mode_count, std::uint64_t seed,
                            double delta_offset) {
    if (multiplicity < 1) throw ConfigError("initialize: multiplicity must be >= 1");
    if (mode_count < 0) throw ConfigError("initialize: mode count must be >= 0");
    if (!(delta_offset >= 0.0)) throw ConfigError("initialize: delta_offset must be >= 0");

    VariationalState state;
    state.A = ComplexVector::Zero(multiplicity);
    state.B = ComplexVector::Zero(multiplicity);
    state.f = ComplexMatrix::Zero(multiplicity, mode_count);
    state.A(0) = 1.0;

    GaussianStream rng(seed);
    for (Index i = 1; i < multiplicity; ++i) state.A(i) = delta_offset * rng.next();
    for (Index i = 1; i < multiplicity; ++i)
        for (Index q = 0; q < mode_count; ++q) state.f(i, q) = delta_offset * rng.next();

    const double scale = 1.0 / std::sqrt(norm(state));
    state.A *= scale;
    state.B *= scale;
    return state;
}

} // namespace lzbath
