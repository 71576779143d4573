#include "floquet.hpp"

#include <cmath>

namespace ptkr {

std::vector<Complex> kinetic_phases(const RotorParams& params, std::span<const double> jitter) {
    params.validate();
    std::size_t m = static_cast<std::size_t>(params.dim());
    require(jitter.size() == m, ErrorCode::invalid_argument, "jitter length must equal 2N");
    std::vector<Complex> phases(m);
    for (std::size_t i = 0; i < m; ++i) {
        double k = static_cast<double>(static_cast<long>(i) - params.half_size);
        double arg = -params.hbar_eff * k * k * params.period / (4.0 * (params.mass + jitter[i]));
        phases[i] = std::polar(1.0, arg);
    }
    return phases;
}

std::vector<Complex> kick_phases(const RotorParams& params, std::size_t grid_size) {
    params.validate();
    require(grid_size >= static_cast<std::size_t>(params.dim()), ErrorCode::invalid_argument,
            "kick grid must have at least 2N points");
    double lam = params.non_hermiticity;
    double amp = params.kick_strength * lam / (std::sqrt(1.0 + lam * lam) * params.hbar_eff);
    require(amp <= 700.0, ErrorCode::kick_overflow,
            "kick amplitude overflow: K*lambda/(sqrt(1+lambda^2)*hbar_eff) exceeds exp range");
    std::vector<Complex> phases(grid_size);
    for (std::size_t j = 0; j < grid_size; ++j) {
        double theta = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(grid_size);
        Complex v = potential(theta, params);
        // exp(-i v / hbar): modulus exp(Im v / hbar), phase -Re v / hbar
        phases[j] = std::polar(std::exp(v.imag() / params.hbar_eff), -v.real() / params.hbar_eff);
    }
    return phases;
}

FloquetDense build_dense(const RotorParams& params, std::span<const double> jitter) {
    auto kin = kinetic_phases(params, jitter);
    std::size_t m = kin.size();
    auto kick = kick_phases(params, m);

    // Circulant kick matrix: (U_kick)_{k'k} = c_{(k'-k) mod M} with
    // c = forward DFT of the kick samples / M.
    std::vector<Complex> c(m);
    Fft fft(m);
    fft.forward(kick.data(), c.data());
    double inv_m = 1.0 / static_cast<double>(m);
    for (Complex& v : c) v *= inv_m;

    Eigen::MatrixXcd f(m, m);
    for (std::size_t col = 0; col < m; ++col) {
        for (std::size_t row = 0; row < m; ++row) {
            std::size_t shift = (row + m - col) % m;
            f(row, col) = kin[row] * c[shift] * kin[col];
        }
    }
    return FloquetDense{std::move(f), params, std::vector<double>(jitter.begin(), jitter.end())};
}

SplitStepApplicator::SplitStepApplicator(const RotorParams& params, std::span<const double> jitter)
    : params_(params),
      kinetic_(kinetic_phases(params, jitter)),
      kick_(kick_phases(params, static_cast<std::size_t>(params.dim()))),
      fft_(std::make_shared<Fft>(static_cast<std::size_t>(params.dim()))) {}

StateVector SplitStepApplicator::apply(const StateVector& state, bool adjoint) const {
    std::size_t m = kinetic_.size();
    require(state.size() == static_cast<long>(m), ErrorCode::invalid_argument, "state dimension mismatch");

    StateVector work(m);
    for (std::size_t i = 0; i < m; ++i) {
        Complex d = adjoint ? std::conj(kinetic_[i]) : kinetic_[i];
        work[i] = d * state[i];
    }
    StateVector angle(m);
    // momentum -> angle: the shift k = i - N contributes (-1)^j twists that
    // cancel between the two transforms, so plain DFTs suffice.
    fft_->backward(work.data(), angle.data());
    for (std::size_t j = 0; j < m; ++j) {
        Complex g = adjoint ? std::conj(kick_[j]) : kick_[j];
        angle[j] *= g;
    }
    fft_->forward(angle.data(), work.data());
    double inv_m = 1.0 / static_cast<double>(m);
    for (std::size_t i = 0; i < m; ++i) {
        Complex d = adjoint ? std::conj(kinetic_[i]) : kinetic_[i];
        work[i] *= d * inv_m;
    }
    return work;
}

}  // namespace ptkr
