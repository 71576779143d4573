#include "model.hpp"

#include <cmath>

#include "rng.hpp"

namespace ptkr {

void RotorParams::validate() const {
    require(std::isfinite(kick_strength) && kick_strength >= 0.0, ErrorCode::invalid_argument,
            "kick strength K must be finite and >= 0");
    require(std::isfinite(non_hermiticity) && non_hermiticity >= 0.0, ErrorCode::invalid_argument,
            "non-Hermiticity lambda must be finite and >= 0");
    require(std::isfinite(hbar_eff) && hbar_eff > 0.0, ErrorCode::invalid_argument,
            "hbar_eff must be finite and > 0");
    require(std::isfinite(mass) && mass > 0.0, ErrorCode::invalid_argument, "mass must be > 0");
    require(std::isfinite(period) && period > 0.0, ErrorCode::invalid_argument, "period tau must be > 0");
    require(half_size >= 2, ErrorCode::invalid_argument, "half_size N must be >= 2");
    require(std::isfinite(jitter_amplitude) && jitter_amplitude >= 0.0, ErrorCode::invalid_argument,
            "jitter amplitude must be >= 0");
}

void WavepacketSpec::validate(const RotorParams& params) const {
    require(std::isfinite(sigma) && sigma > 0.0, ErrorCode::invalid_argument, "sigma must be > 0");
    double p0 = params.hbar_eff * static_cast<double>(k0);
    require(p0 >= -M_PI && p0 <= M_PI, ErrorCode::invalid_argument,
            "wavepacket center p0 = hbar_eff * k0 must lie in [-pi, pi]");
    require(k0 >= -params.half_size && k0 < params.half_size, ErrorCode::invalid_argument,
            "wavepacket center k0 outside the momentum basis");
}

Complex potential(double theta, const RotorParams& params) {
    double lam = params.non_hermiticity;
    double scale = params.kick_strength / std::sqrt(1.0 + lam * lam);
    return {scale * std::cos(theta), scale * lam * std::sin(theta)};
}

StateVector gaussian_state(const WavepacketSpec& spec, const RotorParams& params) {
    params.validate();
    spec.validate(params);
    long n = params.half_size;
    StateVector state(2 * n);
    double h2 = params.hbar_eff * params.hbar_eff;
    double denom = 2.0 * spec.sigma * spec.sigma;
    for (long i = 0; i < 2 * n; ++i) {
        double dk = static_cast<double>(i - n - spec.k0);
        state[i] = std::exp(-h2 * dk * dk / denom);
    }
    state /= state.norm();
    return state;
}

std::vector<double> sample_mass_jitter(const RotorParams& params) {
    params.validate();
    Rng rng(params.seed);
    std::vector<double> jitter(static_cast<std::size_t>(params.dim()));
    for (double& dm : jitter) dm = rng.uniform(0.0, params.jitter_amplitude);
    return jitter;
}

std::vector<double> zero_jitter(const RotorParams& params) {
    return std::vector<double>(static_cast<std::size_t>(params.dim()), 0.0);
}

void apply_momentum(StateVector& state, const RotorParams& params) {
    long n = params.half_size;
    require(state.size() == 2 * n, ErrorCode::invalid_argument, "state dimension mismatch");
    for (long i = 0; i < 2 * n; ++i) state[i] *= params.hbar_eff * static_cast<double>(i - n);
}

}  // namespace ptkr
