#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"

namespace ptkr {

using Complex = std::complex<double>;
using StateVector = Eigen::VectorXcd;

/// Physical and numerical parameters of the kicked-rotor model.
/// Momentum indices run over k in [-half_size, half_size - 1], so the
/// Hilbert-space dimension is 2 * half_size.
struct RotorParams {
    double kick_strength = 1.0;     // K
    double non_hermiticity = 0.0;   // lambda >= 0
    double hbar_eff = 0.2;
    double mass = 1.0;
    double period = 1.0;            // tau
    long half_size = 64;            // N
    double jitter_amplitude = 1e-3;
    std::uint64_t seed = 0;

    long dim() const { return 2 * half_size; }
    void validate() const;
};

/// Gaussian wavepacket centered on momentum index k0 with width sigma,
/// a_k ~ exp(-hbar_eff^2 (k - k0)^2 / (2 sigma^2)).
struct WavepacketSpec {
    long k0 = 0;
    double sigma = 4.0;

    void validate(const RotorParams& params) const;
};

/// Kick potential V(theta) = K (cos theta + i lambda sin theta) / sqrt(1 + lambda^2).
/// The normalization keeps |V| <= K for every theta and lambda.
Complex potential(double theta, const RotorParams& params);

/// Unit-norm Gaussian state, truncated to the finite basis and renormalized.
/// Amplitudes are real and positive.
StateVector gaussian_state(const WavepacketSpec& spec, const RotorParams& params);

/// Per-level mass perturbations dm_k, i.i.d. uniform on [0, jitter_amplitude],
/// deterministic in params.seed. Used to break degeneracies in spacing
/// statistics; dynamical (OTOC) runs use zero jitter unless asked otherwise.
std::vector<double> sample_mass_jitter(const RotorParams& params);

/// Convenience: jitter vector of zeros with the right length.
std::vector<double> zero_jitter(const RotorParams& params);

/// Diagonal momentum operator, p|k> = hbar_eff k |k>, applied in place.
void apply_momentum(StateVector& state, const RotorParams& params);

}  // namespace ptkr
