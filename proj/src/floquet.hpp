#pragma once

#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fft.hpp"
#include "model.hpp"

namespace ptkr {

/// Half-period kinetic propagator diagonal, entry for momentum index k:
/// exp(-i hbar_eff k^2 tau / (4 (mass + dm_k))). Always unit modulus.
std::vector<Complex> kinetic_phases(const RotorParams& params, std::span<const double> jitter);

/// Kick propagator samples exp(-i V(theta_j) / hbar_eff) on the uniform grid
/// theta_j = 2 pi j / grid_size. Fails when the non-unitary amplitude
/// K lambda / (sqrt(1+lambda^2) hbar_eff) would overflow exp (> 700).
std::vector<Complex> kick_phases(const RotorParams& params, std::size_t grid_size);

/// One-period Floquet operator as a dense matrix in the momentum basis,
/// F = D_kin U_kick D_kin with the kick matrix from angle-grid quadrature.
struct FloquetDense {
    Eigen::MatrixXcd matrix;
    RotorParams params;
    std::vector<double> jitter;
};

FloquetDense build_dense(const RotorParams& params, std::span<const double> jitter);

/// Matrix-free realization of the same operator: diagonal kinetic phases in
/// momentum space, diagonal kick phases on an angle grid of size 2N, FFTs in
/// between. Immutable after construction; apply() is pure (scratch space is
/// per-thread inside Fft).
class SplitStepApplicator {
public:
    SplitStepApplicator(const RotorParams& params, std::span<const double> jitter);

    /// F|psi> (adjoint = false) or F^dagger|psi> (adjoint = true).
    StateVector apply(const StateVector& state, bool adjoint = false) const;

    const RotorParams& params() const { return params_; }
    long dim() const { return params_.dim(); }

private:
    RotorParams params_;
    std::vector<Complex> kinetic_;
    std::vector<Complex> kick_;
    std::shared_ptr<const Fft> fft_;
};

}  // namespace ptkr
