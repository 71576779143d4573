#pragma once

#include <iosfwd>

#include "floquet.hpp"
#include "linalg.hpp"

namespace ptkr {

/// Quasienergies eps = i ln mu of the Floquet eigenvalues mu, with the
/// principal branch: Re eps in [-pi, pi), Im eps = ln|mu|. alpha is the
/// largest imaginary part; alpha > 0 signals PT-symmetry breaking.
struct QuasienergySpectrum {
    Eigen::VectorXcd mus;
    Eigen::VectorXcd epsilons;
    double alpha = 0.0;
};

Eigen::VectorXcd floquet_eigenvalues(const FloquetDense& f,
                                     const EigensolverBackend& backend = lapack_backend());

QuasienergySpectrum quasienergies(const Eigen::VectorXcd& mus);

/// Builds the dense operator, diagonalizes it, and takes logs.
QuasienergySpectrum compute_spectrum(const RotorParams& params, std::span<const double> jitter,
                                     const EigensolverBackend& backend = lapack_backend());

bool pt_broken(const QuasienergySpectrum& spectrum, double threshold = 1e-10);

/// CSV columns: index, re_mu, im_mu, re_eps, im_eps (17 significant digits).
void write_spectrum_csv(const QuasienergySpectrum& spectrum, std::ostream& out);

QuasienergySpectrum read_spectrum_csv(std::istream& in);

}  // namespace ptkr
