#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "linalg.hpp"
#include "stats.hpp"

namespace ptkr {

/// Random-matrix ensembles with Gaussian N(0,1) entries, plus the two
/// Poisson point-process baselines. The matrix classes:
///   ginue         complex entries x + iy
///   ginoe         real entries
///   ai_dagger     (A + A^T)/2, complex A (transpose symmetric)
///   pt_symmetric  (A + P conj(A) P)/2, P the index-reversal permutation
///   goe           (A + A^T)/2, real A
enum class EnsembleKind {
    ginue,
    ginoe,
    ai_dagger,
    pt_symmetric,
    goe,
    poisson_real,
    poisson_2d,
};

struct EnsembleSpec {
    EnsembleKind kind = EnsembleKind::ginue;
    int dim = 1000;
    int trials = 30;
    std::uint64_t seed = 0;

    void validate() const;
};

struct EnsembleResult {
    double mean_r = 0.0;
    double std_r = 0.0;
    double mean_neg_cos = 0.0;
    double std_neg_cos = 0.0;
    int trials = 0;
};

/// One sampled matrix, deterministic in (spec.seed, trial). Only defined for
/// the matrix classes; the Poisson kinds are point sets, not matrices.
Eigen::MatrixXcd sample_matrix(const EnsembleSpec& spec, int trial);

/// Eigenvalues (or sampled points) of one trial, as points in the plane.
Eigen::VectorXcd sample_eigenvalues(const EnsembleSpec& spec, int trial,
                                    const EigensolverBackend& backend = lapack_backend());

/// Per-trial CLSR, aggregated to mean and sample standard deviation.
EnsembleResult ensemble_clsr(const EnsembleSpec& spec,
                             const EigensolverBackend& backend = lapack_backend());

const char* ensemble_kind_name(EnsembleKind kind);

}  // namespace ptkr
