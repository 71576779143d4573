#pragma once

#include <Eigen/Dense>

namespace ptkr {

/// Dense nonsymmetric eigensolver interface. The default backend wraps
/// LAPACK's Hessenberg + shifted-QR drivers (zgeev/dgeev); alternatives can
/// be swapped in behind this surface without touching callers.
class EigensolverBackend {
public:
    virtual ~EigensolverBackend() = default;

    virtual Eigen::VectorXcd eigenvalues(const Eigen::MatrixXcd& a) const = 0;

    /// Eigenvalues plus right eigenvectors (columns of v).
    virtual void eigenpairs(const Eigen::MatrixXcd& a, Eigen::VectorXcd& w, Eigen::MatrixXcd& v) const = 0;

    /// Real nonsymmetric matrix; complex eigenvalues come in conjugate pairs.
    virtual Eigen::VectorXcd eigenvalues_real(const Eigen::MatrixXd& a) const = 0;
};

const EigensolverBackend& lapack_backend();

/// Real symmetric eigenvalues, ascending.
Eigen::VectorXd eigenvalues_symmetric(const Eigen::MatrixXd& a);

}  // namespace ptkr
