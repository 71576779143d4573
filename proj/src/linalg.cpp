#include "linalg.hpp"

#define LAPACK_COMPLEX_CPP
#include <lapacke.h>

#include <string>

#include "errors.hpp"

namespace ptkr {

namespace {

class LapackBackend final : public EigensolverBackend {
public:
    Eigen::VectorXcd eigenvalues(const Eigen::MatrixXcd& a) const override {
        check_square(a.rows(), a.cols());
        Eigen::MatrixXcd work = a;  // zgeev destroys its input
        lapack_int n = static_cast<lapack_int>(a.rows());
        Eigen::VectorXcd w(n);
        lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', n, work.data(), n, w.data(),
                                        nullptr, 1, nullptr, 1);
        check_info(info);
        return w;
    }

    void eigenpairs(const Eigen::MatrixXcd& a, Eigen::VectorXcd& w, Eigen::MatrixXcd& v) const override {
        check_square(a.rows(), a.cols());
        Eigen::MatrixXcd work = a;
        lapack_int n = static_cast<lapack_int>(a.rows());
        w.resize(n);
        v.resize(n, n);
        lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'V', n, work.data(), n, w.data(),
                                        nullptr, 1, v.data(), n);
        check_info(info);
    }

    Eigen::VectorXcd eigenvalues_real(const Eigen::MatrixXd& a) const override {
        check_square(a.rows(), a.cols());
        Eigen::MatrixXd work = a;
        lapack_int n = static_cast<lapack_int>(a.rows());
        Eigen::VectorXd wr(n), wi(n);
        lapack_int info = LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'N', n, work.data(), n, wr.data(),
                                        wi.data(), nullptr, 1, nullptr, 1);
        check_info(info);
        Eigen::VectorXcd w(n);
        for (lapack_int i = 0; i < n; ++i) w[i] = {wr[i], wi[i]};
        return w;
    }

private:
    static void check_square(Eigen::Index rows, Eigen::Index cols) {
        require(rows == cols && rows >= 1, ErrorCode::invalid_argument, "matrix must be square");
    }

    static void check_info(lapack_int info) {
        if (info == 0) return;
        if (info < 0)
            fail(ErrorCode::internal, "LAPACK geev: illegal argument " + std::to_string(-info));
        fail(ErrorCode::eigensolver_failure,
             "eigensolver failed to converge; eigenvalues beyond index " + std::to_string(info) +
                 " are unreliable");
    }
};

}  // namespace

const EigensolverBackend& lapack_backend() {
    static LapackBackend backend;
    return backend;
}

Eigen::VectorXd eigenvalues_symmetric(const Eigen::MatrixXd& a) {
    require(a.rows() == a.cols(), ErrorCode::invalid_argument, "matrix must be square");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
    require(solver.info() == Eigen::Success, ErrorCode::eigensolver_failure,
            "symmetric eigensolver failed");
    return solver.eigenvalues();
}

}  // namespace ptkr
