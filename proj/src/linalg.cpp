#include "radarknn/linalg.hpp"

#include <Eigen/Eigenvalues>

namespace rknn {

HermitianPD::HermitianPD(const CMat& a) {
    if (a.rows() != a.cols()) {
        throw DimensionMismatch("HermitianPD: matrix is not square");
    }
    if (a.rows() == 0) {
        throw DimensionMismatch("HermitianPD: matrix is empty");
    }
    const double scale = a.norm();
    const double asym = (a - a.adjoint()).norm();
    if (asym > 1e-10 * std::max(1.0, scale)) {
        throw ConfigError("HermitianPD: matrix is not Hermitian");
    }
    a_ = 0.5 * (a + a.adjoint());
}

CMat cholesky(const HermitianPD& a) {
    Eigen::LLT<CMat> llt(a.mat());
    if (llt.info() != Eigen::Success) {
        throw NotPositiveDefinite("cholesky: matrix is not positive definite");
    }
    return llt.matrixL();
}

CholFactor::CholFactor(const HermitianPD& a) : llt_(a.mat()) {
    if (llt_.info() != Eigen::Success) {
        throw NotPositiveDefinite("CholFactor: matrix is not positive definite");
    }
}

CVec CholFactor::half_solve(const CVec& b) const {
    if (b.size() != dim()) {
        throw DimensionMismatch("CholFactor::half_solve: size mismatch");
    }
    return llt_.matrixL().solve(b);
}

CVec CholFactor::solve(const CVec& b) const {
    if (b.size() != dim()) {
        throw DimensionMismatch("CholFactor::solve: size mismatch");
    }
    return llt_.solve(b);
}

CMat inv_sqrt_hermitian(const HermitianPD& a) {
    Eigen::SelfAdjointEigenSolver<CMat> eig(a.mat());
    if (eig.info() != Eigen::Success) {
        throw NumericalError("inv_sqrt_hermitian: eigendecomposition failed");
    }
    const Eigen::VectorXd& lam = eig.eigenvalues();
    if ((lam.array() <= 0.0).any()) {
        throw NotPositiveDefinite("inv_sqrt_hermitian: nonpositive eigenvalue");
    }
    const Eigen::VectorXd w = lam.array().rsqrt();
    return eig.eigenvectors() * w.asDiagonal() * eig.eigenvectors().adjoint();
}

double solve_quadratic_form(const HermitianPD& a, const CVec& v) {
    if (v.size() != a.dim()) {
        throw DimensionMismatch("solve_quadratic_form: size mismatch");
    }
    CholFactor f(a);
    return f.half_solve(v).squaredNorm();
}

} // namespace rknn

