#ifndef RADARKNN_LINALG_HPP
#define RADARKNN_LINALG_HPP

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <complex>

#include "radarknn/errors.hpp"

namespace rknn {

using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

// Hermitian positive definite matrix. Construction symmetrizes the input as
// (A + A^H)/2 after rejecting inputs whose asymmetry exceeds roundoff scale;
// definiteness itself is only established by a successful factorization.
class HermitianPD {
public:
    explicit HermitianPD(const CMat& a);

    const CMat& mat() const { return a_; }
    Eigen::Index dim() const { return a_.rows(); }

private:
    CMat a_;
};

// Lower-triangular Cholesky factor L with L L^H = A (no pivoting).
// Throws NotPositiveDefinite when a pivot fails.
CMat cholesky(const HermitianPD& a);

// Cached Cholesky factorization for repeated solves against one matrix.
class CholFactor {
public:
    explicit CholFactor(const HermitianPD& a);

    Eigen::Index dim() const { return llt_.matrixLLT().rows(); }

    // L^{-1} b; with y = half_solve(z) and w = half_solve(v),
    // z^H A^{-1} v = y^H w, so one triangular solve serves all forms.
    CVec half_solve(const CVec& b) const;

    // A^{-1} b via the two triangular solves.
    CVec solve(const CVec& b) const;

    CMat lower() const { return llt_.matrixL(); }

private:
    Eigen::LLT<CMat> llt_;
};

// Hermitian inverse square root B = V diag(1/sqrt(lambda)) V^H from the
// eigendecomposition of A; B is itself Hermitian positive definite, which a
// Cholesky-based whitener would not be.
CMat inv_sqrt_hermitian(const HermitianPD& a);

// a^H A^{-1} a computed through solves, never an explicit inverse.
// The result is real for Hermitian A; imaginary leakage is discarded.
double solve_quadratic_form(const HermitianPD& a, const CVec& v);

} // namespace rknn

#endif
