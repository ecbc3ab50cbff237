#include "cisoid/linalg.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace cisoid {

SvdFactors svd(const ComplexMatrix& A, SvdMode mode)
{
    if (A.size() == 0) {
        throw ValidationError("svd of an empty matrix");
    }
    const unsigned int options = mode == SvdMode::Full
                                     ? Eigen::ComputeFullU | Eigen::ComputeFullV
                                     : Eigen::ComputeThinU | Eigen::ComputeThinV;
    Eigen::JacobiSVD<ComplexMatrix, Eigen::ColPivHouseholderQRPreconditioner> dec(A, options);
    SvdFactors f{dec.matrixU(), dec.singularValues(), dec.matrixV()};
    if (!f.S.allFinite()) {
        throw ComputationError("svd produced non-finite singular values");
    }
    return f;
}

RealVector singular_values(const ComplexMatrix& A)
{
    if (A.size() == 0) {
        throw ValidationError("singular values of an empty matrix");
    }
    Eigen::JacobiSVD<ComplexMatrix, Eigen::ColPivHouseholderQRPreconditioner> dec(A);
    RealVector s = dec.singularValues();
    if (!s.allFinite()) {
        throw ComputationError("svd produced non-finite singular values");
    }
    return s;
}

Real condition_number(const ComplexMatrix& A)
{
    const RealVector s = singular_values(A);
    const Real smin = s(s.size() - 1);
    return smin == 0.0 ? kInfinity : s(0) / smin;
}

ComplexVector eig(const ComplexMatrix& A)
{
    if (A.rows() != A.cols()) {
        throw ValidationError("eig requires a square matrix");
    }
    if (A.size() == 0) {
        return {};
    }
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(A, false);
    if (solver.info() != Eigen::Success) {
        throw ComputationError("eigenvalue iteration did not converge");
    }
    return solver.eigenvalues();
}

GevResult gev(const ComplexMatrix& P1, const ComplexMatrix& P2, GevTolerances tol)
{
    if (P1.rows() != P1.cols() || P2.rows() != P2.cols()) {
        throw ValidationError("gev requires square matrices");
    }
    if (P1.rows() != P2.rows()) {
        throw ValidationError("gev requires matrices of equal size");
    }
    const Index K = P1.rows();
    GevResult r;
    r.alpha.resize(K);
    r.beta.resize(K);
    if (K == 0) {
        return r;
    }

    // zggev solves A x = lambda B x; our pencil is P2 y = lambda P1 y.
    ComplexMatrix a = P2;
    ComplexMatrix b = P1;
    const auto n = static_cast<lapack_int>(K);
    const lapack_int info = LAPACKE_zggev(LAPACK_COL_MAJOR, 'N', 'N', n, a.data(), n, b.data(), n,
                                          r.alpha.data(), r.beta.data(), nullptr, 1, nullptr, 1);
    if (info != 0) {
        std::ostringstream os;
        os << "QZ iteration failed (zggev info = " << info << ")";
        throw ComputationError(os.str());
    }

    const Real pair_norm = std::sqrt(P1.squaredNorm() + P2.squaredNorm());
    r.eigenvalues.reserve(static_cast<std::size_t>(K));
    for (Index i = 0; i < K; ++i) {
        const Real abs_a = std::abs(r.alpha(i));
        const Real abs_b = std::abs(r.beta(i));
        if (abs_a <= tol.regular * pair_norm && abs_b <= tol.regular * pair_norm) {
            r.regular = false;
        }
        if (abs_b <= tol.infinite * (abs_a + abs_b)) {
            r.eigenvalues.push_back(ExtendedComplex::infinity());
        } else {
            r.eigenvalues.emplace_back(r.alpha(i) / r.beta(i));
        }
    }
    return r;
}

ComplexMatrix lstsq(const ComplexMatrix& A, const ComplexMatrix& B, Real rcond)
{
    if (A.rows() != B.rows()) {
        throw ValidationError("lstsq: A and B must have the same number of rows");
    }
    if (A.size() == 0) {
        return ComplexMatrix::Zero(A.cols(), B.cols());
    }
    const SvdFactors f = svd(A, SvdMode::Thin);
    const Real cutoff = rcond * f.S(0);
    Index rank = 0;
    while (rank < f.S.size() && f.S(rank) > cutoff) {
        ++rank;
    }
    const RealVector inv = f.S.head(rank).cwiseInverse();
    return f.W.leftCols(rank) * inv.asDiagonal() * (f.U.leftCols(rank).adjoint() * B);
}

} // namespace cisoid
