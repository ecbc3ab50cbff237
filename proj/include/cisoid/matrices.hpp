#ifndef CISOID_MATRICES_HPP
#define CISOID_MATRICES_HPP

#include <sstream>
#include <vector>

#include <Eigen/Core>

#include "cisoid/model.hpp"
#include "cisoid/types.hpp"

namespace cisoid {

///
/// Rectangular Hankel matrix H_L(x_0, ..., x_{N-1}) of size L x (N - L + 1),
/// with entry (i, j) = x[i + j].
///
template <typename Derived>
DenseMatrix<typename Derived::Scalar> hankel(Index L, const Eigen::MatrixBase<Derived>& x)
{
    static_assert(Derived::IsVectorAtCompileTime, "hankel expects a vector");
    const Index N = x.size();
    if (L < 1 || L > N) {
        std::ostringstream os;
        os << "Hankel row count L = " << L << " outside [1, " << N << "]";
        throw ValidationError(os.str());
    }
    DenseMatrix<typename Derived::Scalar> H(L, N - L + 1);
    for (Index j = 0; j < H.cols(); ++j) {
        H.col(j) = x.segment(j, L);
    }
    return H;
}

/// L x K Vandermonde matrix with entry (i, k) = nodes[k]^i.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> vandermonde(Index L, const Eigen::MatrixBase<Derived>& nodes)
{
    static_assert(Derived::IsVectorAtCompileTime, "vandermonde expects a vector of nodes");
    if (L < 1) {
        throw ValidationError("Vandermonde row count must be >= 1");
    }
    DenseMatrix<typename Derived::Scalar> V(L, nodes.size());
    V.row(0).setOnes();
    for (Index i = 1; i < L; ++i) {
        V.row(i) = V.row(i - 1).cwiseProduct(nodes.transpose());
    }
    return V;
}

/// Minimum wrap-around distance between frequencies in [0, fs). Needs K >= 2.
Real wraparound_separation(const std::vector<Real>& freqs, Real fs);

/// ||H_L(x) - V_L diag(alpha) V_{N-L+1}^T||_F / ||H_L(x)||_F for the noiseless signal.
Real hankel_factorization_residual(const SignalModel& model, Index L);

} // namespace cisoid

#endif // CISOID_MATRICES_HPP
