#ifndef CISOID_LINALG_HPP
#define CISOID_LINALG_HPP

#include <vector>

#include "cisoid/types.hpp"

namespace cisoid {

enum class SvdMode { Full, Thin };

/// A = U diag(S) W^H with S descending.
struct SvdFactors {
    ComplexMatrix U;
    RealVector S;
    ComplexMatrix W;
};

/// Singular value decomposition (Jacobi, high relative accuracy).
SvdFactors svd(const ComplexMatrix& A, SvdMode mode = SvdMode::Full);

/// Singular values only, descending.
RealVector singular_values(const ComplexMatrix& A);

/// sigma_max / sigma_min; +inf when sigma_min is zero.
Real condition_number(const ComplexMatrix& A);

/// Eigenvalues with algebraic multiplicity, in backend order.
ComplexVector eig(const ComplexMatrix& A);

/// Generalized eigenvalues of the pair (P1, P2), i.e. lambda with P2 y = lambda P1 y.
struct GevResult {
    std::vector<ExtendedComplex> eigenvalues;
    /// Raw (alpha, beta) pairs from the QZ factorization, lambda = alpha / beta.
    ComplexVector alpha;
    ComplexVector beta;
    bool regular = true;
};

struct GevTolerances {
    Real infinite = 1e-10;
    Real regular = 1e-12;
};

GevResult gev(const ComplexMatrix& P1, const ComplexMatrix& P2, GevTolerances tol = {});

/// Minimum-norm least-squares solution A^+ B; singular values below rcond * sigma_max are dropped.
ComplexMatrix lstsq(const ComplexMatrix& A, const ComplexMatrix& B, Real rcond = 1e-12);

} // namespace cisoid

#endif // CISOID_LINALG_HPP
