#ifndef CISOID_PENCIL_HPP
#define CISOID_PENCIL_HPP

#include <vector>

#include "cisoid/linalg.hpp"
#include "cisoid/model.hpp"
#include "cisoid/types.hpp"

namespace cisoid {

struct PencilIntermediates {
    ComplexMatrix X1;   ///< H_L(x_0, ..., x_{N-2})
    ComplexMatrix X2;   ///< H_L(x_1, ..., x_{N-1})
    ComplexMatrix psi1; ///< S1^H X1 R1
    ComplexMatrix psi2; ///< S1^H X2 R1
    bool regular = true;
};

struct PencilResult {
    /// Exactly K entries; infinite entries come from the null space of psi1.
    std::vector<ExtendedComplex> estimates;
    PencilIntermediates intermediates;
};

/// Matrix pencil node estimation. Requires N >= 2K and K <= L <= N - K.
/// Throws NotRegularError when (psi1, psi2) is a singular pair.
PencilResult pencil_estimate(const ComplexVector& samples, Index K, Index L,
                             GevTolerances tol = {});

/// Generalized eigenvalues of the reduced pair (psi2 y = lambda psi1 y).
std::vector<ExtendedComplex> pencil_from_psi(const ComplexMatrix& psi1, const ComplexMatrix& psi2,
                                             GevTolerances tol = {});

/// Max relative Frobenius residual of X1 = V_L D_a V_{N-L}^T and X2 = V_L D_a D_z V_{N-L}^T.
Real pencil_factorization_selfcheck(const SignalModel& model, Index L);

} // namespace cisoid

#endif // CISOID_PENCIL_HPP
