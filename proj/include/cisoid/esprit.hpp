#ifndef CISOID_ESPRIT_HPP
#define CISOID_ESPRIT_HPP

#include "cisoid/model.hpp"
#include "cisoid/types.hpp"

namespace cisoid {

struct EspritIntermediates {
    ComplexMatrix data_matrix;  ///< L x (N - L + 1) Hankel matrix of the samples
    ComplexMatrix signal_basis; ///< leading K left singular vectors
    ComplexMatrix phi;          ///< K x K least-squares shift operator
};

struct EspritResult {
    ComplexVector estimates; ///< eigenvalues of phi, unsorted
    EspritIntermediates intermediates;
};

///
/// LS-ESPRIT node estimation.
///
/// The signal basis S (leading K left singular vectors of H_L(samples)) is
/// split into its first and last L - 1 rows; the shift operator solves
/// S_first * phi = S_last in the minimum-norm least-squares sense and its
/// eigenvalues are the node estimates.
///
/// Requires N >= 2K and K + 1 <= L <= N - K.
///
EspritResult esprit_estimate(const ComplexVector& samples, Index K, Index L);

/// Eigenvalues of the shift operator of an arbitrary L x K basis.
ComplexVector esprit_from_basis(const ComplexMatrix& signal_basis,
                                ComplexMatrix* phi = nullptr);

/// Max matched Euclidean error of ESPRIT on the noiseless signal of `model`.
Real esprit_selfcheck_noiseless(const SignalModel& model, Index L);

} // namespace cisoid

#endif // CISOID_ESPRIT_HPP
