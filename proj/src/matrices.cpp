#include "cisoid/matrices.hpp"

#include <algorithm>
#include <cmath>

namespace cisoid {

Real wraparound_separation(const std::vector<Real>& freqs, Real fs)
{
    if (freqs.size() < 2) {
        throw ValidationError("wrap-around separation needs at least two frequencies");
    }
    if (!(fs > 0.0)) {
        throw ValidationError("sampling frequency must be > 0");
    }
    for (Real f : freqs) {
        if (!(f >= 0.0 && f < fs)) {
            throw ValidationError("frequencies must lie in [0, Fs)");
        }
    }
    Real delta = kInfinity;
    for (std::size_t k = 0; k < freqs.size(); ++k) {
        for (std::size_t l = k + 1; l < freqs.size(); ++l) {
            for (int n = -1; n <= 1; ++n) {
                delta = std::min(delta, std::abs(freqs[k] - freqs[l] + n * fs));
            }
        }
    }
    return delta;
}

Real hankel_factorization_residual(const SignalModel& model, Index L)
{
    const Index K = model.order();
    const Index N = model.num_samples();
    if (L < K || L > N - K) {
        throw ValidationError("L must satisfy K <= L <= N - K");
    }
    const ComplexVector z = model.node_values();
    const ComplexMatrix X = hankel(L, synthesize(model));
    const ComplexMatrix F =
        vandermonde(L, z) * model.weight_values().asDiagonal() * vandermonde(N - L + 1, z).transpose();
    return (X - F).norm() / X.norm();
}

} // namespace cisoid
