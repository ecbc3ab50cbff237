#include "cisoid/esprit.hpp"

#include <sstream>

#include "cisoid/linalg.hpp"
#include "cisoid/matrices.hpp"
#include "cisoid/metrics.hpp"

namespace cisoid {

namespace {

void check_esprit_range(Index N, Index K, Index L)
{
    if (K < 1) {
        throw ValidationError("model order K must be >= 1");
    }
    if (N < 2 * K) {
        std::ostringstream os;
        os << "sample count N = " << N << " violates N >= 2K (K = " << K << ")";
        throw ValidationError(os.str());
    }
    if (L < K + 1 || L > N - K) {
        std::ostringstream os;
        os << "ESPRIT needs K + 1 <= L <= N - K, got L = " << L << " (K = " << K << ", N = " << N
           << ")";
        throw ValidationError(os.str());
    }
}

} // namespace

ComplexVector esprit_from_basis(const ComplexMatrix& signal_basis, ComplexMatrix* phi)
{
    const Index L = signal_basis.rows();
    if (L < 2) {
        throw ValidationError("signal basis needs at least two rows");
    }
    ComplexMatrix shift = lstsq(signal_basis.topRows(L - 1), signal_basis.bottomRows(L - 1));
    ComplexVector z = eig(shift);
    if (phi != nullptr) {
        *phi = std::move(shift);
    }
    return z;
}

EspritResult esprit_estimate(const ComplexVector& samples, Index K, Index L)
{
    check_esprit_range(samples.size(), K, L);
    EspritResult r;
    r.intermediates.data_matrix = hankel(L, samples);
    const SvdFactors f = svd(r.intermediates.data_matrix, SvdMode::Thin);
    r.intermediates.signal_basis = f.U.leftCols(K);
    r.estimates = esprit_from_basis(r.intermediates.signal_basis, &r.intermediates.phi);
    return r;
}

Real esprit_selfcheck_noiseless(const SignalModel& model, Index L)
{
    const EspritResult r = esprit_estimate(synthesize(model), model.order(), L);
    std::vector<ExtendedComplex> est(r.estimates.begin(), r.estimates.end());
    return match_nodes(model.node_values(), est, MatchMetric::Euclidean).max_euclidean;
}

} // namespace cisoid
