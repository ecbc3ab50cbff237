#include "cisoid/pencil.hpp"

#include <algorithm>
#include <sstream>

#include "cisoid/matrices.hpp"

namespace cisoid {

namespace {

void check_pencil_range(Index N, Index K, Index L)
{
    if (K < 1) {
        throw ValidationError("model order K must be >= 1");
    }
    if (N < 2 * K) {
        std::ostringstream os;
        os << "sample count N = " << N << " violates N >= 2K (K = " << K << ")";
        throw ValidationError(os.str());
    }
    if (L < K || L > N - K) {
        std::ostringstream os;
        os << "matrix pencil needs K <= L <= N - K, got L = " << L << " (K = " << K
           << ", N = " << N << ")";
        throw ValidationError(os.str());
    }
}

} // namespace

std::vector<ExtendedComplex> pencil_from_psi(const ComplexMatrix& psi1, const ComplexMatrix& psi2,
                                             GevTolerances tol)
{
    GevResult g = gev(psi1, psi2, tol);
    if (!g.regular) {
        throw NotRegularError("the pair (psi1, psi2) is not regular");
    }
    return std::move(g.eigenvalues);
}

PencilResult pencil_estimate(const ComplexVector& samples, Index K, Index L, GevTolerances tol)
{
    const Index N = samples.size();
    check_pencil_range(N, K, L);

    PencilResult r;
    auto& im = r.intermediates;
    im.X1 = hankel(L, samples.head(N - 1));
    im.X2 = hankel(L, samples.tail(N - 1));

    const SvdFactors f = svd(im.X1, SvdMode::Thin);
    const auto S1 = f.U.leftCols(K);
    const auto R1 = f.W.leftCols(K);
    im.psi1 = S1.adjoint() * im.X1 * R1;
    im.psi2 = S1.adjoint() * im.X2 * R1;

    GevResult g = gev(im.psi1, im.psi2, tol);
    im.regular = g.regular;
    if (!g.regular) {
        throw NotRegularError("the pair (psi1, psi2) is not regular");
    }
    r.estimates = std::move(g.eigenvalues);
    return r;
}

Real pencil_factorization_selfcheck(const SignalModel& model, Index L)
{
    const Index K = model.order();
    const Index N = model.num_samples();
    check_pencil_range(N, K, L);
    const ComplexVector x = synthesize(model);
    const ComplexVector z = model.node_values();
    const ComplexMatrix VL = vandermonde(L, z);
    const ComplexMatrix VR = vandermonde(N - L, z);
    const ComplexVector alpha = model.weight_values();

    const ComplexMatrix X1 = hankel(L, x.head(N - 1));
    const ComplexMatrix X2 = hankel(L, x.tail(N - 1));
    const ComplexMatrix F1 = VL * alpha.asDiagonal() * VR.transpose();
    const ComplexMatrix F2 = VL * alpha.asDiagonal() * z.asDiagonal() * VR.transpose();
    return std::max((X1 - F1).norm() / X1.norm(), (X2 - F2).norm() / X2.norm());
}

} // namespace cisoid
