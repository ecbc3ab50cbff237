#include <doctest.h>

#include <algorithm>
#include <random>

#include <Eigen/Eigenvalues>

#include "cisoid/linalg.hpp"
#include "cisoid/matrices.hpp"

using namespace cisoid;

namespace {

ComplexMatrix random_matrix(Index r, Index c, std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    ComplexMatrix A(r, c);
    for (Index i = 0; i < r; ++i) {
        for (Index j = 0; j < c; ++j) {
            A(i, j) = Complex(g(rng), g(rng));
        }
    }
    return A;
}

// Sorted by real part, then imaginary part.
std::vector<Complex> sorted(std::vector<Complex> v)
{
    std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return v;
}

std::vector<Complex> finite_values(const std::vector<ExtendedComplex>& v)
{
    std::vector<Complex> out;
    for (const auto& z : v) {
        out.push_back(z.value());
    }
    return out;
}

} // namespace

TEST_CASE("svd: diagonal examples")
{
    CHECK(svd(ComplexMatrix::Identity(2, 2)).S.isApprox(RealVector::Ones(2)));
    ComplexMatrix D = ComplexMatrix::Zero(2, 2);
    D(0, 0) = 3.0;
    const RealVector s = singular_values(D);
    CHECK(s(0) == doctest::Approx(3.0));
    CHECK(s(1) == 0.0);
    CHECK(std::isinf(condition_number(D)));
    CHECK_THROWS_AS(svd(ComplexMatrix(0, 0)), ValidationError);
}

TEST_CASE("svd: Hankel example against frozen values and the Gram matrix")
{
    RealVector x(4);
    x << 1, 2, 3, 4;
    const ComplexMatrix H = hankel(2, x).cast<Complex>();
    const RealVector s = singular_values(H);
    CHECK(s(0) == doctest::Approx(6.5467556364426668525).epsilon(1e-14));
    CHECK(s(1) == doctest::Approx(0.37415322624049639527).epsilon(1e-13));

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> gram(H * H.adjoint());
    RealVector ev = gram.eigenvalues().cwiseSqrt().reverse();
    CHECK((ev - s).norm() < 1e-10);
}

TEST_CASE("svd: reconstruction and orthonormality")
{
    std::mt19937_64 rng(1);
    for (auto [r, c] : {std::pair<Index, Index>{5, 3}, {3, 5}, {6, 6}, {1, 4}}) {
        const ComplexMatrix A = random_matrix(r, c, rng);
        const SvdFactors full = svd(A, SvdMode::Full);
        CHECK(full.U.rows() == r);
        CHECK(full.U.cols() == r);
        CHECK(full.W.rows() == c);
        CHECK(full.W.cols() == c);
        CHECK((full.U.adjoint() * full.U - ComplexMatrix::Identity(r, r)).norm() < 1e-12);
        CHECK((full.W.adjoint() * full.W - ComplexMatrix::Identity(c, c)).norm() < 1e-12);
        for (Index i = 1; i < full.S.size(); ++i) {
            CHECK(full.S(i - 1) >= full.S(i));
        }
        const SvdFactors thin = svd(A, SvdMode::Thin);
        const Index k = std::min(r, c);
        CHECK(thin.U.cols() == k);
        CHECK(thin.W.cols() == k);
        CHECK((thin.U * thin.S.cast<Complex>().asDiagonal() * thin.W.adjoint() - A).norm() < 1e-12 * A.norm());
    }
}

TEST_CASE("eig")
{
    ComplexMatrix D = ComplexMatrix::Zero(2, 2);
    D(0, 0) = 0.5;
    D(1, 1) = 0.9;
    const ComplexVector e = eig(D);
    auto s = sorted({e(0), e(1)});
    CHECK(std::abs(s[0] - 0.5) < 1e-15);
    CHECK(std::abs(s[1] - 0.9) < 1e-15);

    ComplexMatrix nil = ComplexMatrix::Zero(2, 2);
    nil(0, 1) = 1.0;
    const ComplexVector z = eig(nil);
    CHECK(z.norm() < 1e-15);

    // companion matrix of (z - 0.9)(z + 0.3) = z^2 - 0.6 z - 0.27
    ComplexMatrix C(2, 2);
    C << 0.6, 0.27, 1.0, 0.0;
    const ComplexVector r = eig(C);
    s = sorted({r(0), r(1)});
    CHECK(std::abs(s[0] - (-0.3)) < 1e-14);
    CHECK(std::abs(s[1] - 0.9) < 1e-14);
}

TEST_CASE("gev: examples")
{
    ComplexMatrix D = ComplexMatrix::Zero(2, 2);
    D(0, 0) = 0.5;
    D(1, 1) = 0.9;
    const GevResult r = gev(ComplexMatrix::Identity(2, 2), D);
    CHECK(r.regular);
    const auto s = sorted(finite_values(r.eigenvalues));
    CHECK(std::abs(s[0] - 0.5) < 1e-14);
    CHECK(std::abs(s[1] - 0.9) < 1e-14);

    ComplexMatrix P1 = ComplexMatrix::Zero(2, 2);
    P1(1, 1) = 1.0;
    const GevResult inf = gev(P1, ComplexMatrix::Identity(2, 2));
    CHECK(inf.regular);
    int n_inf = 0;
    for (const auto& z : inf.eigenvalues) {
        if (z.is_infinite()) {
            ++n_inf;
        } else {
            CHECK(std::abs(z.value() - 1.0) < 1e-14);
        }
    }
    CHECK(n_inf == 1);

    const GevResult sing = gev(ComplexMatrix::Zero(1, 1), ComplexMatrix::Zero(1, 1));
    CHECK_FALSE(sing.regular);

    CHECK_THROWS_AS(gev(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(3, 3)), ValidationError);
}

TEST_CASE("gev: diagonal pencils and consistency with eig(P1^-1 P2)")
{
    std::mt19937_64 rng(77);
    std::normal_distribution<double> g;
    for (int rep = 0; rep < 20; ++rep) {
        ComplexVector d(4);
        for (Index i = 0; i < 4; ++i) {
            d(i) = Complex(g(rng), g(rng));
        }
        const GevResult diag = gev(ComplexMatrix::Identity(4, 4), d.asDiagonal());
        const auto a = sorted(finite_values(diag.eigenvalues));
        const auto b = sorted({d(0), d(1), d(2), d(3)});
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(std::abs(a[i] - b[i]) < 1e-12);
        }

        ComplexMatrix P1 = random_matrix(4, 4, rng) + 4.0 * ComplexMatrix::Identity(4, 4);
        const ComplexMatrix P2 = random_matrix(4, 4, rng);
        const ComplexVector ref = eig(P1.partialPivLu().solve(P2));
        const auto got = sorted(finite_values(gev(P1, P2).eigenvalues));
        const auto want = sorted({ref(0), ref(1), ref(2), ref(3)});
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(std::abs(got[i] - want[i]) < 1e-8);
        }
    }
}

TEST_CASE("lstsq")
{
    std::mt19937_64 rng(8);
    const ComplexMatrix B = random_matrix(3, 2, rng);
    CHECK((lstsq(ComplexMatrix::Identity(3, 3), B) - B).norm() < 1e-14);

    ComplexMatrix A1(2, 1);
    A1 << 1.0, 1.0;
    ComplexMatrix b1(2, 1);
    b1 << 1.0, 3.0;
    CHECK(std::abs(lstsq(A1, b1)(0, 0) - 2.0) < 1e-14);

    for (int rep = 0; rep < 10; ++rep) {
        const ComplexMatrix A = random_matrix(3, 2, rng);
        const ComplexMatrix X0 = random_matrix(2, 2, rng);
        CHECK((lstsq(A, A * X0) - X0).norm() < 1e-10);

        const ComplexMatrix Bn = random_matrix(3, 2, rng);
        const ComplexMatrix R = A * lstsq(A, Bn) - Bn;
        CHECK((A.adjoint() * R).norm() < 1e-10);
    }

    // rank deficient: minimum-norm solution
    ComplexMatrix Ar(2, 2);
    Ar << 1.0, 1.0, 1.0, 1.0;
    ComplexMatrix br(2, 1);
    br << 2.0, 2.0;
    const ComplexMatrix xr = lstsq(Ar, br);
    CHECK(std::abs(xr(0, 0) - 1.0) < 1e-12);
    CHECK(std::abs(xr(1, 0) - 1.0) < 1e-12);
}
