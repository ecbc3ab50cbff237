#include <doctest.h>

#include <numbers>
#include <random>

#include <Eigen/QR>

#include "cisoid/esprit.hpp"
#include "cisoid/metrics.hpp"
#include "cisoid/model.hpp"

using namespace cisoid;

namespace {

Real matched_error(const ComplexVector& truth, const ComplexVector& est)
{
    return match_nodes(truth, std::vector<ExtendedComplex>(est.begin(), est.end()), MatchMetric::Euclidean)
        .max_euclidean;
}

Complex cis(Real r, Real f)
{
    return std::polar(r, 2.0 * std::numbers::pi * f);
}

} // namespace

TEST_CASE("esprit: noiseless examples")
{
    const SignalModel constant({Node(1.0)}, {1.0}, 4);
    auto r = esprit_estimate(synthesize(constant), 1, 2);
    REQUIRE(r.estimates.size() == 1);
    CHECK(std::abs(r.estimates(0) - 1.0) < 1e-10);

    const SignalModel half({Node(0.5)}, {2.0}, 8);
    r = esprit_estimate(synthesize(half), 1, 4);
    CHECK(std::abs(r.estimates(0) - 0.5) < 1e-8);
    CHECK(r.intermediates.data_matrix.rows() == 4);
    CHECK(r.intermediates.data_matrix.cols() == 5);
    CHECK(r.intermediates.signal_basis.cols() == 1);

    const SignalModel two({Node(cis(0.9, 0.1)), Node(cis(0.8, 0.6))}, {1.0, 1.0}, 32);
    r = esprit_estimate(synthesize(two), 2, 16);
    CHECK(matched_error(two.node_values(), r.estimates) < 1e-6);
    CHECK(r.intermediates.phi.rows() == 2);
}

TEST_CASE("esprit: window validation")
{
    const SignalModel m({Node(0.9), Node(-0.5)}, {1.0, 1.0}, 8);
    const ComplexVector x = synthesize(m);
    CHECK_THROWS_AS(esprit_estimate(x, 2, 2), ValidationError); // L = K is not enough
    CHECK_THROWS_AS(esprit_estimate(x, 2, 7), ValidationError);
    CHECK_THROWS_AS(esprit_estimate(x, 5, 4), ValidationError);
    CHECK_THROWS_AS(esprit_estimate(x, 0, 4), ValidationError);
    CHECK_NOTHROW(esprit_estimate(x, 2, 3));
    CHECK_NOTHROW(esprit_estimate(x, 2, 6));
}

TEST_CASE("esprit: selfcheck")
{
    const SignalModel k1({Node(cis(0.95, 0.3))}, {Complex(0.0, 1.5)}, 12);
    for (Index L = 2; L <= 11; ++L) {
        CHECK(esprit_selfcheck_noiseless(k1, L) < 1e-10);
    }
    const SignalModel k3({Node(cis(0.99, 0.05)), Node(cis(1.0, 0.4)), Node(cis(0.9, 0.7))},
                         {1.0, Complex(0.3, 0.4), 2.0}, 30);
    CHECK(esprit_selfcheck_noiseless(k3, 15) < 1e-6);
}

TEST_CASE("esprit: noiseless exactness over random models and windows")
{
    std::mt19937_64 rng(2718);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 60; ++rep) {
        const Index K = 1 + rep % 5;
        std::vector<Node> nodes;
        std::vector<Complex> w;
        for (Index k = 0; k < K; ++k) {
            nodes.push_back(Node::from_damping_frequency(0.05 * u(rng), (static_cast<double>(k) + 0.5 * u(rng)) / K, 1.0));
            w.push_back(std::polar(0.5 + 1.5 * u(rng), 6.28 * u(rng)));
        }
        const Index N = 2 * K + 2 + static_cast<Index>(u(rng) * 30);
        const SignalModel m(nodes, w, N);
        for (Index L = K + 1; L <= N - K; ++L) {
            CHECK(esprit_selfcheck_noiseless(m, L) < 1e-6);
        }
    }
}

TEST_CASE("esprit: basis invariance and weight-scaling covariance")
{
    const SignalModel m({Node(cis(0.97, 0.12)), Node(cis(0.9, 0.45)), Node(cis(1.0, 0.8))},
                        {1.0, Complex(0.0, -0.7), 1.3}, 24);
    const MeasurementVector mv = inject_noise(synthesize(m), 1e-3, 12);
    const EspritResult base = esprit_estimate(mv.samples, 3, 12);

    std::mt19937_64 rng(4);
    std::normal_distribution<double> g;
    ComplexMatrix G(3, 3);
    for (Index i = 0; i < 3; ++i) {
        for (Index j = 0; j < 3; ++j) {
            G(i, j) = Complex(g(rng), g(rng));
        }
    }
    const ComplexMatrix Q = G.householderQr().householderQ();
    const ComplexVector rotated = esprit_from_basis(base.intermediates.signal_basis * Q);
    CHECK(matched_error(base.estimates, rotated) < 1e-8);

    const ComplexVector scaled = esprit_estimate(mv.samples * Complex(-2.5, 4.0), 3, 12).estimates;
    CHECK(matched_error(base.estimates, scaled) < 1e-8);
}
