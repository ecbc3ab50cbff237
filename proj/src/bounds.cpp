#include "cisoid/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cisoid/linalg.hpp"
#include "cisoid/matrices.hpp"

namespace cisoid {

namespace {

constexpr Real kSqrt2 = std::numbers::sqrt2;

struct Extremes {
    Real sigma_min = 0.0;
    Real sigma_max = 0.0;
    bool available = true;
};

// Extreme singular values of V_rows, either exact or from the closed-form bounds.
class VandermondeOracle {
public:
    VandermondeOracle(const SignalModel& model, VandermondeSource source)
        : model_(model), source_(source), nodes_(model.node_values())
    {
        if (source_ == VandermondeSource::Analytic && model.order() >= 2) {
            delta_ = wraparound_separation(model.frequencies(), model.sampling_frequency());
        }
    }

    Extremes operator()(Index rows, std::map<std::string, bool>& conditions) const
    {
        if (source_ == VandermondeSource::Numeric) {
            const RealVector s = singular_values(vandermonde(rows, nodes_));
            const Real smin = s(s.size() - 1);
            if (!(smin > 0.0)) {
                throw ComputationError("Vandermonde matrix is singular (coincident nodes)");
            }
            return {smin, s(0), true};
        }
        std::ostringstream key;
        key << "vandermonde_bounds_valid_" << rows;
        if (model_.order() < 2) {
            conditions["K_at_least_2"] = false;
            return {0.0, 0.0, false};
        }
        const auto b =
            vandermonde_singular_bounds(model_.d_max(), delta_, rows, model_.sampling_frequency());
        conditions[key.str()] = b.valid();
        if (!b.valid()) {
            return {0.0, 0.0, false};
        }
        return {std::sqrt(b.sigma_min_sq_lower), std::sqrt(b.sigma_max_sq_upper), true};
    }

private:
    const SignalModel& model_;
    VandermondeSource source_;
    ComplexVector nodes_;
    Real delta_ = 0.0;
};

void common_ingredients(BoundReport& r, const SignalModel& model, Real noise_norm, Index L)
{
    r.ingredients["alpha_min"] = model.alpha_min();
    r.ingredients["alpha_max"] = model.alpha_max();
    r.ingredients["A_min"] = model.a_min();
    r.ingredients["d_max"] = model.d_max();
    if (model.order() >= 2) {
        r.ingredients["delta"] = wraparound_separation(model.frequencies(), model.sampling_frequency());
    }
    r.ingredients["noise_norm"] = noise_norm;
    r.ingredients["N"] = static_cast<Real>(model.num_samples());
    r.ingredients["L"] = static_cast<Real>(L);
    r.ingredients["K"] = static_cast<Real>(model.order());
}

void check_noise(Real noise_norm)
{
    if (!(noise_norm >= 0.0) || !std::isfinite(noise_norm)) {
        throw ValidationError("noise norm must be finite and >= 0");
    }
}

bool all_met(const std::map<std::string, bool>& conditions)
{
    return std::ranges::all_of(conditions, [](const auto& kv) { return kv.second; });
}

} // namespace

const char* to_string(BoundCase c)
{
    switch (c) {
    case BoundCase::EspritCase1: return "esprit_case1";
    case BoundCase::PencilCase2: return "pencil_case2";
    case BoundCase::PencilCorollary: return "pencil_corollary";
    case BoundCase::VandermondeThm2: return "vandermonde";
    }
    return "unknown";
}

VandermondeSingularBounds vandermonde_singular_bounds(Real d_max, Real delta, Index rows, Real fs)
{
    VandermondeSingularBounds b;
    const Real m = static_cast<Real>(rows - 1);
    b.damping_gate = rows >= 2 && d_max < 1.0 / m;
    if (b.damping_gate) {
        const Real shrink = m * (1.0 - d_max * m);
        b.separation_gate = delta > kSieveConstant * fs / shrink;
        const Real sieve = kSieveConstant * fs / delta;
        b.sigma_min_sq_lower = shrink - sieve;
        b.sigma_max_sq_upper = m + sieve;
        if (b.separation_gate) {
            b.kappa_upper = std::sqrt(b.sigma_max_sq_upper / b.sigma_min_sq_lower);
        }
    }
    return b;
}

BoundReport esprit_bound(const SignalModel& model, Real noise_norm, Index L, VandermondeSource source)
{
    check_noise(noise_norm);
    const Index K = model.order();
    const Index N = model.num_samples();
    if (L < K + 1 || L > N - K) {
        throw ValidationError("ESPRIT bound needs K + 1 <= L <= N - K");
    }
    BoundReport r;
    r.bound_case = BoundCase::EspritCase1;
    common_ingredients(r, model, noise_norm, L);

    const VandermondeOracle oracle(model, source);
    const Extremes vl = oracle(L, r.conditions);
    const Extremes vlm1 = oracle(L - 1, r.conditions);
    const Extremes vr = oracle(N - L + 1, r.conditions);
    if (!(vl.available && vlm1.available && vr.available)) {
        r.preconditions_met = false;
        return r;
    }
    r.ingredients["sigma_min_VL"] = vl.sigma_min;
    r.ingredients["sigma_max_VL"] = vl.sigma_max;
    r.ingredients["sigma_min_VLm1"] = vlm1.sigma_min;
    r.ingredients["sigma_min_VNmLp1"] = vr.sigma_min;

    const Real rows = static_cast<Real>(std::min(L, N - L + 1));
    const Real gamma = std::sqrt(rows) * noise_norm / (model.alpha_min() * vl.sigma_min * vr.sigma_min);
    const Real beta = vl.sigma_max / vlm1.sigma_min;
    const Real kappa = vl.sigma_max / vl.sigma_min;
    const Real threshold = 1.0 / (1.0 + kSqrt2 * beta);
    r.gamma = gamma;
    r.beta = beta;
    r.ingredients["kappa_VL"] = kappa;
    r.ingredients["gamma_threshold"] = threshold;

    r.conditions["gamma_below_threshold"] = gamma < threshold;
    r.preconditions_met = all_met(r.conditions);
    if (r.preconditions_met) {
        r.bound_value = static_cast<Real>(2 * K - 1) * kSqrt2 * beta * gamma /
                        (1.0 - (1.0 + kSqrt2 * beta) * gamma) * (1.0 + kappa) * kappa;
    }
    return r;
}

BoundReport pencil_bound(const SignalModel& model, Real noise_norm, Index L, VandermondeSource source)
{
    check_noise(noise_norm);
    const Index K = model.order();
    const Index N = model.num_samples();
    if (L < K || L > N - K) {
        throw ValidationError("pencil bound needs K <= L <= N - K");
    }
    BoundReport r;
    r.bound_case = BoundCase::PencilCase2;
    common_ingredients(r, model, noise_norm, L);

    const VandermondeOracle oracle(model, source);
    const Extremes vl = oracle(L, r.conditions);
    const Extremes vr = oracle(N - L, r.conditions);
    if (!(vl.available && vr.available)) {
        r.preconditions_met = false;
        return r;
    }
    r.ingredients["sigma_min_VL"] = vl.sigma_min;
    r.ingredients["sigma_max_VL"] = vl.sigma_max;
    r.ingredients["sigma_min_VNmL"] = vr.sigma_min;
    r.ingredients["sigma_max_VNmL"] = vr.sigma_max;

    const Real rows = static_cast<Real>(std::min(L, N - L));
    const Real gamma = std::sqrt(rows) * noise_norm / (model.alpha_min() * vl.sigma_min * vr.sigma_min);
    const Real kappa_l = vl.sigma_max / vl.sigma_min;
    const Real kappa_r = vr.sigma_max / vr.sigma_min;
    const Real a_min = model.a_min();
    r.gamma = gamma;
    r.ingredients["kappa_VL"] = kappa_l;
    r.ingredients["kappa_VNmL"] = kappa_r;

    r.conditions["gamma_below_one"] = gamma < 1.0;
    r.preconditions_met = all_met(r.conditions);
    if (r.preconditions_met) {
        const Real spread = model.alpha_max() / model.alpha_min();
        r.bound_value = static_cast<Real>(2 * K - 1) * gamma / std::sqrt(1.0 + a_min * a_min) *
                        (2.0 * kSqrt2 / (1.0 - gamma) * spread * kappa_l * kappa_r +
                         (1.0 + kSqrt2 * gamma / (1.0 - gamma)));
    }
    return r;
}

BoundReport pencil_corollary(const BoundReport& pencil_report, const ComplexVector& nodes)
{
    if (pencil_report.bound_case != BoundCase::PencilCase2) {
        throw ValidationError("corollary needs a matrix pencil bound report");
    }
    BoundReport r;
    r.bound_case = BoundCase::PencilCorollary;
    r.gamma = pencil_report.gamma;
    r.ingredients = pencil_report.ingredients;
    r.conditions = pencil_report.conditions;
    r.conditions["pencil_case2_met"] = pencil_report.preconditions_met && pencil_report.bound_value.has_value();
    if (!r.conditions["pencil_case2_met"]) {
        r.preconditions_met = false;
        return r;
    }
    const Real d = *pencil_report.bound_value;
    r.d = d;
    r.conditions["d_below_inv_sqrt2"] = d < 1.0 / kSqrt2;
    r.preconditions_met = all_met(r.conditions);
    if (!r.preconditions_met) {
        return r;
    }
    r.eta.reserve(static_cast<std::size_t>(nodes.size()));
    for (Index k = 0; k < nodes.size(); ++k) {
        const Real a = std::abs(nodes(k));
        const Real q = 1.0 - d * d * (1.0 + a * a);
        r.eta.push_back(d * std::sqrt(1.0 - d * d) * (1.0 + a * a) / q + (1.0 - 1.0 / q) * a);
    }
    r.bound_value = *std::ranges::max_element(r.eta);
    return r;
}

std::vector<Real> pencil_euclidean_bound(const BoundReport& pencil_report, const ComplexVector& nodes)
{
    BoundReport r = pencil_corollary(pencil_report, nodes);
    if (!r.preconditions_met) {
        std::ostringstream os;
        os << "Euclidean pencil bound needs d < 1/sqrt(2)";
        if (r.d) {
            os << ", got d = " << *r.d;
        }
        throw ValidationError(os.str());
    }
    return std::move(r.eta);
}

BoundReport vandermonde_bounds(const std::vector<Node>& nodes, Index N, Real fs)
{
    if (nodes.size() < 2) {
        throw ValidationError("Vandermonde bounds need at least two nodes");
    }
    if (N < 1) {
        throw ValidationError("Vandermonde row count must be >= 1");
    }
    std::vector<Real> freqs;
    Real d_max = 0.0;
    for (const auto& n : nodes) {
        freqs.push_back(n.frequency(fs));
        d_max = std::max(d_max, n.damping());
    }
    const Real delta = wraparound_separation(freqs, fs);
    const auto b = vandermonde_singular_bounds(d_max, delta, N, fs);

    BoundReport r;
    r.bound_case = BoundCase::VandermondeThm2;
    r.ingredients["N"] = static_cast<Real>(N);
    r.ingredients["K"] = static_cast<Real>(nodes.size());
    r.ingredients["Fs"] = fs;
    r.ingredients["d_max"] = d_max;
    r.ingredients["delta"] = delta;
    r.conditions["d_max_gate"] = b.damping_gate;
    r.conditions["delta_gate"] = b.separation_gate;
    r.preconditions_met = b.valid();
    if (r.preconditions_met) {
        r.ingredients["sigma_min_sq_lower"] = b.sigma_min_sq_lower;
        r.ingredients["sigma_max_sq_upper"] = b.sigma_max_sq_upper;
        r.ingredients["kappa_upper"] = b.kappa_upper;
        r.bound_value = b.kappa_upper;
    }
    return r;
}

} // namespace cisoid
