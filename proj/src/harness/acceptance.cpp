#include "cisoid/harness/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numbers>
#include <random>
#include <numeric>
#include <ostream>
#include <cstdio>

#include "cisoid/bounds.hpp"
#include "cisoid/esprit.hpp"
#include "cisoid/linalg.hpp"
#include "cisoid/matrices.hpp"
#include "cisoid/metrics.hpp"
#include "cisoid/pencil.hpp"
#include "cisoid/harness/config.hpp"
#include "cisoid/harness/experiment.hpp"

namespace cisoid::harness {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

Index uniform_index(std::mt19937_64& rng, Index lo, Index hi)
{
    return std::uniform_int_distribution<Index>(lo, hi)(rng);
}

Real log_uniform(std::mt19937_64& rng, Real lo, Real hi)
{
    std::uniform_real_distribution<Real> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
}

// Randomized ground truth used by the exactness and dominance criteria.
RandomModelSpec standard_spec(Index K)
{
    RandomModelSpec s;
    s.K = K;
    s.separation = 0.05;
    s.damping_min = 0.0;
    s.damping_max = 0.05;
    s.weight_min = 0.5;
    s.weight_max = 2.0;
    return s;
}

CriterionResult named(int id, std::string name)
{
    CriterionResult r;
    r.id = id;
    r.name = std::move(name);
    return r;
}

std::string fmt(const char* format, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

// Min-max assignment by depth-first enumeration in lexicographic order;
// the first optimum met is the lexicographically smallest.
struct OracleAssignment {
    std::vector<Index> permutation;
    Real cost = kInfinity;
};

OracleAssignment enumerate_assignments(const DenseMatrix<Real>& cost)
{
    const Index K = cost.rows();
    OracleAssignment best;
    std::vector<Index> current;
    std::vector<bool> used(static_cast<std::size_t>(K), false);
    std::function<void(Real)> visit = [&](Real running) {
        const auto k = static_cast<Index>(current.size());
        if (k == K) {
            if (best.permutation.empty() || running < best.cost) {
                best.permutation = current;
                best.cost = running;
            }
            return;
        }
        for (Index j = 0; j < K; ++j) {
            if (used[static_cast<std::size_t>(j)]) {
                continue;
            }
            used[static_cast<std::size_t>(j)] = true;
            current.push_back(j);
            visit(std::max(running, cost(k, j)));
            current.pop_back();
            used[static_cast<std::size_t>(j)] = false;
        }
    };
    visit(0.0);
    return best;
}

bool non_decreasing(const std::vector<Real>& v)
{
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (!(v[i] >= v[i - 1])) {
            return false;
        }
    }
    return true;
}

Real value_or_inf(const BoundReport& r) { return r.bound_value ? *r.bound_value : kInfinity; }

std::vector<std::string> read_lines(const std::filesystem::path& p)
{
    std::ifstream in(p);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        lines.push_back(line);
    }
    return lines;
}

} // namespace

CriterionResult check_noiseless_exactness(std::uint64_t seed)
{
    const auto start = Clock::now();
    CriterionResult res = named(1, "noiseless exactness (ESPRIT and matrix pencil)");
    std::mt19937_64 rng(mix_seed(seed, 1));
    constexpr int kModels = 200;
    constexpr Real kTol = 1e-6;
    Real worst_esprit = 0.0;
    Real worst_pencil = 0.0;
    int failures = 0;
    for (int m = 0; m < kModels; ++m) {
        const Index K = uniform_index(rng, 1, 5);
        const Index N = uniform_index(rng, 2 * K + 2, 64);
        const SignalModel model = draw_random_model(standard_spec(K), N, 1.0, rng());
        if (K >= 2 && wraparound_separation(model.frequencies(), 1.0) < 0.05) {
            ++failures;
            continue;
        }
        const ComplexVector x = synthesize(model);
        const ComplexVector truth = model.node_values();

        const Index L_esprit = uniform_index(rng, K + 1, N - K);
        const auto esprit = esprit_estimate(x, K, L_esprit);
        const std::vector<ExtendedComplex> ez(esprit.estimates.begin(), esprit.estimates.end());
        const Real e1 = match_nodes(truth, ez, MatchMetric::Euclidean).max_euclidean;

        const Index L_pencil = uniform_index(rng, K, N - K);
        Real e2 = kInfinity;
        try {
            e2 = match_nodes(truth, pencil_estimate(x, K, L_pencil).estimates, MatchMetric::Euclidean)
                     .max_euclidean;
        } catch (const NotRegularError&) {
        }
        worst_esprit = std::max(worst_esprit, e1);
        worst_pencil = std::max(worst_pencil, e2);
        failures += (e1 < kTol ? 0 : 1) + (e2 < kTol ? 0 : 1);
    }
    res.seconds = seconds_since(start);
    res.passed = failures == 0 && res.seconds < 30.0;
    res.detail = fmt("%d models, worst ESPRIT error %.3e, worst pencil error %.3e (tol 1e-6), %d failures",
                     kModels, worst_esprit, worst_pencil, failures);
    return res;
}

CriterionResult check_esprit_dominance(std::uint64_t seed)
{
    const auto start = Clock::now();
    CriterionResult res = named(2, "ESPRIT error bound dominance");
    std::mt19937_64 rng(mix_seed(seed, 2));
    constexpr int kRequired = 500;
    int gated = 0;
    int violations = 0;
    int attempts = 0;
    Real worst_ratio = 0.0;
    while (gated < kRequired && attempts < 20 * kRequired) {
        ++attempts;
        const Index K = uniform_index(rng, 1, 5);
        const Index N = uniform_index(rng, 2 * K + 2, 64);
        const Index L = uniform_index(rng, K + 1, N - K);
        const SignalModel model = draw_random_model(standard_spec(K), N, 1.0, rng());
        const BoundReport unit = esprit_bound(model, 1.0, L);
        const Real target = 0.999 * log_uniform(rng, 1e-6, 1.0) * unit.ingredients.at("gamma_threshold");
        const Real energy = target / *unit.gamma;

        const ExperimentRecord rec = run_trial(model, energy, rng(), {{Algorithm::Esprit}, L});
        const AlgorithmOutcome& o = rec.outcomes.front();
        if (!o.gated) {
            continue;
        }
        ++gated;
        violations += o.dominated ? 0 : 1;
        worst_ratio = std::max(worst_ratio, o.matched_error / *o.bound->bound_value);
    }
    res.seconds = seconds_since(start);
    res.passed = gated >= kRequired && violations == 0 && res.seconds < 120.0;
    res.detail = fmt("%d gated trials, %d violations, max error/bound %.3e", gated, violations, worst_ratio);
    return res;
}

std::pair<CriterionResult, CriterionResult> check_pencil_dominance(std::uint64_t seed)
{
    const auto start = Clock::now();
    CriterionResult chordal_res = named(3, "matrix pencil chordal bound dominance");
    CriterionResult euclid_res = named(4, "matrix pencil Euclidean (corollary) dominance");
    std::mt19937_64 rng(mix_seed(seed, 3));
    constexpr int kRequired = 500;
    constexpr int kMinCorollary = 50;
    int gated = 0;
    int violations = 0;
    int not_regular = 0;
    int corollary_gated = 0;
    int corollary_violations = 0;
    int attempts = 0;
    Real worst_ratio = 0.0;
    while (gated < kRequired && attempts < 20 * kRequired) {
        ++attempts;
        const Index K = uniform_index(rng, 1, 5);
        const Index N = uniform_index(rng, 2 * K + 2, 64);
        const Index L = uniform_index(rng, K, N - K);
        const SignalModel model = draw_random_model(standard_spec(K), N, 1.0, rng());
        const BoundReport unit = pencil_bound(model, 1.0, L);
        const Real energy = 0.999 * log_uniform(rng, 1e-7, 1.0) / *unit.gamma;

        const ExperimentRecord rec = run_trial(model, energy, rng(), {{Algorithm::Pencil}, L});
        const AlgorithmOutcome& o = rec.outcomes.front();
        if (o.status == TrialStatus::NotRegular) {
            ++not_regular;
            continue;
        }
        if (!o.gated) {
            continue;
        }
        ++gated;
        violations += o.dominated ? 0 : 1;
        worst_ratio = std::max(worst_ratio, o.matched_error / *o.bound->bound_value);
        if (o.corollary_gated.value_or(false)) {
            ++corollary_gated;
            corollary_violations += *o.corollary_dominated ? 0 : 1;
        }
    }
    const double secs = seconds_since(start);
    chordal_res.seconds = secs;
    chordal_res.passed = gated >= kRequired && violations == 0;
    chordal_res.detail = fmt("%d gated regular trials, %d violations, %d non-regular skipped, max error/bound %.3e",
                             gated, violations, not_regular, worst_ratio);
    euclid_res.seconds = secs;
    euclid_res.passed = corollary_gated >= kMinCorollary && corollary_violations == 0;
    euclid_res.detail = fmt("%d trials with d < 1/sqrt(2), %d violations", corollary_gated, corollary_violations);
    return {chordal_res, euclid_res};
}

CriterionResult check_vandermonde_bracketing(std::uint64_t seed)
{
    const auto start = Clock::now();
    CriterionResult res = named(5, "Vandermonde singular value bracketing");
    std::mt19937_64 rng(mix_seed(seed, 5));
    std::uniform_real_distribution<Real> unit(0.0, 1.0);
    constexpr int kRequired = 1000;
    int count = 0;
    int violations = 0;
    int attempts = 0;
    Real worst_lower = 0.0; // max of lower bound / s_min^2
    while (count < kRequired && attempts < 50 * kRequired) {
        ++attempts;
        const Index N = uniform_index(rng, 16, 512);
        const Real m = static_cast<Real>(N - 1);
        const Real d_cap = 0.5 * unit(rng) / m;
        const Real required = kSieveConstant / (m * (1.0 - d_cap * m));
        const auto k_max = static_cast<Index>(std::floor(1.0 / required));
        if (k_max < 2) {
            continue;
        }
        const Index K = uniform_index(rng, 2, std::min<Index>(10, k_max));
        const Real room = 1.0 / static_cast<Real>(K) - required;
        const Real delta = required + (1e-3 + 0.999 * unit(rng)) * room;
        const auto freqs = draw_separated_frequencies(K, delta, 1.0, rng);
        std::vector<Node> nodes;
        for (Real f : freqs) {
            nodes.push_back(Node::from_damping_frequency(unit(rng) * d_cap, f, 1.0));
        }
        const BoundReport r = vandermonde_bounds(nodes, N, 1.0);
        if (!r.preconditions_met) {
            continue;
        }
        ++count;
        ComplexVector z(K);
        for (Index k = 0; k < K; ++k) {
            z(k) = nodes[static_cast<std::size_t>(k)].z();
        }
        const RealVector s = singular_values(vandermonde(N, z));
        const Real smin2 = s(K - 1) * s(K - 1);
        const Real smax2 = s(0) * s(0);
        const bool ok = smin2 >= r.ingredients.at("sigma_min_sq_lower") &&
                        smax2 <= r.ingredients.at("sigma_max_sq_upper") &&
                        s(0) / s(K - 1) <= r.ingredients.at("kappa_upper");
        violations += ok ? 0 : 1;
        worst_lower = std::max(worst_lower, r.ingredients.at("sigma_min_sq_lower") / smin2);
    }

    // worked point N = 101, Fs = 1, d_max = 0, delta = 0.5
    const std::vector<Node> worked{Node::from_damping_frequency(0.0, 0.0, 1.0),
                                   Node::from_damping_frequency(0.0, 0.5, 1.0)};
    const BoundReport w = vandermonde_bounds(worked, 101, 1.0);
    const Real expect_lower = 100.0 - 168.0 / std::numbers::pi;
    const Real expect_upper = 100.0 + 168.0 / std::numbers::pi;
    const bool worked_ok =
        w.preconditions_met &&
        std::abs(w.ingredients.at("sigma_min_sq_lower") - expect_lower) <= 1e-9 * expect_lower &&
        std::abs(w.ingredients.at("sigma_max_sq_upper") - expect_upper) <= 1e-9 * expect_upper;

    res.seconds = seconds_since(start);
    res.passed = count >= kRequired && violations == 0 && worked_ok;
    res.detail = fmt("%d gated node sets, %d violations, max lower/s_min^2 %.3f; worked point %s "
                     "(lower %.12f, upper %.12f)",
                     count, violations, worst_lower, worked_ok ? "ok" : "MISMATCH",
                     w.ingredients.count("sigma_min_sq_lower") ? w.ingredients.at("sigma_min_sq_lower") : 0.0,
                     w.ingredients.count("sigma_max_sq_upper") ? w.ingredients.at("sigma_max_sq_upper") : 0.0);
    return res;
}

CriterionResult check_monotonicity()
{
    const auto start = Clock::now();
    CriterionResult res = named(6, "bound monotonicity in the noise norm");

    struct Setup {
        SignalModel model;
        Index L;
        VandermondeSource source;
    };
    const std::vector<Setup> setups{
        {SignalModel({Node::from_damping_frequency(0.01, 0.1, 1.0), Node::from_damping_frequency(0.02, 0.4, 1.0),
                      Node::from_damping_frequency(0.0, 0.75, 1.0)},
                     {Complex(1.0, 0.0), Complex(0.0, 0.8), Complex(1.5, 0.0)}, 48, 1.0),
         24, VandermondeSource::Numeric},
        {SignalModel({Node::from_damping_frequency(0.0005, 0.1, 1.0), Node::from_damping_frequency(0.0, 0.6, 1.0)},
                     {Complex(1.0, 0.0), Complex(-0.7, 0.7)}, 400, 1.0),
         200, VandermondeSource::Analytic},
    };

    int sequences = 0;
    int failures = 0;
    int finite_points = 0;
    for (const auto& s : setups) {
        const ComplexVector truth = s.model.node_values();
        std::vector<Real> esprit_v;
        std::vector<Real> pencil_v;
        std::vector<Real> corollary_v;
        std::vector<std::vector<Real>> eta_v(static_cast<std::size_t>(s.model.order()));
        for (int i = 0; i < 20; ++i) {
            const Real noise = 1e-7 * std::pow(10.0, 0.4 * i); // 1e-7 .. ~4.0
            const BoundReport e = esprit_bound(s.model, noise, s.L, s.source);
            const BoundReport p = pencil_bound(s.model, noise, s.L, s.source);
            const BoundReport c = pencil_corollary(p, truth);
            esprit_v.push_back(value_or_inf(e));
            pencil_v.push_back(value_or_inf(p));
            corollary_v.push_back(value_or_inf(c));
            for (std::size_t k = 0; k < eta_v.size(); ++k) {
                eta_v[k].push_back(c.preconditions_met ? c.eta[k] : kInfinity);
            }
            finite_points += (e.bound_value ? 1 : 0) + (p.bound_value ? 1 : 0) + (c.bound_value ? 1 : 0);
        }
        for (const auto* v : {&esprit_v, &pencil_v, &corollary_v}) {
            ++sequences;
            failures += non_decreasing(*v) ? 0 : 1;
        }
        for (const auto& v : eta_v) {
            ++sequences;
            failures += non_decreasing(v) ? 0 : 1;
        }
    }
    res.seconds = seconds_since(start);
    res.passed = failures == 0 && finite_points > 0;
    res.detail = fmt("%d sequences of 20 noise norms (%d finite bound values), %d non-monotone", sequences,
                     finite_points, failures);
    return res;
}

CriterionResult check_infinite_eigenvalue_path()
{
    const auto start = Clock::now();
    CriterionResult res = named(7, "infinite generalized eigenvalue path");
    ComplexMatrix psi1 = ComplexMatrix::Zero(2, 2);
    psi1(1, 1) = 1.0;
    const ComplexMatrix psi2 = ComplexMatrix::Identity(2, 2);
    const auto est = pencil_from_psi(psi1, psi2);

    int infinite = 0;
    bool finite_one = false;
    for (const auto& z : est) {
        if (z.is_infinite()) {
            ++infinite;
        } else {
            finite_one = std::abs(z.value() - Complex(1.0, 0.0)) < 1e-12;
        }
    }
    bool chordal_ok = infinite == 1;
    Real worst = 0.0;
    for (Complex z : {Complex(0.0, 0.0), Complex(0.5, -0.3), Complex(0.9, 0.1), Complex(-1.0, 0.0)}) {
        const Real expected = 1.0 / std::sqrt(1.0 + std::norm(z));
        const Real got = chordal(ExtendedComplex::infinity(), z);
        worst = std::max(worst, std::abs(got - expected));
    }
    chordal_ok = chordal_ok && worst <= 1e-12;

    ComplexVector truth(2);
    truth << Complex(0.3, 0.4), Complex(1.0, 0.0);
    const MatchResult m = match_nodes(truth, est, MatchMetric::Euclidean);
    bool euclid_inf = std::isinf(m.max_euclidean);
    bool has_inf_pair = false;
    for (std::size_t k = 0; k < m.permutation.size(); ++k) {
        if (est[static_cast<std::size_t>(m.permutation[k])].is_infinite()) {
            has_inf_pair = std::isinf(m.per_node_euclidean[k]);
        }
    }

    res.seconds = seconds_since(start);
    res.passed = infinite == 1 && finite_one && chordal_ok && euclid_inf && has_inf_pair;
    res.detail = fmt("%d infinite estimate(s), finite estimate 1: %s, max chordal deviation %.1e, "
                     "Euclidean pairing with infinity reports inf: %s",
                     infinite, finite_one ? "yes" : "no", worst, (euclid_inf && has_inf_pair) ? "yes" : "no");
    return res;
}

CriterionResult check_matching_oracle(std::uint64_t seed)
{
    const auto start = Clock::now();
    CriterionResult res = named(8, "bottleneck matching vs exhaustive enumeration");
    std::mt19937_64 rng(mix_seed(seed, 8));
    std::uniform_real_distribution<Real> unit(0.0, 1.0);
    std::normal_distribution<Real> gauss(0.0, 1.0);
    constexpr int kInstances = 100;
    int mismatches = 0;
    for (int inst = 0; inst < kInstances; ++inst) {
        const Index K = uniform_index(rng, 1, 4);
        ComplexVector truth(K);
        for (Index k = 0; k < K; ++k) {
            truth(k) = std::polar(std::sqrt(unit(rng)), 2.0 * std::numbers::pi * unit(rng));
        }
        std::vector<Index> shuffle(static_cast<std::size_t>(K));
        std::iota(shuffle.begin(), shuffle.end(), Index{0});
        std::ranges::shuffle(shuffle, rng);
        const Real scale = log_uniform(rng, 1e-3, 2.0);
        std::vector<ExtendedComplex> est;
        for (Index k = 0; k < K; ++k) {
            const Real r = unit(rng);
            if (r < 0.1) {
                est.push_back(ExtendedComplex::infinity());
            } else if (r < 0.2) {
                est.emplace_back(truth(shuffle[static_cast<std::size_t>(k)])); // exact hit, forces ties
            } else {
                est.emplace_back(truth(shuffle[static_cast<std::size_t>(k)]) +
                                 scale * Complex(gauss(rng), gauss(rng)));
            }
        }
        for (MatchMetric metric : {MatchMetric::Euclidean, MatchMetric::Chordal}) {
            DenseMatrix<Real> cost(K, K);
            for (Index k = 0; k < K; ++k) {
                for (Index j = 0; j < K; ++j) {
                    const auto& e = est[static_cast<std::size_t>(j)];
                    cost(k, j) = metric == MatchMetric::Euclidean ? euclidean(truth(k), e) : chordal(truth(k), e);
                }
            }
            const OracleAssignment oracle = enumerate_assignments(cost);
            const MatchResult got = match_nodes(truth, est, metric);
            const Real got_max = metric == MatchMetric::Euclidean ? got.max_euclidean : got.max_chordal;
            const bool same = got.permutation == oracle.permutation && got_max == oracle.cost &&
                              bottleneck_assignment(cost) == oracle.permutation;
            mismatches += same ? 0 : 1;
        }
    }
    res.seconds = seconds_since(start);
    res.passed = mismatches == 0;
    res.detail = fmt("%d instances x 2 metrics, %d mismatches", kInstances, mismatches);
    return res;
}

CriterionResult check_sweep_determinism(std::uint64_t seed, const std::filesystem::path& scratch_dir)
{
    const auto start = Clock::now();
    CriterionResult res = named(9, "sweep determinism");
    const Json doc = {
        {"random_model",
         {{"K", 3}, {"separation", 0.1}, {"damping", {0.0, 0.01}}, {"weight_magnitude", {0.5, 2.0}}, {"seed", 11}}},
        {"N", 40},
        {"L", "auto"},
        {"Fs", 1.0},
        {"noise_energies", {0.01, 0.0, 0.001}},
        {"trials", 4},
        {"algorithms", {"esprit", "pencil"}},
        {"seed", seed}};
    ExperimentConfig cfg = config_from_json(doc);

    std::filesystem::path base = scratch_dir;
    if (base.empty()) {
        base = std::filesystem::temp_directory_path() / fmt("cisoid_determinism_%llx", static_cast<unsigned long long>(seed));
    }
    cfg.threads = 1;
    const auto first = write_sweep_outputs(run_sweep(cfg), cfg, base / "run1");
    cfg.threads = 3;
    const auto second = write_sweep_outputs(run_sweep(cfg), cfg, base / "run2");

    const auto csv1 = read_lines(first.first);
    const auto csv2 = read_lines(second.first);
    auto strip = [](const std::vector<std::string>& lines) {
        std::vector<std::string> out;
        for (const auto& l : lines) {
            Json j = Json::parse(l);
            j.erase("wall_clock_ms");
            out.push_back(j.dump());
        }
        return out;
    };
    const auto js1 = strip(read_lines(first.second));
    const auto js2 = strip(read_lines(second.second));
    const bool header_ok = !csv1.empty() && csv1.front() == kSummaryHeader;
    const bool same = csv1 == csv2 && js1 == js2;

    std::error_code ec;
    if (scratch_dir.empty()) {
        std::filesystem::remove_all(base, ec);
    }
    res.seconds = seconds_since(start);
    res.passed = same && header_ok && js1.size() == 12 && csv1.size() == 7;
    res.detail = fmt("%zu CSV rows, %zu records; outputs %s across runs (1 vs 3 threads); header %s",
                     csv1.size() - (csv1.empty() ? 0 : 1), js1.size(), same ? "identical" : "DIFFER",
                     header_ok ? "ok" : "MISMATCH");
    return res;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options)
{
    std::vector<CriterionResult> results;
    auto guarded = [&](int id, const char* name, auto&& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            CriterionResult r = named(id, name);
            r.detail = std::string("exception: ") + e.what();
            results.push_back(r);
        }
    };
    guarded(1, "noiseless exactness", [&] { results.push_back(check_noiseless_exactness(options.seed)); });
    guarded(2, "ESPRIT dominance", [&] { results.push_back(check_esprit_dominance(options.seed)); });
    guarded(3, "pencil dominance", [&] {
        auto [c3, c4] = check_pencil_dominance(options.seed);
        results.push_back(c3);
        results.push_back(c4);
    });
    guarded(5, "Vandermonde bracketing", [&] { results.push_back(check_vandermonde_bracketing(options.seed)); });
    guarded(6, "monotonicity", [&] { results.push_back(check_monotonicity()); });
    guarded(7, "infinite eigenvalue path", [&] { results.push_back(check_infinite_eigenvalue_path()); });
    guarded(8, "matching oracle", [&] { results.push_back(check_matching_oracle(options.seed)); });
    guarded(9, "determinism",
            [&] { results.push_back(check_sweep_determinism(options.seed, options.scratch_dir)); });
    return results;
}

bool print_acceptance(std::ostream& out, const std::vector<CriterionResult>& results)
{
    bool all = true;
    for (const auto& r : results) {
        out << (r.passed ? "[PASS] " : "[FAIL] ") << "criterion " << r.id << ": " << r.name << " -- " << r.detail
            << " (" << std::fixed << std::setprecision(2) << r.seconds << " s)" << std::defaultfloat << '\n';
        all = all && r.passed;
    }
    out << (all ? "all acceptance criteria passed" : "acceptance FAILED") << '\n';
    return all;
}

} // namespace cisoid::harness
