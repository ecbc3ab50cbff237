#include "cisoid/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cisoid {

namespace {

using Allowed = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

// Kuhn augmenting path restricted to rows >= first_row and unlocked columns.
bool augment(const Allowed& allowed, Index row, std::vector<Index>& col_owner,
             std::vector<char>& visited, const std::vector<char>& locked)
{
    for (Index j = 0; j < allowed.cols(); ++j) {
        const auto uj = static_cast<std::size_t>(j);
        if (!allowed(row, j) || visited[uj] || locked[uj]) {
            continue;
        }
        visited[uj] = 1;
        if (col_owner[uj] < 0 || augment(allowed, col_owner[uj], col_owner, visited, locked)) {
            col_owner[uj] = row;
            return true;
        }
    }
    return false;
}

bool has_perfect_matching(const Allowed& allowed, Index first_row, const std::vector<char>& locked)
{
    std::vector<Index> col_owner(static_cast<std::size_t>(allowed.cols()), -1);
    for (Index i = first_row; i < allowed.rows(); ++i) {
        std::vector<char> visited(static_cast<std::size_t>(allowed.cols()), 0);
        if (!augment(allowed, i, col_owner, visited, locked)) {
            return false;
        }
    }
    return true;
}

// Lexicographically smallest permutation using only allowed pairs.
std::optional<std::vector<Index>> smallest_feasible(const Allowed& allowed)
{
    const Index K = allowed.rows();
    std::vector<char> locked(static_cast<std::size_t>(K), 0);
    if (!has_perfect_matching(allowed, 0, locked)) {
        return std::nullopt;
    }
    std::vector<Index> perm(static_cast<std::size_t>(K), -1);
    for (Index k = 0; k < K; ++k) {
        for (Index j = 0; j < K; ++j) {
            const auto uj = static_cast<std::size_t>(j);
            if (locked[uj] || !allowed(k, j)) {
                continue;
            }
            locked[uj] = 1;
            if (has_perfect_matching(allowed, k + 1, locked)) {
                perm[static_cast<std::size_t>(k)] = j;
                break;
            }
            locked[uj] = 0;
        }
    }
    return perm;
}

Real max_cost(const DenseMatrix<Real>& cost, const std::vector<Index>& perm)
{
    Real m = 0.0;
    for (std::size_t k = 0; k < perm.size(); ++k) {
        m = std::max(m, cost(static_cast<Index>(k), perm[k]));
    }
    return m;
}

} // namespace

Real chordal(const ExtendedComplex& z, const ExtendedComplex& w)
{
    if (z.is_infinite() && w.is_infinite()) {
        return 0.0;
    }
    if (z.is_infinite() || w.is_infinite()) {
        const Complex f = z.is_infinite() ? w.value() : z.value();
        return 1.0 / std::sqrt(1.0 + std::norm(f));
    }
    const Complex a = z.value();
    const Complex b = w.value();
    return std::abs(a - b) / (std::sqrt(1.0 + std::norm(a)) * std::sqrt(1.0 + std::norm(b)));
}

Real euclidean(const ExtendedComplex& z, const ExtendedComplex& w)
{
    if (z.is_infinite() && w.is_infinite()) {
        return 0.0;
    }
    if (z.is_infinite() || w.is_infinite()) {
        return kInfinity;
    }
    return std::abs(z.value() - w.value());
}

std::vector<Index> exhaustive_assignment(const DenseMatrix<Real>& cost)
{
    std::vector<Index> perm(static_cast<std::size_t>(cost.rows()));
    std::iota(perm.begin(), perm.end(), Index{0});
    std::vector<Index> best = perm;
    Real best_cost = max_cost(cost, perm);
    while (std::next_permutation(perm.begin(), perm.end())) {
        const Real c = max_cost(cost, perm);
        if (c < best_cost) {
            best_cost = c;
            best = perm;
        }
    }
    return best;
}

std::vector<Index> bottleneck_assignment(const DenseMatrix<Real>& cost)
{
    if (cost.rows() != cost.cols()) {
        throw ValidationError("bottleneck_assignment needs a square cost matrix");
    }
    if (cost.size() == 0) {
        return {};
    }
    std::vector<Real> levels(cost.data(), cost.data() + cost.size());
    std::ranges::sort(levels);
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    // The largest level always admits a matching (complete bipartite graph).
    std::size_t lo = 0;
    std::size_t hi = levels.size() - 1;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        const Allowed allowed = cost.array() <= levels[mid];
        if (has_perfect_matching(allowed, 0, std::vector<char>(static_cast<std::size_t>(cost.cols()), 0))) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    const Allowed allowed = cost.array() <= levels[lo];
    return *smallest_feasible(allowed);
}

MatchResult match_nodes(const ComplexVector& truth, const std::vector<ExtendedComplex>& estimates,
                        MatchMetric metric)
{
    const Index K = truth.size();
    if (static_cast<Index>(estimates.size()) != K) {
        throw ValidationError("match_nodes: truth and estimates differ in length");
    }
    MatchResult r;
    if (K == 0) {
        return r;
    }
    DenseMatrix<Real> eu(K, K);
    DenseMatrix<Real> ch(K, K);
    for (Index k = 0; k < K; ++k) {
        for (Index j = 0; j < K; ++j) {
            const auto& e = estimates[static_cast<std::size_t>(j)];
            eu(k, j) = euclidean(truth(k), e);
            ch(k, j) = chordal(truth(k), e);
        }
    }
    const DenseMatrix<Real>& cost = metric == MatchMetric::Euclidean ? eu : ch;
    r.permutation = K <= 8 ? exhaustive_assignment(cost) : bottleneck_assignment(cost);
    for (Index k = 0; k < K; ++k) {
        const Index j = r.permutation[static_cast<std::size_t>(k)];
        r.per_node_euclidean.push_back(eu(k, j));
        r.per_node_chordal.push_back(ch(k, j));
    }
    r.max_euclidean = *std::ranges::max_element(r.per_node_euclidean);
    r.max_chordal = *std::ranges::max_element(r.per_node_chordal);
    return r;
}

std::optional<std::vector<Index>> match_within(const ComplexVector& truth,
                                               const std::vector<ExtendedComplex>& estimates,
                                               const std::vector<Real>& radius)
{
    const Index K = truth.size();
    if (static_cast<Index>(estimates.size()) != K || static_cast<Index>(radius.size()) != K) {
        throw ValidationError("match_within: length mismatch");
    }
    Allowed allowed(K, K);
    for (Index k = 0; k < K; ++k) {
        for (Index j = 0; j < K; ++j) {
            allowed(k, j) = euclidean(truth(k), estimates[static_cast<std::size_t>(j)]) <=
                            radius[static_cast<std::size_t>(k)];
        }
    }
    return smallest_feasible(allowed);
}

} // namespace cisoid
