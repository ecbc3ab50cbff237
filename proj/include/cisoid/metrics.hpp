#ifndef CISOID_METRICS_HPP
#define CISOID_METRICS_HPP

#include <optional>
#include <vector>

#include "cisoid/types.hpp"

namespace cisoid {

/// Chordal distance on the Riemann sphere; bounded by 1 and finite at infinity.
Real chordal(const ExtendedComplex& z, const ExtendedComplex& w);

/// |z - w|, or +inf when either point is infinite (0 if both are).
Real euclidean(const ExtendedComplex& z, const ExtendedComplex& w);

enum class MatchMetric { Euclidean, Chordal };

///
/// Assignment of estimates to ground-truth nodes: truth[k] is paired with
/// estimates[permutation[k]].
///
struct MatchResult {
    std::vector<Index> permutation;
    std::vector<Real> per_node_euclidean;
    std::vector<Real> per_node_chordal;
    Real max_euclidean = 0.0;
    Real max_chordal = 0.0;
};

///
/// Bottleneck (min-max) assignment under `metric`, ties broken towards the
/// lexicographically smallest permutation. Exhaustive for K <= 8, threshold
/// search with bipartite matching above.
///
MatchResult match_nodes(const ComplexVector& truth, const std::vector<ExtendedComplex>& estimates,
                        MatchMetric metric);

/// Threshold-search bottleneck assignment on a K x K cost matrix (cost(k, j): truth k, estimate j).
std::vector<Index> bottleneck_assignment(const DenseMatrix<Real>& cost);

/// Exhaustive bottleneck assignment on a K x K cost matrix.
std::vector<Index> exhaustive_assignment(const DenseMatrix<Real>& cost);

///
/// A permutation with |truth[k] - estimates[perm[k]]| <= radius[k] for every k,
/// if one exists (lexicographically smallest).
///
std::optional<std::vector<Index>> match_within(const ComplexVector& truth,
                                               const std::vector<ExtendedComplex>& estimates,
                                               const std::vector<Real>& radius);

} // namespace cisoid

#endif // CISOID_METRICS_HPP
