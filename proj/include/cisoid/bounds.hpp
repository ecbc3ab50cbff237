#ifndef CISOID_BOUNDS_HPP
#define CISOID_BOUNDS_HPP

#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "cisoid/model.hpp"
#include "cisoid/types.hpp"

namespace cisoid {

enum class BoundCase { EspritCase1, PencilCase2, PencilCorollary, VandermondeThm2 };

const char* to_string(BoundCase c);

/// Where the Vandermonde singular values entering the perturbation bounds come from.
enum class VandermondeSource {
    Numeric,  ///< exact singular values of the ground-truth Vandermonde matrices
    Analytic, ///< closed-form singular value bounds (weaker, fully analytic)
};

///
/// One evaluated bound together with everything that went into it.
///
/// Precondition failures are data: `preconditions_met` is false, the failed
/// entries of `conditions` say why, and `bound_value` is empty.
///
struct BoundReport {
    BoundCase bound_case = BoundCase::EspritCase1;
    std::optional<Real> gamma;
    std::optional<Real> beta; ///< ESPRIT only
    std::optional<Real> d;    ///< corollary only (the chordal bound it starts from)
    std::map<std::string, bool> conditions;
    bool preconditions_met = false;
    std::optional<Real> bound_value;
    std::vector<Real> eta; ///< per-node Euclidean radii (corollary only)
    std::map<std::string, Real> ingredients;
};

/// 84 / pi, the large-sieve constant in the Vandermonde singular value bounds.
inline constexpr Real kSieveConstant = 84.0 / std::numbers::pi;

/// Closed-form bounds on the extreme singular values of a `rows` x K Vandermonde matrix.
struct VandermondeSingularBounds {
    bool damping_gate = false;    ///< d_max < 1 / (rows - 1)
    bool separation_gate = false; ///< delta large enough for a positive lower bound
    Real sigma_min_sq_lower = 0.0;
    Real sigma_max_sq_upper = 0.0;
    Real kappa_upper = kInfinity;

    bool valid() const { return damping_gate && separation_gate; }
};

VandermondeSingularBounds vandermonde_singular_bounds(Real d_max, Real delta, Index rows, Real fs);

///
/// ESPRIT error bound. gamma = sqrt(min(L, N-L+1)) ||e|| / (alpha_min s_min(V_L) s_min(V_{N-L+1})),
/// beta = s_max(V_L) / s_min(V_{L-1}); valid while gamma < 1 / (1 + sqrt(2) beta).
///
BoundReport esprit_bound(const SignalModel& model, Real noise_norm, Index L,
                         VandermondeSource source = VandermondeSource::Numeric);

/// Chordal error bound of the matrix pencil; valid while gamma < 1 (regularity is checked by the caller).
BoundReport pencil_bound(const SignalModel& model, Real noise_norm, Index L,
                         VandermondeSource source = VandermondeSource::Numeric);

/// Euclidean radii derived from a chordal pencil report; gated on d < 1/sqrt(2).
BoundReport pencil_corollary(const BoundReport& pencil_report, const ComplexVector& nodes);

/// Radii eta_k; throws ValidationError when the corollary's preconditions fail.
std::vector<Real> pencil_euclidean_bound(const BoundReport& pencil_report, const ComplexVector& nodes);

/// Bracketing of s_min^2, s_max^2 and kappa of V_N for the given nodes. Needs K >= 2.
BoundReport vandermonde_bounds(const std::vector<Node>& nodes, Index N, Real fs);

} // namespace cisoid

#endif // CISOID_BOUNDS_HPP
