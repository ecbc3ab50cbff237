#ifndef CISOID_HARNESS_ACCEPTANCE_HPP
#define CISOID_HARNESS_ACCEPTANCE_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace cisoid::harness {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct AcceptanceOptions {
    std::uint64_t seed = 0x5eed2024;
    /// Scratch space for the determinism check; a temporary directory when empty.
    std::filesystem::path scratch_dir;
};

// Individual criteria, each self-contained and deterministic in the seed.
CriterionResult check_noiseless_exactness(std::uint64_t seed);
CriterionResult check_esprit_dominance(std::uint64_t seed);
/// Criteria 3 (chordal) and 4 (Euclidean corollary) share their trials.
std::pair<CriterionResult, CriterionResult> check_pencil_dominance(std::uint64_t seed);
CriterionResult check_vandermonde_bracketing(std::uint64_t seed);
CriterionResult check_monotonicity();
CriterionResult check_infinite_eigenvalue_path();
CriterionResult check_matching_oracle(std::uint64_t seed);
CriterionResult check_sweep_determinism(std::uint64_t seed, const std::filesystem::path& scratch_dir);

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

/// One "[PASS]/[FAIL]" line per criterion; returns true when all passed.
bool print_acceptance(std::ostream& out, const std::vector<CriterionResult>& results);

} // namespace cisoid::harness

#endif // CISOID_HARNESS_ACCEPTANCE_HPP
