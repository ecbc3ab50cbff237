#ifndef CISOID_HARNESS_EXPERIMENT_HPP
#define CISOID_HARNESS_EXPERIMENT_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cisoid/bounds.hpp"
#include "cisoid/harness/config.hpp"
#include "cisoid/metrics.hpp"
#include "cisoid/model.hpp"

namespace cisoid::harness {

enum class TrialStatus { Ok, NotRegular, Failed };

const char* to_string(TrialStatus s);

///
/// Result of one estimator on one trial.
///
/// `matched_error` is the quantity its bound controls: the max Euclidean
/// error for ESPRIT, the max chordal error for the matrix pencil.
///
struct AlgorithmOutcome {
    Algorithm algorithm = Algorithm::Esprit;
    TrialStatus status = TrialStatus::Ok;
    std::string message;
    std::vector<ExtendedComplex> estimates;
    std::optional<MatchResult> match;
    std::optional<BoundReport> bound;
    std::optional<BoundReport> corollary; ///< pencil only
    Real matched_error = kInfinity;
    bool gated = false;     ///< bound preconditions hold (and the pair is regular)
    bool dominated = true;  ///< gated implies matched_error <= bound
    std::optional<bool> corollary_gated;
    std::optional<bool> corollary_dominated;
};

struct ExperimentRecord {
    std::string config_fingerprint;
    Index grid_index = 0;
    Index trial_index = 0;
    std::uint64_t trial_seed = 0;
    SignalModel model;
    Real noise_energy = 0.0;
    Real noise_norm = 0.0;
    Index L = 0;
    std::vector<AlgorithmOutcome> outcomes;
    double wall_clock_ms = 0.0;
};

struct TrialOptions {
    std::vector<Algorithm> algorithms{Algorithm::Esprit, Algorithm::Pencil};
    std::optional<Index> L; ///< auto when empty
    VandermondeSource bound_source = VandermondeSource::Numeric;
};

/// Synthesize, add noise, estimate, match and evaluate every bound for one trial.
ExperimentRecord run_trial(const SignalModel& model, Real noise_energy, std::uint64_t seed,
                           const TrialOptions& options);

struct SummaryRow {
    Real noise_energy = 0.0;
    Algorithm algorithm = Algorithm::Esprit;
    Index trials = 0;
    Real mean_matched_error = 0.0;
    Real max_matched_error = 0.0;
    Real mean_bound = 0.0;
    Real dominance_rate = 0.0;
    Real precondition_rate = 0.0;
    Real mean_tightness = 0.0;
};

struct SweepResult {
    std::vector<ExperimentRecord> records;
    std::vector<SummaryRow> summary;
};

///
/// Grid of (noise energy ascending) x (trial). Records come back in
/// (grid, trial) order whatever the thread count.
///
SweepResult run_sweep(const ExperimentConfig& cfg);

/// Per (noise energy, algorithm) aggregates, rows ordered by noise energy then algorithm.
std::vector<SummaryRow> summarize(const std::vector<ExperimentRecord>& records,
                                  const std::vector<Algorithm>& algorithms);

inline constexpr const char* kSummaryHeader =
    "noise_energy,algorithm,trials,mean_matched_error,max_matched_error,mean_bound,"
    "dominance_rate,precondition_rate,mean_tightness";

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);
Json record_to_json(const ExperimentRecord& r);
void write_records_jsonl(std::ostream& out, const std::vector<ExperimentRecord>& records);

/// Writes the CSV summary and JSON-lines records into `dir`; returns their paths.
std::pair<std::filesystem::path, std::filesystem::path>
write_sweep_outputs(const SweepResult& result, const ExperimentConfig& cfg,
                    const std::filesystem::path& dir);

} // namespace cisoid::harness

#endif // CISOID_HARNESS_EXPERIMENT_HPP
