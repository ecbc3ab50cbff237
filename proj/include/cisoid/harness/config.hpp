#ifndef CISOID_HARNESS_CONFIG_HPP
#define CISOID_HARNESS_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cisoid/bounds.hpp"
#include "cisoid/harness/io.hpp"
#include "cisoid/model.hpp"

namespace cisoid::harness {

enum class Algorithm { Esprit, Pencil };

const char* to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& s);
/// "esprit", "pencil" or "both".
std::vector<Algorithm> algorithms_from_flag(const std::string& s);

/// Randomized ground truth, redrawn for every trial.
struct RandomModelSpec {
    Index K = 2;
    Real separation = 0.1; ///< minimum wrap-around distance, same unit as Fs
    Real damping_min = 0.0;
    Real damping_max = 0.0;
    Real weight_min = 1.0; ///< |alpha_k| range
    Real weight_max = 1.0;
    std::uint64_t seed = 0;
};

struct ExperimentConfig {
    std::optional<SignalModel> model; ///< explicit ground truth
    std::optional<RandomModelSpec> random_model;
    Index N = 64;
    std::optional<Index> L; ///< empty means auto
    Real fs = 1.0;
    std::vector<Real> noise_energies;
    Index trials = 1;
    std::vector<Algorithm> algorithms{Algorithm::Esprit, Algorithm::Pencil};
    VandermondeSource bound_source = VandermondeSource::Numeric;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::string csv_name = "summary.csv";
    std::string jsonl_name = "records.jsonl";
};

///
/// Config document (JSON). Exactly one of "model" / "random_model" is required:
///
///   {
///     "model": {"nodes": [{"d": 0.0, "f": 0.1}, ...], "weights": [1.0, ...]},
///     "random_model": {"K": 3, "separation": 0.1, "damping": [0, 0.01],
///                      "weight_magnitude": [0.5, 2.0], "seed": 7},
///     "N": 64, "L": "auto", "Fs": 1.0,
///     "noise_energies": [0.001, 0.01], "trials": 10,
///     "algorithms": ["esprit", "pencil"], "bound_source": "numeric",
///     "seed": 1, "threads": 1,
///     "output": {"csv": "summary.csv", "jsonl": "records.jsonl"}
///   }
///
/// Unknown keys are rejected.
///
ExperimentConfig config_from_json(const Json& j);
ExperimentConfig load_config(const std::filesystem::path& path);
Json config_to_json(const ExperimentConfig& cfg);

/// FNV-1a hash of the canonical config (output names and thread count excluded).
std::string config_fingerprint(const ExperimentConfig& cfg);

/// floor(N / 2) clamped into [K + 1, N - K]; N - K when that range is empty.
Index auto_window(Index N, Index K);
Index resolve_window(const ExperimentConfig& cfg, Index K);

/// splitmix64-based derivation of independent stream seeds.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0);

///
/// K frequencies in [0, fs) whose wrap-around separation is at least `min_separation`.
/// Gaps are min_separation plus a uniformly split remainder, then the set is rotated.
///
std::vector<Real> draw_separated_frequencies(Index K, Real min_separation, Real fs,
                                             std::mt19937_64& rng);

SignalModel draw_random_model(const RandomModelSpec& spec, Index N, Real fs, std::uint64_t seed);

/// Ground truth for trial `trial_index`.
SignalModel resolve_model(const ExperimentConfig& cfg, Index trial_index);

} // namespace cisoid::harness

#endif // CISOID_HARNESS_CONFIG_HPP
