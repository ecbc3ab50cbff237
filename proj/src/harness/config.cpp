#include "cisoid/harness/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>

namespace cisoid::harness {

namespace {

const std::set<std::string> kConfigKeys = {
    "model", "random_model", "N", "L", "Fs", "noise_energies", "trials",
    "algorithms", "bound_source", "seed", "threads", "output"};

void reject_unknown(const Json& j, const std::set<std::string>& allowed, const std::string& what)
{
    for (const auto& [key, _] : j.items()) {
        if (!allowed.contains(key)) {
            throw ValidationError("unknown key '" + key + "' in " + what);
        }
    }
}

template <typename T>
T get_as(const Json& j, const std::string& key)
{
    try {
        return j.at(key).get<T>();
    } catch (const Json::exception& e) {
        throw ValidationError("invalid value for '" + key + "': " + e.what());
    }
}

std::pair<Real, Real> range_field(const Json& j, const std::string& key)
{
    const auto v = get_as<std::vector<Real>>(j, key);
    if (v.size() != 2 || v[0] > v[1]) {
        throw ValidationError("'" + key + "' must be [min, max] with min <= max");
    }
    return {v[0], v[1]};
}

RandomModelSpec random_spec_from_json(const Json& j)
{
    if (!j.is_object()) {
        throw ValidationError("'random_model' must be an object");
    }
    reject_unknown(j, {"K", "separation", "damping", "weight_magnitude", "seed"}, "random_model");
    RandomModelSpec s;
    if (!j.contains("K")) {
        throw ValidationError("'random_model' needs 'K'");
    }
    s.K = get_as<Index>(j, "K");
    if (j.contains("separation")) {
        s.separation = get_as<Real>(j, "separation");
    }
    if (j.contains("damping")) {
        std::tie(s.damping_min, s.damping_max) = range_field(j, "damping");
    }
    if (j.contains("weight_magnitude")) {
        std::tie(s.weight_min, s.weight_max) = range_field(j, "weight_magnitude");
    }
    if (j.contains("seed")) {
        s.seed = get_as<std::uint64_t>(j, "seed");
    }
    if (s.K < 1) {
        throw ValidationError("random_model.K must be >= 1");
    }
    if (s.separation < 0.0) {
        throw ValidationError("random_model.separation must be >= 0");
    }
    if (s.damping_min < 0.0) {
        throw ValidationError("random_model.damping must be >= 0");
    }
    if (s.weight_min <= 0.0) {
        throw ValidationError("random_model.weight_magnitude must be > 0");
    }
    return s;
}

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31U);
}

} // namespace

const char* to_string(Algorithm a) { return a == Algorithm::Esprit ? "esprit" : "pencil"; }

Algorithm algorithm_from_string(const std::string& s)
{
    if (s == "esprit") {
        return Algorithm::Esprit;
    }
    if (s == "pencil") {
        return Algorithm::Pencil;
    }
    throw ValidationError("unknown algorithm '" + s + "' (expected esprit or pencil)");
}

std::vector<Algorithm> algorithms_from_flag(const std::string& s)
{
    if (s == "both") {
        return {Algorithm::Esprit, Algorithm::Pencil};
    }
    return {algorithm_from_string(s)};
}

ExperimentConfig config_from_json(const Json& j)
{
    if (!j.is_object()) {
        throw ValidationError("config must be a JSON object");
    }
    reject_unknown(j, kConfigKeys, "config");
    ExperimentConfig cfg;
    if (j.contains("Fs")) {
        cfg.fs = get_as<Real>(j, "Fs");
        if (!(cfg.fs > 0.0)) {
            throw ValidationError("'Fs' must be > 0");
        }
    }
    if (!j.contains("N")) {
        throw ValidationError("config needs 'N'");
    }
    cfg.N = get_as<Index>(j, "N");
    if (j.contains("L")) {
        const auto& l = j.at("L");
        if (l.is_string()) {
            if (l.get<std::string>() != "auto") {
                throw ValidationError("'L' must be \"auto\" or an integer");
            }
        } else {
            cfg.L = get_as<Index>(j, "L");
        }
    }
    if (j.contains("model") == j.contains("random_model")) {
        throw ValidationError("config needs exactly one of 'model' and 'random_model'");
    }
    if (j.contains("model")) {
        const auto& m = j.at("model");
        if (!m.is_object()) {
            throw ValidationError("'model' must be an object");
        }
        reject_unknown(m, {"K", "nodes", "weights"}, "model");
        if (!m.contains("nodes") || !m.contains("weights")) {
            throw ValidationError("'model' needs 'nodes' and 'weights'");
        }
        auto nodes = nodes_from_json(m.at("nodes"), cfg.fs);
        if (m.contains("K") && get_as<std::size_t>(m, "K") != nodes.size()) {
            throw ValidationError("model.K does not match the number of nodes");
        }
        cfg.model.emplace(std::move(nodes), weights_from_json(m.at("weights")), cfg.N, cfg.fs);
    } else {
        cfg.random_model = random_spec_from_json(j.at("random_model"));
        const auto& r = *cfg.random_model;
        if (cfg.N < 2 * r.K) {
            throw ValidationError("random_model: N >= 2K violated");
        }
        if (r.K >= 2 && static_cast<Real>(r.K) * r.separation > cfg.fs) {
            throw ValidationError("random_model: K * separation exceeds Fs");
        }
    }
    if (j.contains("noise_energies")) {
        cfg.noise_energies = get_as<std::vector<Real>>(j, "noise_energies");
        for (Real e : cfg.noise_energies) {
            if (!(e >= 0.0) || !std::isfinite(e)) {
                throw ValidationError("noise energies must be finite and >= 0");
            }
        }
    }
    if (j.contains("trials")) {
        cfg.trials = get_as<Index>(j, "trials");
        if (cfg.trials < 1) {
            throw ValidationError("'trials' must be >= 1");
        }
    }
    if (j.contains("algorithms")) {
        cfg.algorithms.clear();
        for (const auto& name : get_as<std::vector<std::string>>(j, "algorithms")) {
            cfg.algorithms.push_back(algorithm_from_string(name));
        }
        if (cfg.algorithms.empty()) {
            throw ValidationError("'algorithms' must not be empty");
        }
    }
    if (j.contains("bound_source")) {
        const auto s = get_as<std::string>(j, "bound_source");
        if (s == "numeric") {
            cfg.bound_source = VandermondeSource::Numeric;
        } else if (s == "analytic") {
            cfg.bound_source = VandermondeSource::Analytic;
        } else {
            throw ValidationError("'bound_source' must be \"numeric\" or \"analytic\"");
        }
    }
    if (j.contains("seed")) {
        cfg.seed = get_as<std::uint64_t>(j, "seed");
    }
    if (j.contains("threads")) {
        cfg.threads = get_as<unsigned>(j, "threads");
        cfg.threads = std::max(1U, cfg.threads);
    }
    if (j.contains("output")) {
        const auto& o = j.at("output");
        if (!o.is_object()) {
            throw ValidationError("'output' must be an object");
        }
        reject_unknown(o, {"csv", "jsonl"}, "output");
        if (o.contains("csv")) {
            cfg.csv_name = get_as<std::string>(o, "csv");
        }
        if (o.contains("jsonl")) {
            cfg.jsonl_name = get_as<std::string>(o, "jsonl");
        }
    }
    const Index K = cfg.model ? cfg.model->order() : cfg.random_model->K;
    if (cfg.L && (*cfg.L < K || *cfg.L > cfg.N - K)) {
        throw ValidationError("'L' must satisfy K <= L <= N - K");
    }
    if (cfg.L && *cfg.L == K && std::ranges::find(cfg.algorithms, Algorithm::Esprit) != cfg.algorithms.end()) {
        throw ValidationError("ESPRIT needs L >= K + 1");
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) { return config_from_json(load_json(path)); }

Json config_to_json(const ExperimentConfig& cfg)
{
    Json j;
    if (cfg.model) {
        const Json m = model_to_json(*cfg.model);
        j["model"] = Json{{"K", m["K"]}, {"nodes", m["nodes"]}, {"weights", m["weights"]}};
    } else {
        const auto& r = *cfg.random_model;
        j["random_model"] = Json{{"K", r.K},
                                 {"separation", r.separation},
                                 {"damping", {r.damping_min, r.damping_max}},
                                 {"weight_magnitude", {r.weight_min, r.weight_max}},
                                 {"seed", r.seed}};
    }
    j["N"] = cfg.N;
    j["L"] = cfg.L ? Json(*cfg.L) : Json("auto");
    j["Fs"] = cfg.fs;
    j["noise_energies"] = cfg.noise_energies;
    j["trials"] = cfg.trials;
    Json algos = Json::array();
    for (auto a : cfg.algorithms) {
        algos.push_back(to_string(a));
    }
    j["algorithms"] = algos;
    j["bound_source"] = cfg.bound_source == VandermondeSource::Numeric ? "numeric" : "analytic";
    j["seed"] = cfg.seed;
    j["threads"] = cfg.threads;
    j["output"] = Json{{"csv", cfg.csv_name}, {"jsonl", cfg.jsonl_name}};
    return j;
}

std::string config_fingerprint(const ExperimentConfig& cfg)
{
    Json j = config_to_json(cfg);
    j.erase("output");
    j.erase("threads");
    const std::string text = j.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Index auto_window(Index N, Index K) { return std::min(std::max(N / 2, K + 1), N - K); }

Index resolve_window(const ExperimentConfig& cfg, Index K) { return cfg.L ? *cfg.L : auto_window(cfg.N, K); }

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b)
{
    return splitmix64(splitmix64(splitmix64(base) ^ a) ^ b);
}

std::vector<Real> draw_separated_frequencies(Index K, Real min_separation, Real fs, std::mt19937_64& rng)
{
    if (K < 1) {
        throw ValidationError("need at least one frequency");
    }
    const Real slack = fs - static_cast<Real>(K) * min_separation;
    if (K >= 2 && slack < 0.0) {
        throw ValidationError("K * separation exceeds Fs");
    }
    std::uniform_real_distribution<Real> unit(0.0, 1.0);
    std::vector<Real> cuts(static_cast<std::size_t>(K - 1));
    for (auto& c : cuts) {
        c = unit(rng) * std::max(slack, Real(0));
    }
    std::ranges::sort(cuts);

    std::vector<Real> freqs;
    freqs.reserve(static_cast<std::size_t>(K));
    Real pos = unit(rng) * fs;
    Real prev_cut = 0.0;
    for (Index k = 0; k < K; ++k) {
        Real f = std::fmod(pos, fs);
        if (f >= fs) {
            f -= fs;
        }
        freqs.push_back(f);
        if (k + 1 < K) {
            const Real cut = cuts[static_cast<std::size_t>(k)];
            pos += min_separation + (cut - prev_cut);
            prev_cut = cut;
        }
    }
    std::ranges::shuffle(freqs, rng);
    return freqs;
}

SignalModel draw_random_model(const RandomModelSpec& spec, Index N, Real fs, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    // slightly inflate so roundoff in the wrap never lands below the target
    const auto freqs = draw_separated_frequencies(spec.K, spec.separation * (1.0 + 1e-9), fs, rng);
    std::uniform_real_distribution<Real> unit(0.0, 1.0);
    std::vector<Node> nodes;
    std::vector<Complex> weights;
    for (Index k = 0; k < spec.K; ++k) {
        const Real d = spec.damping_min + unit(rng) * (spec.damping_max - spec.damping_min);
        nodes.push_back(Node::from_damping_frequency(d, freqs[static_cast<std::size_t>(k)], fs));
        const Real mag = spec.weight_min + unit(rng) * (spec.weight_max - spec.weight_min);
        weights.push_back(std::polar(mag, 2.0 * std::numbers::pi * unit(rng)));
    }
    return SignalModel(std::move(nodes), std::move(weights), N, fs);
}

SignalModel resolve_model(const ExperimentConfig& cfg, Index trial_index)
{
    if (cfg.model) {
        return *cfg.model;
    }
    return draw_random_model(*cfg.random_model, cfg.N, cfg.fs,
                             mix_seed(cfg.random_model->seed, static_cast<std::uint64_t>(trial_index)));
}

} // namespace cisoid::harness
