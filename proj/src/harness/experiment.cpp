#include "cisoid/harness/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <thread>

#include "cisoid/esprit.hpp"
#include "cisoid/pencil.hpp"

namespace cisoid::harness {

namespace {

constexpr Real kNaN = std::numeric_limits<Real>::quiet_NaN();

AlgorithmOutcome run_esprit(const SignalModel& model, const MeasurementVector& mv, Real noise_norm,
                            Index L, VandermondeSource source)
{
    AlgorithmOutcome out;
    out.algorithm = Algorithm::Esprit;
    try {
        const EspritResult est = esprit_estimate(mv.samples, model.order(), L);
        out.estimates.assign(est.estimates.begin(), est.estimates.end());
        out.match = match_nodes(model.node_values(), out.estimates, MatchMetric::Euclidean);
        out.matched_error = out.match->max_euclidean;
        out.bound = esprit_bound(model, noise_norm, L, source);
    } catch (const Error& e) {
        out.status = TrialStatus::Failed;
        out.message = e.what();
        return out;
    }
    out.gated = out.bound->preconditions_met;
    out.dominated = !out.gated || out.matched_error <= *out.bound->bound_value;
    return out;
}

AlgorithmOutcome run_pencil(const SignalModel& model, const MeasurementVector& mv, Real noise_norm,
                            Index L, VandermondeSource source)
{
    AlgorithmOutcome out;
    out.algorithm = Algorithm::Pencil;
    const ComplexVector truth = model.node_values();
    try {
        out.bound = pencil_bound(model, noise_norm, L, source);
        out.corollary = pencil_corollary(*out.bound, truth);
        const PencilResult est = pencil_estimate(mv.samples, model.order(), L);
        out.estimates = est.estimates;
        out.match = match_nodes(truth, out.estimates, MatchMetric::Chordal);
        out.matched_error = out.match->max_chordal;
    } catch (const NotRegularError& e) {
        out.status = TrialStatus::NotRegular;
        out.message = e.what();
        return out;
    } catch (const Error& e) {
        out.status = TrialStatus::Failed;
        out.message = e.what();
        return out;
    }
    out.gated = out.bound->preconditions_met;
    out.dominated = !out.gated || out.matched_error <= *out.bound->bound_value;
    out.corollary_gated = out.gated && out.corollary->preconditions_met;
    out.corollary_dominated =
        !*out.corollary_gated || match_within(truth, out.estimates, out.corollary->eta).has_value();
    return out;
}

std::string format_real(Real x)
{
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[32];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

Json real_json(Real x)
{
    if (std::isfinite(x)) {
        return x;
    }
    return std::isnan(x) ? Json(nullptr) : Json(x > 0 ? "inf" : "-inf");
}

Json outcome_to_json(const AlgorithmOutcome& o)
{
    Json j;
    j["algorithm"] = to_string(o.algorithm);
    j["status"] = to_string(o.status);
    if (!o.message.empty()) {
        j["message"] = o.message;
    }
    Json est = Json::array();
    for (const auto& z : o.estimates) {
        est.push_back(extended_to_json(z));
    }
    j["estimates"] = est;
    j["match"] = o.match ? match_to_json(*o.match) : Json(nullptr);
    j["matched_error"] = real_json(o.matched_error);
    j["bound"] = o.bound ? bound_report_to_json(*o.bound) : Json(nullptr);
    if (o.corollary) {
        j["corollary"] = bound_report_to_json(*o.corollary);
    }
    j["gated"] = o.gated;
    j["dominated"] = o.dominated;
    if (o.corollary_gated) {
        j["corollary_gated"] = *o.corollary_gated;
        j["corollary_dominated"] = *o.corollary_dominated;
    }
    return j;
}

} // namespace

const char* to_string(TrialStatus s)
{
    switch (s) {
    case TrialStatus::Ok: return "ok";
    case TrialStatus::NotRegular: return "not_regular";
    case TrialStatus::Failed: return "failed";
    }
    return "unknown";
}

ExperimentRecord run_trial(const SignalModel& model, Real noise_energy, std::uint64_t seed,
                           const TrialOptions& options)
{
    const auto start = std::chrono::steady_clock::now();
    const MeasurementVector mv = inject_noise(synthesize(model), noise_energy, seed);
    ExperimentRecord r{{}, 0, 0, seed, model, noise_energy, 0.0, 0, {}, 0.0};
    r.noise_norm = mv.noise.norm();
    r.L = options.L ? *options.L : auto_window(model.num_samples(), model.order());
    for (Algorithm a : options.algorithms) {
        r.outcomes.push_back(a == Algorithm::Esprit
                                 ? run_esprit(model, mv, r.noise_norm, r.L, options.bound_source)
                                 : run_pencil(model, mv, r.noise_norm, r.L, options.bound_source));
    }
    r.wall_clock_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

SweepResult run_sweep(const ExperimentConfig& cfg)
{
    std::vector<Real> grid = cfg.noise_energies;
    std::ranges::stable_sort(grid);
    const std::string fingerprint = config_fingerprint(cfg);
    TrialOptions options{cfg.algorithms, cfg.L, cfg.bound_source};

    const auto trials = static_cast<std::size_t>(cfg.trials);
    const std::size_t total = grid.size() * trials;
    std::vector<std::optional<ExperimentRecord>> slots(total);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (std::size_t i = next++; i < total; i = next++) {
            const std::size_t g = i / trials;
            const std::size_t t = i % trials;
            try {
                const SignalModel model = resolve_model(cfg, static_cast<Index>(t));
                ExperimentRecord rec = run_trial(model, grid[g], mix_seed(cfg.seed, g, t), options);
                rec.config_fingerprint = fingerprint;
                rec.grid_index = static_cast<Index>(g);
                rec.trial_index = static_cast<Index>(t);
                slots[i] = std::move(rec);
            } catch (...) {
                const std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        }
    };

    const unsigned n_threads = std::max(1U, std::min<unsigned>(cfg.threads, static_cast<unsigned>(total)));
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned k = 0; k < n_threads; ++k) {
            pool.emplace_back(worker);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    SweepResult result;
    result.records.reserve(total);
    for (auto& s : slots) {
        result.records.push_back(std::move(*s));
    }
    result.summary = summarize(result.records, cfg.algorithms);
    return result;
}

std::vector<SummaryRow> summarize(const std::vector<ExperimentRecord>& records,
                                  const std::vector<Algorithm>& algorithms)
{
    std::vector<SummaryRow> rows;
    std::size_t begin = 0;
    while (begin < records.size()) {
        std::size_t end = begin;
        while (end < records.size() && records[end].grid_index == records[begin].grid_index) {
            ++end;
        }
        for (Algorithm a : algorithms) {
            SummaryRow row;
            row.noise_energy = records[begin].noise_energy;
            row.algorithm = a;
            Index ok = 0;
            Index gated = 0;
            Index dominated = 0;
            Index tight_count = 0;
            Real err_sum = 0.0;
            Real err_max = 0.0;
            Real bound_sum = 0.0;
            Real tight_sum = 0.0;
            for (std::size_t i = begin; i < end; ++i) {
                for (const auto& o : records[i].outcomes) {
                    if (o.algorithm != a) {
                        continue;
                    }
                    ++row.trials;
                    if (o.status == TrialStatus::Ok) {
                        ++ok;
                        err_sum += o.matched_error;
                        err_max = std::max(err_max, o.matched_error);
                    }
                    if (o.gated) {
                        ++gated;
                        dominated += o.dominated ? 1 : 0;
                        bound_sum += *o.bound->bound_value;
                        if (o.matched_error > 0.0) {
                            tight_sum += *o.bound->bound_value / o.matched_error;
                            ++tight_count;
                        }
                    }
                }
            }
            row.mean_matched_error = ok > 0 ? err_sum / static_cast<Real>(ok) : kNaN;
            row.max_matched_error = ok > 0 ? err_max : kNaN;
            row.mean_bound = gated > 0 ? bound_sum / static_cast<Real>(gated) : kNaN;
            row.dominance_rate = gated > 0 ? static_cast<Real>(dominated) / static_cast<Real>(gated) : kNaN;
            row.precondition_rate =
                row.trials > 0 ? static_cast<Real>(gated) / static_cast<Real>(row.trials) : kNaN;
            row.mean_tightness = tight_count > 0 ? tight_sum / static_cast<Real>(tight_count) : kNaN;
            rows.push_back(row);
        }
        begin = end;
    }
    return rows;
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows)
{
    out << kSummaryHeader << '\n';
    for (const auto& r : rows) {
        out << format_real(r.noise_energy) << ',' << to_string(r.algorithm) << ',' << r.trials << ','
            << format_real(r.mean_matched_error) << ',' << format_real(r.max_matched_error) << ','
            << format_real(r.mean_bound) << ',' << format_real(r.dominance_rate) << ','
            << format_real(r.precondition_rate) << ',' << format_real(r.mean_tightness) << '\n';
    }
}

Json record_to_json(const ExperimentRecord& r)
{
    Json outcomes = Json::array();
    for (const auto& o : r.outcomes) {
        outcomes.push_back(outcome_to_json(o));
    }
    return Json{{"config_fingerprint", r.config_fingerprint},
                {"grid_index", r.grid_index},
                {"trial_index", r.trial_index},
                {"trial_seed", r.trial_seed},
                {"model", model_to_json(r.model)},
                {"noise_energy", r.noise_energy},
                {"noise_norm", r.noise_norm},
                {"L", r.L},
                {"outcomes", outcomes},
                {"wall_clock_ms", r.wall_clock_ms}};
}

void write_records_jsonl(std::ostream& out, const std::vector<ExperimentRecord>& records)
{
    for (const auto& r : records) {
        out << record_to_json(r).dump() << '\n';
    }
}

std::pair<std::filesystem::path, std::filesystem::path>
write_sweep_outputs(const SweepResult& result, const ExperimentConfig& cfg, const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw ValidationError("cannot create output directory " + dir.string() + ": " + ec.message());
    }
    const auto csv_path = dir / cfg.csv_name;
    const auto jsonl_path = dir / cfg.jsonl_name;
    std::ofstream csv(csv_path);
    std::ofstream jsonl(jsonl_path);
    if (!csv || !jsonl) {
        throw ValidationError("cannot write sweep outputs into " + dir.string());
    }
    write_summary_csv(csv, result.summary);
    write_records_jsonl(jsonl, result.records);
    return {csv_path, jsonl_path};
}

} // namespace cisoid::harness
