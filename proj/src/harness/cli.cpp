#include "cisoid/harness/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "cisoid/bounds.hpp"
#include "cisoid/esprit.hpp"
#include "cisoid/pencil.hpp"
#include "cisoid/harness/acceptance.hpp"
#include "cisoid/harness/config.hpp"
#include "cisoid/harness/experiment.hpp"
#include "cisoid/harness/io.hpp"

namespace cisoid::harness {

namespace {

std::optional<Index> parse_window(const std::string& text)
{
    if (text.empty() || text == "auto") {
        return std::nullopt;
    }
    try {
        std::size_t used = 0;
        const long long v = std::stoll(text, &used);
        if (used != text.size() || v < 1) {
            throw std::invalid_argument(text);
        }
        return static_cast<Index>(v);
    } catch (const std::logic_error&) {
        throw ValidationError("--L must be \"auto\" or a positive integer, got '" + text + "'");
    }
}

// A model document, or an experiment config (explicit or random model, trial 0).
SignalModel model_from_document(const std::filesystem::path& path)
{
    const Json doc = load_json(path);
    if (doc.is_object() && (doc.contains("model") || doc.contains("random_model"))) {
        return resolve_model(config_from_json(doc), 0);
    }
    return model_from_json(doc);
}

std::ostream& open_output(const std::string& dir, const std::string& name, std::ofstream& file)
{
    if (dir.empty()) {
        return std::cout;
    }
    std::filesystem::create_directories(dir);
    file.open(std::filesystem::path(dir) / name);
    if (!file) {
        throw ValidationError("cannot write " + (std::filesystem::path(dir) / name).string());
    }
    return file;
}

struct SynthArgs {
    std::string config;
    std::string out;
    double noise = 0.0;
    std::uint64_t seed = 0;
};

int cmd_synth(const SynthArgs& a)
{
    const SignalModel model = model_from_document(a.config);
    const MeasurementVector mv = inject_noise(synthesize(model), a.noise, a.seed);
    std::ofstream file;
    std::ostream& out = open_output(a.out, "samples.txt", file);
    out << "# N=" << model.num_samples() << " K=" << model.order() << " noise_energy=" << a.noise
        << " seed=" << a.seed << '\n';
    write_samples(out, mv.samples);
    return 0;
}

struct EstimateArgs {
    std::string samples;
    Index K = 0;
    std::string algo = "both";
    std::string L = "auto";
};

int cmd_estimate(const EstimateArgs& a)
{
    ComplexVector x;
    if (a.samples == "-") {
        x = read_samples(std::cin);
    } else {
        x = read_samples(std::filesystem::path(a.samples));
    }
    const Index N = x.size();
    if (a.K < 1) {
        throw ValidationError("--K must be >= 1");
    }
    if (N < 2 * a.K) {
        throw ValidationError("K = " + std::to_string(a.K) + " with N = " + std::to_string(N) +
                              " samples violates N >= 2K");
    }
    const Index L = parse_window(a.L).value_or(auto_window(N, a.K));
    Json out;
    out["N"] = N;
    out["K"] = a.K;
    out["L"] = L;
    for (Algorithm alg : algorithms_from_flag(a.algo)) {
        Json est = Json::array();
        if (alg == Algorithm::Esprit) {
            for (const Complex& z : esprit_estimate(x, a.K, L).estimates) {
                est.push_back(complex_to_json(z));
            }
        } else {
            for (const auto& z : pencil_estimate(x, a.K, L).estimates) {
                est.push_back(extended_to_json(z));
            }
        }
        out[to_string(alg)] = est;
    }
    std::cout << out.dump(2) << '\n';
    return 0;
}

struct BoundsArgs {
    std::string config;
    double noise_norm = 0.0;
    std::string L = "auto";
    std::string source = "numeric";
};

int cmd_bounds(const BoundsArgs& a)
{
    const SignalModel model = model_from_document(a.config);
    if (!(a.noise_norm >= 0.0)) {
        throw ValidationError("--noise-norm must be >= 0");
    }
    VandermondeSource source = VandermondeSource::Numeric;
    if (a.source == "analytic") {
        source = VandermondeSource::Analytic;
    } else if (a.source != "numeric") {
        throw ValidationError("--source must be numeric or analytic");
    }
    const Index N = model.num_samples();
    const Index K = model.order();
    const std::optional<Index> requested = parse_window(a.L);
    const Index L = requested.value_or(auto_window(N, K));

    Json out;
    out["model"] = model_to_json(model);
    out["noise_norm"] = a.noise_norm;
    out["L"] = L;
    if (L >= K + 1) {
        out["esprit_case1"] = bound_report_to_json(esprit_bound(model, a.noise_norm, L, source));
    }
    const BoundReport pencil = pencil_bound(model, a.noise_norm, L, source);
    out["pencil_case2"] = bound_report_to_json(pencil);
    out["pencil_corollary"] = bound_report_to_json(pencil_corollary(pencil, model.node_values()));
    if (K >= 2) {
        out["vandermonde"] = bound_report_to_json(vandermonde_bounds(model.nodes(), N, model.sampling_frequency()));
    }
    std::cout << out.dump(2) << '\n';
    return 0;
}

struct SweepArgs {
    std::string config;
    std::string out = ".";
    std::optional<std::uint64_t> seed;
    std::string algo;
    std::string L;
    unsigned jobs = 0;
};

int cmd_sweep(const SweepArgs& a)
{
    ExperimentConfig cfg = load_config(a.config);
    if (a.seed) {
        cfg.seed = *a.seed;
    }
    if (!a.algo.empty()) {
        cfg.algorithms = algorithms_from_flag(a.algo);
    }
    if (!a.L.empty()) {
        cfg.L = parse_window(a.L);
    }
    if (a.jobs > 0) {
        cfg.threads = a.jobs;
    }
    const SweepResult result = run_sweep(cfg);
    const auto [csv, jsonl] = write_sweep_outputs(result, cfg, a.out);
    std::cout << "wrote " << result.summary.size() << " summary rows to " << csv.string() << '\n'
              << "wrote " << result.records.size() << " records to " << jsonl.string() << '\n';
    return 0;
}

struct VerifyArgs {
    std::uint64_t seed = AcceptanceOptions{}.seed;
    std::string out;
};

int cmd_verify(const VerifyArgs& a)
{
    AcceptanceOptions options;
    options.seed = a.seed;
    options.scratch_dir = a.out;
    const bool ok = print_acceptance(std::cout, run_acceptance(options));
    return ok ? 0 : 2;
}

} // namespace

int run_cli(int argc, char** argv)
{
    CLI::App app{"Damped sinusoid estimation (ESPRIT, matrix pencil) with deterministic error bounds"};
    app.require_subcommand(1);

    SynthArgs synth;
    auto* s = app.add_subcommand("synth", "Write samples of a model, optionally with seeded noise");
    s->add_option("--config", synth.config, "Model JSON or experiment config")->required();
    s->add_option("--noise", synth.noise, "Noise energy (squared 2-norm of the noise vector)");
    s->add_option("--seed", synth.seed, "Noise seed");
    s->add_option("--out", synth.out, "Output directory (samples.txt); stdout when omitted");

    EstimateArgs estimate;
    auto* e = app.add_subcommand("estimate", "Estimate nodes from a samples file");
    e->add_option("--samples", estimate.samples, "Samples file, '-' for stdin")->required();
    e->add_option("--K", estimate.K, "Model order")->required();
    e->add_option("--algo", estimate.algo, "esprit | pencil | both");
    e->add_option("--L", estimate.L, "Window size: auto | int");

    BoundsArgs bounds;
    auto* b = app.add_subcommand("bounds", "Evaluate the error and conditioning bounds for a model");
    b->add_option("--config", bounds.config, "Model JSON or experiment config")->required();
    b->add_option("--noise-norm", bounds.noise_norm, "2-norm of the noise vector");
    b->add_option("--L", bounds.L, "Window size: auto | int");
    b->add_option("--source", bounds.source, "Vandermonde singular values: numeric | analytic");

    SweepArgs sweep;
    auto* w = app.add_subcommand("sweep", "Run a full experiment from a config file");
    w->add_option("--config", sweep.config, "Experiment config JSON")->required();
    w->add_option("--out", sweep.out, "Output directory");
    w->add_option("--seed", sweep.seed, "Override the config seed");
    w->add_option("--algo", sweep.algo, "Override the algorithms: esprit | pencil | both");
    w->add_option("--L", sweep.L, "Override the window size: auto | int");
    w->add_option("--jobs", sweep.jobs, "Worker threads");

    VerifyArgs verify;
    auto* v = app.add_subcommand("verify", "Run the acceptance suite");
    v->add_option("--seed", verify.seed, "Acceptance seed");
    v->add_option("--out", verify.out, "Scratch directory for the determinism check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& ex) {
        return app.exit(ex);
    } catch (const CLI::ParseError& ex) {
        app.exit(ex);
        return 1;
    }

    try {
        if (*s) {
            return cmd_synth(synth);
        }
        if (*e) {
            return cmd_estimate(estimate);
        }
        if (*b) {
            return cmd_bounds(bounds);
        }
        if (*w) {
            return cmd_sweep(sweep);
        }
        return cmd_verify(verify);
    } catch (const ValidationError& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return 1;
    } catch (const ComputationError& ex) {
        std::cerr << "computation failed: " << ex.what() << '\n';
        return 2;
    } catch (const std::filesystem::filesystem_error& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return 1;
    } catch (const Error& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return 2;
    }
}

} // namespace cisoid::harness
