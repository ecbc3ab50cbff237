#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cisoid/matrices.hpp"
#include "cisoid/harness/config.hpp"
#include "cisoid/harness/experiment.hpp"
#include "cisoid/harness/io.hpp"

using namespace cisoid;
using namespace cisoid::harness;

namespace {

Json base_config()
{
    return Json::parse(R"({
        "model": {"nodes": [{"d": 0.01, "f": 0.1}, {"d": 0.0, "f": 0.45}, {"re": -0.5, "im": -0.5}],
                  "weights": [1.0, {"re": 0.0, "im": 0.8}, 1.5]},
        "N": 32, "L": "auto", "Fs": 1.0,
        "noise_energies": [0.01, 0.0001],
        "trials": 3, "algorithms": ["esprit", "pencil"], "seed": 99
    })");
}

std::filesystem::path scratch(const std::string& name)
{
    auto p = std::filesystem::temp_directory_path() / ("cisoid_test_" + name);
    std::filesystem::remove_all(p);
    return p;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("io: model JSON round trip")
{
    const SignalModel m({Node::from_damping_frequency(0.02, 0.3, 2.0), Node(Complex(-0.4, 0.7))},
                        {Complex(1.0, -2.0), Complex(0.5, 0.0)}, 12, 2.0);
    const Json j = model_to_json(m);
    CHECK(j.at("K") == 2);
    CHECK(j.at("N") == 12);
    const SignalModel back = model_from_json(Json::parse(j.dump()));
    CHECK(back.num_samples() == 12);
    CHECK(back.sampling_frequency() == 2.0);
    CHECK((back.node_values() - m.node_values()).norm() == 0.0);
    CHECK((back.weight_values() - m.weight_values()).norm() == 0.0);

    Json bad = j;
    bad["K"] = 3;
    CHECK_THROWS_AS(model_from_json(bad), ValidationError);
    bad = j;
    bad["extra"] = 1;
    CHECK_THROWS_AS(model_from_json(bad), ValidationError);
}

TEST_CASE("io: samples text round trip and errors")
{
    ComplexVector x(3);
    x << Complex(0.1, -2.0), Complex(1e-300, 3.5e10), Complex(-0.0, 1.0 / 3.0);
    std::stringstream ss;
    write_samples(ss, x);
    const ComplexVector back = read_samples(ss);
    CHECK(back == x);

    std::istringstream commented("# header\n\n1 2\n  3.5 -4  # trailing\n");
    const ComplexVector c = read_samples(commented);
    REQUIRE(c.size() == 2);
    CHECK(c(1) == Complex(3.5, -4.0));

    std::istringstream broken("1 2\n3\n");
    CHECK_THROWS_AS(read_samples(broken), ValidationError);
    std::istringstream junk("1 2 3\n");
    CHECK_THROWS_AS(read_samples(junk), ValidationError);
    CHECK_THROWS_AS(read_samples(std::filesystem::path("/nonexistent/samples.txt")), ValidationError);
}

TEST_CASE("io: extended values and bound reports")
{
    CHECK(extended_to_json(ExtendedComplex::infinity()) == "inf");
    CHECK(extended_to_json(ExtendedComplex(Complex(1.0, 2.0))).at("im") == 2.0);
    const SignalModel m({Node(0.9)}, {1.0}, 8);
    const Json r = bound_report_to_json(pencil_bound(m, 0.01, 4));
    CHECK(r.at("case") == "pencil_case2");
    CHECK(r.at("preconditions_met") == true);
    CHECK(r.contains("kappa_VL"));
}

TEST_CASE("config: parsing and validation")
{
    const ExperimentConfig cfg = config_from_json(base_config());
    CHECK(cfg.model.has_value());
    CHECK_FALSE(cfg.L.has_value());
    CHECK(resolve_window(cfg, 3) == 16);
    CHECK(cfg.trials == 3);
    CHECK(cfg.algorithms.size() == 2);

    auto with = [](const char* key, const Json& value) {
        Json j = base_config();
        j[key] = value;
        return j;
    };
    CHECK_THROWS_AS(config_from_json(with("unknown_key", 1)), ValidationError);
    CHECK_THROWS_AS(config_from_json(with("L", "big")), ValidationError);
    CHECK_THROWS_AS(config_from_json(with("L", 30)), ValidationError);
    CHECK_THROWS_AS(config_from_json(with("L", 3)), ValidationError); // ESPRIT needs K + 1
    CHECK_NOTHROW(config_from_json(with("L", 4)));
    CHECK_THROWS_AS(config_from_json(with("N", 5)), ValidationError);
    CHECK_THROWS_AS(config_from_json(with("trials", 0)), ValidationError);
    CHECK_THROWS_AS(config_from_json(with("noise_energies", Json::array({-1.0}))), ValidationError);
    CHECK_THROWS_AS(config_from_json(with("algorithms", Json::array({"music"}))), ValidationError);
    CHECK_THROWS_AS(config_from_json(with("bound_source", "guess")), ValidationError);
    CHECK_THROWS_AS(config_from_json(with("output", Json{{"xlsx", "a"}})), ValidationError);

    Json both = base_config();
    both["random_model"] = Json{{"K", 2}};
    CHECK_THROWS_AS(config_from_json(both), ValidationError);
    Json neither = base_config();
    neither.erase("model");
    CHECK_THROWS_AS(config_from_json(neither), ValidationError);

    Json pencil_only = with("L", 3);
    pencil_only["algorithms"] = Json::array({"pencil"});
    CHECK_NOTHROW(config_from_json(pencil_only));

    CHECK(algorithms_from_flag("both").size() == 2);
    CHECK(algorithms_from_flag("pencil") == std::vector<Algorithm>{Algorithm::Pencil});
    CHECK_THROWS_AS(algorithms_from_flag("all"), ValidationError);
}

TEST_CASE("config: fingerprint, auto window, seeds")
{
    ExperimentConfig a = config_from_json(base_config());
    ExperimentConfig b = a;
    b.threads = 8;
    b.csv_name = "other.csv";
    CHECK(config_fingerprint(a) == config_fingerprint(b));
    b.seed = 100;
    CHECK(config_fingerprint(a) != config_fingerprint(b));
    CHECK(config_fingerprint(config_from_json(config_to_json(a))) == config_fingerprint(a));

    CHECK(auto_window(64, 3) == 32);
    CHECK(auto_window(8, 3) == 4);
    CHECK(auto_window(6, 3) == 3);
    CHECK(auto_window(4, 1) == 2);

    CHECK(mix_seed(1, 2, 3) == mix_seed(1, 2, 3));
    CHECK(mix_seed(1, 2, 3) != mix_seed(1, 3, 2));
}

TEST_CASE("config: random models honour their parameters")
{
    RandomModelSpec spec;
    spec.K = 4;
    spec.separation = 0.2;
    spec.damping_min = 0.01;
    spec.damping_max = 0.03;
    spec.weight_min = 0.5;
    spec.weight_max = 2.0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const SignalModel m = draw_random_model(spec, 20, 1.0, seed);
        CHECK(m.order() == 4);
        CHECK(wraparound_separation(m.frequencies(), 1.0) >= 0.2);
        for (const auto& n : m.nodes()) {
            CHECK(n.damping() >= 0.01 - 1e-12);
            CHECK(n.damping() <= 0.03 + 1e-12);
        }
        CHECK(m.alpha_min() >= 0.5 - 1e-12);
        CHECK(m.alpha_max() <= 2.0 + 1e-12);
        const SignalModel again = draw_random_model(spec, 20, 1.0, seed);
        CHECK(again.node_values() == m.node_values());
    }
    spec.separation = 0.3;
    CHECK_THROWS_AS(draw_random_model(spec, 20, 1.0, 1), ValidationError);
}

TEST_CASE("run_trial: noiseless, deterministic, verdicts consistent")
{
    const ExperimentConfig cfg = config_from_json(base_config());
    const SignalModel& m = *cfg.model;
    const TrialOptions opts{cfg.algorithms, std::nullopt, VandermondeSource::Numeric};

    const ExperimentRecord clean = run_trial(m, 0.0, 1, opts);
    REQUIRE(clean.outcomes.size() == 2);
    for (const auto& o : clean.outcomes) {
        CHECK(o.status == TrialStatus::Ok);
        CHECK(o.match->max_euclidean < 1e-6);
        CHECK(o.gated);
        CHECK(*o.bound->bound_value == 0.0);
    }

    const ExperimentRecord a = run_trial(m, 1e-3, 7, opts);
    const ExperimentRecord b = run_trial(m, 1e-3, 7, opts);
    Json ja = record_to_json(a);
    Json jb = record_to_json(b);
    ja.erase("wall_clock_ms");
    jb.erase("wall_clock_ms");
    CHECK(ja == jb);
    CHECK(a.noise_norm == doctest::Approx(1e-3).epsilon(1e-12));
    for (const auto& o : a.outcomes) {
        CHECK(o.dominated == (!o.gated || o.matched_error <= *o.bound->bound_value));
    }
}

TEST_CASE("run_trial: small-noise certification")
{
    const ExperimentConfig cfg = config_from_json(base_config());
    int verdicts = 0;
    for (std::uint64_t t = 0; t < 100; ++t) {
        const auto r = run_trial(*cfg.model, 1e-5, mix_seed(5, t), {});
        for (const auto& o : r.outcomes) {
            CHECK(o.gated);
            CHECK(o.dominated);
            verdicts += o.dominated ? 1 : 0;
        }
    }
    CHECK(verdicts == 200);
}

TEST_CASE("run_sweep: ordering, empty grid, single point, aggregation")
{
    Json j = base_config();
    j["noise_energies"] = Json::array();
    const SweepResult empty = run_sweep(config_from_json(j));
    CHECK(empty.records.empty());
    CHECK(empty.summary.empty());

    j["noise_energies"] = Json::array({0.001});
    j["trials"] = 1;
    j["algorithms"] = Json::array({"esprit"});
    const SweepResult one = run_sweep(config_from_json(j));
    REQUIRE(one.records.size() == 1);
    REQUIRE(one.summary.size() == 1);
    const auto& o = one.records[0].outcomes[0];
    CHECK(one.summary[0].mean_matched_error == o.matched_error);
    CHECK(one.summary[0].max_matched_error == o.matched_error);
    CHECK(one.summary[0].mean_bound == *o.bound->bound_value);
    CHECK(one.summary[0].trials == 1);

    const ExperimentConfig cfg = config_from_json(base_config());
    const SweepResult res = run_sweep(cfg);
    REQUIRE(res.summary.size() == 4);
    CHECK(res.summary[0].noise_energy == 0.0001);
    CHECK(res.summary[2].noise_energy == 0.01);
    CHECK(res.summary[0].algorithm == Algorithm::Esprit);
    CHECK(res.summary[1].algorithm == Algorithm::Pencil);
    REQUIRE(res.records.size() == 6);
    for (std::size_t i = 0; i < res.records.size(); ++i) {
        CHECK(res.records[i].grid_index == static_cast<Index>(i / 3));
        CHECK(res.records[i].trial_index == static_cast<Index>(i % 3));
        CHECK(res.records[i].config_fingerprint == config_fingerprint(cfg));
    }

    // dominance rate recomputed from the raw records
    for (const auto& row : res.summary) {
        int gated = 0;
        int dominated = 0;
        for (const auto& r : res.records) {
            if (r.noise_energy != row.noise_energy) {
                continue;
            }
            for (const auto& out : r.outcomes) {
                if (out.algorithm == row.algorithm && out.gated) {
                    ++gated;
                    dominated += out.dominated ? 1 : 0;
                }
            }
        }
        REQUIRE(gated > 0);
        CHECK(row.dominance_rate == static_cast<double>(dominated) / gated);
    }
}

TEST_CASE("run_sweep: thread count does not change the outputs")
{
    Json j = Json::parse(R"({
        "random_model": {"K": 2, "separation": 0.2, "damping": [0, 0.02], "weight_magnitude": [0.5, 2], "seed": 3},
        "N": 24, "noise_energies": [0.001, 0.1], "trials": 5, "seed": 4
    })");
    ExperimentConfig cfg = config_from_json(j);
    const auto dir1 = scratch("threads1");
    const auto dir2 = scratch("threads4");
    cfg.threads = 1;
    const auto p1 = write_sweep_outputs(run_sweep(cfg), cfg, dir1);
    cfg.threads = 4;
    const auto p2 = write_sweep_outputs(run_sweep(cfg), cfg, dir2);
    CHECK(slurp(p1.first) == slurp(p2.first));
    CHECK(slurp(p1.first).rfind(std::string(kSummaryHeader) + "\n", 0) == 0);

    std::ifstream a(p1.second);
    std::ifstream b(p2.second);
    std::string la;
    std::string lb;
    int lines = 0;
    while (std::getline(a, la) && std::getline(b, lb)) {
        Json ja = Json::parse(la);
        Json jb = Json::parse(lb);
        ja.erase("wall_clock_ms");
        jb.erase("wall_clock_ms");
        CHECK(ja == jb);
        ++lines;
    }
    CHECK(lines == 10);
    std::filesystem::remove_all(dir1);
    std::filesystem::remove_all(dir2);
}
