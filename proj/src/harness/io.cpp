#include "cisoid/harness/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace cisoid::harness {

namespace {

Real number_field(const Json& j, const char* key)
{
    if (!j.contains(key) || !j.at(key).is_number()) {
        throw ValidationError(std::string("missing or non-numeric field '") + key + "'");
    }
    return j.at(key).get<Real>();
}

void reject_unknown(const Json& j, std::initializer_list<const char*> allowed, const char* what)
{
    for (const auto& [key, _] : j.items()) {
        if (std::find_if(allowed.begin(), allowed.end(),
                         [&](const char* a) { return key == a; }) == allowed.end()) {
            throw ValidationError(std::string("unknown key '") + key + "' in " + what);
        }
    }
}

Json real_or_null(Real x)
{
    return std::isfinite(x) ? Json(x) : Json(nullptr);
}

} // namespace

Json complex_to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json extended_to_json(const ExtendedComplex& z)
{
    if (z.is_infinite()) {
        return Json("inf");
    }
    return complex_to_json(z.value());
}

std::vector<Node> nodes_from_json(const Json& j, Real fs)
{
    if (!j.is_array()) {
        throw ValidationError("'nodes' must be an array");
    }
    std::vector<Node> nodes;
    for (const auto& e : j) {
        if (!e.is_object()) {
            throw ValidationError("each node must be an object");
        }
        if (e.contains("re") || e.contains("im")) {
            reject_unknown(e, {"re", "im", "d", "f"}, "node");
            nodes.emplace_back(Complex(number_field(e, "re"), number_field(e, "im")));
        } else {
            reject_unknown(e, {"d", "f"}, "node");
            nodes.push_back(Node::from_damping_frequency(number_field(e, "d"), number_field(e, "f"), fs));
        }
    }
    return nodes;
}

std::vector<Complex> weights_from_json(const Json& j)
{
    if (!j.is_array()) {
        throw ValidationError("'weights' must be an array");
    }
    std::vector<Complex> w;
    for (const auto& e : j) {
        if (e.is_number()) {
            w.emplace_back(e.get<Real>(), 0.0);
            continue;
        }
        if (!e.is_object()) {
            throw ValidationError("each weight must be a number or {re, im}");
        }
        reject_unknown(e, {"re", "im"}, "weight");
        w.emplace_back(number_field(e, "re"), number_field(e, "im"));
    }
    return w;
}

Json model_to_json(const SignalModel& model)
{
    Json nodes = Json::array();
    for (const auto& n : model.nodes()) {
        nodes.push_back({{"re", n.z().real()},
                         {"im", n.z().imag()},
                         {"d", n.damping()},
                         {"f", n.frequency(model.sampling_frequency())}});
    }
    Json weights = Json::array();
    for (const auto& a : model.weights()) {
        weights.push_back(complex_to_json(a));
    }
    return Json{{"K", model.order()},
                {"Fs", model.sampling_frequency()},
                {"N", model.num_samples()},
                {"nodes", nodes},
                {"weights", weights}};
}

SignalModel model_from_json(const Json& j)
{
    if (!j.is_object()) {
        throw ValidationError("model record must be an object");
    }
    reject_unknown(j, {"K", "Fs", "N", "nodes", "weights"}, "model record");
    const Real fs = j.contains("Fs") ? number_field(j, "Fs") : 1.0;
    if (!j.contains("N") || !j.at("N").is_number_integer()) {
        throw ValidationError("model record needs integer field 'N'");
    }
    if (!j.contains("nodes") || !j.contains("weights")) {
        throw ValidationError("model record needs 'nodes' and 'weights'");
    }
    auto nodes = nodes_from_json(j.at("nodes"), fs);
    auto weights = weights_from_json(j.at("weights"));
    if (j.contains("K")) {
        if (!j.at("K").is_number_integer() || j.at("K").get<std::size_t>() != nodes.size()) {
            throw ValidationError("'K' does not match the number of nodes");
        }
    }
    return SignalModel(std::move(nodes), std::move(weights), j.at("N").get<Index>(), fs);
}

Json load_json(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open " + path.string());
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ValidationError("malformed JSON in " + path.string() + ": " + e.what());
    }
}

SignalModel load_model(const std::filesystem::path& path) { return model_from_json(load_json(path)); }

Json bound_report_to_json(const BoundReport& r)
{
    Json j;
    j["case"] = to_string(r.bound_case);
    j["preconditions_met"] = r.preconditions_met;
    Json conditions = Json::object();
    for (const auto& [k, v] : r.conditions) {
        conditions[k] = v;
    }
    j["conditions"] = conditions;
    j["gamma"] = r.gamma ? real_or_null(*r.gamma) : Json(nullptr);
    j["beta"] = r.beta ? real_or_null(*r.beta) : Json(nullptr);
    j["d"] = r.d ? real_or_null(*r.d) : Json(nullptr);
    j["bound_value"] = r.bound_value ? real_or_null(*r.bound_value) : Json(nullptr);
    if (!r.eta.empty()) {
        j["eta"] = r.eta;
    }
    for (const auto& [k, v] : r.ingredients) {
        j[k] = real_or_null(v);
    }
    return j;
}

Json match_to_json(const MatchResult& m)
{
    Json eu = Json::array();
    for (Real x : m.per_node_euclidean) {
        eu.push_back(std::isfinite(x) ? Json(x) : Json("inf"));
    }
    return Json{{"permutation", m.permutation},
                {"per_node_euclidean", eu},
                {"per_node_chordal", m.per_node_chordal},
                {"max_euclidean", std::isfinite(m.max_euclidean) ? Json(m.max_euclidean) : Json("inf")},
                {"max_chordal", m.max_chordal}};
}

ComplexVector read_samples(std::istream& in)
{
    std::vector<Complex> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ls(line);
        Real re = 0.0;
        Real im = 0.0;
        if (!(ls >> re)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) {
                continue;
            }
            throw ValidationError("samples line " + std::to_string(line_no) + ": expected 're im'");
        }
        std::string rest;
        if (!(ls >> im) || (ls >> rest)) {
            throw ValidationError("samples line " + std::to_string(line_no) + ": expected 're im'");
        }
        values.emplace_back(re, im);
    }
    return Eigen::Map<const ComplexVector>(values.data(), static_cast<Index>(values.size()));
}

ComplexVector read_samples(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open samples file " + path.string());
    }
    return read_samples(in);
}

void write_samples(std::ostream& out, const ComplexVector& samples)
{
    const auto flags = out.flags();
    const auto precision = out.precision();
    out << std::setprecision(17);
    for (Index n = 0; n < samples.size(); ++n) {
        out << samples(n).real() << ' ' << samples(n).imag() << '\n';
    }
    out.flags(flags);
    out.precision(precision);
}

} // namespace cisoid::harness
