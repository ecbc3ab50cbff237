#ifndef CISOID_HARNESS_IO_HPP
#define CISOID_HARNESS_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "cisoid/bounds.hpp"
#include "cisoid/metrics.hpp"
#include "cisoid/model.hpp"

namespace cisoid::harness {

using Json = nlohmann::json;

///
/// Model record:
///
///   {"K": 2, "Fs": 1.0, "N": 32,
///    "nodes":   [{"re": 0.9, "im": 0.0}, {"d": 0.01, "f": 0.25}],
///    "weights": [{"re": 1.0, "im": 0.0}, {"re": 0.5, "im": -0.5}]}
///
/// Nodes may be given in either form; they are always written as {re, im}
/// plus the derived {d, f} for readability. "K" is optional on input and
/// must match the node count when present.
///
Json model_to_json(const SignalModel& model);
SignalModel model_from_json(const Json& j);
SignalModel load_model(const std::filesystem::path& path);

/// Node list in either {re, im} or {d, f} form.
std::vector<Node> nodes_from_json(const Json& j, Real fs);
std::vector<Complex> weights_from_json(const Json& j);

Json complex_to_json(Complex z);
Json extended_to_json(const ExtendedComplex& z);

/// Flat record; ingredient names become top-level keys.
Json bound_report_to_json(const BoundReport& r);
Json match_to_json(const MatchResult& m);

/// Samples text format: one "re im" pair per line. Blank lines and '#' comments are skipped.
ComplexVector read_samples(std::istream& in);
ComplexVector read_samples(const std::filesystem::path& path);
void write_samples(std::ostream& out, const ComplexVector& samples);

/// Reads a whole JSON document; parse errors become ValidationError.
Json load_json(const std::filesystem::path& path);

} // namespace cisoid::harness

#endif // CISOID_HARNESS_IO_HPP
