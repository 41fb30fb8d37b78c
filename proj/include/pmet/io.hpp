#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pmet/approach.hpp"
#include "pmet/oracle.hpp"
#include "pmet/probmetric.hpp"
#include "pmet/transforms.hpp"

namespace pmet::io {

using nlohmann::json;

/// Schema violations raise ParseError with a field path in the message;
/// the CLI maps them to exit code 2.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

/// [0,inf] values: numbers, or the string "inf" for infinity.
json ext_to_json(double t);
double ext_from_json(const json& j, const std::string& what);

// T-norm descriptors: {"intervals":[{"a":..,"b":..,"archetype":..}]} or
// one of the shorthand names "min", "product", "lukasiewicz".
OrdinalSumTNorm tnorm_from_json(const json& j);
json tnorm_to_json(const OrdinalSumTNorm& t);
/// A shorthand name, or a path to a descriptor file.
OrdinalSumTNorm tnorm_from_arg(const std::string& name_or_path);

// Distributions: {"plateaus":[[jump,value],...]}, "kappa", {"exp_rate":r}.
Distribution distribution_from_json(const json& j);
json distribution_to_json(const Distribution& d);

// Spaces: carrier, t-norm, entries keyed "x|y" (diagonal implied kappa,
// symmetry completed; contradictory symmetric entries are rejected).
ProbMetricSpace space_from_json(const json& j);
json space_to_json(const ProbMetricSpace& m);
ProbMetricSpace space_from_file(const std::string& path);

// Approach spaces: carrier plus a full delta table keyed "x|{a,b}", or
// {"derive_from": "<space file>"} resolved relative to the current
// directory.
FiniteApproachSpace approach_from_json(const json& j);
json approach_to_json(const FiniteApproachSpace& a);
FiniteApproachSpace approach_from_file(const std::string& path);

/// Sniffs the schema: "entries" loads a probabilistic metric space (the
/// result is the derived approach space when derive is set), "delta" a
/// table, "derive_from" a reference.
FiniteApproachSpace approach_from_any_file(const std::string& path);

json report_to_json(const AxiomReport& r);
AxiomReport report_from_json(const json& j);

json transform_report_to_json(const TransformReport& r);
TransformReport transform_report_from_json(const json& j);

json classification_to_json(const ClassificationReport& r);

std::vector<CorpusEntry> manifest_from_json(const json& j);
json manifest_to_json(const std::vector<CorpusEntry>& entries);

}  // namespace pmet::io
