#pragma once

#include <filesystem>

#include <json.hpp>

#include "convolab/fourier.hpp"
#include "convolab/involutive.hpp"
#include "convolab/measures.hpp"
#include "convolab/regularity.hpp"

namespace convolab::io {

using nlohmann::json;

/// {"kind":"cyclic","n":6} and friends. Throws Error(ParseError) on schema violations.
GroupSpec group_spec_from_json(const json& j);
json to_json(const GroupSpec& spec);

/// {"group": <group JSON | path string>, "weights": ["1/2", ...]}.
/// A string "group" is resolved relative to base_dir.
ProbMeasure measure_from_json(const json& j, const std::filesystem::path& base_dir = {});
json to_json(const ProbMeasure& mu);

json weights_to_json(const std::vector<Rational>& w);
json to_json(const RegularityVerdict& v);
json to_json(const RationalMatrix& m);
json to_json(const ObstructionResult& r);
json to_json(const UnitaryDual& dual);
json to_json(const CompatibleFunction& gamma);

/// Reads and parses a JSON file; throws Error(ParseError).
json read_json_file(const std::filesystem::path& path);

}  // namespace convolab::io
