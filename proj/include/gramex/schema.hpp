#pragma once
// A small JSON Schema checker covering the keywords the bundle schema uses:
// type, required, properties, additionalProperties, items, enum, minimum,
// maximum, minItems, and local "$ref": "#/definitions/...".

#include <string>
#include <vector>

#include <json.hpp>

namespace gramex {

// Returns one message per violation, each prefixed by a JSON pointer to the
// offending value. Empty means valid.
std::vector<std::string> validate_schema(const nlohmann::json& instance, const nlohmann::json& schema);

// The schema shipped for bundle.json.
const nlohmann::json& bundle_schema();

}  // namespace gramex
