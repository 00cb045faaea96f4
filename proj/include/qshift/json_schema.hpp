#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace qshift {

extern const std::string_view kReportSchemaText;

const nlohmann::json& report_schema();

// Validates against the subset of JSON Schema used by the report schema:
// type, enum, const, required, properties, additionalProperties,
// propertyNames, items, minimum, minLength, pattern, allOf, anyOf, if/then
// and local $ref. Returns one message per violation, empty when valid.
std::vector<std::string> validate_json(const nlohmann::json& instance, const nlohmann::json& schema);

}  // namespace qshift
