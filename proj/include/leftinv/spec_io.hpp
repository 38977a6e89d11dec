#pragma once

// JSON form of OperatorSpec: {"type": "<variant>", ...fields}. Complex numbers
// are [re, im] pairs (plain numbers are accepted on input); child operators
// are nested objects, with null for a zero block.

#include <filesystem>

#include <json.hpp>

#include "leftinv/operator_spec.hpp"

namespace leftinv {

/// Throws Error(SpecInvalid) on unknown types, missing fields or bad values.
SpecPtr spec_from_json(const nlohmann::json& j);
nlohmann::ordered_json spec_to_json(const OperatorSpec& spec);

/// Malformed JSON is reported as SpecInvalid.
SpecPtr load_spec(const std::filesystem::path& path);
void save_spec(const std::filesystem::path& path, const OperatorSpec& spec);

}  // namespace leftinv
