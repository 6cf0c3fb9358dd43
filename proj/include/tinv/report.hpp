#pragma once

#include <string>

#include <json.hpp>

#include "tinv/algebra.hpp"
#include "tinv/ffq.hpp"

namespace tinv::report {

using json = nlohmann::json;

inline constexpr const char* kToolVersion = "1.0.0";

json algebra_to_json(const AlgebraSpec& alg);
AlgebraSpec algebra_from_json(const json& j);
// FNV-1a 64 over the canonical serialization, as 16 hex digits.
std::string spec_hash(const AlgebraSpec& alg);

json monomial_to_json(const AlgebraSpec& alg, const Monomial& m);
Monomial monomial_from_json(const AlgebraSpec& alg, const json& j);
// Entries as lex ranks of their coefficient tuples.
json matrix_to_json(const ffq::FqMatrix& m);
ffq::FqMatrix matrix_from_json(std::shared_ptr<const ffq::Field> field, const json& j);

// Runs one named operation ("gl2.landmarks", "grun.essential", ...) on a
// parameter object and returns the full report envelope:
// {tool_version, operation, params, results, pass[, ingredients]}.
// Throws invalid_input / resource_limit.
json run_operation(const std::string& operation, const json& params);

// Names accepted by run_operation, sorted.
const std::vector<std::string>& operations();

// Built-in verification grid: [{operation, params, expect}].
json default_grid();

// Canonical bytes: sorted keys, two-space indent, trailing newline.
std::string canonical(const json& j);

}  // namespace tinv::report
