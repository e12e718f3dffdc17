#pragma once

// JSON problem, solution and report files (schema 1).
//
// problem:  {"schema": 1, "algebra": {"blocks": [k1, ...]}, "module_rank": n,
//            "operator": [[entry, ...], ...]}
// element:  one array per algebra block, row-major, each entry [re, im]
// solution: {"schema": 1, "algebra": ..., "module_rank": n, "ordered": bool,
//            "tolerance_used": t, "pairs": [{"label": int|null,
//            "vector": [element, ...], "value": element, "support": element}],
//            "ordering_certificate": [{"lower": a, "upper": b, "verified": bool}]}

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "wstar/diagonalizer.hpp"
#include "wstar/verify.hpp"

namespace wstar {

inline constexpr int kSchemaVersion = 1;

/// Malformed input; the message names the file position or JSON field.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Json = nlohmann::json;

Json element_to_json(const AlgebraElement& a);
AlgebraElement element_from_json(const Json& j, const AlgebraShape& shape, const std::string& path);

Json problem_to_json(const ModuleOperator& k);
ModuleOperator problem_from_json(const Json& j);

Json solution_to_json(const DiagonalizationResult& result);
/// Pairs must live in `module`. A missing "support" is recomputed as <x, x>.
DiagonalizationResult solution_from_json(const Json& j, const HilbertModule& module);

Json report_to_json(const VerificationReport& report);

/// Canonical text form: two-space indent, trailing newline.
std::string to_canonical_string(const Json& j);

Json parse_json_text(const std::string& text, const std::string& source_name);
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace wstar
