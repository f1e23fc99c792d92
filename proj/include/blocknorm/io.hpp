#pragma once

#include <string>

#include <json.hpp>

#include "blocknorm/blockineq.hpp"
#include "blocknorm/falsify.hpp"
#include "blocknorm/search.hpp"

namespace blocknorm::io {

using nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

/// {"rows": n, "cols": m, "data": [[re, im], ...]} row-major. Parsing is
/// strict: unknown fields, shape mismatches and non-finite entries are
/// rejected with a message naming the offending field.
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j, const std::string& field);

/// Check input: {"A": MatrixFile, "X": MatrixFile, "B": MatrixFile}.
json triple_to_json(const Matrix& a, const Matrix& x, const Matrix& b);
ProblemInstance triple_from_json(const json& j, const ToleranceConfig& tol);

json instance_to_json(const ProblemInstance& inst);
json certificate_to_json(const ViolationCertificate& cert);
json falsify_outcome_to_json(const FalsifyOutcome& outcome);

json search_config_to_json(const SearchConfig& config);
json search_report_to_json(const SearchReport& report);

/// Report envelope: {"schema_version", "command", "results", "pass"}.
json report_file(const std::string& command, json results, bool pass);

/// Strict parse of a report file: the declared schema version must be
/// known and no unknown fields are accepted at the envelope level.
json parse_report_text(const std::string& text);

json parse_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace blocknorm::io
