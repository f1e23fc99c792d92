#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "blocknorm/matrix.hpp"
#include "blocknorm/search.hpp"

namespace blocknorm::cli {

// Exit code contract, stable across releases.
inline constexpr int kExitHolds = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitViolation = 2;
inline constexpr int kExitIndeterminate = 3;
inline constexpr int kExitBadInput = 64;
inline constexpr int kExitPrecondition = 65;

/// Built-in regression table of the known reference results. A tolerance
/// override replaces every row tolerance (an override of 0 is the
/// documented forced-failure path). Exit 0 iff every row passes.
int cmd_reproduce(std::optional<double> tol_override, const std::string& out_path,
                  std::ostream& out, std::ostream& err);

/// Evaluates one {A, X, B} file. Exit 0 when the inequality holds, 2 on a
/// certified violation, 3 when the gap falls inside the indeterminate
/// zone, 64 on malformed input.
int cmd_check(const std::string& input_path, const ToleranceConfig& tol, std::ostream& out,
              std::ostream& err);

/// Runs a randomized search and writes the report (to out_path when given,
/// standard output otherwise). Exit 0 on clean completion; violations are
/// findings, not errors.
int cmd_search(const SearchConfig& config, const std::string& out_path, std::ostream& out,
               std::ostream& err);

/// Runs the peeling falsifier on a square matrix file. Exit 2 on a
/// certified violation, 0 on a normality certificate, 3 on indeterminate,
/// 64 on malformed input, 65 when the singular values are not separated.
int cmd_falsify(const std::string& input_path, double k_max, const ToleranceConfig& tol,
                const std::string& out_path, std::ostream& out, std::ostream& err);

}  // namespace blocknorm::cli
