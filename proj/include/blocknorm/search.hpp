#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "blocknorm/blockineq.hpp"
#include "blocknorm/falsify.hpp"
#include "blocknorm/rng.hpp"

namespace blocknorm {

enum class SearchMode { Problem1, Problem2, Problem5 };

const char* search_mode_name(SearchMode mode);
std::optional<SearchMode> parse_search_mode(const std::string& name);

struct SearchConfig {
    SearchMode mode = SearchMode::Problem1;
    int dim = 3;
    int trials = 100;
    std::uint64_t seed = 0;
    int hill_climb_steps = 0;
    double condition_cap = 1e4;
    int threads = 1;
    ToleranceConfig tol{};

    void validate() const;  // throws InvalidConfig
};

struct TrichotomyCounts {
    long direct_holds = 0;
    long swapped_holds = 0;
    long equal_band = 0;
};

/// Deterministic function of the config: two runs with the same config
/// produce identical reports regardless of the thread count.
struct SearchReport {
    SearchConfig config;
    double best_gap;  // -infinity when there are no trials
    std::optional<ProblemInstance> best_instance;
    TrichotomyCounts counts;
    std::vector<ViolationCertificate> violations;
    double elapsed_seconds = 0.0;  // informational only, never serialized
};

SearchReport search(const SearchConfig& config);

/// Random-restart free local search: Gaussian perturbations of (A, X,
/// slack) with decaying step size, accepting only feasibility-preserving
/// moves that strictly increase the gap. The result never has a smaller
/// gap than the input.
ProblemInstance hill_climb(const ProblemInstance& inst, int steps, RngStream& rng,
                           const ToleranceConfig& tol = {});

/// The deterministic violating matrix planted as trial 0 of Problem5
/// searches: a weighted cyclic shift with distinct singular values.
Matrix planted_violation_x(std::size_t n);

}  // namespace blocknorm
