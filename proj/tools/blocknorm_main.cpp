#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "blocknorm/commands.hpp"

namespace {

void add_tolerance_flags(CLI::App* cmd, blocknorm::ToleranceConfig& tol) {
    cmd->add_option("--abs-tol", tol.abs_tol, "absolute tolerance")->check(CLI::NonNegativeNumber);
    cmd->add_option("--rel-tol", tol.rel_tol, "relative tolerance")->check(CLI::NonNegativeNumber);
    cmd->add_option("--band", tol.indeterminate_band, "indeterminate band")
        ->check(CLI::NonNegativeNumber);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical exploration of the positive block-matrix norm inequality"};
    app.require_subcommand(1);

    // reproduce
    auto* reproduce = app.add_subcommand("reproduce", "run the built-in regression table");
    std::optional<double> tol_override;
    std::string reproduce_out;
    reproduce->add_option("--tol", tol_override, "override every row tolerance");
    reproduce->add_option("--out", reproduce_out, "also write the report to this file");

    // check
    auto* check = app.add_subcommand("check", "evaluate one {A, X, B} instance file");
    std::string check_input;
    blocknorm::ToleranceConfig check_tol;
    check->add_option("input", check_input, "JSON file with A, X, B")->required();
    add_tolerance_flags(check, check_tol);

    // search
    auto* search_cmd = app.add_subcommand("search", "randomized counterexample search");
    blocknorm::SearchConfig config;
    std::string mode_name = "problem1";
    std::string search_out;
    search_cmd->add_option("--mode", mode_name, "problem1 | problem2 | problem5")
        ->check(CLI::IsMember({"problem1", "problem2", "problem5"}));
    search_cmd->add_option("--dim", config.dim, "matrix dimension")->check(CLI::Range(2, 64));
    search_cmd->add_option("--trials", config.trials, "number of trials")
        ->check(CLI::NonNegativeNumber);
    search_cmd->add_option("--seed", config.seed, "master seed");
    search_cmd->add_option("--hill-climb-steps", config.hill_climb_steps,
                            "local search steps per positive-gap trial")
        ->check(CLI::NonNegativeNumber);
    search_cmd->add_option("--cond-cap", config.condition_cap, "condition number cap");
    search_cmd->add_option("--threads", config.threads, "worker threads")
        ->check(CLI::Range(1, 256));
    search_cmd->add_option("--out", search_out, "write the report to this file");
    add_tolerance_flags(search_cmd, config.tol);

    // falsify
    auto* falsify = app.add_subcommand("falsify", "peeling falsifier for one matrix file");
    std::string falsify_input;
    std::string falsify_out;
    double k_max = blocknorm::kDefaultKMax;
    blocknorm::ToleranceConfig falsify_tol;
    falsify->add_option("input", falsify_input, "JSON matrix file")->required();
    falsify->add_option("--k-max", k_max, "cap for the doubling k search");
    falsify->add_option("--out", falsify_out, "write the report to this file");
    add_tolerance_flags(falsify, falsify_tol);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return blocknorm::cli::kExitBadInput;
    }

    try {
        if (reproduce->parsed()) {
            return blocknorm::cli::cmd_reproduce(tol_override, reproduce_out, std::cout,
                                                 std::cerr);
        }
        if (check->parsed()) {
            return blocknorm::cli::cmd_check(check_input, check_tol, std::cout, std::cerr);
        }
        if (search_cmd->parsed()) {
            config.mode = *blocknorm::parse_search_mode(mode_name);
            return blocknorm::cli::cmd_search(config, search_out, std::cout, std::cerr);
        }
        if (falsify->parsed()) {
            return blocknorm::cli::cmd_falsify(falsify_input, k_max, falsify_tol, falsify_out,
                                               std::cout, std::cerr);
        }
    } catch (const blocknorm::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return blocknorm::cli::kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 70;
    }
    return blocknorm::cli::kExitBadInput;
}
