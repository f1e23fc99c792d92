#include "blocknorm/commands.hpp"

#include <cmath>
#include <iomanip>
#include <vector>

#include "blocknorm/io.hpp"

namespace blocknorm::cli {

namespace {

using io::json;

struct RegressionRow {
    std::string name;
    double expected;
    double computed;
    double tolerance;
    bool lower_bound;  // pass iff computed >= expected - tolerance
    bool pass;
};

RegressionRow make_row(std::string name, double expected, double computed, double tolerance,
                       bool lower_bound = false) {
    RegressionRow row{std::move(name), expected, computed, tolerance, lower_bound, false};
    row.pass = lower_bound ? computed >= expected - tolerance
                           : std::abs(computed - expected) <= tolerance;
    return row;
}

void emit_report(const json& report, const std::string& out_path, std::ostream& out) {
    const std::string text = report.dump(2) + "\n";
    out << text;
    if (!out_path.empty()) io::write_text_file(out_path, text);
}

}  // namespace

int cmd_reproduce(std::optional<double> tol_override, const std::string& out_path,
                  std::ostream& out, std::ostream& err) {
    std::vector<RegressionRow> rows;
    try {
        const ReferenceCounterexample ref = reference_counterexample();
        const double block_norm = operator_norm(assemble_block(ref.instance));

        const Matrix a123 = Matrix::diagonal(std::vector<double>{1.0, 2.0, 3.0});
        const Matrix cyc{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};
        const InversePairBound bound = inverse_pair_bound(a123, cyc);

        const double closed = two_by_two_norm(3.0, 2.0);
        const double eigen_route = operator_norm(Matrix{{3, 1}, {1, 2}});

        const Matrix planted = planted_violation_x(3);
        const Matrix d231 = Matrix::diagonal(std::vector<double>{2.0, 3.0, 1.0});
        const FloorNorms planted_floors = floor_norms(d231, planted);
        const double additivity = norm_additivity_gap(d231, cyc);
        const FalsifyOutcome outcome = peel_falsify(planted);
        const auto* violation = std::get_if<ViolationOutcome>(&outcome);

        rows.push_back(make_row("counterexample_sum_norm", 3.5, ref.sum_norm, 1e-12));
        rows.push_back(
            make_row("counterexample_block_norm", ref.block_lower_bound, block_norm, 1e-10, true));
        rows.push_back(make_row("counterexample_feasible", 1.0,
                                ref.instance.feasible ? 1.0 : 0.0, 0.0));
        rows.push_back(make_row("inverse_pair_plain", 10.0 / 3.0, bound.plain, 1e-12));
        rows.push_back(make_row("inverse_pair_conjugated", 3.5, bound.conjugated, 1e-12));
        rows.push_back(make_row("inverse_pair_holds", 1.0, bound.holds ? 1.0 : 0.0, 0.0));
        rows.push_back(
            make_row("two_by_two_norm_3_2", 0.5 * (5.0 + std::sqrt(5.0)), closed, 1e-12));
        rows.push_back(make_row("closed_form_vs_eigensolver", 0.0,
                                std::abs(closed - eigen_route), 1e-10));
        rows.push_back(make_row("planted_floor_direct", 5.0, planted_floors.direct, 1e-9));
        rows.push_back(make_row("planted_floor_swapped", 12.0, planted_floors.swapped, 1e-9));
        rows.push_back(make_row("planted_additivity_gap", 1.0, additivity, 1e-9));
        rows.push_back(make_row("planted_falsify_violation", 1.0, violation ? 1.0 : 0.0, 0.0));
        rows.push_back(make_row("planted_falsify_gap", 1.0,
                                violation ? violation->certificate.gap : 0.0, 1e-9, true));
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitMismatch;
    }

    if (tol_override) {
        for (RegressionRow& row : rows) {
            row.tolerance = *tol_override;
            row.pass = row.lower_bound ? row.computed >= row.expected - row.tolerance
                                       : std::abs(row.computed - row.expected) <= row.tolerance;
        }
    }

    bool all_pass = true;
    json results = json::array();
    out << std::left << std::setw(32) << "row" << std::setw(24) << "expected" << std::setw(24)
        << "computed" << "status\n";
    for (const RegressionRow& row : rows) {
        all_pass = all_pass && row.pass;
        out << std::left << std::setw(32) << row.name << std::setw(24) << std::setprecision(12)
            << row.expected << std::setw(24) << std::setprecision(12) << row.computed
            << (row.pass ? "PASS" : "FAIL") << "\n";
        results.push_back(json{{"name", row.name},
                               {"expected", row.expected},
                               {"computed", row.computed},
                               {"tolerance", row.tolerance},
                               {"lower_bound", row.lower_bound},
                               {"pass", row.pass}});
    }
    out << (all_pass ? "all rows PASS\n" : "some rows FAIL\n");

    if (!out_path.empty()) {
        const json report = io::report_file("reproduce", json{{"rows", results}}, all_pass);
        io::write_text_file(out_path, report.dump(2) + "\n");
    }
    return all_pass ? kExitHolds : kExitMismatch;
}

int cmd_check(const std::string& input_path, const ToleranceConfig& tol, std::ostream& out,
              std::ostream& err) {
    ProblemInstance inst;
    try {
        tol.validate();
        const json input = io::parse_json_file(input_path);
        inst = io::triple_from_json(input, tol);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitBadInput;
    }

    const FloorNorms floors = floor_norms(inst.a, inst.x);
    const Trichotomy cls = classify_trichotomy(inst.a, inst.x, tol);
    const bool hiroshima = both_arrangements_psd(inst, tol);
    const ViolationEvaluation ev = evaluate_violation(inst, tol);

    json witness_json = nullptr;
    bool degenerate = false;
    try {
        if (const auto witness = resolvent_witness(inst, tol)) {
            witness_json = json{{"lambda", witness->lambda},
                                {"resolvent_residual", witness->resolvent_residual},
                                {"upper", io::matrix_to_json(witness->upper)},
                                {"lower", io::matrix_to_json(witness->lower)}};
        }
    } catch (const Error& e) {
        if (e.code() != Errc::NumericalDegeneracy) throw;
        degenerate = true;
    }

    std::string verdict;
    int exit_code;
    json certificate_json = nullptr;
    if (ev.certified) {
        verdict = "violation";
        exit_code = kExitViolation;
        certificate_json = io::certificate_to_json(
            ViolationCertificate{inst, ev.block_norm, ev.sum_norm, ev.gap, ev.margin});
    } else {
        const double clear_zero = tol.abs_tol + tol.rel_tol * std::max(1.0, ev.sum_norm);
        if (ev.gap <= clear_zero && !degenerate) {
            verdict = "holds";
            exit_code = kExitHolds;
        } else {
            verdict = "indeterminate";
            exit_code = kExitIndeterminate;
        }
    }

    json results{{"feasible", inst.feasible},
                 {"block_norm", ev.block_norm},
                 {"sum_norm", ev.sum_norm},
                 {"gap", ev.gap},
                 {"floor_norms", json{{"direct", floors.direct}, {"swapped", floors.swapped}}},
                 {"trichotomy", trichotomy_name(cls)},
                 {"both_arrangements_psd", hiroshima},
                 {"witness", std::move(witness_json)},
                 {"certificate", std::move(certificate_json)},
                 {"verdict", verdict}};
    out << io::report_file("check", std::move(results), verdict == "holds").dump(2) << "\n";
    return exit_code;
}

int cmd_search(const SearchConfig& config, const std::string& out_path, std::ostream& out,
               std::ostream& err) {
    SearchReport report;
    try {
        report = search(config);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.code() == Errc::InvalidConfig ? kExitBadInput : kExitMismatch;
    }
    const json file = io::report_file("search", io::search_report_to_json(report), true);
    emit_report(file, out_path, out);
    err << "search finished in " << report.elapsed_seconds << "s, " << report.violations.size()
        << " violation(s)\n";
    return kExitHolds;
}

int cmd_falsify(const std::string& input_path, double k_max, const ToleranceConfig& tol,
                const std::string& out_path, std::ostream& out, std::ostream& err) {
    Matrix x;
    try {
        tol.validate();
        const json input = io::parse_json_file(input_path);
        x = io::matrix_from_json(input, "input");
        if (!x.is_square()) {
            throw Error(Errc::MalformedInput, "input matrix must be square");
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitBadInput;
    }

    FalsifyOutcome outcome;
    try {
        outcome = peel_falsify(x, tol, k_max);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.code() == Errc::EigenvalueCollision ? kExitPrecondition : kExitBadInput;
    }

    const bool indeterminate = std::holds_alternative<IndeterminateOutcome>(outcome);
    const json file =
        io::report_file("falsify", io::falsify_outcome_to_json(outcome), !indeterminate);
    emit_report(file, out_path, out);

    if (std::holds_alternative<ViolationOutcome>(outcome)) return kExitViolation;
    if (std::holds_alternative<NormalCertifiedOutcome>(outcome)) return kExitHolds;
    return kExitIndeterminate;
}

}  // namespace blocknorm::cli
