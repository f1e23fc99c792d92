#include "blocknorm/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace blocknorm::io {

namespace {

void require_keys(const json& j, std::initializer_list<const char*> keys,
                  const std::string& where) {
    if (!j.is_object()) {
        throw Error(Errc::MalformedInput, where + " must be a JSON object");
    }
    for (const char* key : keys) {
        if (!j.contains(key)) {
            throw Error(Errc::MalformedInput, where + " is missing field '" + key + "'");
        }
    }
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* key : keys) {
            if (item.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw Error(Errc::MalformedInput, where + " has unknown field '" + item.key() + "'");
        }
    }
}

double finite_number(const json& j, const std::string& field) {
    if (!j.is_number()) {
        throw Error(Errc::MalformedInput, field + " must be a number");
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
        throw Error(Errc::MalformedInput, field + " must be finite");
    }
    return v;
}

json number_or_null(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

}  // namespace

json matrix_to_json(const Matrix& m) {
    json data = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Complex& e = m(i, j);
            data.push_back(json::array({e.real(), e.imag()}));
        }
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Matrix matrix_from_json(const json& j, const std::string& field) {
    require_keys(j, {"rows", "cols", "data"}, field);
    if (!j["rows"].is_number_unsigned() || !j["cols"].is_number_unsigned()) {
        throw Error(Errc::MalformedInput, field + ".rows/cols must be positive integers");
    }
    const std::size_t rows = j["rows"].get<std::size_t>();
    const std::size_t cols = j["cols"].get<std::size_t>();
    if (rows == 0 || cols == 0) {
        throw Error(Errc::MalformedInput, field + ".rows/cols must be positive");
    }
    const json& data = j["data"];
    if (!data.is_array() || data.size() != rows * cols) {
        throw Error(Errc::MalformedInput,
                    field + ".data must hold rows*cols = " + std::to_string(rows * cols) +
                        " entries");
    }
    std::vector<Complex> entries;
    entries.reserve(rows * cols);
    for (std::size_t k = 0; k < data.size(); ++k) {
        const json& pair = data[k];
        const std::string at = field + ".data[" + std::to_string(k) + "]";
        if (!pair.is_array() || pair.size() != 2) {
            throw Error(Errc::MalformedInput, at + " must be an [re, im] pair");
        }
        entries.emplace_back(finite_number(pair[0], at + "[0]"), finite_number(pair[1], at + "[1]"));
    }
    return Matrix(rows, cols, std::move(entries));
}

json triple_to_json(const Matrix& a, const Matrix& x, const Matrix& b) {
    return json{{"A", matrix_to_json(a)}, {"X", matrix_to_json(x)}, {"B", matrix_to_json(b)}};
}

ProblemInstance triple_from_json(const json& j, const ToleranceConfig& tol) {
    require_keys(j, {"A", "X", "B"}, "input");
    const Matrix a = matrix_from_json(j["A"], "A");
    const Matrix x = matrix_from_json(j["X"], "X");
    const Matrix b = matrix_from_json(j["B"], "B");
    return make_problem_instance(a, x, b, tol);
}

json instance_to_json(const ProblemInstance& inst) {
    json j = triple_to_json(inst.a, inst.x, inst.b);
    j["feasible"] = inst.feasible;
    return j;
}

json certificate_to_json(const ViolationCertificate& cert) {
    return json{{"instance", instance_to_json(cert.instance)},
                {"block_norm", cert.block_norm},
                {"sum_norm", cert.sum_norm},
                {"gap", cert.gap},
                {"margin", cert.margin}};
}

json falsify_outcome_to_json(const FalsifyOutcome& outcome) {
    json j;
    if (const auto* violation = std::get_if<ViolationOutcome>(&outcome)) {
        j["outcome"] = "violation";
        j["stage"] = violation->stage;
        j["k"] = violation->k;
        j["certificate"] = certificate_to_json(violation->certificate);
    } else if (const auto* normal = std::get_if<NormalCertifiedOutcome>(&outcome)) {
        j["outcome"] = "normal_certified";
        j["commutator_defect"] = normal->commutator_defect;
    } else {
        const auto& ind = std::get<IndeterminateOutcome>(outcome);
        j["outcome"] = "indeterminate";
        j["stage"] = ind.stage;
        j["margin_shortfall"] = number_or_null(ind.margin_shortfall);
    }
    return j;
}

json search_config_to_json(const SearchConfig& config) {
    return json{{"mode", search_mode_name(config.mode)},
                {"dim", config.dim},
                {"trials", config.trials},
                {"seed", config.seed},
                {"hill_climb_steps", config.hill_climb_steps},
                {"condition_cap", config.condition_cap},
                {"threads", config.threads},
                {"abs_tol", config.tol.abs_tol},
                {"rel_tol", config.tol.rel_tol},
                {"indeterminate_band", config.tol.indeterminate_band}};
}

json search_report_to_json(const SearchReport& report) {
    json violations = json::array();
    for (const ViolationCertificate& cert : report.violations) {
        violations.push_back(certificate_to_json(cert));
    }
    json counts{{"direct_holds", report.counts.direct_holds},
                {"swapped_holds", report.counts.swapped_holds},
                {"equal_band", report.counts.equal_band}};
    json j{{"config", search_config_to_json(report.config)},
           {"best_gap", number_or_null(report.best_gap)},
           {"best_instance", report.best_instance ? instance_to_json(*report.best_instance)
                                                  : json(nullptr)},
           {"trichotomy_counts", std::move(counts)},
           {"violations", std::move(violations)}};
    return j;
}

json report_file(const std::string& command, json results, bool pass) {
    return json{{"schema_version", kSchemaVersion},
                {"command", command},
                {"results", std::move(results)},
                {"pass", pass}};
}

json parse_report_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(Errc::MalformedInput, std::string("report is not valid JSON: ") + e.what());
    }
    require_keys(j, {"schema_version", "command", "results", "pass"}, "report");
    if (!j["schema_version"].is_string() || j["schema_version"].get<std::string>() != kSchemaVersion) {
        throw Error(Errc::MalformedInput, "unsupported report schema_version");
    }
    return j;
}

json parse_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(Errc::MalformedInput, "cannot open input file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return json::parse(buffer.str());
    } catch (const json::exception& e) {
        throw Error(Errc::MalformedInput,
                    "file '" + path + "' is not valid JSON: " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) {
        throw Error(Errc::MalformedInput, "cannot open output file '" + path + "'");
    }
    out << text;
}

}  // namespace blocknorm::io
