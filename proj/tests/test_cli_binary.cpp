#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "blocknorm/io.hpp"
#include "test_util.hpp"

using namespace blocknorm;
using namespace blocknorm::testutil;
using blocknorm::io::json;

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code;
    std::string stdout_text;
};

fs::path work_dir() {
    static const fs::path dir = [] {
        fs::path p = fs::temp_directory_path() / "blocknorm_cli_test";
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

RunResult run_cli(const std::string& args) {
    const fs::path out = work_dir() / "stdout.txt";
    const std::string cmd =
        std::string(BLOCKNORM_CLI_PATH) + " " + args + " > '" + out.string() + "' 2>/dev/null";
    const int status = std::system(cmd.c_str());
    RunResult result{};
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    result.stdout_text = buffer.str();
    return result;
}

std::string write_file(const std::string& name, const std::string& text) {
    const fs::path p = work_dir() / name;
    std::ofstream out(p);
    out << text;
    return p.string();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

TEST_CASE("reproduce passes and the tampered tolerance path fails") {
    const RunResult ok = run_cli("reproduce");
    CHECK(ok.exit_code == 0);
    CHECK(ok.stdout_text.find("counterexample_sum_norm") != std::string::npos);
    CHECK(ok.stdout_text.find("FAIL") == std::string::npos);

    const RunResult tampered = run_cli("reproduce --tol 0");
    CHECK(tampered.exit_code == 1);
    CHECK(tampered.stdout_text.find("FAIL") != std::string::npos);
}

TEST_CASE("check covers the exit code contract") {
    const Matrix id = Matrix::identity(2);
    const std::string holds_path =
        write_file("holds.json", io::triple_to_json(id, Matrix(2, 2), id).dump());
    const RunResult holds = run_cli("check '" + holds_path + "'");
    CHECK(holds.exit_code == 0);
    const json holds_report = io::parse_report_text(holds.stdout_text);
    CHECK(holds_report["results"]["verdict"] == "holds");
    CHECK(holds_report["results"]["gap"].get<double>() <= 0.0);

    const std::string violation_path = write_file(
        "violation.json",
        io::triple_to_json(diag3(2, 3, 1), kShift, diag3(1, 2, 3)).dump());
    const RunResult violation = run_cli("check '" + violation_path + "'");
    CHECK(violation.exit_code == 2);
    const json violation_report = io::parse_report_text(violation.stdout_text);
    CHECK(violation_report["results"]["verdict"] == "violation");
    CHECK(violation_report["results"]["gap"].get<double>() > 0.9);
    CHECK_FALSE(violation_report["results"]["witness"].is_null());
    CHECK_FALSE(violation_report["results"]["certificate"].is_null());

    const std::string bad_path = write_file(
        "bad.json", R"({"A": {"rows": 2, "cols": 2, "data": [[1,0]]}, "X": {}, "B": {}})");
    CHECK(run_cli("check '" + bad_path + "'").exit_code == 64);
    CHECK(run_cli("check '/nonexistent/file.json'").exit_code == 64);
    CHECK(run_cli("check").exit_code == 64);
}

TEST_CASE("search reports are byte-identical across reruns and thread counts") {
    const std::string out1 = (work_dir() / "s1.json").string();
    const std::string out2 = (work_dir() / "s2.json").string();
    const std::string out3 = (work_dir() / "s3.json").string();
    const std::string flags = "search --mode problem1 --dim 2 --trials 20 --seed 7 --out ";
    CHECK(run_cli(flags + "'" + out1 + "'").exit_code == 0);
    CHECK(run_cli(flags + "'" + out2 + "'").exit_code == 0);
    CHECK(run_cli("search --mode problem1 --dim 2 --trials 20 --seed 7 --threads 4 --out '" +
                  out3 + "'")
              .exit_code == 0);
    const std::string first = read_file(out1);
    CHECK_FALSE(first.empty());
    CHECK(first == read_file(out2));
    CHECK(first == read_file(out3));
}

TEST_CASE("search handles the degenerate and invalid flag cases") {
    const RunResult empty = run_cli("search --trials 0");
    CHECK(empty.exit_code == 0);
    const json report = io::parse_report_text(empty.stdout_text);
    CHECK(report["results"]["best_gap"].is_null());

    CHECK(run_cli("search --mode problem9").exit_code == 64);
    CHECK(run_cli("search --dim 1").exit_code == 64);
    CHECK(run_cli("search --trials -3").exit_code == 64);
}

TEST_CASE("falsify covers the exit code contract") {
    std::vector<Complex> normal_diag{Complex(1, 0), Complex(0, 2), Complex(-3, 0)};
    const std::string normal_path =
        write_file("normal.json", io::matrix_to_json(Matrix::diagonal(normal_diag)).dump());
    const RunResult normal = run_cli("falsify '" + normal_path + "'");
    CHECK(normal.exit_code == 0);
    CHECK(io::parse_report_text(normal.stdout_text)["results"]["outcome"] == "normal_certified");

    const std::string shift_path = write_file("shift.json", io::matrix_to_json(kShift).dump());
    const RunResult violation = run_cli("falsify '" + shift_path + "'");
    CHECK(violation.exit_code == 2);
    const json report = io::parse_report_text(violation.stdout_text);
    CHECK(report["results"]["certificate"]["gap"].get<double>() >= 1.0 - 1e-9);

    const Matrix collision{{0, 2, 0}, {0, 0, 1}, {1, 0, 0}};
    const std::string collision_path =
        write_file("collision.json", io::matrix_to_json(collision).dump());
    CHECK(run_cli("falsify '" + collision_path + "'").exit_code == 65);

    const std::string rect_path =
        write_file("rect.json", io::matrix_to_json(Matrix(2, 3)).dump());
    CHECK(run_cli("falsify '" + rect_path + "'").exit_code == 64);
}

TEST_CASE("certificates emitted by search and falsify re-check as violations") {
    const std::string report_path = (work_dir() / "p5.json").string();
    CHECK(run_cli("search --mode problem5 --dim 3 --trials 2 --seed 3 --out '" + report_path +
                  "'")
              .exit_code == 0);
    const json report = io::parse_report_text(read_file(report_path));
    REQUIRE(report["results"]["violations"].size() >= 1);
    json instance = report["results"]["violations"][0]["instance"];
    instance.erase("feasible");
    const std::string recheck_path = write_file("recheck.json", instance.dump());
    CHECK(run_cli("check '" + recheck_path + "'").exit_code == 2);

    const std::string falsify_report_path = (work_dir() / "f1.json").string();
    const std::string shift_path = write_file("shift2.json", io::matrix_to_json(kShift).dump());
    CHECK(run_cli("falsify '" + shift_path + "' --out '" + falsify_report_path + "'").exit_code ==
          2);
    json falsify_report = io::parse_report_text(read_file(falsify_report_path));
    json instance2 = falsify_report["results"]["certificate"]["instance"];
    instance2.erase("feasible");
    const std::string recheck2 = write_file("recheck2.json", instance2.dump());
    CHECK(run_cli("check '" + recheck2 + "'").exit_code == 2);
}
