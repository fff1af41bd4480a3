#include "vtl/cpi.hpp"
#include "vtl/ledger.hpp"

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int status = -1;
    std::string output; // stdout + stderr
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(VTL_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    RunResult result;
    if (!pipe)
        return result;
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0)
        result.output.append(buf, n);
    const int rc = pclose(pipe);
    result.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return result;
}

fs::path test_dir() {
    const fs::path dir = fs::temp_directory_path() / "vtl_cli_test";
    fs::create_directories(dir);
    return dir;
}

std::string write_cpi(const std::string& name, int months, double annual) {
    const fs::path path = test_dir() / name;
    std::ofstream out(path);
    vtl::CpiSeries::constant_rate(vtl::Period::ym(1990, 1), months, annual, 12).to_csv(out);
    return path.string();
}

std::string write_file(const std::string& name, const std::string& text) {
    const fs::path path = test_dir() / name;
    std::ofstream out(path);
    out << text;
    return path.string();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        lines.push_back(line);
    return lines;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> cells;
    std::istringstream in(line);
    std::string cell;
    while (std::getline(in, cell, ','))
        cells.push_back(cell);
    return cells;
}

} // namespace

TEST_CASE("schedule emits the documented CSV and is byte-stable") {
    const std::string cpi = write_cpi("cpi_54.csv", 301, 0.054);
    const std::string args =
        "schedule --form fixed-payment --principal 20000000 --rate 4 --years 25 --cpi " + cpi;
    const RunResult first = run_cli(args);
    REQUIRE(first.status == 0);
    const auto lines = lines_of(first.output);
    REQUIRE(lines.size() == 301); // header + 300 rows
    CHECK(lines[0] == "t,payment,interest,amortization,principal_nominal,principal_real");
    CHECK(split(lines[1]).size() == 6);

    const RunResult second = run_cli(args);
    CHECK(second.status == 0);
    CHECK(second.output == first.output); // byte-stable
}

TEST_CASE("a zero-inflation series reproduces the fixed-rate schedule") {
    const std::string cpi = write_cpi("cpi_flat.csv", 301, 0.0);
    const RunResult indexed = run_cli(
        "schedule --form fixed-payment --principal 20000000 --rate 4 --years 25 --cpi " + cpi);
    const RunResult fixed =
        run_cli("schedule --form fixed-rate --principal 20000000 --rate 4 --years 25");
    REQUIRE(indexed.status == 0);
    REQUIRE(fixed.status == 0);
    CHECK(indexed.output == fixed.output);
}

TEST_CASE("schedule diagnoses coverage gaps and malformed input") {
    const std::string truncated = write_cpi("cpi_short.csv", 100, 0.054);
    const RunResult gap = run_cli(
        "schedule --form fixed-payment --principal 20000000 --rate 4 --years 25 --cpi " + truncated);
    CHECK(gap.status != 0);
    CHECK(gap.output.starts_with("error: series-coverage"));

    const std::string malformed = write_file("cpi_bad.csv", "period,index\n1990-01,abc\n");
    const RunResult bad = run_cli(
        "schedule --form fixed-payment --principal 1000 --rate 4 --years 1 --cpi " + malformed);
    CHECK(bad.status != 0);
    CHECK(bad.output.starts_with("error: parse"));

    const RunResult missing =
        run_cli("schedule --form fixed-payment --principal 1000 --rate 4 --years 1");
    CHECK(missing.status != 0);
    CHECK(missing.output.starts_with("error: series-coverage"));
}

TEST_CASE("unknown verbs and options are rejected with usage text") {
    const RunResult verb = run_cli("frobnicate");
    CHECK(verb.status != 0);
    CHECK(verb.output.starts_with("error: usage:"));

    const RunResult option = run_cli("threshold --bogus 1");
    CHECK(option.status != 0);
    CHECK(option.output.starts_with("error: usage:"));

    const RunResult nothing = run_cli("");
    CHECK(nothing.status != 0);
}

TEST_CASE("compare reproduces the published fixed-rate totals") {
    const RunResult result =
        run_cli("compare --principal 20000000 --rates 4,5,7 --years 25,40");
    REQUIRE(result.status == 0);
    const auto lines = lines_of(result.output);
    REQUIRE(lines.size() == 7);
    CHECK(lines[0] == "form,years,rate_percent,total");

    const auto total_of = [&](int years, double rate) {
        for (std::size_t i = 1; i < lines.size(); ++i) {
            const auto cells = split(lines[i]);
            if (cells[0] == "fixed-rate" && std::stoi(cells[1]) == years &&
                std::stod(cells[2]) == rate)
                return std::stod(cells[3]);
        }
        return 0.0;
    };
    CHECK(std::abs(total_of(25, 4.0) - 31670200.0) <= 0.001 * 31670200.0);
    CHECK(std::abs(total_of(40, 5.0) - 46290800.0) <= 0.001 * 46290800.0);
    CHECK(std::abs(total_of(40, 7.0) - 59657400.0) <= 0.001 * 59657400.0);
}

TEST_CASE("compare shows indexed equal to fixed-rate on a flat series") {
    const std::string cpi = write_cpi("cpi_flat_cmp.csv", 301, 0.0);
    const RunResult result =
        run_cli("compare --principal 20000000 --rates 4 --years 25 --cpi " + cpi);
    REQUIRE(result.status == 0);
    const auto lines = lines_of(result.output);
    REQUIRE(lines.size() == 4); // header + fixed-rate + fixed-payment + fixed-amortization
    double fixed_total = 0.0, indexed_total = 0.0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto cells = split(lines[i]);
        if (cells[0] == "fixed-rate")
            fixed_total = std::stod(cells[3]);
        if (cells[0] == "fixed-payment")
            indexed_total = std::stod(cells[3]);
    }
    CHECK(fixed_total == doctest::Approx(indexed_total).epsilon(1e-9));
}

TEST_CASE("threshold lands near the documented 3% and 1.5% marks") {
    const RunResult result = run_cli("threshold --years 25,40 --rate 4");
    REQUIRE(result.status == 0);
    const auto lines = lines_of(result.output);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "term_years,rate_percent,threshold_percent");
    const double t25 = std::stod(split(lines[1])[2]);
    const double t40 = std::stod(split(lines[2])[2]);
    CHECK(t25 >= 2.5);
    CHECK(t25 <= 3.5);
    CHECK(t40 >= 1.0);
    CHECK(t40 <= 2.0);
    CHECK(run_cli("threshold --years 25,40 --rate 4").output == result.output);
}

TEST_CASE("compare output is byte-stable") {
    const std::string args = "compare --principal 20000000 --rates 4,7 --years 25";
    CHECK(run_cli(args).output == run_cli(args).output);
}

TEST_CASE("ledger-demo prints the worked example balances") {
    const RunResult result = run_cli("ledger-demo");
    REQUIRE(result.status == 0);
    const std::string& out = result.output;
    CHECK(out.find("# opening position\n") != std::string::npos);
    CHECK(out.find("A,loans,asset,10000.00\n") != std::string::npos);
    CHECK(out.find("A,loans,asset,10500.00\n") != std::string::npos);
    CHECK(out.find("A,deposit:C1,liability,5500.00\n") != std::string::npos);
    CHECK(out.find("A,non-cash-income,liability,500.00\n") != std::string::npos);
    CHECK(out.find("A,deposit:C2,liability,5450.00\n") != std::string::npos);
    CHECK(out.find("A,capital,equity,1050.00\n") != std::string::npos);
    CHECK(out.find("central-bank,cash-issued,asset,40.00\n") != std::string::npos);
    CHECK(out.find("# journal\n") != std::string::npos);

    const RunResult again = run_cli("ledger-demo");
    CHECK(again.output == result.output);
}

TEST_CASE("simulate runs from a config file") {
    const std::string contra = write_file("sim_contra.cfg",
                                          "periods = 18\n"
                                          "treatment = contra-asset\n"
                                          "cpi_mode = constant\n"
                                          "inflation_annual = 0.054\n");
    const RunResult flat = run_cli("simulate --config " + contra);
    REQUIRE(flat.status == 0);
    const auto flat_lines = lines_of(flat.output);
    REQUIRE(flat_lines.size() == 19);
    CHECK(flat_lines[0] == "period,M,P,CPI,capital_total,loans_total,expansion_rate_annual");
    for (std::size_t i = 1; i < flat_lines.size(); ++i)
        CHECK(split(flat_lines[i])[1] == "10000.00"); // constant M column

    const std::string nci = write_file("sim_nci.cfg",
                                       "periods = 18\n"
                                       "treatment = non-cash-income\n"
                                       "cpi_mode = constant\n"
                                       "inflation_annual = 0.054\n"
                                       "recognition_cadence = 6\n");
    const RunResult growing = run_cli("simulate --config " + nci);
    REQUIRE(growing.status == 0);
    const auto grow_lines = lines_of(growing.output);
    const double first_m = std::stod(split(grow_lines[1])[1]);
    const double last_m = std::stod(split(grow_lines.back())[1]);
    CHECK(last_m > first_m);

    const RunResult rerun = run_cli("simulate --config " + nci);
    CHECK(rerun.output == growing.output); // byte-stable
}

TEST_CASE("simulate emits one row per period") {
    const std::string one = write_file("sim_one.cfg", "periods = 1\n");
    const RunResult result = run_cli("simulate --config " + one);
    REQUIRE(result.status == 0);
    CHECK(lines_of(result.output).size() == 2); // header + single data row
}

TEST_CASE("--out writes the same bytes to a file") {
    const fs::path out = test_dir() / "sched.csv";
    fs::remove(out);
    const RunResult to_file = run_cli(
        "schedule --form fixed-rate --principal 1200 --rate 0 --years 1 --out " + out.string());
    REQUIRE(to_file.status == 0);
    CHECK(to_file.output.empty());
    const RunResult to_stdout =
        run_cli("schedule --form fixed-rate --principal 1200 --rate 0 --years 1");
    std::ifstream in(out);
    std::stringstream content;
    content << in.rdbuf();
    CHECK(content.str() == to_stdout.output);
}

TEST_CASE("ledger-demo --out-dir writes each scene to its own file") {
    const fs::path dir = test_dir() / "demo_out";
    fs::remove_all(dir);
    const RunResult result = run_cli("ledger-demo --out-dir " + dir.string());
    REQUIRE(result.status == 0);
    for (const char* name : {"demo_opening.csv", "demo_loan.csv", "demo_indexation.csv",
                             "demo_recognition.csv", "demo_journal.csv"})
        CHECK(fs::exists(dir / name));
    std::ifstream in(dir / "demo_recognition.csv");
    std::stringstream content;
    content << in.rdbuf();
    CHECK(content.str().find("A,capital,equity,1050.00\n") != std::string::npos);
}

TEST_CASE("simulate rejects bad configuration with a diagnostic") {
    const std::string bad = write_file("sim_bad.cfg", "periods = -3\n");
    const RunResult result = run_cli("simulate --config " + bad);
    CHECK(result.status != 0);
    CHECK(result.output.starts_with("error: config"));

    const RunResult missing = run_cli("simulate --config /nonexistent/sim.cfg");
    CHECK(missing.status != 0);
    CHECK(missing.output.starts_with("error: io"));
}
