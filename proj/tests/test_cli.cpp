#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <limits>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "phasemet/bounds.hpp"
#include "phasemet/cli.hpp"
#include "phasemet/angles.hpp"
#include "phasemet/report_io.hpp"

namespace {

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("phasemet");
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = phasemet::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("bounds table: header, byte stability, exact formatting") {
    const auto first = run_cli({"bounds", "--families", "ecs,coh,noon", "--n-list", "1,2,4"});
    REQUIRE(first.code == 0);
    const auto second = run_cli({"bounds", "--families", "ecs,coh,noon", "--n-list", "1,2,4"});
    CHECK(first.out == second.out);

    std::istringstream lines(first.out);
    std::string header;
    std::getline(lines, header);
    CHECK(header ==
          "family,n,alpha,delta_g,entropy_g_nats,cr_bound,entropic_bound,asymptotic_bound");

    // first row must reproduce the library values verbatim at 12 digits
    std::string row;
    std::getline(lines, row);
    const auto report = phasemet::compute_bound_report(phasemet::BoundFamily::Ecs, 1.0);
    std::ostringstream expected;
    expected << "ecs,1," << phasemet::format_g12(report.alpha) << ','
             << phasemet::format_g12(report.delta_g) << ','
             << phasemet::format_g12(report.entropy_g_nats) << ','
             << phasemet::format_g12(report.cr_bound) << ','
             << phasemet::format_g12(report.entropic_bound) << ','
             << phasemet::format_g12(report.asymptotic_bound);
    CHECK(row == expected.str());

    // noon rows leave the alpha cell empty
    bool found_noon = false;
    while (std::getline(lines, row)) {
        if (row.rfind("noon,", 0) == 0) {
            found_noon = true;
            CHECK(row.find(",,") != std::string::npos);
        }
    }
    CHECK(found_noon);
}

TEST_CASE("fig3 emits both coherent families") {
    const auto result = run_cli({"fig3", "--n-list", "1,10,50"});
    REQUIRE(result.code == 0);
    CHECK(result.out.find("\necs,") != std::string::npos);
    CHECK(result.out.find("\ncoh,") != std::string::npos);
    CHECK(result.out.find("\nnoon,") == std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli({"bogus"}).code == 2);
    CHECK(run_cli({"bounds", "--unknown-flag", "1"}).code == 2);
    CHECK(run_cli({"bounds", "--n-sweep", "0:10:5"}).code == 2);
    CHECK(run_cli({"bounds", "--n-sweep", "5:1:10"}).code == 2);
    CHECK(run_cli({"bounds", "--n-list", "3,2"}).code == 2);
    CHECK(run_cli({"bounds", "--families", "qubit"}).code == 2);
    CHECK(run_cli({"simulate"}).code == 2);
    CHECK(run_cli({"simulate", "--state", "noon:n=0"}).code == 2);
    CHECK(run_cli({"iterate", "--family", "xyz"}).code == 2);
    CHECK(run_cli({}).code == 2);
}

TEST_CASE("verify passes fresh and fails under mutation") {
    const auto ok = run_cli({"verify"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("FAIL") == std::string::npos);
    CHECK(ok.out.find("all checks passed") != std::string::npos);

    const auto broken = run_cli({"verify", "--mutate"});
    CHECK(broken.code == 1);
    CHECK(broken.out.find("FAIL") != std::string::npos);
}

TEST_CASE("simulate writes parseable reports") {
    const std::string json_path = "cli_test_report.json";
    const std::string csv_path = "cli_test_report.csv";
    const std::string dump_path = "cli_test_density.csv";

    const std::vector<std::string> base = {"simulate", "--state",  "noon:n=2", "--trials",
                                           "2000",     "--grid",   "8",        "--bins",
                                           "8",        "--seed",   "12"};

    auto with_json = base;
    with_json.insert(with_json.end(), {"--out", json_path, "--dump-measurement", dump_path});
    const auto result = run_cli(with_json);
    REQUIRE(result.code == 0);
    CHECK(result.out.find("rmse_average") != std::string::npos);
    CHECK(result.out.find("helstrom_holevo") != std::string::npos);
    CHECK(result.out.find("entropic_bound") != std::string::npos);

    const auto parsed = nlohmann::json::parse(slurp(json_path));
    CHECK(parsed["state"] == "noon:n=2");
    CHECK(parsed["phi_grid"].size() == 8);
    CHECK(parsed["rmse_average"].is_number());
    CHECK(parsed["seed"] == 12);

    const std::string density = slurp(dump_path);
    CHECK(density.rfind("theta,density\n", 0) == 0);

    auto with_csv = base;
    with_csv.insert(with_csv.end(), {"--format", "csv", "--out", csv_path});
    REQUIRE(run_cli(with_csv).code == 0);
    const std::string csv_once = slurp(csv_path);
    CHECK(csv_once.rfind("phi,bias,rmse_local,precision\n", 0) == 0);
    REQUIRE(run_cli(with_csv).code == 0);
    CHECK(slurp(csv_path) == csv_once);

    std::remove(json_path.c_str());
    std::remove(csv_path.c_str());
    std::remove(dump_path.c_str());
}

TEST_CASE("simulate surfaces io failures with the path") {
    const auto result = run_cli({"simulate", "--state", "noon:n=1", "--trials", "1000", "--grid",
                                 "4", "--bins", "4", "--out", "/nonexistent-dir/x.json"});
    CHECK(result.code == 1);
    CHECK(result.err.find("/nonexistent-dir/x.json") != std::string::npos);
}

TEST_CASE("iterate reports the exact resource tally") {
    const auto result = run_cli(
        {"iterate", "--family", "coh", "--bits", "3", "--copies", "4", "--trials", "200"});
    REQUIRE(result.code == 0);
    CHECK(result.out.find("total_resources_n     84\n") != std::string::npos);
    CHECK(result.out.find("resolution_reference") != std::string::npos);
    CHECK(result.out.find("generator_entropy") != std::string::npos);
    CHECK(result.out.find("note") == std::string::npos);

    const auto ecs = run_cli(
        {"iterate", "--family", "ecs", "--bits", "2", "--copies", "4", "--trials", "100"});
    REQUIRE(ecs.code == 0);
    CHECK(ecs.out.find("experimental ladder") != std::string::npos);
}

TEST_CASE("infinite sentinels format as inf") {
    CHECK(phasemet::format_g12(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(phasemet::format_g12(0.5) == "0.5");
    CHECK(phasemet::format_g12(phasemet::two_pi) == "6.28318530718");
}

TEST_CASE("simulate prints the large-amplitude entropic bound") {
    const auto result = run_cli({"simulate", "--state", "ecs:alpha=10", "--trials", "1000",
                                 "--grid", "4", "--bins", "4"});
    REQUIRE(result.code == 0);
    CHECK(result.out.find("entropic_bound        0.118297613265\n") != std::string::npos);
    CHECK(result.out.find("asymptotic_bound      0.11824808332\n") != std::string::npos);
}

TEST_CASE("probe and prior specs echo canonically") {
    const auto result = run_cli({"simulate", "--state", "ecs:alpha=2.50", "--trials", "1000",
                                 "--grid", "4", "--bins", "4"});
    REQUIRE(result.code == 0);
    CHECK(result.out.find("state                 ecs:alpha=2.5\n") != std::string::npos);
    CHECK(result.out.find("prior                 uniform:center=3.14159265359,width=6.28318530718\n") !=
          std::string::npos);
}
