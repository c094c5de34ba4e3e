#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

using Json = nlohmann::ordered_json;

#ifndef DIFFAM_CLI_PATH
#error "DIFFAM_CLI_PATH must point at the command-line binary"
#endif

struct RunResult {
    int status = -1;
    std::string out;
};

/// Run the CLI with the given argument string; stderr folds into stdout.
RunResult run_cli(const std::string& args) {
    const std::string command = std::string(DIFFAM_CLI_PATH) + " " + args + " 2>&1";
    RunResult result;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> chunk{};
    size_t got = 0;
    while ((got = fread(chunk.data(), 1, chunk.size(), pipe)) > 0)
        result.out.append(chunk.data(), got);
    const int raw = pclose(pipe);
    result.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return result;
}

std::string temp_path(const std::string& stem) {
    const char* dir = std::getenv("TMPDIR");
    return std::string(dir ? dir : "/tmp") + "/" + stem;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("constructing a verified family succeeds with a readable transcript") {
    RunResult r = run_cli("construct cyclic-quadruple --m 5");
    CAPTURE(r.out);
    CHECK(r.status == 0);
    CHECK(r.out.find("ALL CLAIMS VERIFIED") != std::string::npos);
    CHECK(r.out.find("DPDF") != std::string::npos);
}

TEST_CASE("invalid construction parameters exit with the usage code") {
    RunResult r = run_cli("construct cyclic-quadruple --m 4");
    CHECK(r.status == 2);
    CHECK(r.out.find("error") != std::string::npos);

    CHECK(run_cli("construct no-such-recipe --m 5").status == 2);
    CHECK(run_cli("totally-unknown-subcommand").status != 0);
}

TEST_CASE("JSON output parses and carries the construction certificate") {
    RunResult r = run_cli("construct qr-doubling --p 13 --format json");
    REQUIRE(r.status == 0);
    Json j = Json::parse(r.out);
    CHECK(j.at("all_confirmed") == true);
    CHECK(j.at("construction").at("construction") == "qr-doubling");
    CHECK(j.at("construction").at("params").at("p") == 13);
    CHECK(j.at("construction").at("family").at(0) ==
          Json::parse("[1,3,4,9,10,12,14,16,17,22,23,25]"));
    CHECK(j.at("report").at("verdicts").at("dpdf").at("params").at("lambda") == 10);
    CHECK(j.at("report").at("verdicts").at("dpdf").at("params").at("mu") == 24);
}

TEST_CASE("verify classifies explicit blocks") {
    RunResult ok = run_cli("verify --group Z:13 --blocks \"1,3,9;4,10,12\"");
    CHECK(ok.status == 0);
    CHECK(ok.out.find("DPDF: (13,2,3,0,2)") != std::string::npos);
    CHECK(ok.out.find("EPDF: (13,2,3,2,1)") != std::string::npos);

    // --require gates the exit code on a specific verdict
    CHECK(run_cli("verify --group Z:13 --blocks \"1,3,9;4,10,12\" --require dpdf").status == 0);
    CHECK(run_cli("verify --group Z:9 --blocks \"1,8;3,6\" --require epdf").status == 0);
    CHECK(run_cli("verify --group Z:9 --blocks \"1,8;3,6\" --require dpdf").status == 1);
    CHECK(run_cli("verify --group Z:9 --blocks \"1,8;3,6\" --require nonsense").status == 2);
}

TEST_CASE("verify reads blocks from a file or stdin") {
    const std::string path = temp_path("diffam_cli_blocks.json");
    {
        std::ofstream out(path);
        out << "[[1,3,9],[4,10,12]]";
    }
    RunResult r = run_cli("verify --group Z:13 --file " + path + " --require dpdf");
    CHECK(r.status == 0);
    std::remove(path.c_str());

    RunResult missing = run_cli("verify --group Z:13 --file /nonexistent/blocks.json");
    CHECK(missing.status == 2);
}

TEST_CASE("construction certificates round-trip through verify") {
    const std::string path = temp_path("diffam_cli_cert.json");
    RunResult made = run_cli("construct bose --q 5 --out " + path + " --format json");
    REQUIRE(made.status == 0);
    std::ifstream in(path);
    REQUIRE(in.good());
    Json cert = Json::parse(in);
    CHECK(cert.at("all_confirmed") == true);

    // the verifier unwraps the certificate, recovering group and subgroup
    RunResult reverified = run_cli("verify --file " + path + " --require dpdf");
    CHECK(reverified.status == 0);
    RunResult epdf = run_cli("verify --file " + path + " --require epdf");
    CHECK(epdf.status == 0);
    std::remove(path.c_str());
}

TEST_CASE("catalog lists entries and verifies each one") {
    RunResult list = run_cli("catalog");
    CHECK(list.status == 0);
    for (const char* name : {"a5_rds_pair", "z40_ds", "sd40_ds", "z85_ds", "z8_rds",
                             "z13_qr_dpdf", "z16_pairs", "z9_epdf_not_dpdf",
                             "z13_epdf_not_dpdf"})
        CHECK(list.out.find(name) != std::string::npos);

    RunResult entry = run_cli("catalog z16_pairs");
    CHECK(entry.status == 0);
    CHECK(entry.out.find("ALL CLAIMS VERIFIED") != std::string::npos);

    CHECK(run_cli("catalog no_such_entry").status == 2);
}

TEST_CASE("catalog certificates pipe into verify") {
    const std::string command = std::string(DIFFAM_CLI_PATH) +
                                " catalog a5_rds_pair --format json | " + DIFFAM_CLI_PATH +
                                " verify --file - --require dpdf 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> chunk{};
    size_t got = 0;
    while ((got = fread(chunk.data(), 1, chunk.size(), pipe)) > 0) out.append(chunk.data(), got);
    const int raw = pclose(pipe);
    CHECK(WIFEXITED(raw));
    CHECK(WEXITSTATUS(raw) == 0);
    CHECK(out.find("DPDF: (60,2,29,28,0)") != std::string::npos);
    CHECK(out.find("EPDF: (60,2,29,28,58)") != std::string::npos);
}

TEST_CASE("search reports solutions and coverage") {
    RunResult r = run_cli(
        "search --group Z:9 --goal epdf --s 2 --k 2 --predicate epdf-not-dpdf --format json");
    REQUIRE(r.status == 0);
    Json j = Json::parse(r.out);
    CHECK(j.at("exhausted") == true);
    CHECK(j.at("solutions").size() == 33);

    RunResult text = run_cli(
        "search --group Z:7 --goal dpdf --s 2 --k 3 --predicate dpdf-and-epdf-proper-pds");
    CHECK(text.status == 0);
    CHECK(text.out.find("nonexistence certificate") != std::string::npos);

    CHECK(run_cli("search --goal dpdf --s 2 --k 2").status != 0); // --group is required
    CHECK(run_cli("search --group Z:5 --goal dpdf --s 2 --k 3").status == 2); // s*k > v-1
}

TEST_CASE("fixed-block search through the search subcommand") {
    RunResult r = run_cli("search --group Z:8 --goal rds --k 3 --lambda 1 --subgroup 4 "
                          "--fixed-by \"0,3,6,1,4,7,2,5\" --format json");
    REQUIRE(r.status == 0);
    Json j = Json::parse(r.out);
    CHECK(j.at("exhausted") == true);
    CHECK(j.at("solutions").size() == 4);
}

TEST_CASE("sweeps batch-verify families and honor --keep-going") {
    RunResult r = run_cli("sweep pair-family --m 5..9:odd");
    CHECK(r.status == 0);
    CHECK(r.out.find("SWEEP VERIFIED") != std::string::npos);
    CHECK(r.out.find("[FAIL]") == std::string::npos);

    RunResult bose = run_cli("sweep bose --q 3,4 --form both --format json");
    REQUIRE(bose.status == 0);
    Json j = Json::parse(bose.out);
    CHECK(j.at("rows").size() == 4);
    for (const Json& row : j.at("rows")) CHECK(row.at("verified") == true);

    CHECK(run_cli("sweep no-such-sweep").status == 2);
}

TEST_CASE("global flags work after the subcommand") {
    RunResult r = run_cli("catalog z8_rds --format json");
    REQUIRE(r.status == 0);
    Json j = Json::parse(r.out);
    CHECK(j.at("all_confirmed") == true);
}

} // TEST_SUITE("cli")
