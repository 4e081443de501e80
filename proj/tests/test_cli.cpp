#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

using nlohmann::json;

namespace {

std::string bin() {
    const char* b = std::getenv("ITERSTBC_BIN");
    REQUIRE(b != nullptr);
    return b;
}

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string out_path = "cli_test_stdout.tmp";
    std::string cmd = bin() + " " + args + " > " + out_path + " 2> cli_test_stderr.tmp";
    int rc = std::system(cmd.c_str());
    std::ifstream in(out_path);
    std::stringstream ss;
    ss << in.rdbuf();
    return {WEXITSTATUS(rc), ss.str()};
}

}  // namespace

TEST_CASE("no arguments prints usage and fails") {
    RunResult r = run("");
    CHECK(r.exit_code == 1);
}

TEST_CASE("unknown subcommand fails") {
    RunResult r = run("frobnicate");
    CHECK(r.exit_code != 0);
}

TEST_CASE("tower emit and reload round trip") {
    RunResult r = run("tower --preset 6x3");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["tower"]["conductor"] == 21);
    CHECK(j["tower"]["m"] == 2);
    CHECK(j["tower"]["n"] == 3);
    CHECK(j.contains("input_digest"));
    CHECK(j["version"] == "0.1.0");
    // feed the emitted tower back through --config
    std::ofstream cfg("cli_tower_6x3.json");
    cfg << j["tower"].dump();
    cfg.close();
    RunResult r2 = run("tower --config cli_tower_6x3.json");
    CHECK(r2.exit_code == 0);
    json j2 = json::parse(r2.out);
    CHECK(j2["tower"] == j["tower"]);
}

TEST_CASE("certify preset 6x3-right") {
    RunResult r = run("certify --preset 6x3-right --box 1");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["inconsistent"] == false);
    bool found = false;
    for (const auto& e : j["entries"]) {
        if (e["certificate"] == "quaternion-deg3") {
            found = true;
            CHECK(e["verdict"]["kind"] == "proved-assuming-nonnorm");
        }
    }
    CHECK(found);
}

TEST_CASE("certify with explicit config and d") {
    RunResult r0 = run("tower --preset 6x3");
    REQUIRE(r0.exit_code == 0);
    std::ofstream cfg("cli_tower_d.json");
    cfg << json::parse(r0.out)["tower"].dump();
    cfg.close();
    // d = omega = zeta_21^7: coefficient vector with 1 at position 7
    std::string d = "[[\"0\",\"0\",\"0\",\"0\",\"0\",\"0\",\"0\",\"1\",\"0\",\"0\",\"0\",\"0\"],"
                    "[\"0\",\"0\",\"0\",\"0\",\"0\",\"0\",\"0\",\"0\",\"0\",\"0\",\"0\",\"0\"]]";
    RunResult r = run("certify --config cli_tower_d.json --variant right --d '" + d + "' --box 1");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["inconsistent"] == false);
}

TEST_CASE("decodability exponents") {
    RunResult r = run("decodability --preset 6x3-right --subcode diagonal");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["l"] == 2);
    CHECK(j["complexity_exponent"] == "15");
}

TEST_CASE("codebook emission") {
    RunResult r = run("codebook --preset 6x3-right --constellation hex4 --sample 3 --seed 42");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["codewords"].size() == 3);
    const auto& w = j["codewords"][0];
    CHECK(w["symbols"].size() == 18);
    CHECK(w["matrix"].size() == 6);
    CHECK(w.contains("det"));
    CHECK(w["det_in_L"] == true);
}

TEST_CASE("mindet summary") {
    RunResult r = run("mindet --preset 6x3-right --constellation hex4 --sample 25 --seed 42");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("preset,constellation,samples") != std::string::npos);
    CHECK(r.out.find("6x3-right,hex4,25") != std::string::npos);
}

TEST_CASE("simulate smoke run") {
    RunResult r = run(
        "simulate --preset 6x3-right --layers 1 --constellation hex4 --snr-db 20 --trials 20 "
        "--seed 7");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("snr_db,trials,errors,rate") != std::string::npos);
    CHECK(r.out.find("20,20,") != std::string::npos);
}

TEST_CASE("algebra-check passes on the preset") {
    RunResult r = run("algebra-check --preset 6x3-right --samples 5 --seed 3");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["failures"] == 0);
}

TEST_CASE("validation failure exits 1") {
    RunResult r = run("codebook --preset does-not-exist");
    CHECK(r.exit_code == 1);
}
