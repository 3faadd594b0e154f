#include <doctest.h>

#include <cstdio>
#include <string>

#include <json.hpp>

#ifndef MMP_CLI_PATH
#error "MMP_CLI_PATH must point at the mmp binary"
#endif
#ifndef MMP_FIXTURES
#error "MMP_FIXTURES must point at the fixtures directory"
#endif

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run(const std::string& args, bool merge_stderr = false) {
    std::string cmd = std::string(MMP_CLI_PATH) + " " + args +
                      (merge_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace

TEST_CASE("fraction and resolve") {
    CHECK(run("fraction 2-4-3-3-2").out == "81/47\n");
    CHECK(run("fraction \"[5,2]-1-[6,2,2]\"").out == "37/10\n");
    CHECK(run("resolve 81/47").out == "2-4-3-3-2\n");
    CHECK(run("resolve \"1/50(1,29)\"").out == "2-4-3-3\n");
}

TEST_CASE("t0 subcommands") {
    CHECK(run("t0 check \"[2,5,3]\"").out == "T0 n=5 a=3 initial=2\n");
    CHECK(run("t0 initial \"[6,2,2]\"").out == "1\n");
    auto not_t0 = run("t0 check 3-3");
    CHECK(not_t0.code == 1);
    CHECK(not_t0.out == "not T0\n");
    CHECK(run("t0 generate 2").out == "[2,5]\n[4]\n[5,2]\n");
}

TEST_CASE("validate") {
    CHECK(run("validate \"[5,2]-1-[6,2,2]\"").out == "valid\n");
    auto bad = run("validate \"[6,2,2]-1-[5,2]\"");
    CHECK(bad.code == 1);
    CHECK(bad.out.find("rule=3") != std::string::npos);
}

TEST_CASE("flip and antiflip") {
    CHECK(run("flip \"[5,2]-1-6\" --site 1:B:L").out == "4-4\n");
    CHECK(run("antiflip 4-4 --site 1:B:L").out == "[5,2]-1-6\n");
    CHECK(run("antiflip \"2-[4]-4\" --site 1:A:L").out == "[2,5]-1-5\n");
    auto bad = run("flip \"[5,2]-1-6\" --site 1:A:L", true);
    CHECK(bad.code == 1);
    CHECK(bad.out.find("InvalidSite") != std::string::npos);
}

TEST_CASE("trace json replays to its end chain") {
    auto traced = run("trace \"[2,5,3]-1-[2,5,3]-2\" --json");
    REQUIRE(traced.code == 0);
    auto j = nlohmann::json::parse(traced.out);
    CHECK(j["start"] == "2-4-3-3-2");
    CHECK(j["end"] == "[2,5,3]-1-[2,5,3]-2");
    CHECK(j["moves"].size() == 3);

    std::string tmp = std::string(MMP_FIXTURES) + "/.trace_roundtrip.json";
    FILE* f = fopen(tmp.c_str(), "w");
    REQUIRE(f != nullptr);
    fwrite(traced.out.data(), 1, traced.out.size(), f);
    fclose(f);
    CHECK(run("replay " + tmp).out == "[2,5,3]-1-[2,5,3]-2\n");
    std::remove(tmp.c_str());
}

TEST_CASE("trace up direction") {
    auto up = run("trace \"[5,2]-1-[6,2,2]\" --direction up");
    CHECK(up.out.find("0. The M-resolution: [5,2]-1-[6,2,2]") == 0);
    CHECK(up.out.find("A rational blow-up along [6,2,2]: [5,2]-1-6-2-2") != std::string::npos);
    CHECK(up.out.find("A symplectic flip along [5,2]-1-6: 4-4-2-2") != std::string::npos);
}

TEST_CASE("certify") {
    CHECK(run("certify \"[5,2]-1-6\" 4-4").out == "true\n");
    auto shown = run("certify \"[2,5]-1-5\" \"2-[4]-4\" --show-classes");
    CHECK(shown.out.find("true\n") == 0);
    // two matrix blocks with integer CSV rows
    CHECK(shown.out.find("1,0,0,0,0,0,0,0") != std::string::npos);
    auto bad = run("certify \"[5,2]-1-6\" 4-5", true);
    CHECK(bad.code == 1);
    CHECK(bad.out.find("NotAFlipPair") != std::string::npos);
}

TEST_CASE("zero enum") {
    CHECK(run("zero enum --bounds 2,1,2").out == "2,1,2\n");
    auto big = run("zero enum --bounds 3,2,3,3,3");
    CHECK(big.out.find("3,2,1,3,2") != std::string::npos);
}

TEST_CASE("toi emits the two-step trace for the gamma7 fixture") {
    auto r = run(std::string("toi ") + MMP_FIXTURES + "/gamma7.json");
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["moves"].size() == 2);
    CHECK(j["moves"][0]["kind"] == "Antiflip");
    CHECK(j["moves"][1]["kind"] == "RationalBlowDown");
    // the start graph is the contracted form: five nodes, no brackets
    CHECK(j["start"]["nodes"].size() == 5);
    for (const auto& n : j["start"]["nodes"]) CHECK(!n.contains("bracket"));
}

TEST_CASE("toi delegates linear trees") {
    auto r = run(std::string("toi ") + MMP_FIXTURES + "/linear_arm.json");
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["moves"].size() == 2);
    CHECK(j["moves"][0]["kind"] == "Antiflip");
    CHECK(j["moves"][1]["kind"] == "RationalBlowDown");
}

TEST_CASE("exit codes") {
    CHECK(run("no-such-command", true).code == 2);
    CHECK(run("fraction", true).code == 2);
    auto dom = run("fraction 2-1-2", true);
    CHECK(dom.code == 1);
    CHECK(dom.out.find("\"error\"") != std::string::npos);
}
