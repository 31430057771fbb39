#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using namespace padyn;
using cli::JobSpec;
using cli::run;

namespace {

JobSpec job(const std::string& command, int p, int N, int K, json inputs) {
    JobSpec j;
    j.command = command;
    j.ctx = PrimeContext(p, N, K);
    j.inputs = std::move(inputs);
    return j;
}

std::string shell(const std::string& cmd, int* status) {
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    const int raw = pclose(pipe);
    *status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return out;
}

std::string tmp_file(const std::string& name, const std::string& content) {
    const std::string path = std::string(PADYN_TEST_TMP) + "/" + name;
    std::ofstream(path) << content;
    return path;
}

} // namespace

TEST_CASE("torsion-check on the p = 2 Gm pair") {
    const auto r = run(job("torsion-check", 2, 72, 64, {{"f", {{"binom", 2}}}, {"u", {{"binom", 5}}}}));
    CHECK(r.exit_code == 0);
    CHECK(r.report.at("outcome") == "integral");
    CHECK(r.report.at("d2") == json({{"v", 0}, {"u", "1"}, {"prec", 71}}));
}

TEST_CASE("polygon of the iterated Gm endomorphism") {
    const json expr = {{"sub", {{{"iterate", {{"binom", 5}}}, {"n", 2}}, "x"}}};
    const auto r = run(job("polygon", 2, 16, 64, {{"series", expr}}));
    CHECK(r.exit_code == 0);
    CHECK(r.report.at("vertices") == json::parse(R"([[1,"3"],[2,"2"],[4,"1"],[8,"0"]])"));
    const std::string text = cli::render_text("polygon", r.report);
    CHECK(text.find("*") != std::string::npos);
    CHECK(text.find("> i") != std::string::npos);
}

TEST_CASE("wideg of x") {
    const auto r = run(job("wideg", 5, 8, 8, {{"series", "x"}}));
    CHECK(r.exit_code == 0);
    CHECK(r.report.at("wideg") == 1);
}

TEST_CASE("every command runs") {
    const json pair = {{"f", {{"binom", 3}}}, {"u", {{"binom", 4}}}};
    const json wbar = {{"reduce", {{"binom", 4}}}};
    const std::vector<std::pair<std::string, json>> jobs{
        {"wprep", {{"series", {{"coeffs", {3, 0, 1, 1}}}}}},
        {"linearize", {{"series", {{"binom", 3}}}}},
        {"commutant", {{"series", {{"binom", 3}}}, {"a", -1}, {"route", "linearization"}}},
        {"ramification", {{"series", wbar}, {"n_max", 2}}},
        {"order", {{"series", {{"reduce", {{"binom", -1}}}}}}},
        {"normalizer", {{"theta", wbar}, {"omega", wbar}, {"m", 3}}},
        {"lambda-check", {{"f", {{"binom", 3}}}, {"u", {{"binom", 4}}}, {"n", 2}}},
        {"gen-pair", {{"kind", "lt"}}},
        {"validate-pair", pair},
        {"zp-iterate", {{"series", wbar}, {"a", 2}, {"m", 3}}},
    };
    for (const auto& [cmd, inputs] : jobs) {
        CAPTURE(cmd);
        const auto r = run(job(cmd, 3, 40, 32, inputs));
        CHECK(r.exit_code == 0);
        CHECK_FALSE(r.report.contains("error"));
    }
}

TEST_CASE("verdicts are not errors") {
    const auto r = run(job("lambda-check", 3, 24, 64, {{"f", {{"binom", 3}}}, {"u", {{"binom", 10}}}, {"n", 2}}));
    CHECK(r.exit_code == 0);
    CHECK(r.report.at("equal") == false);
    const auto v = run(job("validate-pair", 3, 24, 16, {{"f", {{"binom", 3}}}, {"u", {{"binom", 3}}}}));
    CHECK(v.exit_code == 0);
    CHECK(v.report.at("is_minimal") == false);
}

TEST_CASE("errors carry codes and exit statuses") {
    auto code = [](const cli::JobResult& r) { return r.report.at("error").at("code").get<std::string>(); };
    const auto pre = run(job("torsion-check", 3, 40, 16, {{"f", {{"coeffs", {3, 1}}}}}));
    CHECK(pre.exit_code == 2);
    CHECK(code(pre) == "precondition");
    const auto prec = run(job("torsion-check", 3, 20, 16, {{"f", {{"binom", 3}}}}));
    CHECK(prec.exit_code == 2);
    CHECK(code(prec) == "precision");
    const auto ring = run(job("ramification", 3, 20, 16, {{"series", {{"binom", 4}}}}));
    CHECK(ring.exit_code == 2);
    CHECK(code(ring) == "ring_mismatch");

    const std::vector<std::pair<std::string, json>> malformed{
        {"frobnicate", json::object()},
        {"wideg", json::object()},
        {"wideg", {{"series", 12}}},
        {"wideg", {{"series", {{"coeffs", "abc"}}}}},
        {"wideg", {{"series", {{"coeffs", {{{"v", 0}}}}}}}},
        {"wideg", {{"series", {{"add", {"x"}}}}}},
        {"wideg", {{"series", "y"}}},
        {"commutant", {{"series", {{"binom", 3}}}, {"a", "zz"}}},
        {"commutant", {{"series", {{"binom", 3}}}, {"a", 2}, {"route", "nowhere"}}},
        {"gen-pair", {{"kind", "mystery"}}},
        {"ramification", {{"series", {{"reduce", "x"}}}, {"n_max", "two"}}},
    };
    for (const auto& [cmd, inputs] : malformed) {
        CAPTURE(cmd);
        CAPTURE(inputs.dump());
        const auto r = run(job(cmd, 3, 20, 8, inputs));
        CHECK(r.exit_code == 1);
        CHECK(code(r) == "malformed_input");
    }
    JobSpec nctx;
    nctx.command = "wideg";
    nctx.inputs = {{"series", "x"}};
    CHECK(run(nctx).exit_code == 1);
}

TEST_CASE("job documents") {
    const json doc = {{"command", "wideg"}, {"ctx", {{"p", 3}, {"N", 8}, {"K", 8}}}, {"series", {{"binom", 3}}}};
    const auto spec = cli::job_from_json(doc);
    CHECK(spec.command == "wideg");
    CHECK(spec.ctx == PrimeContext(3, 8, 8));
    CHECK(spec.inputs.contains("series"));
    CHECK_FALSE(spec.inputs.contains("command"));
    CHECK(run(spec).report.at("wideg") == 3);
}

TEST_CASE("binary: output is deterministic and exit codes propagate") {
    const std::string bin = PADYN_CLI_PATH;
    int status = -1;
    const std::string input = tmp_file("pair.json", R"({"f":{"binom":3},"u":{"binom":4}})");
    const std::string cmd = bin + " torsion-check " + input + " --p 3 --N 40 --K 32 --json";
    const std::string a = shell(cmd, &status);
    CHECK(status == 0);
    const std::string b = shell(cmd, &status);
    CHECK(a == b);
    CHECK(json::parse(a).at("outcome") == "integral");

    const std::string seeded = "echo '{\"kind\":\"conjugated\"}' | " + bin + " gen-pair --p 3 --N 20 --K 8 --seed 77 --json";
    const std::string s1 = shell(seeded, &status);
    CHECK(status == 0);
    const std::string s2 = shell(seeded, &status);
    CHECK(json::parse(s1).at("provenance").at("seed") == 77);
    CHECK(s1 == s2);

    shell("echo '{' | " + bin + " wideg --p 3 --N 8 --K 8 --json", &status);
    CHECK(status == 1);
    shell("echo '{\"f\":{\"coeffs\":[3,1]}}' | " + bin + " torsion-check --p 3 --N 40 --K 8 --json", &status);
    CHECK(status == 2);
    const std::string err = shell("echo '{}' | " + bin + " wideg --json", &status);
    CHECK(status == 1);
    CHECK(json::parse(err).at("error").at("code") == "malformed_input");
}

TEST_CASE("binary: batch jobs") {
    const std::string bin = PADYN_CLI_PATH;
    const std::string jobs = tmp_file("jobs.json", R"([
        {"command":"wideg","series":{"binom":3}},
        {"command":"torsion-check","f":{"binom":3},"u":{"binom":4}},
        {"command":"torsion-check","f":{"coeffs":[3,1]}}
    ])");
    int status = -1;
    const std::string out = shell(bin + " --jobs " + jobs + " --p 3 --N 40 --K 16 --json", &status);
    CHECK(status == 2);
    const json results = json::parse(out);
    REQUIRE(results.size() == 3);
    CHECK(results[0].at("report").at("wideg") == 3);
    CHECK(results[1].at("report").at("outcome") == "integral");
    CHECK(results[2].at("exit") == 2);

    const std::string path = std::string(PADYN_TEST_TMP) + "/out.json";
    shell("echo '{\"series\":\"x\"}' | " + bin + " wideg --p 2 --N 4 --K 4 --json --out " + path, &status);
    CHECK(status == 0);
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(json::parse(ss.str()).at("wideg") == 1);
}
