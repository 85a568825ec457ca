#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <unistd.h>

#include "json.hpp"

#include "k3lab/cli.hpp"
#include "k3lab/modularcurve.hpp"

using namespace k3lab::cli;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result k3lab_run(std::vector<std::string> args) {
    args.insert(args.begin(), "k3lab");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::map<std::string, std::string> key_values(const std::string& text) {
    std::map<std::string, std::string> m;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto eq = line.find('=');
        if (eq != std::string::npos) m[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return m;
}

// The documented report schema.
std::string schema_problem(const json& j) {
    if (!j.is_object()) return "not an object";
    for (const char* k : {"suite", "status", "checks", "elapsed_ms"})
        if (!j.contains(k)) return std::string("missing ") + k;
    if (!j["suite"].is_string()) return "suite not a string";
    if (j["status"] != "pass" && j["status"] != "fail") return "bad status";
    if (!j["elapsed_ms"].is_number() || j["elapsed_ms"].get<double>() < 0) return "bad elapsed_ms";
    if (!j["checks"].is_array() || j["checks"].empty()) return "checks not a nonempty array";
    std::set<std::string> ids;
    bool all_pass = true;
    for (const auto& c : j["checks"]) {
        for (const char* k : {"id", "description", "status", "witness"})
            if (!c.contains(k) || !c[k].is_string()) return std::string("check field ") + k;
        if (c["status"] != "pass" && c["status"] != "fail") return "bad check status";
        if (!ids.insert(c["id"].get<std::string>()).second) return "duplicate id " + c["id"].get<std::string>();
        all_pass = all_pass && c["status"] == "pass";
    }
    if ((j["status"] == "pass") != all_pass) return "status disagrees with checks";
    return "";
}

std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("k3lab_cli_" + name + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    return dir;
}

} // namespace

TEST_CASE("suites pass on the transcription") {
    for (const auto& s : suite_names()) {
        auto r = run_suite(s);
        CHECK_MESSAGE(r.passed(), s);
        CHECK(!r.checks.empty());
        CHECK(std::is_sorted(r.checks.begin(), r.checks.end(), [](const auto& a, const auto& b) { return a.id < b.id; }));
    }
    CHECK_THROWS_AS(run_suite("nonsense"), std::invalid_argument);
    CHECK(run_suite("all").checks.size() == 38);
}

TEST_CASE("verify exit codes") {
    CHECK(k3lab_run({"verify", "--suite", "all"}).code == kPass);
    CHECK(k3lab_run({"verify", "--suite", "identities"}).code == kPass);
    CHECK(k3lab_run({"verify", "--suite", "toric"}).code == kPass);
    auto bad = k3lab_run({"verify", "--suite", "nonsense"});
    CHECK(bad.code == kUsage);
    CHECK(bad.err.find("unknown suite") != std::string::npos);
    CHECK(k3lab_run({"verify", "--format", "yaml"}).code == kUsage);
    CHECK(k3lab_run({"verify", "--mutate", "no.such"}).code == kUsage);
    CHECK(k3lab_run({}).code == kUsage);
    CHECK(k3lab_run({"frobnicate"}).code == kUsage);
    CHECK(k3lab_run({"--help"}).code == kPass);
}

TEST_CASE("every mutation is caught by a named check") {
    for (const auto& m : k3lab::constants::mutations()) {
        auto r = k3lab_run({"verify", "--suite", "all", "--mutate", m.id, "--format", "json"});
        CHECK_MESSAGE(r.code == kFail, m.id);
        auto j = json::parse(r.out);
        CHECK(schema_problem(j) == "");
        CHECK(j["status"] == "fail");
        CHECK(j["mutation"] == m.id);
        CHECK(r.err.find("failing checks: ") == 0);
    }
}

TEST_CASE("perturbed H_inf names the identity check") {
    auto r = k3lab_run({"report", "--suite", "identities", "--mutate", "h_inf.factor"});
    CHECK(r.code == kPass);
    auto j = json::parse(r.out);
    CHECK(j["status"] == "fail");
    bool named = false;
    for (const auto& c : j["checks"])
        if (c["id"] == "identities.h_sum") named = c["status"] == "fail";
    CHECK(named);
}

TEST_CASE("report schema and determinism") {
    auto a = k3lab_run({"report"}), b = k3lab_run({"report"});
    REQUIRE(a.code == kPass);
    auto ja = json::parse(a.out), jb = json::parse(b.out);
    CHECK(schema_problem(ja) == "");
    CHECK(ja["status"] == "pass");
    CHECK(ja["suite"] == "all");
    ja.erase("elapsed_ms");
    jb.erase("elapsed_ms");
    CHECK(ja.dump() == jb.dump());
    // key order is fixed
    CHECK(a.out.find("\"suite\"") < a.out.find("\"status\""));
    CHECK(a.out.find("\"status\"") < a.out.find("\"checks\""));

    CHECK(schema_problem(json::parse(R"({"suite":"x","status":"pass","checks":[]})")) != "");
    CHECK(schema_problem(json::parse(
              R"({"suite":"x","status":"pass","elapsed_ms":1,"checks":[{"id":"a","description":"","status":"fail","witness":""}]})")) ==
          "status disagrees with checks");
}

TEST_CASE("text report") {
    auto r = k3lab_run({"verify", "--suite", "kummer"});
    CHECK(r.code == kPass);
    std::istringstream in(r.out);
    std::string header, rule, first;
    std::getline(in, header);
    std::getline(in, rule);
    std::getline(in, first);
    CHECK(header.rfind("id", 0) == 0);
    CHECK(header.find("status") == first.find("pass"));
    CHECK(rule.find_first_not_of('-') == std::string::npos);
    CHECK(r.out.find("suite kummer: pass") != std::string::npos);
}

TEST_CASE("family") {
    auto r = k3lab_run({"family", "--j1", "1728", "--j2", "1728"});
    CHECK(r.code == kPass);
    auto kv = key_values(r.out);
    CHECK(kv["a_cubed"] == "-27");
    CHECK(kv["b_squared"] == "0");
    CHECK(kv["degenerate"] == "true");
    CHECK(kv["a"].rfind("-3", 0) == 0);

    r = k3lab_run({"family", "--lambda1", "-1", "--lambda2", "1/4", "--format", "json"});
    CHECK(r.code == kPass);
    auto j = json::parse(r.out);
    CHECK(j["j1"] == "1728");
    CHECK(j["j2"] == "35152/9");
    CHECK(j["a_cubed"] == j["a_cubed_lambda_route"]);
    CHECK(j["b_squared"] == j["b_squared_lambda_route"]);
    CHECK(j["a_cubed"] == "-2197/36");
    CHECK(j["routes_agree"] == true);
    CHECK(j["degenerate"] == false);

    r = k3lab_run({"family", "--tau", "i", "--n", "2", "--format", "json"});
    CHECK(r.code == kPass);
    j = json::parse(r.out);
    auto j1 = k3lab::exact::BigComplex::parse(j["j1"].get<std::string>());
    auto j2 = k3lab::exact::BigComplex::parse(j["j2"].get<std::string>());
    CHECK(abs(j1 - k3lab::exact::BigComplex::parse("1728")).to_double() < 1e-15);
    CHECK(abs(j2 - k3lab::exact::BigComplex::parse("287496")).to_double() < 1e-10);

    CHECK(k3lab_run({"family", "--lambda1", "0", "--lambda2", "3"}).code == kDomain);
    CHECK(k3lab_run({"family", "--lambda1", "2", "--lambda2", "1"}).code == kDomain);
    CHECK(k3lab_run({"family", "--tau", "0.1-2i", "--n", "2"}).code == kDomain);
    CHECK(k3lab_run({"family", "--j1", "1", "--j2", "2", "--lambda1", "3", "--lambda2", "4"}).code == kUsage);
    CHECK(k3lab_run({"family", "--j1", "1"}).code == kUsage);
    CHECK(k3lab_run({"family", "--tau", "i"}).code == kUsage);
    CHECK(k3lab_run({"family"}).code == kUsage);
    CHECK(k3lab_run({"family", "--j1", "x", "--j2", "1"}).code == kUsage);
    CHECK(k3lab_run({"family", "--tau", "i", "--n", "0"}).code == kUsage);
}

TEST_CASE("modpoly and the cache") {
    auto dir = scratch_dir("modpoly");
    auto r = k3lab_run({"modpoly", "--n", "2", "--cache-dir", dir.string()});
    CHECK(r.code == kPass);
    CHECK(r.out.rfind("n=2\n0 0 -157464000000000\n", 0) == 0);
    CHECK(r.err.find("reconstructed") != std::string::npos);
    CHECK(std::filesystem::exists(k3lab::modular::cache_file(dir, 2)));
    auto warm = k3lab_run({"modpoly", "--n", "2", "--cache-dir", dir.string()});
    CHECK(warm.out == r.out);
    CHECK(warm.err.find("read from cache") != std::string::npos);

    ::setenv("K3LAB_CACHE_DIR", dir.string().c_str(), 1);
    auto env = k3lab_run({"modpoly", "--n", "3"});
    CHECK(env.code == kPass);
    CHECK(std::filesystem::exists(k3lab::modular::cache_file(dir, 3)));
    auto v = k3lab_run({"verify", "--suite", "modular"});
    CHECK(v.code == kPass);
    CHECK(v.out.find("from cache") != std::string::npos);
    ::unsetenv("K3LAB_CACHE_DIR");

    CHECK(k3lab_run({"modpoly", "--n", "4"}).code == kUsage);
    CHECK(k3lab_run({"modpoly"}).code == kUsage);
    std::filesystem::remove_all(dir);
}

TEST_CASE("list mutations") {
    auto r = k3lab_run({"verify", "--list-mutations"});
    CHECK(r.code == kPass);
    std::size_t lines = std::count(r.out.begin(), r.out.end(), '\n');
    CHECK(lines == k3lab::constants::mutations().size());
}
