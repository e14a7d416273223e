#include "thinset/cli.hpp"
#include "thinset/json_io.hpp"

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace thinset;
using json_io::json;

namespace {

struct Run {
    int code;
    json doc;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    json doc = out.str().empty() ? json() : json::parse(out.str());
    return {code, doc, err.str()};
}

int expected_code(const std::string& verdict) {
    if (verdict == "pass" || verdict == "Member" || verdict == "bounded-evidence") return cli::kExitPass;
    if (verdict == "fail" || verdict == "NotMember" || verdict == "divergent-evidence") return cli::kExitFail;
    if (verdict == "usage-error") return cli::kExitUsage;
    return cli::kExitInconclusive;
}

void check_contract(const Run& r) {
    REQUIRE(r.doc.is_object());
    CHECK(r.doc["exit_code"] == r.code);
    CHECK(expected_code(r.doc["verdict"]) == r.code);
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("thinset_test_" + name);
}

} // namespace

TEST_CASE("cli: expand example") {
    auto r = run({"expand", "--x", "5/8", "--seq", "dyadic", "--depth", "3"});
    check_contract(r);
    CHECK(r.code == 0);
    CHECK(r.doc["expansion"]["digits"] == json({{"1", "1"}, {"3", "1"}}));
}

TEST_CASE("cli: witness th6 example") {
    auto r = run({"witness", "th6", "--seq", "dyadic", "--a", "3*2^n", "--ideal", "density", "--count", "8"});
    check_contract(r);
    CHECK(r.code == 0);
    CHECK(r.doc["pass"] == true);
    CHECK(r.doc["checks"].size() == 8);
}

TEST_CASE("cli: converge example") {
    auto r = run({"converge", "--x", "1/3", "--a", "2^n", "--ideal", "density", "--depth", "100000"});
    check_contract(r);
    CHECK(r.code == 1);
    CHECK(r.doc["verdict"] == "NotMember");
}

TEST_CASE("cli: exit codes follow the verdict") {
    std::vector<std::vector<std::string>> cases = {
        {"reconstruct", "--seq", "dyadic", "--digits", "[1,0,1]"},
        {"density", "--set", "{\"kind\":\"progression\",\"start\":5,\"step\":3}", "--cutoff", "1000"},
        {"ideal-member", "--ideal", "density", "--set", "{\"kind\":\"geometric\",\"base\":2}"},
        {"ideal-member", "--ideal", "density", "--set", "{\"kind\":\"progression\",\"start\":2,\"step\":2}"},
        {"ideal-member", "--ideal", "fin", "--set", "{\"kind\":\"geometric\",\"base\":2}"},
        {"converge", "--x", "1/1024", "--a", "2^n", "--depth", "100"},
        {"converge", "--x", "1/3", "--a", "2^n", "--depth", "100"},
        {"nset", "--x", "1/3", "--a", "2^n", "--weights", "harmonic", "--depth", "10000"},
        {"nset", "--x", "1/3", "--a", "2^n", "--weights", "harmonic", "--depth", "50"},
        {"nset", "--x", "0", "--a", "2^n", "--weights", "harmonic", "--depth", "50"},
        {"witness", "th2", "--seq", "geometric:3", "--a", "2*3^n", "--ideal", "density", "--count", "5"},
        {"witness", "th6", "--seq", "dyadic", "--a", "2^n", "--ideal", "fin", "--count", "3"},
        {"witness", "th6", "--seq", "dyadic", "--a", "3^n", "--ideal", "density", "--count", "3"},
        {"expand", "--x", "5/8", "--seq", "nonsense", "--depth", "3"},
        {"ideal-member", "--ideal", "bogus", "--set", "{\"kind\":\"geometric\",\"base\":2}"},
        {"expand", "--x", "5/8", "--seq", "dyadic", "--depth", "0"},
        {"frobnicate"},
    };
    std::vector<int> want = {0, 0, 0, 1, 1, 0, 1, 1, 2, 0, 0, 1, 1, 64, 64, 64, 64};
    for (std::size_t i = 0; i < cases.size(); ++i) {
        CAPTURE(i);
        auto r = run(cases[i]);
        check_contract(r);
        CHECK(r.code == want[i]);
    }
}

TEST_CASE("cli: verify reproduces the pass flag") {
    auto path = temp_file("cert.json");
    for (std::string tag : {"th6", "th1", "th2"}) {
        std::vector<std::string> args = {"witness", tag, "--seq", tag == "th2" ? "geometric:2" : "dyadic",
                                         "--a", tag == "th2" ? "3*2^n" : "2^n", "--ideal", "density",
                                         "--count", "5", "--out", path.string()};
        std::ostringstream out, err;
        int code = cli::run(args, out, err);
        std::ifstream in(path);
        json cert = json::parse(in);
        CHECK(cert["exit_code"] == code);
        auto v = run({"verify", path.string()});
        check_contract(v);
        CHECK(v.code == code);
        CHECK((v.doc["verdict"] == "pass") == cert["pass"].get<bool>());

        cert["digits"]["digits"].erase(cert["digits"]["digits"].begin().key());
        std::ofstream(path) << cert.dump();
        auto t = run({"verify", "--json-in", path.string()});
        check_contract(t);
        CHECK(t.code == 1);
    }
    std::ofstream(path) << "{\"theorem\": 3}";
    CHECK(run({"verify", path.string()}).code == 64);
    std::filesystem::remove(path);
}

TEST_CASE("cli: THINSET_DEPTH sets the default depth") {
    setenv("THINSET_DEPTH", "37", 1);
    auto r = run({"converge", "--x", "1/3", "--a", "2^n"});
    check_contract(r);
    CHECK(r.doc["report"]["depth"] == 37);
    auto r2 = run({"converge", "--x", "1/3", "--a", "2^n", "--depth", "12"});
    CHECK(r2.doc["report"]["depth"] == 12);
    setenv("THINSET_DEPTH", "zero", 1);
    CHECK(run({"converge", "--x", "1/3", "--a", "2^n"}).code == 64);
    unsetenv("THINSET_DEPTH");
}
