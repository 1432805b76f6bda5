#include "cli_app.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>

namespace fs = std::filesystem;
using posetramsey::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir = fs::temp_directory_path() /
              ("posetramsey_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }

    std::string path(const std::string& name) const { return (dir / name).string(); }

    void write(const std::string& name, const std::string& text) const { std::ofstream(dir / name) << text; }

    fs::path dir;
};

TEST_F(CliTest, OptimizeThenCertify) {
    const auto opt = invoke({"optimize", "--layers", "1", "--out", path("c.json"), "--quiet"});
    ASSERT_EQ(opt.code, 0) << opt.err;
    EXPECT_NE(opt.out.find("c_total = 0.34"), std::string::npos);
    const auto cert = posetramsey::parse_certificate(posetramsey::read_file(path("c.json")));
    EXPECT_GE(cert.c_total, 1.0 / 3);
    EXPECT_TRUE(cert.verified);
    const auto chk = invoke({"certify", "--in", path("c.json")});
    EXPECT_EQ(chk.code, 0) << chk.out;
}

TEST_F(CliTest, TamperedMarginsAreReported) {
    ASSERT_EQ(invoke({"optimize", "--layers", "2", "--out", path("c.json"), "--quiet"}).code, 0);
    std::string text = posetramsey::read_file(path("c.json"));
    text = std::regex_replace(text, std::regex("\"probability\": \\[[^,\\]]+"), "\"probability\": [0.25",
                              std::regex_constants::format_first_only);
    write("t.json", text);
    const auto r = invoke({"certify", "--in", path("t.json")});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("margins.probability[0]: stored 0.25"), std::string::npos) << r.out;
    const auto j = invoke({"certify", "--in", path("t.json"), "--json"});
    EXPECT_EQ(j.code, 1);
    const auto doc = nlohmann::json::parse(j.out);
    EXPECT_FALSE(doc.at("stored_fields_match").get<bool>());
    EXPECT_EQ(doc.at("diff").at(0).at("field"), "margins.probability");
}

TEST_F(CliTest, TamperedParamsFailVerification) {
    ASSERT_EQ(invoke({"optimize", "--layers", "1", "--out", path("c.json"), "--quiet"}).code, 0);
    std::string text = posetramsey::read_file(path("c.json"));
    text = std::regex_replace(text, std::regex("\"c\": \\[[^\\]]+\\]"), "\"c\": [0.25]");
    write("t.json", text);
    EXPECT_EQ(invoke({"certify", "--in", path("t.json")}).code, 1);
}

TEST_F(CliTest, CertifyRationalized) {
    ASSERT_EQ(invoke({"optimize", "--layers", "1", "--out", path("c.json"), "--quiet"}).code, 0);
    const auto r = invoke({"certify", "--in", path("c.json"), "--rationalize", "60", "--out", path("r.json"), "--json"});
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc.at("rationalized_denominator"), 60);
    const auto rc = posetramsey::parse_certificate(posetramsey::read_file(path("r.json")));
    ASSERT_TRUE(rc.rationalized_denominator.has_value());
    EXPECT_EQ(r.code, rc.verified ? 0 : 1);
}

TEST_F(CliTest, SchemaAndIoErrors) {
    write("bad.json", "{\"schema_version\": 9}");
    EXPECT_EQ(invoke({"certify", "--in", path("bad.json")}).code, 2);
    write("junk.json", "nope");
    EXPECT_EQ(invoke({"certify", "--in", path("junk.json")}).code, 2);
    EXPECT_EQ(invoke({"certify", "--in", path("missing.json")}).code, 2);
    EXPECT_EQ(invoke({"optimize", "--layers", "1", "--out", path("no/such/dir/c.json")}).code, 2);
}

TEST_F(CliTest, UsageErrors) {
    EXPECT_EQ(invoke({}).code, 2);
    EXPECT_EQ(invoke({"optimize"}).code, 2);
    EXPECT_EQ(invoke({"optimize", "--layers", "x"}).code, 2);
    EXPECT_EQ(invoke({"optimize", "--layers", "0"}).code, 2);
    EXPECT_EQ(invoke({"optimize", "--layers", "1", "--epsilon", "-1"}).code, 2);
    EXPECT_EQ(invoke({"frobnicate"}).code, 2);
    EXPECT_EQ(invoke({"oracle", "nonsense"}).code, 2);
    EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST_F(CliTest, Constants) {
    const auto r = invoke({"constants"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.find("NO"), std::string::npos);
    const auto j = invoke({"constants", "--json"});
    EXPECT_EQ(j.code, 0);
    const auto doc = nlohmann::json::parse(j.out);
    EXPECT_TRUE(doc.at("all_pass").get<bool>());
    EXPECT_EQ(doc.at("entries").size(), 8u);
}

TEST_F(CliTest, OptimizeJson) {
    const auto r = invoke({"optimize", "--layers", "2", "--json", "--quiet"});
    EXPECT_EQ(r.code, 0);
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_TRUE(doc.at("verified").get<bool>());
    EXPECT_EQ(doc.at("restarts").size(), 3u);
    EXPECT_TRUE(doc.at("out").is_null());
}

TEST_F(CliTest, Sweep) {
    const auto r = invoke({"sweep", "--layers-from", "1", "--layers-to", "4", "--out", path("sw"), "--jobs", "2", "--quiet"});
    ASSERT_EQ(r.code, 0) << r.err;
    const std::string csv = posetramsey::read_file(path("sw/sweep.csv"));
    EXPECT_EQ(csv, r.out);
    EXPECT_EQ(csv.rfind("L,c_total,verified,seconds\n", 0), 0u);
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    double prev = 0;
    for (int L = 1; L <= 4; ++L) {
        ASSERT_TRUE(std::getline(lines, line));
        EXPECT_EQ(line.rfind(std::to_string(L) + ",", 0), 0u);
        const double c = std::stod(line.substr(line.find(',') + 1));
        EXPECT_GE(c, prev);
        prev = c;
        EXPECT_NE(line.find(",true,"), std::string::npos);
        EXPECT_TRUE(fs::exists(dir / "sw" / ("certificate_L" + std::to_string(L) + ".json")));
    }
    // Same numbers regardless of the job count.
    const auto serial = invoke({"sweep", "--layers-from", "1", "--layers-to", "4", "--out", path("sw1"), "--quiet"});
    auto strip_seconds = [](const std::string& s) { return std::regex_replace(s, std::regex(",[^,\n]+\n"), "\n"); };
    EXPECT_EQ(strip_seconds(serial.out), strip_seconds(r.out));
}

TEST_F(CliTest, SweepNeedsDirectory) {
    EXPECT_EQ(invoke({"sweep", "--layers-from", "3", "--layers-to", "1", "--out", path("x")}).code, 2);
}

TEST_F(CliTest, EnvironmentOutputDirectory) {
    ::setenv(posetramsey::cli::kOutDirEnv, dir.c_str(), 1);
    const auto r = invoke({"optimize", "--layers", "1", "--quiet"});
    ::unsetenv(posetramsey::cli::kOutDirEnv);
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(fs::exists(dir / "certificate_L1.json"));
}

TEST_F(CliTest, OracleCones) {
    const auto s = invoke({"oracle", "s-cone", "--N", "7", "--X", "1,2,3", "--P", "4", "--s", "2", "--cap", "1"});
    EXPECT_EQ(s.code, 0);
    EXPECT_EQ(nlohmann::json::parse(s.out).at("family").at("members"),
              nlohmann::json::parse("[[1,4],[2,4],[3,4]]"));
    const auto t = invoke({"oracle", "t-cone", "--N", "6", "--X", "1,2,3", "--P", "1,2,4,5", "--t", "4", "--floor", "1"});
    EXPECT_EQ(nlohmann::json::parse(t.out).at("count"), 3);
    EXPECT_EQ(invoke({"oracle", "s-cone", "--N", "7", "--X", "1,a", "--s", "2"}).code, 2);
    EXPECT_EQ(invoke({"oracle", "s-cone", "--N", "25", "--s", "2"}).code, 2);
}

TEST_F(CliTest, OracleDualizeAndPivotCheck) {
    write("f.json", R"({"level": 2, "members": [[1, 2]]})");
    const auto d = invoke({"oracle", "dualize", "--in", path("f.json"), "--N", "3"});
    EXPECT_EQ(d.code, 0);
    EXPECT_EQ(nlohmann::json::parse(d.out), nlohmann::json::parse(R"({"level": 1, "members": [[3]]})"));
    write("p.json", R"({"N": 3, "n": 1, "sizes": {"p1": 0, "p1_x": 0, "cap": 0, "p2": 0, "p2_x": 0, "floor": 0},
                       "S": {"level": 2, "members": [[1, 2]]}, "T": {"level": 3, "members": [[1, 2, 3]]}})");
    const auto p = invoke({"oracle", "pivot-check", "--in", path("p.json")});
    EXPECT_EQ(p.code, 1);
    EXPECT_TRUE(nlohmann::json::parse(p.out).at("cross_containment").get<bool>());
}

TEST_F(CliTest, OracleNormalize) {
    write("e.json", R"({"source": [1, 2], "images": [{"from": [], "to": [3]}, {"from": [1], "to": [1, 3]},
                        {"from": [2], "to": [2, 3]}, {"from": [1, 2], "to": [1, 2, 3]}]})");
    const auto r = invoke({"oracle", "normalize", "--in", path("e.json"), "--N", "3"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(nlohmann::json::parse(r.out).at("X"), nlohmann::json::parse("[1,2]"));
    write("b.json", R"({"source": [1, 2], "images": [{"from": [], "to": []}, {"from": [1], "to": [1]},
                        {"from": [2], "to": [1, 2]}, {"from": [1, 2], "to": [1, 2]}]})");
    const auto bad = invoke({"oracle", "normalize", "--in", path("b.json"), "--N", "3"});
    EXPECT_EQ(bad.code, 1);
    EXPECT_TRUE(nlohmann::json::parse(bad.out).contains("witness"));
}

TEST_F(CliTest, OracleMonoSearchAndSample) {
    EXPECT_EQ(invoke({"oracle", "mono-search", "--N", "3", "--n", "2", "--threshold", "1"}).code, 1);
    const auto hit = invoke({"oracle", "mono-search", "--N", "2", "--n", "1", "--uniform", "red"});
    EXPECT_EQ(hit.code, 0);
    EXPECT_EQ(nlohmann::json::parse(hit.out).at("colour"), "red");
    EXPECT_EQ(invoke({"oracle", "mono-search", "--N", "12", "--n", "2", "--threshold", "1"}).code, 2);
    EXPECT_EQ(invoke({"oracle", "mono-search", "--N", "3", "--n", "2"}).code, 2);
    const auto s = invoke({"oracle", "sample", "--N", "6", "--level", "3", "--q", "1", "--seed", "4"});
    EXPECT_EQ(nlohmann::json::parse(s.out).at("count"), 20);
    EXPECT_EQ(invoke({"oracle", "sample", "--N", "6", "--level", "3", "--q", "2"}).code, 2);
}

TEST_F(CliTest, OracleMonoSearchFromSpec) {
    write("spec.json", R"({"N": 6, "n": 3, "s": 2, "t": 3, "thresholds": [1, 2, 3, 4, 5],
      "families": {"S1": {"level": 2, "members": [[1, 2]]}, "T1": {"level": 3, "members": [[1, 2, 3]]},
                   "S2": {"level": 3, "members": [[4, 5, 6]]}, "T2": {"level": 4, "members": [[3, 4, 5, 6]]}}})");
    const auto r = invoke({"oracle", "mono-search", "--spec", path("spec.json"), "--n", "1"});
    EXPECT_EQ(r.code, 0) << r.err;
    write("badspec.json", R"({"N": 6, "n": 3, "s": 2, "t": 3, "thresholds": [1, 2, 2, 4, 5],
      "families": {"S1": {"level": 2, "members": []}, "T1": {"level": 3, "members": []},
                   "S2": {"level": 3, "members": []}, "T2": {"level": 4, "members": []}}})");
    EXPECT_EQ(invoke({"oracle", "mono-search", "--spec", path("badspec.json"), "--n", "1"}).code, 2);
}

TEST_F(CliTest, BinaryRunsAsProcess) {
    const std::string cmd = std::string(POSETRAMSEY_CLI_PATH) + " constants --json > " + path("out.json");
    ASSERT_EQ(std::system(cmd.c_str()), 0);
    EXPECT_TRUE(nlohmann::json::parse(posetramsey::read_file(path("out.json"))).at("all_pass").get<bool>());
    const std::string bad = std::string(POSETRAMSEY_CLI_PATH) + " certify 2> /dev/null";
    EXPECT_EQ(WEXITSTATUS(std::system(bad.c_str())), 2);
}

} // namespace
