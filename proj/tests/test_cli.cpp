#include "ainf/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ainf;

namespace {

const std::string corpus = AINF_CORPUS_DIR;

struct Result {
    int code;
    std::string out, err;
};

Result run(const std::string& cmd, const std::string& doc, std::uint64_t seed = 1, std::optional<std::string> report = std::nullopt) {
    CliOptions o;
    o.command = cmd;
    o.input = doc.find('/') == std::string::npos ? corpus + "/" + doc + ".json" : doc;
    o.seed = seed;
    o.report = std::move(report);
    std::ostringstream out, err;
    int code = run_cli(o, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::string& p) {
    std::ifstream f(p);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

std::string temp(const std::string& name) { return (std::filesystem::temp_directory_path() / ("ainf_test_" + name)).string(); }

}  // namespace

TEST(Cli, EveryCommandPassesOnCorpus) {
    const std::vector<std::pair<std::string, std::vector<std::string>>> plan{
        {"check", {"e1", "e2", "torus", "torus_twisted", "gauge_path"}},
        {"cocycle", {"e1", "e2", "torus", "torus_twisted", "gauge_path"}},
        {"mc", {"e1", "e2", "torus", "torus_twisted", "gauge_path"}},
        {"potential", {"e1", "e2", "torus", "gauge_path"}},
        {"gauge", {"gauge_path"}},
        {"wallcross", {"e2", "gauge_path", "wallcross_pair"}},
    };
    for (const auto& [cmd, docs] : plan)
        for (const auto& d : docs) {
            auto r = run(cmd, d);
            EXPECT_EQ(r.code, 0) << cmd << " " << d << "\n" << r.out << r.err;
            EXPECT_NE(r.out.find("status: pass"), std::string::npos);
        }
}

TEST(Cli, PotentialOfZeroIsConstantTerm) {
    auto p = temp("potential.json");
    auto r = run("potential", "e2", 1, p);
    ASSERT_EQ(r.code, 0) << r.out;
    auto j = Json::parse(slurp(p));
    bool seen = false;
    for (const auto& c : j["checks"]) {
        if (c.value("subject", "") != "zero" || c["name"] != "potential") continue;
        EXPECT_EQ(c["values"]["Phi'"], "0");
        EXPECT_EQ(c["values"]["Phi"], "5 T^2 e");
        seen = true;
    }
    EXPECT_TRUE(seen) << j.dump(2);
}

TEST(Cli, ReportEchoesCutoffsAndSeed) {
    auto p = temp("cut.json");
    CliOptions o;
    o.command = "check";
    o.input = corpus + "/e1.json";
    o.kmax = 4;
    o.emax = "2";
    o.seed = 99;
    o.report = p;
    std::ostringstream out, err;
    ASSERT_EQ(run_cli(o, out, err), 0);
    auto j = Json::parse(slurp(p));
    EXPECT_EQ(j["cutoffs"]["K_max"], 4);
    EXPECT_EQ(j["cutoffs"]["E_max"], "2");
    EXPECT_EQ(j["cutoffs"]["N_max"], "auto");
    EXPECT_EQ(j["seed"], 99);
    EXPECT_EQ(j["status"], "pass");
}

TEST(Cli, SameSeedSameReport) {
    for (const char* cmd : {"check", "potential"}) {
        auto a = temp("a.json"), b = temp("b.json");
        auto ra = run(cmd, "e2", 7, a);
        auto rb = run(cmd, "e2", 7, b);
        EXPECT_EQ(ra.out, rb.out);
        EXPECT_EQ(slurp(a), slurp(b));
        auto rc = run(cmd, "e2", 8, b);
        EXPECT_EQ(rc.code, 0);
    }
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run("frobnicate", "e1").code, 2);
    EXPECT_EQ(run("check", "/nonexistent.json").code, 2);
    EXPECT_EQ(run("gauge", "e1").code, 2);  // no path in the document

    // a document whose tower is not a cocycle fails the cocycle command
    auto j = Json::parse(slurp(corpus + "/e1.json"));
    j["tower"]["levels"].push_back({{"1 | x", "1"}});
    auto p = temp("bad_tower.json");
    std::ofstream(p) << j.dump();
    auto r = run("cocycle", p);
    EXPECT_EQ(r.code, 1) << r.out << r.err;
    EXPECT_NE(r.out.find("FAIL negative_cocycle"), std::string::npos);

    // a sign error in the structure constants fails check
    j = Json::parse(slurp(corpus + "/e1.json"));
    j["operations"]["entries"][2]["output"]["x"] = "1";
    std::ofstream(p) << j.dump();
    r = run("check", p);
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("FAIL ainfty"), std::string::npos);

    // parse errors name the JSON path
    j = Json::parse(slurp(corpus + "/e1.json"));
    j["candidates"][0]["b"]["x"] = "T^^2";
    std::ofstream(p) << j.dump();
    r = run("mc", p);
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("/candidates/0/b"), std::string::npos) << r.err;
}
