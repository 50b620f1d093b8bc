#include "bider/bider.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace bider;

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run_cli(const std::string& args) {
    Run r;
    const std::string cmd = std::string(BIDER_CLI) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    std::size_t k;
    while ((k = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, k);
    const int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string golden(const std::string& name) {
    std::ifstream in(std::string(BIDER_SOURCE_DIR) + "/tests/data/v1/" + name, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

const std::string witt_half = "bider --family witt --delta 1/2 --degrees -2..2 --window 6 --margin 2";

}  // namespace

TEST(Golden, OutputsMatchByteForByte) {
    const std::vector<std::pair<std::string, std::string>> cases{
        {"bracket --family virasoro 'L[2]' 'L[-2]'", "bracket_virasoro.txt"},
        {witt_half, "bider_witt_half.json"},
        {witt_half + " --format md", "bider_witt_half.md"},
        {"catalog", "catalog.json"},
        {"catalog --format md", "catalog.md"},
        {"commuting --family w --a 0 --b -1 --window 6 --margin 2", "commuting_w0m1.json"},
        {"tpoisson --case 1 --window 6 --margin 2", "tpoisson_case1.json"},
        {"lift --family w --a 0 --b -1 --entry Theta --delta 1 --window 6 --margin 2", "lift_theta.json"},
    };
    for (const auto& [args, file] : cases) {
        const auto r = run_cli(args);
        EXPECT_EQ(r.status, 0) << args;
        EXPECT_EQ(r.out, golden(file)) << args;
    }
}

TEST(Golden, ReportedDimensionsAgreeWithOracle) {
    const auto j = Json::parse(golden("bider_witt_half.json"));
    const auto& degrees = j["biderivations"][0]["degrees"];
    ASSERT_EQ(degrees.size(), 5u);
    for (const auto& d : degrees)
        EXPECT_EQ(d["raw_dimension"].get<std::size_t>(),
                  oracle::biderivation_dimension(AlgebraSpec::witt(), Scalar(1, 2), d["degree"].get<int>(), 6));
}

TEST(Report, RunsAreDeterministic) {
    const auto a = run_cli(witt_half), b = run_cli(witt_half);
    EXPECT_EQ(a.out, b.out);
    EXPECT_FALSE(a.out.empty());
    EXPECT_EQ(Json::parse(a.out).dump(), Json::parse(a.out).dump());
}

TEST(Report, ExitCodes) {
    EXPECT_EQ(run_cli("bider --family witt --delta 1 --window 5 --degree 4").status, 64);
    EXPECT_EQ(run_cli("bracket --family witt 'Q[1]' 'L[0]'").status, 64);
    EXPECT_EQ(run_cli("bracket --family foo 'L[1]' 'L[0]'").status, 64);
    EXPECT_EQ(run_cli("bracket --family witt 'I[1]' 'L[0]'").status, 64);
    EXPECT_EQ(run_cli("tpoisson --window 6 --margin 2").status, 64);
    EXPECT_EQ(run_cli("bracket --family witt 'L[1]' 'L[0]'").status, 0);
    EXPECT_EQ(run_cli("commuting --family virasoro --window 6 --margin 2").status, 1);
}

TEST(Report, BracketOutput) {
    EXPECT_EQ(run_cli("bracket --family witt 'L[1]' 'L[0]'").out, "L[1]\n");
    EXPECT_EQ(run_cli("bracket --family wtilde --a 1/2 --b 0 'I[3]' 'I[-4]'").out, "7·C2^{1/2,0}\n");
    EXPECT_EQ(run_cli("bracket --family w --a 0 --b 1 'I[1]' 'I[2]'").out, "0\n");
}

TEST(Markdown, FlattensSections) {
    Json report{{"title", "demo"}, {"verdict", "confirmed"}};
    report["items"] = Json::array({Json{{"name", "x"}, {"dim", 2}}, Json{{"name", "y"}, {"dim", 0}}});
    const auto md = to_markdown(report);
    EXPECT_NE(md.find("# demo"), std::string::npos);
    EXPECT_NE(md.find("Overall verdict: **confirmed**"), std::string::npos);
    EXPECT_NE(md.find("| name | dim |"), std::string::npos);
    EXPECT_NE(md.find("| x | 2 |"), std::string::npos);
    EXPECT_NE(md.find("| y | 0 |"), std::string::npos);
}

TEST(Json, ScalarsAreExactStrings) {
    const auto j = catalog_json();
    for (const auto& e : j) {
        EXPECT_TRUE(e.contains("name"));
        EXPECT_TRUE(e.contains("kind"));
    }
    EXPECT_EQ(algebra_json(AlgebraSpec::w(Scalar(2, 5), 2))["a"], "2/5");
}
