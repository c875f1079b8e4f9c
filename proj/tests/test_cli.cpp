#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "mastereq/report.hpp"

using namespace mastereq;

namespace {

struct Outcome {
    int status = -1;
    std::string out;
};

// Runs the built tool through the shell, capturing standard output.
Outcome run_tool(const std::string& args)
{
    Outcome o;
    const std::string cmd = std::string(MASTEREQ_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) return o;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) o.out.append(buf.data(), got);
    const int raw = pclose(pipe);
    o.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return o;
}

RunConfig config(Command c)
{
    RunConfig cfg;
    cfg.command = c;
    cfg.m = 2;
    cfg.order = 3;
    cfg.n_lo = 0;
    cfg.n_hi = 3;
    cfg.i_max = 2;
    return cfg;
}

}  // namespace

TEST(Parsing, Ranges)
{
    EXPECT_EQ(parse_range("0..6"), std::make_pair(0, 6));
    EXPECT_EQ(parse_range("3"), std::make_pair(3, 3));
    EXPECT_EQ(parse_range("-1..2"), std::make_pair(-1, 2));
    EXPECT_THROW(parse_range("a..b"), ConfigError);
    EXPECT_THROW(parse_range("1..2x"), ConfigError);
    EXPECT_THROW(parse_range(""), ConfigError);
}

TEST(Parsing, Names)
{
    EXPECT_EQ(parse_command("verify"), Command::verify);
    EXPECT_THROW(parse_command("prove"), ConfigError);
    EXPECT_EQ(parse_families("all").size(), 3U);
    EXPECT_EQ(parse_families("theta"), std::vector<Family>{Family::theta});
    EXPECT_THROW(parse_families("delta"), ConfigError);
}

TEST(Run, InvalidConfigsExitTwo)
{
    std::ostringstream err;
    RunConfig c = config(Command::solve);
    c.m = 0;
    EXPECT_EQ(run(c, err), 2);
    c = config(Command::solve);
    c.n_lo = 4;
    c.n_hi = 2;
    EXPECT_EQ(run(c, err), 2);
    c = config(Command::stats);
    c.order = 0;
    EXPECT_EQ(run(c, err), 2);
    c = config(Command::solve);
    c.order = -1;
    EXPECT_EQ(run(c, err), 2);
}

TEST(Report, FailuresAreListed)
{
    Report r;
    r.check("first", {{"n", 1}}, true);
    EXPECT_TRUE(r.passed());
    r.check("second", {{"n", 2}}, false);
    EXPECT_FALSE(r.passed());
    const auto j = nlohmann::json::parse(r.render(Format::json));
    EXPECT_FALSE(j["passed"].get<bool>());
    ASSERT_EQ(j["failures"].size(), 1U);
    EXPECT_EQ(j["failures"][0]["identity"], "second");
    r.csv_header = {"a", "b"};
    r.csv_rows = {{"1", "x,y"}, {"2", "q\"t"}};
    EXPECT_EQ(r.render(Format::csv), "a,b\n1,\"x,y\"\n2,\"q\"\"t\"\n");
}

TEST(Tool, VerifyAllFamilies)
{
    const auto o = run_tool("verify --m 3 --order 6 --family all --n 0..6");
    ASSERT_EQ(o.status, 0);
    const auto j = nlohmann::json::parse(o.out);
    EXPECT_TRUE(j["passed"].get<bool>());
    std::set<std::string> families;
    for (const auto& f : j["families"]) {
        families.insert(f["family"].get<std::string>());
        EXPECT_TRUE(f["conserved"].get<bool>());
        EXPECT_TRUE(f["equals_correlator"].get<bool>());
    }
    EXPECT_EQ(families, (std::set<std::string>{"gamma", "gamma_tilde", "theta"}));
}

TEST(Tool, VerifyWithFaceBoundary)
{
    const auto o = run_tool("verify --m 2 --order 3 --boundary x --n 0..4 --i-max 2");
    EXPECT_EQ(o.status, 0);
}

TEST(Tool, HexaStatsTable)
{
    const auto o = run_tool("stats --model hexa --order 10 --format csv");
    ASSERT_EQ(o.status, 0);
    std::istringstream in(o.out);
    std::string header, l1, l2, l3;
    std::getline(in, header);
    std::getline(in, l1);
    std::getline(in, l2);
    std::getline(in, l3);
    EXPECT_EQ(header, "p,probability,decimal");
    EXPECT_EQ(l1, "1,125/864,0.144675925926");
    EXPECT_EQ(l2.substr(0, 12), "2,1625/10368");
    EXPECT_EQ(l3.substr(0, 16), "3,865625/5971968");
}

TEST(Tool, EnumerateMatchesSolve)
{
    const auto o = run_tool("enumerate --m 2 --max-inner 2 --n 0..2");
    ASSERT_EQ(o.status, 0);
    const auto j = nlohmann::json::parse(o.out);
    const auto s = nlohmann::json::parse(run_tool("solve --m 2 --order 2 --n 0..2").out);
    ASSERT_EQ(j["R"].size(), 3U);
    for (std::size_t n = 0; n < 3; ++n) {
        EXPECT_TRUE(j["R"][n]["matches_solver"].get<bool>());
        EXPECT_EQ(j["R"][n]["R"], s["R"][n]["R"]) << n;
    }
}

TEST(Tool, CorrelatorsPass)
{
    EXPECT_EQ(run_tool("correlators --m 3 --order 4 --i-max 3 --n 0..3").status, 0);
}

TEST(Tool, BadArgumentsExitTwo)
{
    EXPECT_EQ(run_tool("").status, 2);
    EXPECT_EQ(run_tool("bogus").status, 2);
    EXPECT_EQ(run_tool("solve --boundary y").status, 2);
    EXPECT_EQ(run_tool("solve --n 5..1").status, 2);
    EXPECT_EQ(run_tool("solve --m two").status, 2);
    EXPECT_EQ(run_tool("verify --family delta").status, 2);
    EXPECT_EQ(run_tool("stats --model octa").status, 2);
    EXPECT_EQ(run_tool("solve --format xml").status, 2);
    EXPECT_EQ(run_tool("solve --unknown-flag").status, 2);
}

TEST(Tool, Deterministic)
{
    const std::string args = "solve --m 3 --order 4 --n 0..4 --format csv";
    const auto a = run_tool(args);
    const auto b = run_tool(args);
    ASSERT_EQ(a.status, 0);
    EXPECT_FALSE(a.out.empty());
    EXPECT_EQ(a.out, b.out);
}

TEST(Tool, OutputDirectoryOverride)
{
    const auto dir = std::filesystem::temp_directory_path() / "mastereq_cli_test";
    std::filesystem::create_directories(dir);
    std::filesystem::remove(dir / "report.json");
    const std::string cmd = "MASTEREQ_OUTPUT_DIR=" + dir.string() + " " + std::string(MASTEREQ_CLI_PATH) +
                            " stats --model tetra --order 5 --output report.json";
    ASSERT_EQ(std::system(cmd.c_str()), 0);
    std::ifstream in(dir / "report.json");
    ASSERT_TRUE(in.good());
    const auto j = nlohmann::json::parse(in);
    EXPECT_EQ(j["probabilities"][0]["probability"], "27/256");
}

TEST(Run, InProcessMatchesReportShape)
{
    RunConfig c = config(Command::solve);
    c.output = (std::filesystem::temp_directory_path() / "mastereq_inproc.json").string();
    std::ostringstream err;
    ASSERT_EQ(run(c, err), 0);
    std::ifstream in(c.output);
    const auto j = nlohmann::json::parse(in);
    EXPECT_EQ(j["command"], "solve");
    EXPECT_EQ(j["horizon"], master_horizon(ModelSpec::up_to(2), 3));
    EXPECT_TRUE(j["passed"].get<bool>());
}
