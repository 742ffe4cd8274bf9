#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hdrflow/cli/app.hpp"

using namespace hdrflow;
using namespace hdrflow::cli;

namespace {

ParseResult parse(std::vector<std::string> args)
{
    args.insert(args.begin(), "hdrflow");
    std::vector<const char *> argv;
    for (const auto &a : args)
        argv.push_back(a.c_str());
    return parse_args(static_cast<int>(argv.size()), argv.data());
}

struct Outcome
{
    int code;
    std::string out, err;
};

Outcome invoke(std::vector<std::string> args)
{
    args.insert(args.begin(), "hdrflow");
    std::vector<const char *> argv;
    for (const auto &a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST(ParseArgs, WorkedExamples)
{
    auto scan = parse({"scan", "--curve", "legendre:2", "--pmin", "5", "--pmax", "1000", "--format", "json"});
    ASSERT_TRUE(scan.config) << scan.message;
    EXPECT_EQ(scan.config->command, "scan");
    EXPECT_EQ(*scan.config->pmax, 1000u);
    EXPECT_EQ(scan.config->format, OutputFormat::Json);

    auto flow = parse({"flow", "--p", "103", "--curve", "weier:1,0", "--state", "unif"});
    ASSERT_TRUE(flow.config) << flow.message;
    EXPECT_EQ(*flow.config->p, 103u);
    EXPECT_EQ(flow.config->state, "unif");

    auto mass = parse({"mass", "--pmax", "199", "--format", "csv"});
    ASSERT_TRUE(mass.config) << mass.message;
    EXPECT_EQ(mass.config->format, OutputFormat::Csv);
}

TEST(ParseArgs, UsageErrorsExitTwo)
{
    const std::vector<std::vector<std::string>> bad = {
        {},
        {"frobnicate"},
        {"scan", "--curve", "legendre:2", "--pmax", "20000000"},
        {"scan", "--curve", "legendre:2", "--pmax", "100", "--bogus"},
        {"scan", "--curve", "cubic:1", "--pmax", "100"},
        {"scan", "--curve", "weier:0,0", "--pmax", "100"},
        {"scan", "--curve", "legendre:2", "--pmin", "50", "--pmax", "10"},
        {"flow", "--p", "15", "--curve", "weier:1,0", "--state", "unif"},
        {"flow", "--p", "3", "--curve", "weier:1,0", "--state", "unif"},
        {"flow", "--p", "5", "--curve", "weier:1/5,1", "--state", "unif"},
        {"flow", "--p", "7", "--curve", "weier:1,0", "--state", "wobble"},
        {"flow", "--p", "7", "--curve", "weier:1,0", "--state", "line:1,1"},
        {"flow", "--p", "7", "--f", "13", "--curve", "weier:1,0", "--state", "unif"},
        {"mass", "--pmax", "2003"},
        {"mass", "--p", "7", "--pmax", "11"},
        {"mass"},
        {"ss-count", "--p", "3"},
        {"clump", "--p", "11", "--l", "5"},
        {"clump", "--pmax", "50", "--edges", "x.csv"},
        {"hw", "--p", "3", "--g", "1"},
        {"hw", "--p", "3", "--f", "65", "--g", "2"},
        {"hw", "--p", "9", "--g", "2"},
        {"selftest", "--format", "yaml"},
        {"selftest", "--workers", "0"},
    };
    for (const auto &args : bad) {
        auto r = parse(args);
        EXPECT_FALSE(r.config) << (args.empty() ? "(none)" : args[0]);
        EXPECT_EQ(r.exit_code, kExitUsage) << r.message;
        EXPECT_FALSE(r.message.empty());
    }
    auto help = parse({"--help"});
    EXPECT_FALSE(help.config);
    EXPECT_EQ(help.exit_code, kExitOk);
    EXPECT_NE(help.message.find("selftest"), std::string::npos);
}

TEST(ParseArgs, WorkersFromEnvironment)
{
    ::setenv("HDRFLOW_WORKERS", "3", 1);
    auto r = parse({"selftest"});
    ASSERT_TRUE(r.config);
    EXPECT_EQ(r.config->workers, 3u);
    auto explicit_w = parse({"selftest", "--workers", "5"});
    EXPECT_EQ(explicit_w.config->workers, 5u);
    ::unsetenv("HDRFLOW_WORKERS");
}

TEST(Run, WorkedExamples)
{
    auto mass = invoke({"mass", "--pmax", "199", "--no-timestamp"});
    EXPECT_EQ(mass.code, kExitOk) << mass.err;
    const ReportEnvelope e = envelope_from_json(mass.out);
    const auto &m = std::get<MassSummary>(e.payload);
    EXPECT_EQ(m.reports.size(), 44u); // primes in [5, 199]
    EXPECT_TRUE(m.all_pass());

    auto flow = invoke({"flow", "--p", "103", "--curve", "weier:1,0", "--state", "unif"});
    EXPECT_EQ(flow.code, kExitOk) << flow.err;
    const auto &f = std::get<FlowReport>(envelope_from_json(flow.out).payload);
    EXPECT_FALSE(f.ordinary);
    EXPECT_EQ(f.verdict, Verdict::non_periodic(NonPeriodicReason::SupersingularDegeneration));

    auto big = invoke({"scan", "--curve", "legendre:2", "--pmax", "10000001"});
    EXPECT_EQ(big.code, kExitUsage);
}

TEST(Run, ComputationalErrorsExitThree)
{
    // point counting over F_{1009^7} is beyond the supported field sizes
    auto r = invoke({"flow", "--p", "1009", "--f", "7", "--curve", "weier:1,1", "--state", "unif+line:inf"});
    EXPECT_EQ(r.code, kExitComputation);
    EXPECT_NE(r.err.find("UnsupportedRange"), std::string::npos);
    EXPECT_TRUE(r.out.empty());
}

TEST(Run, EchoTimestampAndOutputFile)
{
    auto with = invoke({"hw", "--pmax", "30"});
    ASSERT_EQ(with.code, kExitOk);
    const Json j = Json::parse(with.out);
    EXPECT_TRUE(j.contains("timestamp"));
    EXPECT_TRUE(j.contains("elapsed_ms"));
    EXPECT_EQ(j["command"], (Json{{"name", "hw"}, {"pmax", 30}}));
    EXPECT_EQ(j["payload"]["divisor_checks"].size(), 9u); // odd primes 3..29

    const auto path = std::filesystem::temp_directory_path() / "hdrflow_cli_test.csv";
    auto to_file = invoke({"clump", "--p", "13", "--format", "csv", "--out", path.string(), "--workers", "2"});
    ASSERT_EQ(to_file.code, kExitOk) << to_file.err;
    EXPECT_TRUE(to_file.out.empty());
    std::ifstream in(path);
    std::stringstream text;
    text << in.rdbuf();
    EXPECT_EQ(text.str(), "p,l,vertices,edges,edge_weight,closed,regular,connected\n13,2,1,1,3,true,true,true\n");
    std::filesystem::remove(path);
}

TEST(Run, EdgeListDump)
{
    const auto path = std::filesystem::temp_directory_path() / "hdrflow_edges.csv";
    auto r = invoke({"clump", "--p", "11", "--l", "2", "--edges", path.string(), "--format", "table"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "j1,j2,multiplicity");
    int weight = 0;
    while (std::getline(in, line))
        weight += std::stoi(line.substr(line.rfind(',') + 1));
    EXPECT_EQ(weight, 6); // two vertices of out-degree 3
    std::filesystem::remove(path);
}

TEST(Run, EveryCommandRoundTripsThroughJson)
{
    const std::vector<std::vector<std::string>> commands = {
        {"scan", "--curve", "weier:1,1", "--pmin", "2", "--pmax", "200"},
        {"flow", "--p", "7", "--f", "2", "--curve", "legendre:3", "--state", "N+line:inf"},
        {"ss-count", "--pmin", "5", "--pmax", "60"},
        {"mass", "--p", "101"},
        {"hw", "--p", "5", "--f", "3", "--g", "4"},
        {"clump", "--pmax", "40", "--l", "3"},
        {"selftest"},
    };
    for (auto args : commands) {
        args.push_back("--no-timestamp");
        auto r = invoke(args);
        ASSERT_EQ(r.code, kExitOk) << args[0] << ": " << r.err;
        const ReportEnvelope e = envelope_from_json(r.out);
        EXPECT_EQ(payload_command(e.payload), args[0]);
        EXPECT_EQ(to_canonical_json(e), r.out) << args[0];
    }
}

TEST(Run, SelftestDeterministicAcrossWorkers)
{
    auto one = invoke({"selftest", "--workers", "1", "--no-timestamp"});
    auto many = invoke({"selftest", "--workers", "7", "--no-timestamp"});
    ASSERT_EQ(one.code, kExitOk) << one.out;
    EXPECT_EQ(one.out, many.out);
    const auto &st = std::get<SelftestReport>(envelope_from_json(one.out).payload);
    EXPECT_EQ(st.checks.size(), 9u);
    EXPECT_TRUE(st.all_pass());
}

TEST(Run, TableOutputIsReadable)
{
    auto r = invoke({"ss-count", "--p", "13", "--format", "table"});
    ASSERT_EQ(r.code, kExitOk);
    EXPECT_EQ(r.out, "p   j      aut_order\n--  -----  ---------\n13  5+0*u  2\n");
}
