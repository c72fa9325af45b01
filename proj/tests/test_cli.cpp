#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "livelab/cli/cli.hpp"
#include "livelab/paxos/scenarios.hpp"
#include "livelab/temporal/trace_io.hpp"

using namespace livelab;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "livelab");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("livelab_test_" + name)).string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST(Cli, SpecParseDumpsAst) {
    auto r = invoke({"spec", "parse", "evt alw some q in quorums has q nf"});
    EXPECT_EQ(r.code, cli::kOk);
    EXPECT_EQ(r.out, "(Evt (Alw (Some (q) quorums (NfSet q))))\n");
}

TEST(Cli, SpecPrintCanonical) {
    auto r = invoke({"spec", "print", "evt  alw (some q in quorums has (q nf))"});
    EXPECT_EQ(r.code, cli::kOk);
    EXPECT_EQ(r.out, "evt alw some q in quorums has q nf\n");
}

TEST(Cli, SyntaxErrorIsUsageWithCaret) {
    auto r = invoke({"spec", "parse", "evt alw some q in has q nf"});
    EXPECT_EQ(r.code, cli::kUsage);
    EXPECT_NE(r.err.find("1:19"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("^^^"), std::string::npos) << r.err;
}

TEST(Cli, UnknownFlagAndSubcommandRejected) {
    EXPECT_EQ(invoke({"modelcheck", "--bogus"}).code, cli::kUsage);
    EXPECT_EQ(invoke({"frobnicate"}).code, cli::kUsage);
    EXPECT_EQ(invoke({}).code, cli::kUsage);
}

TEST(Cli, TraceCheckRaftSomeLearnViolated) {
    const auto path = temp_path("raft.lasso");
    temporal::save_trace(path, paxos::raft_eachvote_lasso());
    auto r = invoke({"trace", "check", path, "--property", "Some-Learn"});
    EXPECT_EQ(r.code, cli::kViolated);
    EXPECT_NE(r.out.find("Some-Learn: Violated"), std::string::npos) << r.out;
    auto ok = invoke({"trace", "check", path, "--property", "Each-Vote"});
    EXPECT_EQ(ok.code, cli::kOk);
    EXPECT_NE(ok.out.find("Each-Vote: Holds"), std::string::npos) << ok.out;
    EXPECT_EQ(invoke({"trace", "check", path, "--property", "Sure"}).code, cli::kUsage);
    std::filesystem::remove(path);
}

TEST(Cli, TraceCheckInlineExpression) {
    const auto path = temp_path("raft2.lasso");
    temporal::save_trace(path, paxos::raft_eachvote_lasso());
    auto r = invoke({"trace", "check", path, "--property", "evt alw some q in quorums has q nf"});
    EXPECT_EQ(r.code, cli::kOk) << r.err;
    EXPECT_NE(r.out.find("Holds"), std::string::npos);
    std::filesystem::remove(path);
}

TEST(Cli, ModelcheckBaseLength) {
    auto r = invoke({"modelcheck", "--proposers", "2", "--acceptors", "3", "--start", "0"});
    EXPECT_EQ(r.code, cli::kOk);
    EXPECT_NE(r.out.find("length=7"), std::string::npos) << r.out;
}

TEST(Cli, ModelcheckCsvColumns) {
    auto r = invoke({"modelcheck", "--proposers", "2", "--acceptors", "3", "--start", "0", "1", "--csv"});
    EXPECT_EQ(r.code, cli::kOk);
    EXPECT_EQ(r.out.rfind("start,length,states,distinct_states,seconds\n0,7,", 0), 0U) << r.out;
    EXPECT_NE(r.out.find("\n1,10,"), std::string::npos);
}

TEST(Cli, ModelcheckBudget) {
    auto r = invoke({"modelcheck", "--proposers", "2", "--acceptors", "3", "--start", "2", "--max-states", "50"});
    EXPECT_EQ(r.code, cli::kBudget);
}

TEST(Cli, CatalogListCsv) {
    auto r = invoke({"--format", "csv", "catalog", "list"});
    EXPECT_EQ(r.code, cli::kOk);
    EXPECT_EQ(r.out.rfind("name,kind,params,text\n", 0), 0U) << r.out;
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 23);
}

TEST(Cli, ScenarioVerdicts) {
    auto r = invoke({"scenario", "raw-blackout"});
    EXPECT_EQ(r.code, cli::kOk);
    EXPECT_NE(r.out.find("Raw: Violated"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("Each-Vote: Violated"), std::string::npos);
    EXPECT_EQ(invoke({"scenario", "no-such"}).code, cli::kUsage);
}

TEST(Cli, SimulateReplayIsByteIdentical) {
    const auto trace = temp_path("sim.trace"), sched = temp_path("sim.sched"), again = temp_path("sim2.trace");
    auto r = invoke({"--seed", "7", "--out", trace, "simulate", "--target", "Fair,Alw-Q", "--mode", "satisfy",
                  "--schedule", sched});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    auto replay = invoke({"--out", again, "simulate", "--replay", sched});
    ASSERT_EQ(replay.code, cli::kOk) << replay.err;
    EXPECT_EQ(slurp(trace), slurp(again));
    for (const auto& p : {trace, sched, again}) std::filesystem::remove(p);
}

TEST(Cli, SimulateUnrealizableIsBudget) {
    auto r = invoke({"simulate", "--target", "Sure(3),PQ-Alw", "--mode", "satisfy", "--budget", "2000"});
    EXPECT_EQ(r.code, cli::kBudget);
}

TEST(Cli, LassoCounterexampleExitsOne) {
    auto r = invoke({"lasso", "--link", "Raw", "--server", "Alw", "--assertion", "Each-Vote"});
    EXPECT_EQ(r.code, cli::kViolated);
    EXPECT_NE(r.out.find("CounterexampleLasso"), std::string::npos) << r.out;
}

TEST(Cli, HierarchyCheckSmallCorpus) {
    auto r = invoke({"--seed", "3", "hierarchy", "check", "--corpus", "200"});
    EXPECT_EQ(r.code, cli::kOk) << r.err;
    EXPECT_NE(r.out.find("all edges hold"), std::string::npos) << r.out;
}
