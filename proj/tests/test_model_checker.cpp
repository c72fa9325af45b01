#include <gtest/gtest.h>

#include <map>

#include "livelab/catalog/catalog.hpp"
#include "livelab/errors.hpp"
#include "livelab/mc/explore.hpp"
#include "livelab/mc/lasso_search.hpp"
#include "livelab/mc/safety.hpp"
#include "livelab/temporal/eval.hpp"
#include "oracles.hpp"

using namespace livelab;
using namespace livelab::mc;
using namespace livelab::catalog;

namespace {

// Runs shared by several tests: (i, j) -> one CheckRun per x in 0..i+1.
const std::map<std::pair<int, int>, std::vector<CheckRun>>& small_grid() {
    static const auto grid = [] {
        std::map<std::pair<int, int>, std::vector<CheckRun>> g;
        for (auto [i, j] : {std::pair{2, 3}, std::pair{2, 4}, std::pair{3, 3}})
            for (int x = 0; x <= i + 1; ++x) g[{i, j}].push_back(explore(SystemConfig::paxos(i, j), x));
        return g;
    }();
    return grid;
}

} // namespace

TEST(Formula, MatchesIndependentOracle) {
    for (int i = 1; i <= 5; ++i)
        for (int j = 1; j <= 6; ++j)
            for (int x = 0; x <= 8; ++x) EXPECT_EQ(formula_oracle(i, j, x), oracle::stable_length(i, j, x)) << i << j << x;
}

TEST(Formula, Examples) {
    EXPECT_EQ(formula_oracle(2, 3, 0), 7);
    EXPECT_EQ(formula_oracle(4, 4, 5), 25);
    EXPECT_EQ(formula_oracle(3, 4, 2), 17);
    for (int i = 1; i <= 6; ++i) EXPECT_EQ(formula_oracle(i, 3, 0), formula_oracle(1, 3, 0));
}

TEST(Explore, SmallGridMatchesOracle) {
    for (const auto& [ij, runs] : small_grid())
        for (std::size_t x = 0; x < runs.size(); ++x)
            EXPECT_EQ(runs[x].stable_length, oracle::stable_length(ij.first, ij.second, static_cast<int>(x)))
                << ij.first << "P" << ij.second << "A x=" << x;
}

TEST(Explore, TwoProposersThreeAcceptorsValues) {
    const auto& runs = small_grid().at({2, 3});
    ASSERT_EQ(runs.size(), 4U);
    EXPECT_EQ(runs[0].stable_length, 7);
    EXPECT_EQ(runs[1].stable_length, 10);
    EXPECT_EQ(runs[2].stable_length, 13);
    EXPECT_EQ(runs[3].stable_length, 13);
}

TEST(Explore, MonotoneWithPlateau) {
    for (const auto& [ij, runs] : small_grid()) {
        const int i = ij.first, j = ij.second;
        for (int x = 0; x + 1 < static_cast<int>(runs.size()); ++x) {
            const auto step = runs[x + 1].stable_length - runs[x].stable_length;
            EXPECT_EQ(step, x < i ? j : 0) << i << "P" << j << "A x=" << x;
        }
    }
}

TEST(Explore, CounterInvariants) {
    for (const auto& [ij, runs] : small_grid())
        for (const auto& r : runs) {
            EXPECT_GE(r.stable_length, r.stable_start);
            EXPECT_LE(r.distinct_states, r.states_generated);
            std::uint64_t sum = 0;
            for (auto n : r.level_sizes) sum += n;
            EXPECT_EQ(sum, r.distinct_states);
        }
}

// Trend check on distinct-state growth for two-proposer configurations: increments constant for
// x in 1..i+1. The machine's counts are not linear here; the test records that honestly.
TEST(Explore, DistinctStateIncrementsConstantForTwoProposers) {
    for (int j : {3, 4}) {
        const auto& runs = small_grid().at({2, j});
        std::vector<std::int64_t> inc;
        for (int x = 1; x + 1 <= 3; ++x)
            inc.push_back(static_cast<std::int64_t>(runs[x + 1].distinct_states) -
                          static_cast<std::int64_t>(runs[x].distinct_states));
        for (std::size_t k = 1; k < inc.size(); ++k) EXPECT_EQ(inc[k], inc[0]) << "2P" << j << "A";
    }
}

TEST(Explore, Deterministic) {
    const auto a = explore_serial(SystemConfig::paxos(2, 3), 2), b = explore_serial(SystemConfig::paxos(2, 3), 2);
    EXPECT_EQ(a.stable_length, b.stable_length);
    EXPECT_EQ(a.states_generated, b.states_generated);
    EXPECT_EQ(a.distinct_states, b.distinct_states);
    EXPECT_EQ(a.level_sizes, b.level_sizes);
}

TEST(Explore, ParallelMatchesSerial) {
    for (int jobs : {2, 4}) {
        ExploreOptions opts;
        opts.jobs = jobs;
        const auto s = explore_serial(SystemConfig::paxos(2, 4), 2);
        const auto p = explore_parallel(SystemConfig::paxos(2, 4), 2, opts);
        EXPECT_EQ(p.stable_length, s.stable_length);
        EXPECT_EQ(p.states_generated, s.states_generated);
        EXPECT_EQ(p.distinct_states, s.distinct_states);
        EXPECT_EQ(p.level_sizes, s.level_sizes);
    }
}

TEST(Explore, BudgetExceeded) {
    ExploreOptions opts;
    opts.max_states = 100;
    EXPECT_THROW(explore(SystemConfig::paxos(2, 3), 2, opts), BudgetExceeded);
}

TEST(Lasso, FairAlwQSomeLearnHasCounterexample) {
    auto r = check_liveness_lasso(SystemConfig::paxos(2, 3), link(Name::Fair), server(Name::AlwQ), single(Name::SomeLearn));
    ASSERT_EQ(r.outcome, LassoOutcome::Counterexample);
    ASSERT_TRUE(r.lasso.has_value());
    EXPECT_NO_THROW(r.lasso->validate());
    EXPECT_TRUE(temporal::eval(property(link(Name::Fair)), *r.lasso).is_holds());
    EXPECT_TRUE(temporal::eval(property(server(Name::AlwQ)), *r.lasso).is_holds());
    EXPECT_TRUE(temporal::eval(property(single(Name::SomeLearn)), *r.lasso).is_violated());
    EXPECT_STREQ(outcome_name(r.outcome), "CounterexampleLasso");
}

TEST(Lasso, RawAlwEachVoteHasCounterexample) {
    auto r = check_liveness_lasso(SystemConfig::paxos(2, 3), link(Name::Raw), server(Name::Alw), single(Name::EachVote));
    ASSERT_EQ(r.outcome, LassoOutcome::Counterexample);
    EXPECT_TRUE(admitted(link(Name::Raw), *r.lasso));
    EXPECT_TRUE(temporal::eval(property(server(Name::Alw)), *r.lasso).is_holds());
    EXPECT_TRUE(temporal::eval(property(single(Name::EachVote)), *r.lasso).is_violated());
}

TEST(Lasso, FairAlwSomeLearnHoldsWithStableElection) {
    LassoOptions opts;
    opts.stable_election = true;
    auto r = check_liveness_lasso(SystemConfig::paxos(2, 3, 1, 2), link(Name::Fair), server(Name::Alw),
                                  single(Name::SomeLearn), {2'000'000, 40}, opts);
    EXPECT_EQ(r.outcome, LassoOutcome::Holds) << outcome_name(r.outcome) << " " << r.bound;
    EXPECT_FALSE(r.lasso.has_value());
}

TEST(Lasso, TinyBudgetIsUndetermined) {
    LassoOptions opts;
    opts.stable_election = true;
    auto r = check_liveness_lasso(SystemConfig::paxos(2, 3, 1, 2), link(Name::Fair), server(Name::Alw),
                                  single(Name::SomeLearn), {50, 40}, opts);
    EXPECT_EQ(r.outcome, LassoOutcome::Undetermined);
}

TEST(Safety, ExhaustiveTwoProposersThreeAcceptors) {
    auto r = check_safety(SystemConfig::paxos(2, 3, 0, 2));
    EXPECT_TRUE(r.complete);
    EXPECT_TRUE(r.violations.empty()) << (r.violations.empty() ? "" : r.violations.front());
    EXPECT_GT(r.learned_states, 0U);
    EXPECT_GT(r.states, 1000U);
}
