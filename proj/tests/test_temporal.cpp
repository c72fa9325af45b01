#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "livelab/catalog/catalog.hpp"
#include "livelab/errors.hpp"
#include "livelab/lang/printer.hpp"
#include "livelab/temporal/eval.hpp"
#include "livelab/temporal/rewrite.hpp"
#include "livelab/temporal/trace_io.hpp"
#include "oracles.hpp"

using namespace livelab;
using namespace livelab::temporal;
using namespace livelab::temporal::build;

namespace {

const ProcessId S1 = pid(0), S2 = pid(1), S3 = pid(2), C1 = pid(3);

ObservationState nf_state(std::set<ProcessId> nf) {
    ObservationState s;
    s.nf_procs = std::move(nf);
    s.roster = {S1, S2, S3};
    return s;
}

template <class Set>
bool grows(const Set& later, const Set& earlier) {
    return std::includes(later.begin(), later.end(), earlier.begin(), earlier.end());
}

// Field-by-field containment, written independently of ObservationState::extends.
bool monotone(const Trace& t) {
    for (std::size_t k = 1; k < t.states.size(); ++k) {
        const auto &a = t.states[k - 1], &b = t.states[k];
        if (!grows(b.sent, a.sent) || !grows(b.received, a.received) || !grows(b.voted, a.voted) ||
            !grows(b.learned, a.learned) || !grows(b.executed, a.executed) || !grows(b.responded, a.responded) ||
            !grows(b.requested, a.requested))
            return false;
    }
    return true;
}

// Brute force for "eventually, at every later tick, some quorum is entirely nf".
bool eventually_always_quorum(const Trace& t) {
    const Tick n = 2 * t.length();
    auto ok = [&](Tick k) {
        const auto& s = *t.at(k);
        for (const auto& q : t.config.quorums)
            if (std::all_of(q.begin(), q.end(), [&](ProcessId p) { return s.nf_procs.count(p) > 0; })) return true;
        return false;
    };
    for (Tick start = 0; start < t.length(); ++start) {
        bool all = true;
        for (Tick k = start; k < n && all; ++k) all = ok(k);
        if (all) return true;
    }
    return false;
}

ExprPtr alw_q() { return evt(alw(some("q", quorums(), nf_set("q")))); }

} // namespace

TEST(Eval, AlwaysTrueHoldsOnAnyTrace) {
    std::mt19937_64 g(11);
    for (int i = 0; i < 100; ++i) {
        auto t = oracle::random_trace(g, i % 2 == 0);
        EXPECT_EQ(eval(alw(truth()), t), Verdict::holds());
    }
}

TEST(Eval, EventuallyLearnedIsUndeterminedOnSilentFinitePrefix) {
    Trace t;
    t.config = oracle::small_config();
    for (int k = 0; k < 4; ++k) t.states.push_back(nf_state({S1, S2, S3}));
    auto e = evt(some("p", servers(), some("v", values(), learned("p", Term::var("v")))));
    EXPECT_EQ(eval(e, t), Verdict::undetermined(4));
}

TEST(Eval, EventuallyAlwaysQuorumOnLassoKeepingQuorum) {
    Trace t;
    t.config = oracle::small_config();
    t.states = {nf_state({S3}), nf_state({}), nf_state({S1, S2}), nf_state({S1, S2, S3})};
    t.loop_start = 2;
    t.validate();
    ASSERT_TRUE(eventually_always_quorum(t));
    EXPECT_EQ(eval(alw_q(), t), Verdict::holds());
}

TEST(Eval, EventuallyAlwaysQuorumAgreesWithBruteForce) {
    std::mt19937_64 g(12);
    int holds = 0;
    for (int i = 0; i < 500; ++i) {
        auto t = oracle::random_trace(g, true);
        const bool expect = eventually_always_quorum(t);
        holds += expect;
        EXPECT_EQ(eval(alw_q(), t), expect ? Verdict::holds() : Verdict::violated()) << write_trace(t);
    }
    EXPECT_GT(holds, 0);
}

TEST(Eval, UnboundVariableIsRejected) {
    Trace t;
    t.config = oracle::small_config();
    t.states = {nf_state({S1})};
    EXPECT_THROW(eval(nf("p"), t), UnboundVariable);
}

TEST(Eval, AbsoluteTickBeyondFiniteTraceIsOutOfRange) {
    Trace t;
    t.config = oracle::small_config();
    t.states = {nf_state({S1}), nf_state({S1})};
    auto e = at(nf_set(SetTerm{SetTerm::Kind::Servers, {}}), TimeTerm::abs(5));
    EXPECT_THROW(eval(e, t), TimeOutOfRange);
    t.loop_start = 0;
    EXPECT_NO_THROW(eval(e, t));
}

TEST(Eval, KleeneConnectives) {
    const Bool3 vals[] = {Bool3::False, Bool3::Unknown, Bool3::True};
    for (auto a : vals) {
        EXPECT_EQ(!!a, a);
        for (auto b : vals) {
            const int ia = static_cast<int>(a), ib = static_cast<int>(b);
            EXPECT_EQ(static_cast<int>(a && b), std::min(ia, ib));
            EXPECT_EQ(static_cast<int>(a || b), std::max(ia, ib));
        }
    }
}

TEST(Eval, LassoExactnessOnCatalogProperties) {
    std::mt19937_64 g(13);
    std::vector<ExprPtr> props;
    for (auto [k, n] : catalog::families()) {
        std::vector<std::int64_t> params;
        for (std::size_t a = 0; a < catalog::arity(k, n); ++a) params.push_back(k == catalog::Kind::AssertionMulti ? 2 : 1);
        props.push_back(catalog::property({k, n, params}));
    }
    int determined = 0;
    for (int i = 0; i < 400; ++i) {
        auto t = oracle::random_trace(g, true);
        const Tick len = t.length() + 2 * t.period();
        auto u = oracle::unroll(t, len);
        for (const auto& p : props) {
            const auto v = eval(p, t);
            ASSERT_FALSE(v.is_undetermined());
            const auto vu = eval(p, u);
            if (vu.is_undetermined()) continue;
            ++determined;
            EXPECT_EQ(v, vu) << lang::print(p) << "\n" << write_trace(t);
        }
    }
    EXPECT_GT(determined, 1000);
}

TEST(Eval, LassoExactnessOnRandomExpressions) {
    std::mt19937_64 g(14);
    int determined = 0;
    for (int i = 0; i < 1000; ++i) {
        auto e = oracle::random_expr(g);
        auto t = oracle::random_trace(g, true, 2, 6);
        const auto v = eval(e, t);
        ASSERT_FALSE(v.is_undetermined()) << lang::print(e);
        const auto vu = eval(e, oracle::unroll(t, t.length() + 2 * t.period()));
        if (vu.is_undetermined()) continue;
        ++determined;
        EXPECT_EQ(v, vu) << lang::print(e);
    }
    EXPECT_GT(determined, 300);
}

TEST(Eval, DualityOfAlwaysAndEventually) {
    std::mt19937_64 g(15);
    for (int i = 0; i < 1000; ++i) {
        auto c = oracle::random_expr(g, 4);
        auto t = oracle::random_trace(g, true);
        EXPECT_EQ(eval(not_(alw(c)), t), eval(evt(not_(c)), t)) << lang::print(c);
    }
}

TEST(Eval, KleeneMonotonicityUnderExtension) {
    std::mt19937_64 g(16);
    int determined = 0;
    for (int i = 0; i < 1000; ++i) {
        auto e = oracle::random_expr(g);
        auto t = oracle::random_trace(g, false, 3, 7);
        const Tick cut = 1 + static_cast<Tick>(g() % static_cast<std::uint64_t>(t.length() - 1));
        auto prefix = oracle::unroll(t, cut);
        Verdict short_v, long_v;
        try {
            short_v = eval(e, prefix);
        } catch (const TimeOutOfRange&) {
            continue;  // absolute tick past the shorter prefix: precondition, not a verdict
        }
        long_v = eval(e, t);
        if (short_v.is_undetermined()) continue;
        ++determined;
        EXPECT_EQ(short_v.kind, long_v.kind) << lang::print(e);
    }
    EXPECT_GT(determined, 300);
}

TEST(Rewrite, NormalizeDistributesAtOverConjunction) {
    auto a = nf("p"), b = is_primary("p");
    auto e = some("p", servers(), at(and_(a, b), TimeTerm::now(1)));
    auto want = some("p", servers(), and_(at(a, TimeTerm::now(1)), at(b, TimeTerm::now(1))));
    EXPECT_TRUE(same(normalize_at(e), want)) << lang::print(normalize_at(e));
}

TEST(Rewrite, NormalizeLeavesOriginAtomsUnstamped) {
    auto e = some("p", servers(), at(nf("p"), TimeTerm::abs(0)));
    EXPECT_TRUE(same(normalize_at(e), some("p", servers(), nf("p"))));
}

TEST(Rewrite, NormalizeAlwaysEventually) {
    auto c = some("p", servers(), nf("p"));
    auto roster_t2 = servers();
    roster_t2.at = TimeTerm::of("t2");
    auto want = each("t", time(Interval::from(TimeTerm::abs(0))),
                     some("t2", time(Interval::from(TimeTerm::of("t"))),
                          some("p", roster_t2, at(nf("p"), TimeTerm::of("t2")))));
    EXPECT_TRUE(same(normalize_at(alw(evt(c))), want)) << lang::print(normalize_at(alw(evt(c))));
}

TEST(Rewrite, DesugarLastsMatchesDuring) {
    auto c = some("p", servers(), nf("p"));
    auto iv = Interval::closed(TimeTerm::now(), TimeTerm::now(5));
    EXPECT_TRUE(same(desugar(lasts(c, 5)), desugar(during(c, iv))));
    auto want = each("t", time(iv), at(c, TimeTerm::of("t")));
    EXPECT_TRUE(same(desugar(lasts(c, 5)), want)) << lang::print(desugar(lasts(c, 5)));
}

TEST(Rewrite, DesugarNfSet) {
    auto e = some("q", quorums(), nf_set("q"));
    EXPECT_TRUE(same(desugar(e), some("q", quorums(), each("p", members("q"), nf("p")))));
}

TEST(Rewrite, DesugarAfterZero) {
    auto c = some("p", servers(), nf("p"));
    EXPECT_TRUE(same(desugar(after(c, 0)), desugar(during(c, Interval::after(TimeTerm::now())))));
}

TEST(Rewrite, PreservesEvalOnRandomPairs) {
    std::mt19937_64 g(17);
    for (int i = 0; i < 1000; ++i) {
        auto e = oracle::random_expr(g);
        auto t = oracle::random_trace(g, i % 2 == 0, 2, 6);
        Verdict v;
        try {
            v = eval(e, t);
        } catch (const TimeOutOfRange&) {
            EXPECT_THROW(eval(normalize_at(e), t), TimeOutOfRange) << lang::print(e);
            EXPECT_THROW(eval(desugar(e), t), TimeOutOfRange) << lang::print(e);
            continue;
        }
        EXPECT_EQ(eval(normalize_at(e), t), v) << lang::print(e);
        EXPECT_EQ(eval(desugar(e), t), v) << lang::print(e);
    }
}

TEST(Rewrite, NormalizedFormHasNoTemporalSugar) {
    std::mt19937_64 g(18);
    for (int i = 0; i < 200; ++i) {
        auto n = lang::print(normalize_at(oracle::random_expr(g)));
        for (const char* kw : {"alw ", "evt ", " during ", " lasts ", " after "})
            EXPECT_EQ(n.find(kw), std::string::npos) << n;
    }
}

TEST(TraceIo, ByteIdenticalRoundTrip) {
    std::mt19937_64 g(19);
    for (int i = 0; i < 200; ++i) {
        auto t = oracle::random_trace(g, i % 2 == 0);
        const auto text = write_trace(t);
        const auto back = read_trace_string(text);
        EXPECT_EQ(back, t);
        EXPECT_EQ(write_trace(back), text);
    }
}

TEST(TraceIo, MalformedInputIsReported) {
    EXPECT_THROW(read_trace_string("{not json"), TraceFormatError);
    EXPECT_THROW(read_trace_string(""), Error);
}

TEST(TraceValidate, RejectsDefects) {
    Trace empty;
    empty.config = oracle::small_config();
    EXPECT_THROW(empty.validate(), Error);

    Trace shrink;
    shrink.config = oracle::small_config();
    shrink.states = {nf_state({}), nf_state({})};
    shrink.states[0].voted.insert({S1, 1, 1, 1});
    EXPECT_THROW(shrink.validate(), Error);

    Trace ghost;
    ghost.config = oracle::small_config();
    ghost.states = {nf_state({})};
    ghost.states[0].received.insert({S2, Message{"m", {1}}, S1});
    EXPECT_THROW(ghost.validate(), Error);
    ghost.states[0].sent.insert({S1, Message{"m", {1}}, S2});
    EXPECT_NO_THROW(ghost.validate());

    Trace bad_loop;
    bad_loop.config = oracle::small_config();
    bad_loop.states = {nf_state({}), nf_state({})};
    bad_loop.states[1].requested.insert({C1, 1});
    bad_loop.loop_start = 0;
    EXPECT_THROW(bad_loop.validate(), Error);
    bad_loop.loop_start = 2;
    EXPECT_THROW(bad_loop.validate(), Error);
    bad_loop.loop_start = 1;
    EXPECT_NO_THROW(bad_loop.validate());
}

TEST(TraceValidate, RandomTracesAreMonotone) {
    std::mt19937_64 g(20);
    for (int i = 0; i < 200; ++i) {
        auto t = oracle::random_trace(g, i % 2 == 0);
        EXPECT_TRUE(monotone(t));
        EXPECT_NO_THROW(t.validate());
    }
}
