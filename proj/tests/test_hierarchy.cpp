#include <gtest/gtest.h>

#include <set>

#include "livelab/errors.hpp"
#include "livelab/hierarchy/analyzer.hpp"
#include "livelab/hierarchy/corpus.hpp"
#include "livelab/hierarchy/witnesses.hpp"
#include "livelab/paxos/scenarios.hpp"
#include "livelab/temporal/eval.hpp"

using namespace livelab;
using namespace livelab::hierarchy;
using namespace livelab::catalog;
using temporal::Verdict;

namespace {

const std::vector<temporal::Trace>& corpus() {
    static const auto c = generate_corpus({2000, 7});
    return c;
}

Verdict ev(const CatalogId& id, const temporal::Trace& t) { return temporal::eval(property(id), t); }

const EdgeReport* find(const std::vector<EdgeReport>& rs, const CatalogId& a, const CatalogId& b) {
    for (const auto& r : rs)
        if (r.edge.stronger == a && r.edge.weaker == b) return &r;
    return nullptr;
}

} // namespace

TEST(Corpus, TracesAreValidLassosObeyingAxioms) {
    for (std::size_t i = 0; i < corpus().size(); ++i) {
        const auto& t = corpus()[i];
        ASSERT_TRUE(t.is_lasso()) << i;
        ASSERT_NO_THROW(t.validate()) << i;
        auto bad = axiom_violation(t);
        EXPECT_FALSE(bad.has_value()) << i << ": " << *bad;
    }
}

TEST(Corpus, PrefixStableAndReproducible) {
    auto small = generate_corpus({50, 7});
    for (std::size_t i = 0; i < small.size(); ++i) {
        EXPECT_EQ(small[i], corpus()[i]);
        EXPECT_EQ(corpus_trace(7, i), corpus()[i]);
    }
    EXPECT_NE(corpus_trace(8, 0), corpus_trace(7, 0));
}

TEST(Corpus, AxiomsRejectUnbackedLearning) {
    auto t = corpus()[0];
    for (auto& s : t.states) s.learned.insert({t.config.servers()[0], 1, 2});
    for (auto& s : t.states) s.voted.clear();
    EXPECT_TRUE(axiom_violation(t).has_value());
}

TEST(Edges, CheckedListExcludesDashedEdge) {
    for (const auto& e : checked_edges()) {
        EXPECT_FALSE(e.dashed);
        EXPECT_FALSE(e.stronger.name == Name::Resp && e.weaker.name == Name::EachExec);
    }
}

TEST(Edges, FairImpliesRawDirectly) {
    std::size_t fair = 0;
    for (std::size_t i = 0; i < 1000; ++i) {
        const auto& t = corpus()[i];
        if (!ev(link(Name::Fair), t).is_holds()) continue;
        ++fair;
        EXPECT_TRUE(ev(link(Name::Raw), t).is_holds()) << i;
    }
    EXPECT_GT(fair, 100U);
}

TEST(Edges, NoViolationsOnCorpus) {
    const auto reports = check_edges(corpus());
    ASSERT_EQ(reports.size(), checked_edges().size());
    for (const auto& r : reports) {
        EXPECT_EQ(r.corpus_size, corpus().size());
        EXPECT_TRUE(r.violations.empty()) << display(r.edge.stronger) << " -> " << display(r.edge.weaker) << ": "
                                          << r.violations.size();
    }
    const auto* ee = find(reports, single(Name::EachExec), single(Name::EachLearn));
    ASSERT_NE(ee, nullptr);
    EXPECT_GT(ee->stronger_holds, 0U);
}

TEST(Edges, StrongerPropertyHoldsOnEveryEdgeSomewhere) {
    for (const auto& r : check_edges(corpus()))
        EXPECT_GT(r.stronger_holds, 0U) << display(r.edge.stronger) << " -> " << display(r.edge.weaker);
}

TEST(Edges, SeededFairTraceCounted) {
    auto c = std::vector<temporal::Trace>(corpus().begin(), corpus().begin() + 100);
    auto seeded = separating_witness(link(Name::Fair), link(Name::Sure, 2));
    ASSERT_TRUE(ev(link(Name::Fair), seeded).is_holds());
    c.push_back(seeded);
    const auto reports = check_edges(c);
    const auto* fr = find(reports, link(Name::Fair), link(Name::Raw));
    ASSERT_NE(fr, nullptr);
    EXPECT_TRUE(fr->violations.empty());
    std::size_t holds = 0;
    for (const auto& t : c) holds += ev(link(Name::Fair), t).is_holds();
    EXPECT_EQ(fr->stronger_holds, holds);
}

TEST(Edges, ReversedEdgesAreSeparatedByCorpus) {
    // The corpus has the power to refute each edge read backwards.
    for (const auto& e : checked_edges()) {
        const auto weak = property(e.weaker), strong = property(e.stronger);
        bool separated = false;
        for (const auto& t : corpus())
            if (temporal::eval(weak, t).is_holds() && temporal::eval(strong, t).is_violated()) {
                separated = true;
                break;
            }
        EXPECT_TRUE(separated) << display(e.weaker) << " does not imply " << display(e.stronger);
    }
}

TEST(Edges, ParallelMatchesSerial) {
    const auto s = check_edges_serial(corpus());
    for (int jobs : {2, 3}) {
        const auto p = check_edges_parallel(corpus(), jobs);
        ASSERT_EQ(p.size(), s.size());
        for (std::size_t k = 0; k < s.size(); ++k) {
            EXPECT_EQ(p[k].edge.stronger, s[k].edge.stronger);
            EXPECT_EQ(p[k].stronger_holds, s[k].stronger_holds);
            EXPECT_EQ(p[k].violations, s[k].violations);
        }
        EXPECT_EQ(report_table(p), report_table(s));
        EXPECT_EQ(report_records(p), report_records(s));
    }
}

TEST(Witnesses, EveryCheckedEdgeHasValidatedWitness) {
    auto reports = check_edges(std::vector<temporal::Trace>(corpus().begin(), corpus().begin() + 10));
    attach_witnesses(reports);
    for (const auto& r : reports) {
        const auto label = display(r.edge.stronger) + " -> " + display(r.edge.weaker);
        if (!r.witness) {
            EXPECT_FALSE(r.witness_note.empty()) << label;
            continue;
        }
        EXPECT_NO_THROW(r.witness->validate()) << label;
        EXPECT_EQ(ev(r.edge.weaker, *r.witness), Verdict::holds()) << label;
        EXPECT_EQ(ev(r.edge.stronger, *r.witness), Verdict::violated()) << label;
    }
}

TEST(Witnesses, ShippedForEverySolidEdge) {
    for (const auto& e : checked_edges()) EXPECT_TRUE(has_witness(e.weaker, e.stronger)) << display(e.stronger);
}

TEST(Witnesses, RaftLassoSeparatesEachVoteFromSomeLearn) {
    EXPECT_EQ(separating_witness(single(Name::EachVote), single(Name::SomeLearn)), paxos::raft_eachvote_lasso());
}

TEST(Witnesses, RotatingQuorumSeparatesAlwQFromQAlw) {
    auto t = separating_witness(server(Name::AlwQ), server(Name::QAlw));
    EXPECT_EQ(ev(server(Name::AlwQ), t), Verdict::holds());
    EXPECT_EQ(ev(server(Name::QAlw), t), Verdict::violated());
    std::set<std::set<ProcessId>> nf_sets;
    for (Tick k = *t.loop_start; k < t.length(); ++k) nf_sets.insert(t.states[static_cast<std::size_t>(k)].nf_procs);
    EXPECT_GT(nf_sets.size(), 1U);
}

TEST(Witnesses, RawNotFairIsOneOfTwoDelivered) {
    auto t = separating_witness(link(Name::Raw), link(Name::Fair));
    const auto& last = t.states.back();
    EXPECT_EQ(last.sent.size(), 2U);
    EXPECT_EQ(last.received.size(), 1U);
    EXPECT_EQ(t.states[static_cast<std::size_t>(*t.loop_start)].received, last.received);
}

TEST(Witnesses, UnshippedPairThrows) {
    EXPECT_FALSE(has_witness(link(Name::Raw), server(Name::Alw)));
    EXPECT_THROW(separating_witness(link(Name::Raw), server(Name::Alw)), NoWitnessShipped);
    EXPECT_THROW(separating_witness(single(Name::Resp), single(Name::EachExec)), NoWitnessShipped);
}

TEST(Incomparability, BothDirectionsValidate) {
    const auto report = incomparability_report();
    ASSERT_EQ(report.size(), 2U);
    std::set<std::set<CatalogId>> pairs;
    for (const auto& r : report) {
        pairs.insert({r.a, r.b});
        EXPECT_EQ(ev(r.a, r.a_not_b), Verdict::holds());
        EXPECT_EQ(ev(r.b, r.a_not_b), Verdict::violated());
        EXPECT_EQ(ev(r.b, r.b_not_a), Verdict::holds());
        EXPECT_EQ(ev(r.a, r.b_not_a), Verdict::violated());
    }
    EXPECT_EQ(pairs.size(), 2U);
    EXPECT_TRUE(pairs.count({server(Name::PQExtraDur, {2, 2}), server(Name::PQAlw)}));
    EXPECT_TRUE(pairs.count({single(Name::SomeExec), single(Name::EachLearn)}));
}

TEST(Report, TableAndRecords) {
    auto reports = check_edges(std::vector<temporal::Trace>(corpus().begin(), corpus().begin() + 20));
    const auto table = report_table(reports);
    EXPECT_NE(table.find("Fair -> Raw: 0 violations / 20 traces"), std::string::npos) << table;
    EXPECT_NE(table.find("all edges hold"), std::string::npos);
    const auto records = report_records(reports);
    EXPECT_EQ(static_cast<std::size_t>(std::count(records.begin(), records.end(), '\n')), reports.size());
}
