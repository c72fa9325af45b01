// One line per acceptance criterion; exit status 1 when any line fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "livelab/adversary/constructions.hpp"
#include "livelab/catalog/catalog.hpp"
#include "livelab/errors.hpp"
#include "livelab/hierarchy/analyzer.hpp"
#include "livelab/hierarchy/corpus.hpp"
#include "livelab/hierarchy/witnesses.hpp"
#include "livelab/lang/parser.hpp"
#include "livelab/lang/printer.hpp"
#include "livelab/mc/explore.hpp"
#include "livelab/mc/safety.hpp"
#include "livelab/paxos/scenarios.hpp"
#include "livelab/temporal/eval.hpp"
#include "livelab/temporal/rewrite.hpp"
#include "oracles.hpp"

using namespace livelab;
using namespace livelab::catalog;
using temporal::Verdict;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void report(const char* name, const std::function<Outcome()>& check) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
        o = check();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(Clock::now() - t0).count();
    std::printf("%s  %-28s %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), s);
    std::fflush(stdout);
    failures += !o.pass;
}

Verdict ev(const CatalogId& id, const temporal::Trace& t) { return temporal::eval(property(id), t); }

std::map<std::pair<int, int>, std::vector<std::int64_t>> grid_lengths;

Outcome check_formula_grid() {
    const std::pair<int, int> grid[] = {{2, 3}, {2, 4}, {3, 3}, {3, 4}};
    int mismatches = 0;
    std::ostringstream d;
    for (auto [i, j] : grid) {
        auto& ys = grid_lengths[{i, j}];
        for (int x = 0; x <= i + 1; ++x) {
            ys.push_back(mc::explore(SystemConfig::paxos(i, j), x).stable_length);
            mismatches += ys.back() != oracle::stable_length(i, j, x);
        }
        d << i << "P" << j << "A:";
        for (auto y : ys) d << " " << y;
        d << "; ";
    }
    // Values quoted for 2P3A and 3P4A.
    const bool quoted = grid_lengths[{2, 3}] == std::vector<std::int64_t>{7, 10, 13, 13} &&
                        grid_lengths[{3, 4}] == std::vector<std::int64_t>{9, 13, 17, 21, 21};
    d << mismatches << " mismatches";
    return {mismatches == 0 && quoted, d.str()};
}

Outcome check_plateau_slope() {
    if (grid_lengths.size() != 4) return {false, "formula grid did not complete"};
    int bad = 0;
    for (const auto& [ij, ys] : grid_lengths)
        for (int x = 0; x + 1 < static_cast<int>(ys.size()); ++x) bad += ys[x + 1] - ys[x] != (x < ij.first ? ij.second : 0);
    return {bad == 0, std::to_string(bad) + " steps off (slope j below i, flat after)"};
}

std::vector<temporal::Trace> corpus;
std::vector<hierarchy::EdgeReport> reports;

bool is_link_edge(const Edge& e) { return e.stronger.kind == Kind::Link; }

Outcome check_link_edges() {
    const auto t0 = Clock::now();
    corpus = hierarchy::generate_corpus({10'000, 1});
    reports = hierarchy::check_edges(corpus, 0);
    const double s = std::chrono::duration<double>(Clock::now() - t0).count();
    std::size_t edges = 0, violations = 0;
    for (const auto& r : reports)
        if (is_link_edge(r.edge)) {
            ++edges;
            violations += r.violations.size();
        }
    std::ostringstream d;
    d << edges << " link edges over " << corpus.size() << " lassos, " << violations << " violations";
    return {violations == 0 && edges > 0 && s < 120, d.str()};
}

Outcome check_hierarchy_edges() {
    if (reports.empty()) return {false, "corpus check did not run"};
    hierarchy::attach_witnesses(reports);
    std::size_t edges = 0, violations = 0, witnessed = 0, bad_witness = 0;
    for (const auto& r : reports) {
        if (!is_link_edge(r.edge)) {
            ++edges;
            violations += r.violations.size();
        }
        if (!r.witness) continue;
        ++witnessed;
        bad_witness += !(ev(r.edge.weaker, *r.witness).is_holds() && ev(r.edge.stronger, *r.witness).is_violated());
    }
    std::ostringstream d;
    d << edges << " server/assertion edges, " << violations << " violations; " << witnessed << "/" << reports.size()
      << " witnesses, " << bad_witness << " invalid";
    return {violations == 0 && bad_witness == 0 && witnessed == reports.size(), d.str()};
}

Outcome check_raft() {
    const auto t = paxos::raft_eachvote_lasso();
    const auto a = ev(single(Name::EachVote), t), b = ev(single(Name::SomeLearn), t), c = ev(server(Name::AlwQ), t);
    return {a.is_holds() && b.is_violated() && c.is_holds(),
            "Each-Vote " + a.str() + ", Some-Learn " + b.str() + ", Alw-Q " + c.str()};
}

Outcome check_alwq_adversary() {
    const auto t = adversary::alwq_adversary(SystemConfig::paxos(2, 3));
    const auto f = ev(link(Name::Fair), t), q = ev(server(Name::AlwQ), t), l = ev(single(Name::SomeLearn), t);
    int worst = 0;
    for (const auto& s : t.states) {
        int down = 0;
        for (auto p : t.config.servers()) down += s.nf_procs.count(p) == 0;
        worst = std::max(worst, down);
    }
    return {f.is_holds() && q.is_holds() && l.is_violated() && worst <= 1,
            "Fair " + f.str() + ", Alw-Q " + q.str() + ", Some-Learn " + l.str() + ", max down " + std::to_string(worst)};
}

Outcome check_raw_blackout() {
    const auto t = adversary::raw_blackout(SystemConfig::paxos(2, 3));
    int violated = 0, total = 0;
    for (auto [k, n] : core_families())
        if (k == Kind::AssertionSingle) {
            ++total;
            violated += ev({k, n, {}}, t).is_violated();
        }
    return {total == 6 && violated == 6, std::to_string(violated) + "/" + std::to_string(total) + " assertions Violated"};
}

Outcome check_not_resp() {
    const auto t = paxos::paxos_complex_livelock_lasso();
    const auto a = ev(server(Name::Alw), t), r = ev(single(Name::Resp), t), rm = ev(multi(Name::Resp), t);
    return {a.is_holds() && r.is_violated() && rm.is_violated(),
            "Alw " + a.str() + ", Resp " + r.str() + ", Resp-Multi " + rm.str()};
}

Outcome check_language() {
    const lang::Params params{{"D", 2}, {"D1", 2}, {"D2", 3}, {"n", 2}};
    int round_trip = 0, texts = 0;
    std::vector<std::pair<temporal::ExprPtr, temporal::ExprPtr>> pairs;
    for (const auto& f : oracle::reference_lines()) {
        if (f.kind == Kind::AssertionMulti) continue;
        ++texts;
        auto e = lang::parse(f.text, params);
        round_trip += temporal::same(lang::parse(lang::print(e)), e);
        std::vector<std::int64_t> ps;
        for (const auto& p : parameter_names(f.kind, f.name)) ps.push_back(params.find(p)->second);
        pairs.emplace_back(e, property({f.kind, f.name, ps}));
    }
    std::mt19937_64 g(2024);
    int eval_diff = 0;
    for (int i = 0; i < 1000; ++i) {
        auto t = oracle::random_trace(g, i % 4 != 0);
        for (const auto& [parsed, built] : pairs) eval_diff += !(temporal::eval(parsed, t) == temporal::eval(built, t));
    }
    int rewrite_diff = 0;
    for (int i = 0; i < 1000; ++i) {
        auto e = oracle::random_expr(g);
        auto t = oracle::random_trace(g, i % 2 == 0, 2, 6);
        auto verdict = [&](const temporal::ExprPtr& x) -> std::string {
            try {
                return temporal::eval(x, t).str();
            } catch (const TimeOutOfRange&) {
                return "out of range";
            }
        };
        const auto v = verdict(e);
        rewrite_diff += v != verdict(temporal::normalize_at(e));
        rewrite_diff += v != verdict(temporal::desugar(e));
    }
    std::ostringstream d;
    d << round_trip << "/" << texts << " round-trips, " << eval_diff << " parsed/built differences, " << rewrite_diff
      << " rewrite differences";
    return {texts == 16 && round_trip == 16 && eval_diff == 0 && rewrite_diff == 0, d.str()};
}

Outcome check_safety() {
    const auto r = mc::check_safety(SystemConfig::paxos(2, 3, 0, 2));
    std::ostringstream d;
    d << r.states << " states, " << r.learned_states << " with a learner, " << r.violations.size() << " violations"
      << (r.complete ? "" : ", incomplete");
    return {r.complete && r.violations.empty(), d.str()};
}

} // namespace

int main() {
    report("formula-reproduction", check_formula_grid);
    report("plateau-and-slope", check_plateau_slope);
    report("link-implications", check_link_edges);
    report("hierarchy-edges", check_hierarchy_edges);
    report("raft-counterexample", check_raft);
    report("none-from-alw-q", check_alwq_adversary);
    report("none-from-raw", check_raw_blackout);
    report("not-resp", check_not_resp);
    report("language-engine", check_language);
    report("safety-cross-check", check_safety);
    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
