#include "livelab/hierarchy/witnesses.hpp"

#include "livelab/errors.hpp"
#include "livelab/paxos/scenarios.hpp"

namespace livelab::hierarchy {

using catalog::CatalogId;
using catalog::Kind;
using catalog::Name;
using temporal::ObservationState;
using temporal::Trace;

namespace {

// Servers S1..S3 (ids 0..2) and client c1 (id 3).
constexpr ProcessId S1 = pid(0), S2 = pid(1), S3 = pid(2), C1 = pid(3);

SystemConfig three() { return SystemConfig::servers({"S1", "S2", "S3"}, 1, {1, 2}, {1, 2}); }

ObservationState up(std::set<ProcessId> nf, std::set<ProcessId> primaries = {}) {
    ObservationState s;
    s.nf_procs = std::move(nf);
    s.nf_procs.insert(C1);
    s.primaries = std::move(primaries);
    s.roster = {S1, S2, S3};
    s.requested = {{C1, 1}};
    return s;
}

Trace lasso(std::vector<ObservationState> states, Tick loop) {
    Trace t{three(), std::move(states), loop};
    t.validate();
    return t;
}

// A message from S1 to S2 delivered `delay` ticks after it is sent (never when negative),
// plus an undelivered second message when `lose_one`.
Trace link_trace(Tick delay, bool lose_one) {
    const temporal::Message m0{"m", {0}}, m1{"m", {1}};
    const Tick n = std::max<Tick>(delay, 0) + 1;
    std::vector<ObservationState> st(static_cast<std::size_t>(n), up({S1, S2, S3}, {S1}));
    for (Tick i = 0; i < n; ++i) {
        auto& s = st[static_cast<std::size_t>(i)];
        s.sent.insert({S1, m0, S2});
        if (lose_one) s.sent.insert({S1, m1, S2});
        if (delay >= 0 && i >= delay) s.received.insert({S2, m0, S1});
    }
    return lasso(std::move(st), n - 1);
}

// `good` ticks with S1 primary and {S1,S2} nf, then one tick where only {S2,S3} is nf.
Trace windowed(Tick good) {
    std::vector<ObservationState> st(static_cast<std::size_t>(good), up({S1, S2}, {S1}));
    st.push_back(up({S2, S3}));
    return lasso(std::move(st), 0);
}

// S1 primary and {S1,S2} nf forever while S3 keeps leaving and rejoining the roster.
Trace roster_churn() {
    auto a = up({S1, S2}, {S1}), b = a;
    b.roster = {S1, S2};
    return lasso({a, b}, 0);
}

// Round-1 votes for value 1 from `voters`; `learners` learn it and `executors` execute it.
Trace decided(std::set<ProcessId> voters, std::set<ProcessId> learners, std::set<ProcessId> executors) {
    auto s = up({S1, S2, S3}, {S1});
    for (auto p : voters) s.voted.insert({p, 1, 1, 1});
    for (auto p : learners) s.learned.insert({p, 1, 1});
    for (auto p : executors) s.executed.insert({p, 1, 1});
    s.sent.insert({S1, {"m", {0}}, S2});
    s.received.insert({S2, {"m", {0}}, S1});
    return lasso({s}, 0);
}

std::optional<std::int64_t> param(const CatalogId& id, std::size_t k) {
    if (k < id.params.size()) return id.params[k];
    return std::nullopt;
}

std::optional<Trace> build(const CatalogId& w, const CatalogId& s) {
    if (w.kind != s.kind) return std::nullopt;
    const Name a = w.name, b = s.name;
    if (w.kind == Kind::Link) {
        // `after D` is strict, so Sure(D) tolerates a delay of D + 1.
        if (a == Name::Raw && b == Name::Fair) return link_trace(0, true);
        if (a == Name::Fair && b == Name::Sure) return link_trace(*param(s, 0) + 2, false);
        if (a == Name::Sure && b == Name::Sure && *param(s, 0) < *param(w, 0)) return link_trace(*param(w, 0) + 1, false);
        return std::nullopt;
    }
    if (w.kind == Kind::Server) {
        if (a == Name::PQAlw && b == Name::Alw) return lasso({up({S1, S2}, {S1})}, 0);
        if (a == Name::QAlw && b == Name::PQAlw) return lasso({up({S1, S2})}, 0);
        if (a == Name::AlwQ && b == Name::QAlw) return lasso({up({S1, S2}), up({S2, S3})}, 0);
        if (a == Name::PAlwQ && b == Name::PQAlw) return lasso({up({S1, S2}, {S1}), up({S1, S3}, {S1})}, 0);
        if (a == Name::AlwQ && b == Name::PAlwQ) return lasso({up({S1, S2})}, 0);
        if (a == Name::PQExtraDur && b == Name::Alw) {
            const Tick span = *param(w, 0) + *param(w, 1) + 1;
            std::vector<ObservationState> st(static_cast<std::size_t>(span), up({S1, S2, S3}, {S1}));
            st.push_back(up({S1, S2}));
            return lasso(std::move(st), span);
        }
        if (a == Name::PQDur && b == Name::PQExtraDur) {
            const Tick d = *param(w, 0);
            if (*param(s, 0) + *param(s, 1) > d) return windowed(d + 1);
            return roster_churn();
        }
        if (a == Name::PQDur && b == Name::PQAlw) return windowed(*param(w, 0) + 1);
        return std::nullopt;
    }
    if (w.kind == Kind::AssertionSingle) {
        if (a == Name::EachVote && b == Name::SomeLearn) return paxos::raft_eachvote_lasso();
        if (a == Name::SomeLearn && (b == Name::EachLearn || b == Name::SomeExec)) return decided({S1, S2}, {S1}, {});
        if ((a == Name::EachLearn || a == Name::SomeExec) && b == Name::EachExec) return decided({S1, S2}, {S1, S2}, {S1});
        if (a == Name::SomeExec && b == Name::Resp) return decided({S1, S2}, {S1}, {S1});
    }
    return std::nullopt;
}

} // namespace

Trace separating_witness(const CatalogId& weaker, const CatalogId& stronger) {
    auto t = build(weaker, stronger);
    if (!t)
        throw NoWitnessShipped("no separating witness shipped for " + catalog::display(weaker) + " against " +
                               catalog::display(stronger));
    return *t;
}

bool has_witness(const CatalogId& weaker, const CatalogId& stronger) { return build(weaker, stronger).has_value(); }

std::vector<Incomparability> incomparability_report() {
    std::vector<Incomparability> out;
    {
        Incomparability i{catalog::server(Name::PQExtraDur, {2, 2}), catalog::server(Name::PQAlw, {}), {}, {}};
        std::vector<ObservationState> st(5, up({S1, S2, S3}, {S1}));
        st.push_back(up({S2, S3}));
        i.a_not_b = lasso(std::move(st), 5);
        i.b_not_a = roster_churn();
        out.push_back(std::move(i));
    }
    {
        Incomparability i{catalog::single(Name::SomeExec), catalog::single(Name::EachLearn), {}, {}};
        i.a_not_b = decided({S1, S2}, {S1}, {S1});
        i.b_not_a = decided({S1, S2}, {S1, S2}, {});
        out.push_back(std::move(i));
    }
    return out;
}

} // namespace livelab::hierarchy
