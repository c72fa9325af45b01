#include "livelab/paxos/scenarios.hpp"

namespace livelab::paxos {

using namespace temporal;

namespace {

ProcessId id(const SystemConfig& c, const char* name) { return *c.find(name); }

} // namespace

Trace raft_eachvote_lasso() {
    SystemConfig cfg = SystemConfig::servers({"S1", "S2", "S3"}, 0, {1, 3}, {1, 2});
    cfg.validate();
    const ProcessId s1 = id(cfg, "S1"), s2 = id(cfg, "S2"), s3 = id(cfg, "S3");

    ObservationState base;
    base.roster = {s1, s2, s3};
    auto state = [&](std::set<ProcessId> nf, std::set<ProcessId> prim) {
        ObservationState o = base;
        o.nf_procs = std::move(nf);
        o.primaries = std::move(prim);
        return o;
    };

    Trace t{cfg, {}, std::nullopt};
    // (a) S1 is primary in term 1 and replicates value 1 onto S2.
    t.states.push_back(state({s1, s2, s3}, {s1}));
    base.voted.insert({s1, 1, 1, 1});
    t.states.push_back(state({s1, s2, s3}, {s1}));
    base.voted.insert({s2, 1, 1, 1});
    t.states.push_back(state({s1, s2, s3}, {s1}));
    // (b) S1 fails.
    t.states.push_back(state({s2, s3}, {}));
    // (c) S3 is primary in term 2 and overwrites S2's entry with value 3.
    base.voted.insert({s3, 2, 1, 3});
    t.states.push_back(state({s2, s3}, {s3}));
    base.voted.insert({s2, 2, 1, 3});
    t.states.push_back(state({s2, s3}, {s3}));
    // (d) S3 fails before learning; S1 comes back.
    t.states.push_back(state({s1, s2}, {}));

    // Cycle over the same four situations with histories frozen.
    t.loop_start = t.length();
    t.states.push_back(state({s1, s2, s3}, {s1}));
    t.states.push_back(state({s2, s3}, {}));
    t.states.push_back(state({s2, s3}, {s3}));
    t.states.push_back(state({s1, s2}, {}));
    t.validate();
    return t;
}

Trace paxos_complex_livelock_lasso() {
    SystemConfig cfg = SystemConfig::servers({"R1", "R2"}, 2, {1, 2}, {1, 2, 3});
    cfg.slot_bound = 2;
    cfg.validate();
    const ProcessId r1 = id(cfg, "R1"), r2 = id(cfg, "R2"), c1 = id(cfg, "c1"), c2 = id(cfg, "c2");
    const Message req1{"req", {1}}, req2{"req", {2}}, resp2{"resp", {2, cfg.result_of(2)}};

    ObservationState o;
    o.roster = {r1, r2};
    o.nf_procs = {r1, r2, c1, c2};
    o.requested = {{c1, 1}, {c2, 2}};
    auto push = [&](Trace& t, std::set<ProcessId> prim) {
        o.primaries = std::move(prim);
        t.states.push_back(o);
    };

    Trace t{cfg, {}, std::nullopt};
    o.sent = {{c1, req1, r1}, {c2, req2, r2}};
    push(t, {r1});
    o.received = {{r1, req1, c1}, {r2, req2, c2}};
    push(t, {r1});
    // Both replicas propose for slot 1 concurrently; R2 wins with c2's value.
    o.voted.insert({r1, 1, 1, 1});
    push(t, {r1});
    o.voted.insert({r2, 2, 1, 2});
    o.voted.insert({r1, 2, 1, 2});
    push(t, {r2});
    o.learned = {{r1, 1, 2}, {r2, 1, 2}};
    o.executed = o.learned;
    push(t, {r2});
    o.sent.insert({r2, resp2, c2});
    o.received.insert({c2, resp2, r2});
    o.responded = {{c2, 2, cfg.result_of(2)}};
    push(t, {r2});
    // R1 re-proposes c1's value on slot 2 and is preempted by R2 re-proposing its own.
    o.voted.insert({r1, 2, 2, 1});
    push(t, {r1});
    o.voted.insert({r2, 3, 2, 2});
    push(t, {r2});

    t.loop_start = t.length();
    push(t, {r1});
    push(t, {r2});
    t.validate();
    return t;
}

} // namespace livelab::paxos
