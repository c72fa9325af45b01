#include "oracles.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace oracle {

using namespace livelab;
using namespace livelab::temporal;
using namespace livelab::temporal::build;

std::int64_t stable_length(int i, int j, int x) {
    const int eff = x <= i ? x : i;
    const int ceil_half = (j + 1) / 2 + ((j + 1) % 2 != 0 ? 1 : 0);
    return static_cast<std::int64_t>(j) * eff + j + 2 + ceil_half;
}

std::vector<std::vector<ProcessId>> minimal_majorities(const std::vector<ProcessId>& members) {
    std::vector<std::vector<ProcessId>> out;
    const std::size_t n = members.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<ProcessId> q;
        for (std::size_t k = 0; k < n; ++k)
            if (mask >> k & 1U) q.push_back(members[k]);
        if (q.size() == n / 2 + 1) out.push_back(q);
    }
    return out;
}

SystemConfig small_config() {
    SystemConfig c;
    c.processes = {{"S1", Role::Server}, {"S2", Role::Server}, {"S3", Role::Server}, {"c1", Role::Client}};
    const auto S = [](int k) { return pid(static_cast<std::uint16_t>(k)); };
    c.quorums = {{S(0), S(1)}, {S(0), S(2)}, {S(1), S(2)}};
    c.values = {1, 2};
    c.rounds = {1, 2};
    c.slot_bound = 2;
    return c;
}

// Reference text with symbolic parameters, independent of the catalog tables.
const std::vector<ReferenceLine>& reference_lines() {
    using livelab::catalog::Kind;
    using livelab::catalog::Name;
    static const std::vector<ReferenceLine> lines = {
    {Kind::Link, Name::Raw, "some p1.sent m to p2 has evt p2.received m from p1"},
    {Kind::Link, Name::Fair, "each p1.sent m to p2 has evt p2.received m from p1"},
    {Kind::Link, Name::Sure, "each p1.sent m to p2 has (p2.received m from p1 after D)"},
    {Kind::Server, Name::AlwQ, "evt alw some q in quorums has q nf"},
    {Kind::Server, Name::QAlw, "evt some q in quorums has alw q nf"},
    {Kind::Server, Name::PAlwQ,
     "evt some p in servers has\n    alw (p.nf and p.is_primary and some q in quorums has q nf)"},
    {Kind::Server, Name::PQAlw, "evt some p in servers, q in quorums has\n    alw (p.nf and p.is_primary and q nf)"},
    {Kind::Server, Name::Alw, "evt alw servers nf"},
    {Kind::Server, Name::PQDur,
     "evt some p in servers, q in quorums has \n    ((p.nf and p.is_primary and q nf) lasts D)"},
    {Kind::Server, Name::PQExtraDur,
     "some t in [0,inf) has (\n(each t2 in [t,t+D1+D2] has (servers at t2 = servers at t)) and\n"
     "(some p in servers has ((p.nf and p.is_primary) during [t+D1,t+D1+D2])) and\n"
     "(some q in quorums has (q nf during [t,t+D1+D2])) )"},
    {Kind::AssertionSingle, Name::EachVote,
     "evt some r in rounds, q in quorums, v in values has\n    each p in q has p.voted (r,v)"},
    {Kind::AssertionSingle, Name::SomeLearn, "evt some p in servers, v in values has p.learned (v)"},
    {Kind::AssertionSingle, Name::EachLearn,
     "evt some q in quorums, v in values has\n    each p in q has p.learned (v)"},
    {Kind::AssertionSingle, Name::SomeExec, "evt some p in servers, v in values has p.executed (v)"},
    {Kind::AssertionSingle, Name::EachExec,
     "evt some q in quorums, v in values has\n    each p in q has p.executed (v)"},
    {Kind::AssertionSingle, Name::Resp, "evt each c in clients has some v in values has\n    c.received ('resp',v)"},
    {Kind::AssertionMulti, Name::EachVote,
     "evt each s in 1..n has\n some r in rounds, q in quorums, v in values has\n each p in q has p.voted (r,s,v)"},
    {Kind::AssertionMulti, Name::SomeLearn,
     "evt each s in 1..n has\n some p in servers, v in values has p.learned (s,v)"},
    {Kind::AssertionMulti, Name::EachLearn,
     "evt each s in 1..n has\n some q in quorums, v in values has\n each p in q has p.learned (s,v)"},
    {Kind::AssertionMulti, Name::SomeExec,
     "evt each s in 1..n has\n some p in servers, v in values has p.executed (s,v)"},
    {Kind::AssertionMulti, Name::EachExec,
     "evt each s in 1..n has\n some q in quorums, v in values has\n each p in q has p.executed (s,v)"},
    {Kind::AssertionMulti, Name::Resp,
     "evt each c in client, v in values has\n c.sent ('req', v) implies c.received ('resp', v, res(v))"},
};
    return lines;
}

namespace {

struct Rng {
    std::mt19937_64& g;
    std::size_t pick(std::size_t n) { return static_cast<std::size_t>(g() % n); }
    bool coin(double p) { return std::uniform_real_distribution<double>(0, 1)(g) < p; }
    std::int64_t val() { return 1 + static_cast<std::int64_t>(pick(2)); }
};

} // namespace

Trace random_trace(std::mt19937_64& g, bool lasso, int min_len, int max_len) {
    Rng r{g};
    Trace t;
    t.config = small_config();
    const int len = min_len + static_cast<int>(r.pick(static_cast<std::size_t>(max_len - min_len + 1)));
    if (lasso) t.loop_start = static_cast<Tick>(r.pick(static_cast<std::size_t>(len)));
    const ProcessId procs[] = {pid(0), pid(1), pid(2), pid(3)};
    const ProcessId c1 = pid(3);
    ObservationState hist;
    for (int i = 0; i < len; ++i) {
        const bool growing = !lasso || i <= *t.loop_start;
        if (growing) {
            if (r.coin(0.5)) {
                const auto a = procs[r.pick(4)], b = procs[r.pick(4)];
                const Message m{"m", {static_cast<std::int64_t>(r.pick(2))}};
                hist.sent.insert({a, m, b});
            }
            if (!hist.sent.empty() && r.coin(0.4)) {
                auto it = hist.sent.begin();
                std::advance(it, static_cast<std::ptrdiff_t>(r.pick(hist.sent.size())));
                hist.received.insert({it->to, it->msg, it->from});
            }
            if (r.coin(0.4)) hist.voted.insert({procs[r.pick(3)], r.val(), r.val(), r.val()});
            if (r.coin(0.3)) hist.learned.insert({procs[r.pick(3)], r.val(), r.val()});
            if (r.coin(0.2)) hist.executed.insert({procs[r.pick(3)], r.val(), r.val()});
            if (r.coin(0.2)) {
                const auto v = r.val();
                hist.responded.insert({c1, v, r.coin(0.8) ? v : 3 - v});
            }
            if (r.coin(0.3)) hist.requested.insert({c1, r.val()});
        }
        ObservationState s = hist;
        for (auto p : procs)
            if (r.coin(0.75)) s.nf_procs.insert(p);
        for (int k = 0; k < 3; ++k)
            if (r.coin(0.3)) s.primaries.insert(procs[k]);
        for (int k = 0; k < 3; ++k)
            if (r.coin(0.85)) s.roster.insert(procs[k]);
        t.states.push_back(std::move(s));
    }
    return t;
}

Trace unroll(const Trace& t, Tick n) {
    Trace out;
    out.config = t.config;
    const Tick len = static_cast<Tick>(t.states.size());
    for (Tick i = 0; i < n; ++i) {
        Tick k = i;
        if (k >= len) {
            if (!t.loop_start) break;
            const Tick l = *t.loop_start;
            k = l + (i - l) % (len - l);
        }
        out.states.push_back(t.states[static_cast<std::size_t>(k)]);
    }
    return out;
}

namespace {

struct Scope {
    std::vector<std::string> procs, clients, quorums, values, rounds, slots, times;
    std::vector<std::array<std::string, 3>> msgs;  // from, message, to
};

class ExprGen {
public:
    explicit ExprGen(std::mt19937_64& g) : r_{g} {}

    ExprPtr expr(const Scope& sc, int depth) {
        if (depth <= 0 || r_.coin(0.1)) return atom(sc);
        switch (r_.pick(11)) {
        case 0: return not_(expr(sc, depth - 1));
        case 1: return and_(expr(sc, depth - 1), expr(sc, depth - 1));
        case 2: return or_(expr(sc, depth - 1), expr(sc, depth - 1));
        case 3: return implies(expr(sc, depth - 1), expr(sc, depth - 1));
        case 4:
        case 5: return quant(sc, depth);
        case 6: return alw(expr(sc, depth - 1));
        case 7: return evt(expr(sc, depth - 1));
        case 8: return during(expr(sc, depth - 1), interval(sc));
        case 9:
            return r_.coin(0.5) ? lasts(expr(sc, depth - 1), static_cast<std::int64_t>(r_.pick(3)))
                                : after(expr(sc, depth - 1), static_cast<std::int64_t>(r_.pick(3)));
        default: return at(expr(sc, depth - 1), time(sc));
        }
    }

private:
    std::string fresh(char k) { return std::string(1, k) + std::to_string(counter_++); }

    template <class V>
    const auto& any(const V& v) { return v[r_.pick(v.size())]; }

    Term value(const Scope& sc) {
        return !sc.values.empty() && r_.coin(0.7) ? Term::var(any(sc.values)) : Term::lit(r_.val());
    }
    Term round(const Scope& sc) {
        return !sc.rounds.empty() && r_.coin(0.7) ? Term::var(any(sc.rounds)) : Term::lit(r_.val());
    }
    Term slot(const Scope& sc) {
        return !sc.slots.empty() && r_.coin(0.7) ? Term::var(any(sc.slots)) : Term::lit(r_.val());
    }

    TimeTerm time(const Scope& sc) {
        const auto off = static_cast<std::int64_t>(r_.pick(3));
        switch (r_.pick(3)) {
        case 0: return TimeTerm::now(off);
        case 1:
            if (!sc.times.empty()) return TimeTerm::of(any(sc.times), off);
            return TimeTerm::now(off);
        default: return TimeTerm::abs(off);
        }
    }

    Interval interval(const Scope& sc) {
        const auto k = static_cast<std::int64_t>(r_.pick(3));
        switch (r_.pick(4)) {
        case 0: return Interval::closed(TimeTerm::now(), TimeTerm::now(k));
        case 1: return Interval::from(TimeTerm::now(k));
        case 2: return Interval::after(TimeTerm::now(k));
        default: {
            const auto lo = time(sc);
            return Interval::closed(lo, lo.plus(k));
        }
        }
    }

    ExprPtr atom(const Scope& sc) {
        std::vector<int> options{0, 1, 2};
        if (!sc.procs.empty()) options.insert(options.end(), {4, 5, 6, 7, 8});
        if (!sc.clients.empty()) options.insert(options.end(), {9, 10, 11});
        if (!sc.msgs.empty()) options.insert(options.end(), {12, 13});
        if (!sc.quorums.empty()) options.push_back(14);
        switch (any(options)) {
        case 0: return r_.coin(0.5) ? truth() : falsity();
        case 1: return nf_set(SetTerm{r_.coin(0.5) ? SetTerm::Kind::Servers : SetTerm::Kind::Clients, {}});
        case 2: return roster_eq(time(sc), time(sc));
        case 4: return r_.coin(0.5) ? nf(any(sc.procs)) : is_primary(any(sc.procs));
        case 5:
            return r_.coin(0.5) ? voted(any(sc.procs), round(sc), value(sc))
                                : voted(any(sc.procs), round(sc), slot(sc), value(sc));
        case 6: return r_.coin(0.5) ? learned(any(sc.procs), value(sc)) : learned(any(sc.procs), slot(sc), value(sc));
        case 7: return r_.coin(0.5) ? executed(any(sc.procs), value(sc)) : executed(any(sc.procs), slot(sc), value(sc));
        case 8: return nf(any(sc.procs));
        case 9: return resp(any(sc.clients), value(sc));
        case 10: return resp_result(any(sc.clients), value(sc));
        case 11: return request(any(sc.clients), value(sc));
        case 12: {
            const auto& m = any(sc.msgs);
            return sent(m[0], m[1], m[2]);
        }
        case 13: {
            const auto& m = any(sc.msgs);
            return received(m[2], m[1], m[0]);
        }
        default: return nf_set(any(sc.quorums));
        }
    }

    ExprPtr quant(const Scope& sc, int depth) {
        Scope in = sc;
        const Quantifier q = r_.coin(0.5) ? Quantifier::Each : Quantifier::Some;
        auto one = [&](Domain d, std::vector<std::string>* into, char k) {
            const auto v = fresh(k);
            into->push_back(v);
            return build::quant(q, {v}, std::move(d), expr(in, depth - 1));
        };
        switch (r_.pick(10)) {
        case 0: {
            Domain d = servers();
            if (r_.coin(0.3)) d.at = time(sc);
            return one(std::move(d), &in.procs, 'p');
        }
        case 1: return one(clients(), &in.clients, 'c');
        case 2: return one(quorums(), &in.quorums, 'q');
        case 3: return one(values(), &in.values, 'v');
        case 4: return one(rounds(), &in.rounds, 'r');
        case 5: return one(range(Term::lit(1), Term::lit(2)), &in.slots, 's');
        case 6: return one(build::time(interval(sc)), &in.times, 't');
        case 7:
            if (!sc.quorums.empty()) return one(members(any(sc.quorums)), &in.procs, 'p');
            return one(servers(), &in.procs, 'p');
        default: {
            const std::array<std::string, 3> m{fresh('a'), fresh('m'), fresh('b')};
            in.procs.push_back(m[0]);
            in.procs.push_back(m[2]);
            in.msgs.push_back(m);
            const bool s = r_.coin(0.5);
            Domain d = s ? sent_history() : received_history();
            const std::vector<std::string> vars = s ? std::vector<std::string>{m[0], m[1], m[2]}
                                                    : std::vector<std::string>{m[2], m[1], m[0]};
            return build::quant(q, vars, std::move(d), expr(in, depth - 1));
        }
        }
    }

    Rng r_;
    int counter_ = 0;
};

} // namespace

ExprPtr random_expr(std::mt19937_64& rng, int depth) { return ExprGen(rng).expr(Scope{}, depth); }

} // namespace oracle
