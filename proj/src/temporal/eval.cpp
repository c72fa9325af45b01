#include "livelab/temporal/eval.hpp"

#include <algorithm>
#include <limits>
#include <string_view>
#include <unordered_map>

#include "livelab/errors.hpp"

namespace livelab::temporal {

std::string Verdict::str() const {
    switch (kind) {
    case Kind::Holds: return "Holds";
    case Kind::Violated: return "Violated";
    case Kind::Undetermined: return "Undetermined(" + std::to_string(bound) + ")";
    }
    return "?";
}

namespace {

struct Value {
    enum class K : std::uint8_t { Proc, Int, Quorum, Msg, Time };
    K k;
    std::int64_t i = 0;
    const Message* m = nullptr;
};

std::int64_t abs64(std::int64_t x) { return x < 0 ? -x : x; }

std::int64_t span_of(const TimeTerm& t) { return t.base == TimeTerm::Base::Abs ? 0 : abs64(t.offset); }
std::int64_t span_of(const Interval& iv) { return span_of(iv.lo) + (iv.hi ? span_of(*iv.hi) : 0) + 1; }

class Evaluator {
public:
    explicit Evaluator(const Trace& t) : tr_(t), cfg_(t.config) {}

    Bool3 ev(const Expr& e, Tick now) {
        return std::visit([&](const auto& n) { return node(n, now); }, e.node);
    }

private:
    const Trace& tr_;
    const SystemConfig& cfg_;
    std::vector<std::pair<std::string_view, Value>> env_;
    std::unordered_map<const Expr*, std::int64_t> spans_;

    const Value& lookup(const std::string& name) const {
        for (auto it = env_.rbegin(); it != env_.rend(); ++it)
            if (it->first == name) return it->second;
        throw UnboundVariable(name);
    }

    ProcessId proc(const Term& t) const {
        if (t.kind != Term::Kind::Var) throw TypeMismatch("a literal is not a process");
        const auto& v = lookup(t.name);
        if (v.k != Value::K::Proc) throw TypeMismatch("'" + t.name + "' is not a process");
        return pid(static_cast<std::uint16_t>(v.i));
    }

    std::int64_t integer(const Term& t) const {
        if (t.kind == Term::Kind::Int) return t.value;
        const auto& v = lookup(t.name);
        if (v.k != Value::K::Int) throw TypeMismatch("'" + t.name + "' is not an integer");
        return v.i;
    }

    const Message& message(const Term& t) const {
        if (t.kind != Term::Kind::Var) throw TypeMismatch("a literal is not a message");
        const auto& v = lookup(t.name);
        if (v.k != Value::K::Msg) throw TypeMismatch("'" + t.name + "' is not a message");
        return *v.m;
    }

    Tick time(const TimeTerm& t, Tick now) const {
        switch (t.base) {
        case TimeTerm::Base::Now: return now + t.offset;
        case TimeTerm::Base::Abs: return t.offset;
        case TimeTerm::Base::Var: {
            const auto& v = lookup(t.var);
            if (v.k != Value::K::Time) throw TypeMismatch("'" + t.var + "' is not a time");
            return v.i + t.offset;
        }
        }
        return now;
    }

    std::int64_t span(const Expr& e) {
        auto it = spans_.find(&e);
        if (it != spans_.end()) return it->second;
        std::int64_t s = std::visit(
            [&](const auto& n) -> std::int64_t {
                using N = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<N, Atom>) {
                    std::int64_t a = 0;
                    for (const auto& t : n.times) a += span_of(t);
                    return a;
                } else if constexpr (std::is_same_v<N, NfSetE>) {
                    return 0;
                } else if constexpr (std::is_same_v<N, AndE> || std::is_same_v<N, OrE> || std::is_same_v<N, ImpliesE>) {
                    return span(*n.l) + span(*n.r);
                } else if constexpr (std::is_same_v<N, QuantE>) {
                    std::int64_t a = span(*n.body);
                    if (n.dom.kind == Domain::Kind::Time) a += span_of(n.dom.interval);
                    if (n.dom.at) a += span_of(*n.dom.at);
                    return a;
                } else if constexpr (std::is_same_v<N, DuringE>) {
                    return span(*n.e) + span_of(n.iv);
                } else if constexpr (std::is_same_v<N, LastsE> || std::is_same_v<N, AfterE>) {
                    return span(*n.e) + abs64(n.d) + 1;
                } else if constexpr (std::is_same_v<N, AtE>) {
                    return span(*n.e) + span_of(n.t);
                } else {
                    return span(*n.e);
                }
            },
            e.node);
        spans_.emplace(&e, s);
        return s;
    }

    Tick max_env_time(Tick now) const {
        Tick m = now;
        for (const auto& [name, v] : env_)
            if (v.k == Value::K::Time) m = std::max(m, v.i);
        return m;
    }

    // Quantifies f over ticks [lo, hi] (hi absent: unbounded). Beyond the horizon every tick
    // repeats an earlier one with period tr_.period(), so one extra period settles the result.
    template <class F>
    Bool3 sweep(Quantifier q, Tick lo, std::optional<Tick> hi, std::int64_t body_span, Tick now, F&& f) {
        lo = std::max<Tick>(lo, 0);
        const Tick base = tr_.is_lasso() ? *tr_.loop_start : tr_.length();
        const Tick horizon = std::max(base, max_env_time(now)) + 2 * body_span;
        Tick last = std::max(lo, horizon) + tr_.period();
        if (hi) last = std::min(last, *hi);
        Bool3 acc = q == Quantifier::Each ? Bool3::True : Bool3::False;
        for (Tick t = lo; t <= last; ++t) {
            Bool3 v = f(t);
            if (q == Quantifier::Each) {
                acc = acc && v;
                if (acc == Bool3::False) break;
            } else {
                acc = acc || v;
                if (acc == Bool3::True) break;
            }
        }
        return acc;
    }

    Bool3 over_time(Quantifier q, const Interval& iv, const Expr& body, Tick now, bool body_at_t) {
        Tick lo = time(iv.lo, now) + (iv.lo_closed ? 0 : 1);
        std::optional<Tick> hi;
        if (iv.hi) hi = time(*iv.hi, now) - (iv.hi_closed ? 0 : 1);
        return sweep(q, lo, hi, span(body), now, [&](Tick t) { return ev(body, body_at_t ? t : now); });
    }

    template <class Range, class Bind>
    Bool3 combine(Quantifier q, const Range& items, Bind&& bind_and_eval) {
        Bool3 acc = q == Quantifier::Each ? Bool3::True : Bool3::False;
        for (const auto& it : items) {
            Bool3 v = bind_and_eval(it);
            if (q == Quantifier::Each) {
                acc = acc && v;
                if (acc == Bool3::False) break;
            } else {
                acc = acc || v;
                if (acc == Bool3::True) break;
            }
        }
        return acc;
    }

    Bool3 bound(const std::string& name, Value v, const Expr& body, Tick now) {
        env_.emplace_back(name, v);
        Bool3 r = ev(body, now);
        env_.pop_back();
        return r;
    }

    Bool3 procs(Quantifier q, const std::string& var, const std::vector<ProcessId>& ps, const Expr& body, Tick now) {
        return combine(q, ps, [&](ProcessId p) { return bound(var, {Value::K::Proc, raw(p)}, body, now); });
    }

    Bool3 history(const QuantE& n, Tick now) {
        const bool sent = n.dom.kind == Domain::Kind::Sent;
        auto at_tick = [&](Tick t, Tick body_now) -> Bool3 {
            const auto* s = tr_.at(t);
            if (!s) return Bool3::Unknown;
            auto one = [&](ProcessId a, const Message& m, ProcessId b) {
                env_.emplace_back(n.vars[0], Value{Value::K::Proc, raw(a)});
                env_.emplace_back(n.vars[1], Value{Value::K::Msg, 0, &m});
                env_.emplace_back(n.vars[2], Value{Value::K::Proc, raw(b)});
                Bool3 r = ev(*n.body, body_now);
                env_.resize(env_.size() - 3);
                return r;
            };
            if (sent) return combine(n.q, s->sent, [&](const SentFact& f) { return one(f.from, f.msg, f.to); });
            return combine(n.q, s->received, [&](const ReceivedFact& f) { return one(f.to, f.msg, f.from); });
        };
        if (n.dom.at) {
            Tick t = time(*n.dom.at, now);
            return at_tick(t, now);
        }
        return sweep(n.q, now, std::nullopt, span(*n.body), now, [&](Tick t) { return at_tick(t, t); });
    }

    Bool3 node(const QuantE& n, Tick now) {
        const auto& d = n.dom;
        const std::string& var = n.vars.front();
        switch (d.kind) {
        case Domain::Kind::Servers: {
            const auto* s = tr_.at(d.at ? time(*d.at, now) : now);
            if (!s) return Bool3::Unknown;
            std::vector<ProcessId> ps(s->roster.begin(), s->roster.end());
            return procs(n.q, var, ps, *n.body, now);
        }
        case Domain::Kind::Clients: return procs(n.q, var, cfg_.clients(), *n.body, now);
        case Domain::Kind::Quorums: {
            std::vector<std::int64_t> idx(cfg_.quorums.size());
            for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = static_cast<std::int64_t>(k);
            return combine(n.q, idx, [&](std::int64_t k) { return bound(var, {Value::K::Quorum, k}, *n.body, now); });
        }
        case Domain::Kind::Values:
        case Domain::Kind::Rounds: {
            const auto& xs = d.kind == Domain::Kind::Values ? cfg_.values : cfg_.rounds;
            return combine(n.q, xs, [&](std::int64_t v) { return bound(var, {Value::K::Int, v}, *n.body, now); });
        }
        case Domain::Kind::Range: {
            std::vector<std::int64_t> xs;
            for (auto v = integer(d.lo), hi = integer(d.hi); v <= hi; ++v) xs.push_back(v);
            return combine(n.q, xs, [&](std::int64_t v) { return bound(var, {Value::K::Int, v}, *n.body, now); });
        }
        case Domain::Kind::Members: {
            const auto& v = lookup(d.set_var);
            if (v.k != Value::K::Quorum) throw TypeMismatch("'" + d.set_var + "' is not a quorum");
            return procs(n.q, var, cfg_.quorums.at(static_cast<std::size_t>(v.i)), *n.body, now);
        }
        case Domain::Kind::Time: {
            Tick lo = time(d.interval.lo, now) + (d.interval.lo_closed ? 0 : 1);
            std::optional<Tick> hi;
            if (d.interval.hi) hi = time(*d.interval.hi, now) - (d.interval.hi_closed ? 0 : 1);
            return sweep(n.q, lo, hi, span(*n.body), now,
                         [&](Tick t) { return bound(var, {Value::K::Time, t}, *n.body, now); });
        }
        case Domain::Kind::Sent:
        case Domain::Kind::Received: return history(n, now);
        }
        throw DomainUnknown("?");
    }

    Bool3 node(const Atom& a, Tick now) {
        if (a.pred == Pred::True) return Bool3::True;
        if (a.pred == Pred::False) return Bool3::False;
        if (a.pred == Pred::RosterEq) {
            const auto* x = tr_.at(time(a.times.at(0), now));
            const auto* y = tr_.at(time(a.times.at(1), now));
            if (!x || !y) return Bool3::Unknown;
            return lift(x->roster == y->roster);
        }
        const auto* s = tr_.at(now);
        if (!s) return Bool3::Unknown;
        const auto& g = a.args;
        switch (a.pred) {
        case Pred::Nf: return lift(s->nf_procs.count(proc(g[0])) > 0);
        case Pred::IsPrimary: return lift(s->primaries.count(proc(g[0])) > 0);
        case Pred::Sent: return lift(s->sent.count(SentFact{proc(g[0]), message(g[1]), proc(g[2])}) > 0);
        case Pred::Received: return lift(s->received.count(ReceivedFact{proc(g[0]), message(g[1]), proc(g[2])}) > 0);
        case Pred::Voted: {
            const bool single = g.size() == 3;
            VoteFact f{proc(g[0]), integer(g[1]), single ? 1 : integer(g[2]), integer(g[single ? 2 : 3])};
            return lift(s->voted.count(f) > 0);
        }
        case Pred::Learned:
        case Pred::Executed: {
            const bool single = g.size() == 2;
            DecisionFact f{proc(g[0]), single ? 1 : integer(g[1]), integer(g[single ? 1 : 2])};
            const auto& set = a.pred == Pred::Learned ? s->learned : s->executed;
            return lift(set.count(f) > 0);
        }
        case Pred::Resp: {
            const ProcessId c = proc(g[0]);
            const std::int64_t v = integer(g[1]);
            auto it = s->responded.lower_bound(ResponseFact{c, v, std::numeric_limits<std::int64_t>::min()});
            return lift(it != s->responded.end() && it->client == c && it->value == v);
        }
        case Pred::RespResult: {
            const std::int64_t v = integer(g[1]);
            return lift(s->responded.count(ResponseFact{proc(g[0]), v, cfg_.result_of(v)}) > 0);
        }
        case Pred::Request: return lift(s->requested.count(RequestFact{proc(g[0]), integer(g[1])}) > 0);
        default: break;
        }
        throw Error("unhandled predicate");
    }

    Bool3 node(const NotE& n, Tick now) { return !ev(*n.e, now); }
    Bool3 node(const AndE& n, Tick now) {
        Bool3 l = ev(*n.l, now);
        if (l == Bool3::False) return l;
        return l && ev(*n.r, now);
    }
    Bool3 node(const OrE& n, Tick now) {
        Bool3 l = ev(*n.l, now);
        if (l == Bool3::True) return l;
        return l || ev(*n.r, now);
    }
    Bool3 node(const ImpliesE& n, Tick now) {
        Bool3 l = ev(*n.l, now);
        if (l == Bool3::False) return Bool3::True;
        return !l || ev(*n.r, now);
    }
    Bool3 node(const AlwE& n, Tick now) {
        return over_time(Quantifier::Each, Interval::from(TimeTerm::now()), *n.e, now, true);
    }
    Bool3 node(const EvtE& n, Tick now) {
        return over_time(Quantifier::Some, Interval::from(TimeTerm::now()), *n.e, now, true);
    }
    Bool3 node(const DuringE& n, Tick now) { return over_time(Quantifier::Each, n.iv, *n.e, now, true); }
    Bool3 node(const LastsE& n, Tick now) {
        return over_time(Quantifier::Each, Interval::closed(TimeTerm::now(), TimeTerm::now(n.d)), *n.e, now, true);
    }
    Bool3 node(const AfterE& n, Tick now) {
        return over_time(Quantifier::Each, Interval::after(TimeTerm::now(n.d)), *n.e, now, true);
    }
    Bool3 node(const AtE& n, Tick now) {
        const Tick t = time(n.t, now);
        if (t < 0 || (n.t.base == TimeTerm::Base::Abs && !tr_.is_lasso() && t >= tr_.length()))
            throw TimeOutOfRange(t);
        return ev(*n.e, t);
    }
    Bool3 node(const NfSetE& n, Tick now) {
        const auto* s = tr_.at(now);
        auto all_nf = [&](const std::vector<ProcessId>& ps) {
            if (!s) return Bool3::Unknown;
            return lift(std::all_of(ps.begin(), ps.end(), [&](ProcessId p) { return s->nf_procs.count(p) > 0; }));
        };
        switch (n.set.kind) {
        case SetTerm::Kind::Servers:
            if (!s) return Bool3::Unknown;
            return all_nf(std::vector<ProcessId>(s->roster.begin(), s->roster.end()));
        case SetTerm::Kind::Clients: return all_nf(cfg_.clients());
        case SetTerm::Kind::Var: {
            const auto& v = lookup(n.set.name);
            if (v.k != Value::K::Quorum) throw TypeMismatch("'" + n.set.name + "' is not a quorum");
            return all_nf(cfg_.quorums.at(static_cast<std::size_t>(v.i)));
        }
        }
        return Bool3::Unknown;
    }
};

} // namespace

Bool3 eval3(const Expr& e, const Trace& trace, Tick now) {
    if (trace.states.empty()) throw Error("cannot evaluate over an empty trace");
    if (now < 0 || (!trace.is_lasso() && now >= trace.length())) throw TimeOutOfRange(now);
    Evaluator ev(trace);
    return ev.ev(e, now);
}

Verdict eval(const Expr& e, const Trace& trace, Tick now) {
    switch (eval3(e, trace, now)) {
    case Bool3::True: return Verdict::holds();
    case Bool3::False: return Verdict::violated();
    default: return Verdict::undetermined(trace.length());
    }
}

} // namespace livelab::temporal
