#include "livelab/temporal/rewrite.hpp"

namespace livelab::temporal {

namespace {

using namespace build;

class Fresh {
public:
    explicit Fresh(const Expr& e) : used_(all_names(e)) {}
    std::string operator()(const std::string& stem) {
        std::string n = stem;
        for (int k = 2; used_.count(n); ++k) n = stem + std::to_string(k);
        used_.insert(n);
        return n;
    }

private:
    std::set<std::string> used_;
};

TimeTerm subst(const TimeTerm& s, const TimeTerm& tau) {
    return s.base == TimeTerm::Base::Now ? tau.plus(s.offset) : s;
}

Interval subst(const Interval& iv, const TimeTerm& tau) {
    Interval out = iv;
    out.lo = subst(iv.lo, tau);
    if (iv.hi) out.hi = subst(*iv.hi, tau);
    return out;
}


class Normalizer {
public:
    explicit Normalizer(const Expr& e) : fresh_(e) {}

    ExprPtr run(const ExprPtr& e, const TimeTerm& tau) {
        return std::visit([&](const auto& n) { return node(n, e, tau); }, e->node);
    }

private:
    Fresh fresh_;
    // Tick at which the enclosing evaluation sits: 0 at the root, k under an absolute `at k`.
    std::int64_t anchor_ = 0;

    bool here(const TimeTerm& t) const { return t == TimeTerm::abs(anchor_); }

    // Constant stamps are written relative to the anchor; only user-written absolute ticks can fall off a finite trace.
    ExprPtr stamp(ExprPtr a, const TimeTerm& tau) {
        if (here(tau)) return a;
        if (tau.base == TimeTerm::Base::Abs) return at(std::move(a), TimeTerm::now(tau.offset - anchor_));
        return at(std::move(a), tau);
    }

    std::optional<TimeTerm> domain_time(const std::optional<TimeTerm>& at_, const TimeTerm& tau) {
        TimeTerm t = at_ ? subst(*at_, tau) : tau;
        if (here(t)) return std::nullopt;
        return t;
    }

    ExprPtr time_quant(Quantifier q, Interval iv, const ExprPtr& body) {
        auto t = fresh_("t");
        return quant(q, {t}, time(std::move(iv)), run(body, TimeTerm::of(t)));
    }

    ExprPtr node(const Atom& a, const ExprPtr& self, const TimeTerm& tau) {
        if (a.pred == Pred::True || a.pred == Pred::False) return self;
        if (a.pred == Pred::RosterEq) return roster_eq(subst(a.times[0], tau), subst(a.times[1], tau));
        return stamp(self, tau);
    }
    ExprPtr node(const NotE& n, const ExprPtr&, const TimeTerm& tau) { return not_(run(n.e, tau)); }
    ExprPtr node(const AndE& n, const ExprPtr&, const TimeTerm& tau) { return and_(run(n.l, tau), run(n.r, tau)); }
    ExprPtr node(const OrE& n, const ExprPtr&, const TimeTerm& tau) { return or_(run(n.l, tau), run(n.r, tau)); }
    ExprPtr node(const ImpliesE& n, const ExprPtr&, const TimeTerm& tau) {
        return implies(run(n.l, tau), run(n.r, tau));
    }
    ExprPtr node(const QuantE& n, const ExprPtr&, const TimeTerm& tau) {
        Domain d = n.dom;
        switch (d.kind) {
        case Domain::Kind::Servers: d.at = domain_time(d.at, tau); break;
        case Domain::Kind::Time: d.interval = subst(d.interval, tau); break;
        case Domain::Kind::Sent:
        case Domain::Kind::Received:
            if (!d.at) {
                auto t = fresh_("t");
                d.at = TimeTerm::of(t);
                return quant(n.q, {t}, time(Interval::from(tau)), quant(n.q, n.vars, d, run(n.body, *d.at)));
            }
            d.at = subst(*d.at, tau);
            break;
        default: break;
        }
        return quant(n.q, n.vars, d, run(n.body, tau));
    }
    ExprPtr node(const AlwE& n, const ExprPtr&, const TimeTerm& tau) {
        return time_quant(Quantifier::Each, Interval::from(tau), n.e);
    }
    ExprPtr node(const EvtE& n, const ExprPtr&, const TimeTerm& tau) {
        return time_quant(Quantifier::Some, Interval::from(tau), n.e);
    }
    ExprPtr node(const DuringE& n, const ExprPtr&, const TimeTerm& tau) {
        return time_quant(Quantifier::Each, subst(n.iv, tau), n.e);
    }
    ExprPtr node(const LastsE& n, const ExprPtr&, const TimeTerm& tau) {
        return time_quant(Quantifier::Each, Interval::closed(tau, tau.plus(n.d)), n.e);
    }
    ExprPtr node(const AfterE& n, const ExprPtr&, const TimeTerm& tau) {
        return time_quant(Quantifier::Each, Interval::after(tau.plus(n.d)), n.e);
    }
    ExprPtr node(const AtE& n, const ExprPtr&, const TimeTerm& tau) {
        if (n.t.base != TimeTerm::Base::Abs) return run(n.e, subst(n.t, tau));
        // Ticks up to the anchor are already known to exist.
        if (n.t.offset <= anchor_) return run(n.e, n.t);
        const auto saved = anchor_;
        anchor_ = n.t.offset;
        auto body = run(n.e, n.t);
        anchor_ = saved;
        return at(std::move(body), n.t);
    }
    ExprPtr node(const NfSetE& n, const ExprPtr&, const TimeTerm& tau) {
        auto p = fresh_("p");
        Domain d;
        switch (n.set.kind) {
        case SetTerm::Kind::Var: d = members(n.set.name); break;
        case SetTerm::Kind::Servers: d = servers(); d.at = domain_time(std::nullopt, tau); break;
        case SetTerm::Kind::Clients: d = clients(); break;
        }
        return each(p, d, stamp(nf(p), tau));
    }
};

class Desugarer {
public:
    explicit Desugarer(const Expr& e) : fresh_(e) {}

    ExprPtr run(const ExprPtr& e) {
        return std::visit([&](const auto& n) { return node(n, e); }, e->node);
    }

private:
    Fresh fresh_;

    ExprPtr over(const Interval& iv, const ExprPtr& body) {
        auto t = fresh_("t");
        return each(t, time(iv), at(run(body), TimeTerm::of(t)));
    }

    ExprPtr node(const Atom&, const ExprPtr& self) { return self; }
    ExprPtr node(const NotE& n, const ExprPtr&) { return not_(run(n.e)); }
    ExprPtr node(const AndE& n, const ExprPtr&) { return and_(run(n.l), run(n.r)); }
    ExprPtr node(const OrE& n, const ExprPtr&) { return or_(run(n.l), run(n.r)); }
    ExprPtr node(const ImpliesE& n, const ExprPtr&) { return implies(run(n.l), run(n.r)); }
    ExprPtr node(const QuantE& n, const ExprPtr&) { return quant(n.q, n.vars, n.dom, run(n.body)); }
    ExprPtr node(const AlwE& n, const ExprPtr&) { return alw(run(n.e)); }
    ExprPtr node(const EvtE& n, const ExprPtr&) { return evt(run(n.e)); }
    ExprPtr node(const DuringE& n, const ExprPtr&) { return over(n.iv, n.e); }
    ExprPtr node(const LastsE& n, const ExprPtr&) {
        return over(Interval::closed(TimeTerm::now(), TimeTerm::now(n.d)), n.e);
    }
    ExprPtr node(const AfterE& n, const ExprPtr&) { return over(Interval::after(TimeTerm::now(n.d)), n.e); }
    ExprPtr node(const AtE& n, const ExprPtr&) { return at(run(n.e), n.t); }
    ExprPtr node(const NfSetE& n, const ExprPtr&) {
        auto p = fresh_("p");
        switch (n.set.kind) {
        case SetTerm::Kind::Var: return each(p, members(n.set.name), nf(p));
        case SetTerm::Kind::Servers: return each(p, servers(), nf(p));
        case SetTerm::Kind::Clients: return each(p, clients(), nf(p));
        }
        return nullptr;
    }
};

} // namespace

ExprPtr normalize_at(const ExprPtr& e) {
    Normalizer n(*e);
    return n.run(e, TimeTerm::abs(0));
}

ExprPtr desugar(const ExprPtr& e) {
    Desugarer d(*e);
    return d.run(e);
}

} // namespace livelab::temporal
