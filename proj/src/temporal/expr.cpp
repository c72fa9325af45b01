#include "livelab/temporal/expr.hpp"

#include <algorithm>

#include "livelab/errors.hpp"

namespace livelab::temporal {

namespace {

template <class T> struct Tag {};

bool eq(const NotE& a, const NotE& b) { return same(a.e, b.e); }
bool eq(const AndE& a, const AndE& b) { return same(a.l, b.l) && same(a.r, b.r); }
bool eq(const OrE& a, const OrE& b) { return same(a.l, b.l) && same(a.r, b.r); }
bool eq(const ImpliesE& a, const ImpliesE& b) { return same(a.l, b.l) && same(a.r, b.r); }
bool eq(const QuantE& a, const QuantE& b) {
    return a.q == b.q && a.vars == b.vars && a.dom == b.dom && same(a.body, b.body);
}
bool eq(const AlwE& a, const AlwE& b) { return same(a.e, b.e); }
bool eq(const EvtE& a, const EvtE& b) { return same(a.e, b.e); }
bool eq(const DuringE& a, const DuringE& b) { return a.iv == b.iv && same(a.e, b.e); }
bool eq(const LastsE& a, const LastsE& b) { return a.d == b.d && same(a.e, b.e); }
bool eq(const AfterE& a, const AfterE& b) { return a.d == b.d && same(a.e, b.e); }
bool eq(const AtE& a, const AtE& b) { return a.t == b.t && same(a.e, b.e); }
bool eq(const NfSetE& a, const NfSetE& b) { return a.set == b.set; }
bool eq(const Atom& a, const Atom& b) { return a == b; }

void names_of(const TimeTerm& t, std::set<std::string>& out) {
    if (t.base == TimeTerm::Base::Var) out.insert(t.var);
}
void names_of(const Term& t, std::set<std::string>& out) {
    if (t.kind == Term::Kind::Var && !t.name.empty()) out.insert(t.name);
}
void names_of(const Interval& iv, std::set<std::string>& out) {
    names_of(iv.lo, out);
    if (iv.hi) names_of(*iv.hi, out);
}
void names_of(const Domain& d, std::set<std::string>& out) {
    names_of(d.lo, out);
    names_of(d.hi, out);
    names_of(d.interval, out);
    if (!d.set_var.empty()) out.insert(d.set_var);
    if (d.at) names_of(*d.at, out);
}

void collect(const Expr& e, std::set<std::string>& out) {
    std::visit(
        [&](const auto& n) {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, Atom>) {
                for (const auto& a : n.args) names_of(a, out);
                for (const auto& t : n.times) names_of(t, out);
            } else if constexpr (std::is_same_v<N, AndE> || std::is_same_v<N, OrE> || std::is_same_v<N, ImpliesE>) {
                collect(*n.l, out);
                collect(*n.r, out);
            } else if constexpr (std::is_same_v<N, QuantE>) {
                out.insert(n.vars.begin(), n.vars.end());
                names_of(n.dom, out);
                collect(*n.body, out);
            } else if constexpr (std::is_same_v<N, DuringE>) {
                names_of(n.iv, out);
                collect(*n.e, out);
            } else if constexpr (std::is_same_v<N, AtE>) {
                names_of(n.t, out);
                collect(*n.e, out);
            } else if constexpr (std::is_same_v<N, NfSetE>) {
                if (n.set.kind == SetTerm::Kind::Var) out.insert(n.set.name);
            } else {
                collect(*n.e, out);
            }
        },
        e.node);
}

struct Scope {
    std::vector<std::string> names;
    bool has(const std::string& n) const { return std::find(names.begin(), names.end(), n) != names.end(); }
    void need(const std::string& n) const {
        if (!has(n)) throw UnboundVariable(n);
    }
    void need(const Term& t) const {
        if (t.kind == Term::Kind::Var) need(t.name);
    }
    void need(const TimeTerm& t) const {
        if (t.base == TimeTerm::Base::Var) need(t.var);
    }
    void need(const Interval& iv) const {
        need(iv.lo);
        if (iv.hi) need(*iv.hi);
    }
};

void scoped(const Expr& e, Scope& s) {
    std::visit(
        [&](const auto& n) {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, Atom>) {
                for (const auto& a : n.args) s.need(a);
                for (const auto& t : n.times) s.need(t);
            } else if constexpr (std::is_same_v<N, AndE> || std::is_same_v<N, OrE> || std::is_same_v<N, ImpliesE>) {
                scoped(*n.l, s);
                scoped(*n.r, s);
            } else if constexpr (std::is_same_v<N, QuantE>) {
                const auto& d = n.dom;
                if (d.kind == Domain::Kind::Range) {
                    s.need(d.lo);
                    s.need(d.hi);
                }
                if (d.kind == Domain::Kind::Time) s.need(d.interval);
                if (d.kind == Domain::Kind::Members) s.need(d.set_var);
                if (d.at) s.need(*d.at);
                const auto mark = s.names.size();
                s.names.insert(s.names.end(), n.vars.begin(), n.vars.end());
                scoped(*n.body, s);
                s.names.resize(mark);
            } else if constexpr (std::is_same_v<N, DuringE>) {
                s.need(n.iv);
                scoped(*n.e, s);
            } else if constexpr (std::is_same_v<N, AtE>) {
                s.need(n.t);
                scoped(*n.e, s);
            } else if constexpr (std::is_same_v<N, NfSetE>) {
                if (n.set.kind == SetTerm::Kind::Var) s.need(n.set.name);
            } else {
                scoped(*n.e, s);
            }
        },
        e.node);
}

ExprPtr mk(auto node) { return std::make_shared<const Expr>(Expr{std::move(node)}); }

} // namespace

bool operator==(const Expr& a, const Expr& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        [&](const auto& x) {
            using N = std::decay_t<decltype(x)>;
            return eq(x, std::get<N>(b.node));
        },
        a.node);
}

bool same(const ExprPtr& a, const ExprPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

std::set<std::string> all_names(const Expr& e) {
    std::set<std::string> out;
    collect(e, out);
    return out;
}

void check_scoped(const Expr& e) {
    Scope s;
    scoped(e, s);
}

std::size_t size(const Expr& e) {
    return std::visit(
        [](const auto& n) -> std::size_t {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, Atom> || std::is_same_v<N, NfSetE>) return 1;
            else if constexpr (std::is_same_v<N, AndE> || std::is_same_v<N, OrE> || std::is_same_v<N, ImpliesE>)
                return 1 + size(*n.l) + size(*n.r);
            else if constexpr (std::is_same_v<N, QuantE>) return 1 + size(*n.body);
            else return 1 + size(*n.e);
        },
        e.node);
}

namespace build {

ExprPtr truth() { return atom(Pred::True, {}); }
ExprPtr falsity() { return atom(Pred::False, {}); }
ExprPtr atom(Pred p, std::vector<Term> args, std::vector<TimeTerm> times) {
    return mk(Atom{p, std::move(args), std::move(times)});
}
ExprPtr nf(const std::string& p) { return atom(Pred::Nf, {Term::var(p)}); }
ExprPtr is_primary(const std::string& p) { return atom(Pred::IsPrimary, {Term::var(p)}); }
ExprPtr sent(const std::string& from, const std::string& m, const std::string& to) {
    return atom(Pred::Sent, {Term::var(from), Term::var(m), Term::var(to)});
}
ExprPtr received(const std::string& to, const std::string& m, const std::string& from) {
    return atom(Pred::Received, {Term::var(to), Term::var(m), Term::var(from)});
}
ExprPtr voted(const std::string& p, Term r, Term v) { return atom(Pred::Voted, {Term::var(p), r, v}); }
ExprPtr voted(const std::string& p, Term r, Term s, Term v) { return atom(Pred::Voted, {Term::var(p), r, s, v}); }
ExprPtr learned(const std::string& p, Term v) { return atom(Pred::Learned, {Term::var(p), v}); }
ExprPtr learned(const std::string& p, Term s, Term v) { return atom(Pred::Learned, {Term::var(p), s, v}); }
ExprPtr executed(const std::string& p, Term v) { return atom(Pred::Executed, {Term::var(p), v}); }
ExprPtr executed(const std::string& p, Term s, Term v) { return atom(Pred::Executed, {Term::var(p), s, v}); }
ExprPtr resp(const std::string& c, Term v) { return atom(Pred::Resp, {Term::var(c), v}); }
ExprPtr resp_result(const std::string& c, Term v) { return atom(Pred::RespResult, {Term::var(c), v}); }
ExprPtr request(const std::string& c, Term v) { return atom(Pred::Request, {Term::var(c), v}); }
ExprPtr roster_eq(TimeTerm a, TimeTerm b) { return atom(Pred::RosterEq, {}, {std::move(a), std::move(b)}); }

ExprPtr not_(ExprPtr e) { return mk(NotE{std::move(e)}); }
ExprPtr and_(ExprPtr l, ExprPtr r) { return mk(AndE{std::move(l), std::move(r)}); }
ExprPtr and_(std::initializer_list<ExprPtr> es) {
    ExprPtr acc;
    for (const auto& e : es) acc = acc ? and_(acc, e) : e;
    return acc;
}
ExprPtr or_(ExprPtr l, ExprPtr r) { return mk(OrE{std::move(l), std::move(r)}); }
ExprPtr implies(ExprPtr l, ExprPtr r) { return mk(ImpliesE{std::move(l), std::move(r)}); }
ExprPtr quant(Quantifier q, std::vector<std::string> vars, Domain d, ExprPtr body) {
    return mk(QuantE{q, std::move(vars), std::move(d), std::move(body)});
}
ExprPtr each(const std::string& v, Domain d, ExprPtr body) { return quant(Quantifier::Each, {v}, std::move(d), std::move(body)); }
ExprPtr some(const std::string& v, Domain d, ExprPtr body) { return quant(Quantifier::Some, {v}, std::move(d), std::move(body)); }
ExprPtr each_sent(const std::string& from, const std::string& m, const std::string& to, ExprPtr body) {
    return quant(Quantifier::Each, {from, m, to}, sent_history(), std::move(body));
}
ExprPtr some_sent(const std::string& from, const std::string& m, const std::string& to, ExprPtr body) {
    return quant(Quantifier::Some, {from, m, to}, sent_history(), std::move(body));
}
ExprPtr alw(ExprPtr e) { return mk(AlwE{std::move(e)}); }
ExprPtr evt(ExprPtr e) { return mk(EvtE{std::move(e)}); }
ExprPtr during(ExprPtr e, Interval iv) { return mk(DuringE{std::move(e), std::move(iv)}); }
ExprPtr lasts(ExprPtr e, std::int64_t d) { return mk(LastsE{std::move(e), d}); }
ExprPtr after(ExprPtr e, std::int64_t d) { return mk(AfterE{std::move(e), d}); }
ExprPtr at(ExprPtr e, TimeTerm t) { return mk(AtE{std::move(e), std::move(t)}); }
ExprPtr nf_set(SetTerm s) { return mk(NfSetE{std::move(s)}); }
ExprPtr nf_set(const std::string& var) { return nf_set(SetTerm{SetTerm::Kind::Var, var}); }

Domain servers() { return Domain{Domain::Kind::Servers}; }
Domain clients() { return Domain{Domain::Kind::Clients}; }
Domain quorums() { return Domain{Domain::Kind::Quorums}; }
Domain values() { return Domain{Domain::Kind::Values}; }
Domain rounds() { return Domain{Domain::Kind::Rounds}; }
Domain range(Term lo, Term hi) {
    Domain d{Domain::Kind::Range};
    d.lo = std::move(lo);
    d.hi = std::move(hi);
    return d;
}
Domain time(Interval iv) {
    Domain d{Domain::Kind::Time};
    d.interval = std::move(iv);
    return d;
}
Domain members(const std::string& set_var) {
    Domain d{Domain::Kind::Members};
    d.set_var = set_var;
    return d;
}
Domain sent_history() { return Domain{Domain::Kind::Sent}; }
Domain received_history() { return Domain{Domain::Kind::Received}; }

} // namespace build

} // namespace livelab::temporal
