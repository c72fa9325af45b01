#include "livelab/lang/printer.hpp"

namespace livelab::lang {

using namespace temporal;

namespace {

std::string num(std::int64_t v) { return std::to_string(v); }

std::string offset(std::int64_t off) {
    if (off == 0) return "";
    return off > 0 ? "+" + num(off) : "-" + num(-off);
}

std::string term(const Term& t) { return t.kind == Term::Kind::Var ? t.name : num(t.value); }

enum Prec { kQuant = 0, kImplies = 1, kOr = 2, kAnd = 3, kUnary = 4, kPostfix = 5, kPrimary = 6 };

struct Out {
    std::string text;
    int prec;
    bool open_tail;  // ends in a quantifier body that would swallow following text
};

std::string domain(const Domain& d, const std::vector<std::string>& vars) {
    auto stamp = [&](std::string s) { return d.at ? s + " at " + print(*d.at) : s; };
    switch (d.kind) {
    case Domain::Kind::Servers: return vars[0] + " in " + stamp("servers");
    case Domain::Kind::Clients: return vars[0] + " in clients";
    case Domain::Kind::Quorums: return vars[0] + " in quorums";
    case Domain::Kind::Values: return vars[0] + " in values";
    case Domain::Kind::Rounds: return vars[0] + " in rounds";
    case Domain::Kind::Range: return vars[0] + " in " + term(d.lo) + ".." + term(d.hi);
    case Domain::Kind::Time: return vars[0] + " in " + print(d.interval);
    case Domain::Kind::Members: return vars[0] + " in " + d.set_var;
    case Domain::Kind::Sent: return stamp(vars[0] + ".sent " + vars[1] + " to " + vars[2]);
    case Domain::Kind::Received: return stamp(vars[0] + ".received " + vars[1] + " from " + vars[2]);
    }
    return "?";
}

std::string args(const std::vector<Term>& g, std::size_t from) {
    std::string s = "(";
    for (std::size_t k = from; k < g.size(); ++k) {
        if (k > from) s += ",";
        s += term(g[k]);
    }
    return s + ")";
}

std::string atom(const Atom& a) {
    const auto& g = a.args;
    switch (a.pred) {
    case Pred::True: return "true";
    case Pred::False: return "false";
    case Pred::Nf: return term(g[0]) + ".nf";
    case Pred::IsPrimary: return term(g[0]) + ".is_primary";
    case Pred::Sent: return term(g[0]) + ".sent " + term(g[1]) + " to " + term(g[2]);
    case Pred::Received: return term(g[0]) + ".received " + term(g[1]) + " from " + term(g[2]);
    case Pred::Voted: return term(g[0]) + ".voted " + args(g, 1);
    case Pred::Learned: return term(g[0]) + ".learned " + args(g, 1);
    case Pred::Executed: return term(g[0]) + ".executed " + args(g, 1);
    case Pred::Resp: return term(g[0]) + ".received ('resp'," + term(g[1]) + ")";
    case Pred::RespResult: return term(g[0]) + ".received ('resp'," + term(g[1]) + ",res(" + term(g[1]) + "))";
    case Pred::Request: return term(g[0]) + ".sent ('req'," + term(g[1]) + ")";
    case Pred::RosterEq: return "servers at " + print(a.times[0]) + " = servers at " + print(a.times[1]);
    }
    return "?";
}

class Printer {
public:
    // `min` is the weakest precedence allowed unparenthesized here; `tail` says nothing follows.
    Out wrap(Out o, int min, bool tail) {
        const bool quant_ok = o.prec == kQuant && tail;
        if ((o.prec < min && !quant_ok) || (o.open_tail && !tail)) return {"(" + o.text + ")", kPrimary, false};
        return o;
    }
    Out sub(const Expr& e, int min, bool tail) { return wrap(go(e, tail), min, tail); }

    Out go(const Expr& e, bool tail) {
        return std::visit([&](const auto& n) { return node(n, tail); }, e.node);
    }

private:
    Out node(const Atom& a, bool) { return {atom(a), kPrimary, false}; }
    Out node(const NfSetE& n, bool) {
        switch (n.set.kind) {
        case SetTerm::Kind::Servers: return {"servers nf", kPrimary, false};
        case SetTerm::Kind::Clients: return {"clients nf", kPrimary, false};
        case SetTerm::Kind::Var: break;
        }
        return {n.set.name + " nf", kPrimary, false};
    }
    Out binary(const char* op, int prec, const Expr& l, int lmin, const Expr& r, int rmin, bool tail) {
        Out lo = sub(l, lmin, false);
        Out ro = sub(r, rmin, tail);
        return {lo.text + " " + op + " " + ro.text, prec, ro.open_tail};
    }
    Out node(const AndE& n, bool tail) { return binary("and", kAnd, *n.l, kAnd, *n.r, kUnary, tail); }
    Out node(const OrE& n, bool tail) { return binary("or", kOr, *n.l, kOr, *n.r, kAnd, tail); }
    Out node(const ImpliesE& n, bool tail) { return binary("implies", kImplies, *n.l, kOr, *n.r, kImplies, tail); }
    Out prefix(const char* op, const Expr& e, bool tail) {
        Out o = sub(e, kUnary, tail);
        return {std::string(op) + " " + o.text, kUnary, o.open_tail};
    }
    Out node(const NotE& n, bool tail) { return prefix("not", *n.e, tail); }
    Out node(const AlwE& n, bool tail) { return prefix("alw", *n.e, tail); }
    Out node(const EvtE& n, bool tail) { return prefix("evt", *n.e, tail); }
    Out node(const DuringE& n, bool) { return {sub(*n.e, kPostfix, false).text + " during " + print(n.iv), kPostfix, false}; }
    Out node(const LastsE& n, bool) { return {sub(*n.e, kPostfix, false).text + " lasts " + num(n.d), kPostfix, false}; }
    Out node(const AfterE& n, bool) { return {sub(*n.e, kPostfix, false).text + " after " + num(n.d), kPostfix, false}; }
    Out node(const AtE& n, bool) { return {sub(*n.e, kPostfix, false).text + " at " + print(n.t), kPostfix, false}; }
    Out node(const QuantE& n, bool) {
        std::string s = n.q == Quantifier::Each ? "each " : "some ";
        s += domain(n.dom, n.vars);
        const Expr* body = n.body.get();
        while (const auto* inner = std::get_if<QuantE>(&body->node)) {
            if (inner->q != n.q) break;
            s += ", " + domain(inner->dom, inner->vars);
            body = inner->body.get();
        }
        return {s + " has " + sub(*body, kQuant, true).text, kQuant, true};
    }
};

void dump_to(const Expr& e, std::string& s);

std::string dump_domain(const Domain& d) {
    switch (d.kind) {
    case Domain::Kind::Servers: return d.at ? "(servers " + print(*d.at) + ")" : "servers";
    case Domain::Kind::Clients: return "clients";
    case Domain::Kind::Quorums: return "quorums";
    case Domain::Kind::Values: return "values";
    case Domain::Kind::Rounds: return "rounds";
    case Domain::Kind::Range: return "(range " + term(d.lo) + " " + term(d.hi) + ")";
    case Domain::Kind::Time: return "(time " + print(d.interval) + ")";
    case Domain::Kind::Members: return "(members " + d.set_var + ")";
    case Domain::Kind::Sent: return d.at ? "(sent " + print(*d.at) + ")" : "sent";
    case Domain::Kind::Received: return d.at ? "(received " + print(*d.at) + ")" : "received";
    }
    return "?";
}

const char* pred_name(Pred p) {
    switch (p) {
    case Pred::True: return "True";
    case Pred::False: return "False";
    case Pred::Nf: return "Nf";
    case Pred::IsPrimary: return "IsPrimary";
    case Pred::Sent: return "Sent";
    case Pred::Received: return "Received";
    case Pred::Voted: return "Voted";
    case Pred::Learned: return "Learned";
    case Pred::Executed: return "Executed";
    case Pred::Resp: return "Resp";
    case Pred::RespResult: return "RespResult";
    case Pred::Request: return "Request";
    case Pred::RosterEq: return "RosterEq";
    }
    return "?";
}

void dump_to(const Expr& e, std::string& s) {
    std::visit(
        [&](const auto& n) {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, Atom>) {
                s += "(";
                s += pred_name(n.pred);
                for (const auto& a : n.args) s += " " + term(a);
                for (const auto& t : n.times) s += " " + print(t);
                s += ")";
            } else if constexpr (std::is_same_v<N, NfSetE>) {
                s += "(NfSet ";
                s += n.set.kind == SetTerm::Kind::Var ? n.set.name : n.set.kind == SetTerm::Kind::Servers ? "servers" : "clients";
                s += ")";
            } else if constexpr (std::is_same_v<N, AndE> || std::is_same_v<N, OrE> || std::is_same_v<N, ImpliesE>) {
                s += std::is_same_v<N, AndE> ? "(And " : std::is_same_v<N, OrE> ? "(Or " : "(Implies ";
                dump_to(*n.l, s);
                s += " ";
                dump_to(*n.r, s);
                s += ")";
            } else if constexpr (std::is_same_v<N, QuantE>) {
                s += n.q == Quantifier::Each ? "(Each (" : "(Some (";
                for (std::size_t k = 0; k < n.vars.size(); ++k) s += (k ? " " : "") + n.vars[k];
                s += ") " + dump_domain(n.dom) + " ";
                dump_to(*n.body, s);
                s += ")";
            } else {
                std::string head, tail;
                if constexpr (std::is_same_v<N, NotE>) head = "Not";
                if constexpr (std::is_same_v<N, AlwE>) head = "Alw";
                if constexpr (std::is_same_v<N, EvtE>) head = "Evt";
                if constexpr (std::is_same_v<N, DuringE>) head = "During", tail = " " + print(n.iv);
                if constexpr (std::is_same_v<N, LastsE>) head = "Lasts", tail = " " + num(n.d);
                if constexpr (std::is_same_v<N, AfterE>) head = "After", tail = " " + num(n.d);
                if constexpr (std::is_same_v<N, AtE>) head = "At", tail = " " + print(n.t);
                s += "(" + head + " ";
                dump_to(*n.e, s);
                s += tail + ")";
            }
        },
        e.node);
}

} // namespace

std::string print(const TimeTerm& t) {
    switch (t.base) {
    case TimeTerm::Base::Now: return "." + offset(t.offset);
    case TimeTerm::Base::Var: return t.var + offset(t.offset);
    case TimeTerm::Base::Abs: return num(t.offset);
    }
    return "?";
}

std::string print(const Interval& iv) {
    std::string s = iv.lo_closed ? "[" : "(";
    s += print(iv.lo) + ",";
    if (!iv.hi) return s + "inf)";
    return s + print(*iv.hi) + (iv.hi_closed ? "]" : ")");
}

std::string print(const Expr& e) {
    Printer p;
    return p.sub(e, kQuant, true).text;
}

std::string dump(const Expr& e) {
    std::string s;
    dump_to(e, s);
    return s;
}

} // namespace livelab::lang
