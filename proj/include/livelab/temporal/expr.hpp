#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace livelab::temporal {

struct TimeTerm {
    enum class Base : std::uint8_t { Now, Var, Abs };
    Base base = Base::Now;
    std::string var;
    std::int64_t offset = 0;

    static TimeTerm now(std::int64_t off = 0) { return {Base::Now, {}, off}; }
    static TimeTerm of(std::string v, std::int64_t off = 0) { return {Base::Var, std::move(v), off}; }
    static TimeTerm abs(std::int64_t t) { return {Base::Abs, {}, t}; }
    TimeTerm plus(std::int64_t d) const { return {base, var, offset + d}; }

    bool operator==(const TimeTerm&) const = default;
};

struct Interval {
    TimeTerm lo;
    std::optional<TimeTerm> hi;  // absent: unbounded, always open
    bool lo_closed = true;
    bool hi_closed = false;

    static Interval closed(TimeTerm a, TimeTerm b) { return {std::move(a), std::move(b), true, true}; }
    static Interval from(TimeTerm a) { return {std::move(a), std::nullopt, true, false}; }
    static Interval after(TimeTerm a) { return {std::move(a), std::nullopt, false, false}; }

    bool operator==(const Interval&) const = default;
};

struct Term {
    enum class Kind : std::uint8_t { Var, Int };
    Kind kind = Kind::Var;
    std::string name;
    std::int64_t value = 0;

    static Term var(std::string n) { return {Kind::Var, std::move(n), 0}; }
    static Term lit(std::int64_t v) { return {Kind::Int, {}, v}; }

    bool operator==(const Term&) const = default;
};

// Argument layouts:
//   Nf, IsPrimary            [p]
//   Sent                     [sender, msg, receiver]      p1.sent m to p2
//   Received                 [receiver, msg, sender]      p2.received m from p1
//   Voted                    [p, r, v] or [p, r, s, v]    single form means slot 1
//   Learned, Executed        [p, v] or [p, s, v]
//   Resp                     [c, v]                       c.received ('resp',v)
//   RespResult               [c, v]                       c.received ('resp',v,res(v))
//   Request                  [c, v]                       c.sent ('req',v)
//   RosterEq                 times[0], times[1]           servers at a = servers at b
enum class Pred : std::uint8_t {
    True, False, Nf, IsPrimary, Sent, Received, Voted, Learned, Executed, Resp, RespResult, Request, RosterEq
};

struct Atom {
    Pred pred = Pred::True;
    std::vector<Term> args;
    std::vector<TimeTerm> times;
    bool operator==(const Atom&) const = default;
};

struct Domain {
    enum class Kind : std::uint8_t { Servers, Clients, Quorums, Values, Rounds, Range, Time, Members, Sent, Received };
    Kind kind = Kind::Servers;
    Term lo, hi;                  // Range
    Interval interval;            // Time
    std::string set_var;          // Members
    std::optional<TimeTerm> at;   // Servers/Members-of-servers: roster time; Sent/Received: a single tick

    bool operator==(const Domain&) const = default;
};

enum class Quantifier : std::uint8_t { Each, Some };

struct SetTerm {
    enum class Kind : std::uint8_t { Var, Servers, Clients };
    Kind kind = Kind::Var;
    std::string name;
    bool operator==(const SetTerm&) const = default;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct NotE { ExprPtr e; };
struct AndE { ExprPtr l, r; };
struct OrE { ExprPtr l, r; };
struct ImpliesE { ExprPtr l, r; };
// Sent/Received domains bind three names (endpoint, message, endpoint); others bind one.
struct QuantE { Quantifier q; std::vector<std::string> vars; Domain dom; ExprPtr body; };
struct AlwE { ExprPtr e; };
struct EvtE { ExprPtr e; };
struct DuringE { ExprPtr e; Interval iv; };
struct LastsE { ExprPtr e; std::int64_t d; };
struct AfterE { ExprPtr e; std::int64_t d; };
struct AtE { ExprPtr e; TimeTerm t; };
struct NfSetE { SetTerm set; };

struct Expr {
    std::variant<Atom, NotE, AndE, OrE, ImpliesE, QuantE, AlwE, EvtE, DuringE, LastsE, AfterE, AtE, NfSetE> node;
};

bool operator==(const Expr& a, const Expr& b);
bool same(const ExprPtr& a, const ExprPtr& b);

// Every name occurring in the expression, bound or free (used for fresh-name generation).
std::set<std::string> all_names(const Expr& e);
// Throws UnboundVariable for the first unbound occurrence.
void check_scoped(const Expr& e);
std::size_t size(const Expr& e);

namespace build {

ExprPtr truth();
ExprPtr falsity();
ExprPtr atom(Pred p, std::vector<Term> args, std::vector<TimeTerm> times = {});
ExprPtr nf(const std::string& p);
ExprPtr is_primary(const std::string& p);
ExprPtr sent(const std::string& from, const std::string& m, const std::string& to);
ExprPtr received(const std::string& to, const std::string& m, const std::string& from);
ExprPtr voted(const std::string& p, Term r, Term v);
ExprPtr voted(const std::string& p, Term r, Term s, Term v);
ExprPtr learned(const std::string& p, Term v);
ExprPtr learned(const std::string& p, Term s, Term v);
ExprPtr executed(const std::string& p, Term v);
ExprPtr executed(const std::string& p, Term s, Term v);
ExprPtr resp(const std::string& c, Term v);
ExprPtr resp_result(const std::string& c, Term v);
ExprPtr request(const std::string& c, Term v);
ExprPtr roster_eq(TimeTerm a, TimeTerm b);

ExprPtr not_(ExprPtr e);
ExprPtr and_(ExprPtr l, ExprPtr r);
ExprPtr and_(std::initializer_list<ExprPtr> es);  // left-associated
ExprPtr or_(ExprPtr l, ExprPtr r);
ExprPtr implies(ExprPtr l, ExprPtr r);
ExprPtr quant(Quantifier q, std::vector<std::string> vars, Domain d, ExprPtr body);
ExprPtr each(const std::string& v, Domain d, ExprPtr body);
ExprPtr some(const std::string& v, Domain d, ExprPtr body);
ExprPtr each_sent(const std::string& from, const std::string& m, const std::string& to, ExprPtr body);
ExprPtr some_sent(const std::string& from, const std::string& m, const std::string& to, ExprPtr body);
ExprPtr alw(ExprPtr e);
ExprPtr evt(ExprPtr e);
ExprPtr during(ExprPtr e, Interval iv);
ExprPtr lasts(ExprPtr e, std::int64_t d);
ExprPtr after(ExprPtr e, std::int64_t d);
ExprPtr at(ExprPtr e, TimeTerm t);
ExprPtr nf_set(SetTerm s);
ExprPtr nf_set(const std::string& var);

Domain servers();
Domain clients();
Domain quorums();
Domain values();
Domain rounds();
Domain range(Term lo, Term hi);
Domain time(Interval iv);
Domain members(const std::string& set_var);
Domain sent_history();
Domain received_history();

} // namespace build

} // namespace livelab::temporal
