#include "livelab/catalog/catalog.hpp"

#include <array>
#include <regex>

#include "livelab/errors.hpp"
#include "livelab/lang/parser.hpp"

namespace livelab::catalog {

using namespace temporal;
using namespace temporal::build;

namespace {

struct Row {
    Kind kind;
    Name name;
    const char* label;
    std::vector<std::string> params;
    const char* text;
};

const std::vector<Row>& rows() {
    static const std::vector<Row> r = {
        {Kind::Link, Name::Raw, "Raw", {}, "some p1.sent m to p2 has evt p2.received m from p1"},
        {Kind::Link, Name::Fair, "Fair", {}, "each p1.sent m to p2 has evt p2.received m from p1"},
        {Kind::Link, Name::Sure, "Sure", {"D"}, "each p1.sent m to p2 has (p2.received m from p1 after D)"},
        {Kind::Server, Name::AlwQ, "Alw-Q", {}, "evt alw some q in quorums has q nf"},
        {Kind::Server, Name::QAlw, "Q-Alw", {}, "evt some q in quorums has alw q nf"},
        {Kind::Server, Name::PAlwQ, "P-Alw-Q", {},
         "evt some p in servers has alw (p.nf and p.is_primary and some q in quorums has q nf)"},
        {Kind::Server, Name::PQAlw, "PQ-Alw", {},
         "evt some p in servers, q in quorums has alw (p.nf and p.is_primary and q nf)"},
        {Kind::Server, Name::Alw, "Alw", {}, "evt alw servers nf"},
        {Kind::Server, Name::PQDur, "PQ-Dur", {"D"},
         "evt some p in servers, q in quorums has ((p.nf and p.is_primary and q nf) lasts D)"},
        {Kind::Server, Name::PQExtraDur, "PQ-Extra-Dur", {"D1", "D2"},
         "some t in [0,inf) has\n"
         "  ((each t2 in [t,t+D1+D2] has (servers at t2 = servers at t)) and\n"
         "   (some p in servers has ((p.nf and p.is_primary) during [t+D1,t+D1+D2])) and\n"
         "   (some q in quorums has (q nf during [t,t+D1+D2])))"},
        {Kind::AssertionSingle, Name::EachVote, "Each-Vote", {},
         "evt some r in rounds, q in quorums, v in values has\n  each p in q has p.voted (r,v)"},
        {Kind::AssertionSingle, Name::SomeLearn, "Some-Learn", {}, "evt some p in servers, v in values has p.learned (v)"},
        {Kind::AssertionSingle, Name::EachLearn, "Each-Learn", {},
         "evt some q in quorums, v in values has\n  each p in q has p.learned (v)"},
        {Kind::AssertionSingle, Name::SomeExec, "Some-Exec", {}, "evt some p in servers, v in values has p.executed (v)"},
        {Kind::AssertionSingle, Name::EachExec, "Each-Exec", {},
         "evt some q in quorums, v in values has\n  each p in q has p.executed (v)"},
        {Kind::AssertionSingle, Name::Resp, "Resp", {},
         "evt each c in clients has some v in values has\n  c.received ('resp',v)"},
        {Kind::AssertionMulti, Name::EachVote, "Each-Vote", {"n"},
         "evt each s in 1..n has\n  some r in rounds, q in quorums, v in values has\n  each p in q has p.voted (r,s,v)"},
        {Kind::AssertionMulti, Name::SomeLearn, "Some-Learn", {"n"},
         "evt each s in 1..n has\n  some p in servers, v in values has p.learned (s,v)"},
        {Kind::AssertionMulti, Name::EachLearn, "Each-Learn", {"n"},
         "evt each s in 1..n has\n  some q in quorums, v in values has\n  each p in q has p.learned (s,v)"},
        {Kind::AssertionMulti, Name::SomeExec, "Some-Exec", {"n"},
         "evt each s in 1..n has\n  some p in servers, v in values has p.executed (s,v)"},
        {Kind::AssertionMulti, Name::EachExec, "Each-Exec", {"n"},
         "evt each s in 1..n has\n  some q in quorums, v in values has\n  each p in q has p.executed (s,v)"},
        {Kind::AssertionMulti, Name::Resp, "Resp", {},
         "evt each c in client, v in values has\n  c.sent ('req', v) implies c.received ('resp', v, res(v))"},
    };
    return r;
}

const Row& row(Kind k, Name n) {
    for (const auto& r : rows())
        if (r.kind == k && r.name == n) return r;
    throw Error("no catalog entry for this kind and name");
}

std::int64_t need(std::optional<std::int64_t> v, const char* what) {
    if (!v) throw MissingParameter(what);
    if (*v < 0) throw Error(std::string("parameter ") + what + " must be non-negative");
    return *v;
}

// Shared shape of the quorum/value assertions: some q in quorums, v in values has each p in q has f(p, v).
ExprPtr some_quorum_all(const std::function<ExprPtr(const std::string&, Term)>& f) {
    return some("q", quorums(), some("v", values(), each("p", members("q"), f("p", Term::var("v")))));
}

ExprPtr some_server(const std::function<ExprPtr(const std::string&, Term)>& f) {
    return some("p", servers(), some("v", values(), f("p", Term::var("v"))));
}

} // namespace

std::size_t arity(Kind k, Name n) { return row(k, n).params.size(); }

Kind natural_kind(Name n) {
    switch (n) {
    case Name::Raw:
    case Name::Fair:
    case Name::Sure: return Kind::Link;
    case Name::AlwQ:
    case Name::QAlw:
    case Name::PAlwQ:
    case Name::PQAlw:
    case Name::Alw:
    case Name::PQDur:
    case Name::PQExtraDur: return Kind::Server;
    default: return Kind::AssertionSingle;
    }
}

CatalogId link(Name n, std::optional<std::int64_t> d) {
    CatalogId id{Kind::Link, n, {}};
    if (arity(Kind::Link, n)) id.params.push_back(need(d, "D"));
    return id;
}

CatalogId server(Name n, std::vector<std::int64_t> params) {
    if (params.size() < arity(Kind::Server, n)) throw MissingParameter(display_family(Kind::Server, n));
    params.resize(arity(Kind::Server, n));
    return CatalogId{Kind::Server, n, std::move(params)};
}

CatalogId single(Name n) {
    row(Kind::AssertionSingle, n);
    return CatalogId{Kind::AssertionSingle, n, {}};
}

CatalogId multi(Name n, std::optional<std::int64_t> slots) {
    CatalogId id{Kind::AssertionMulti, n, {}};
    if (arity(Kind::AssertionMulti, n)) id.params.push_back(need(slots, "n"));
    return id;
}

ExprPtr link_property(Name n, std::optional<std::int64_t> d) {
    switch (n) {
    case Name::Raw: return some_sent("p1", "m", "p2", evt(received("p2", "m", "p1")));
    case Name::Fair: return each_sent("p1", "m", "p2", evt(received("p2", "m", "p1")));
    case Name::Sure: return each_sent("p1", "m", "p2", after(received("p2", "m", "p1"), need(d, "D")));
    default: throw Error("not a link assumption");
    }
}

ExprPtr server_property(Name n, std::optional<std::int64_t> a, std::optional<std::int64_t> b) {
    auto primary = [] { return and_(nf("p"), is_primary("p")); };
    switch (n) {
    case Name::AlwQ: return evt(alw(some("q", quorums(), nf_set("q"))));
    case Name::QAlw: return evt(some("q", quorums(), alw(nf_set("q"))));
    case Name::PAlwQ: return evt(some("p", servers(), alw(and_(primary(), some("q", quorums(), nf_set("q"))))));
    case Name::PQAlw: return evt(some("p", servers(), some("q", quorums(), alw(and_(primary(), nf_set("q"))))));
    case Name::Alw: return evt(alw(nf_set(SetTerm{SetTerm::Kind::Servers, {}})));
    case Name::PQDur:
        return evt(some("p", servers(), some("q", quorums(), lasts(and_(primary(), nf_set("q")), need(a, "D")))));
    case Name::PQExtraDur: {
        const std::int64_t d1 = need(a, "D1"), d2 = need(b, "D2");
        auto t = [](std::int64_t off) { return TimeTerm::of("t", off); };
        auto roster = each("t2", time(Interval::closed(t(0), t(d1 + d2))), roster_eq(TimeTerm::of("t2"), t(0)));
        auto prim = some("p", servers(), during(primary(), Interval::closed(t(d1), t(d1 + d2))));
        auto quorum = some("q", quorums(), during(nf_set("q"), Interval::closed(t(0), t(d1 + d2))));
        return some("t", time(Interval::from(TimeTerm::abs(0))), and_({roster, prim, quorum}));
    }
    default: throw Error("not a server assumption");
    }
}

ExprPtr assertion_single(Name n) {
    switch (n) {
    case Name::EachVote:
        return evt(some("r", rounds(), some_quorum_all([](const std::string& p, Term v) {
                            return voted(p, Term::var("r"), v);
                        })));
    case Name::SomeLearn: return evt(some_server([](const std::string& p, Term v) { return learned(p, v); }));
    case Name::EachLearn: return evt(some_quorum_all([](const std::string& p, Term v) { return learned(p, v); }));
    case Name::SomeExec: return evt(some_server([](const std::string& p, Term v) { return executed(p, v); }));
    case Name::EachExec: return evt(some_quorum_all([](const std::string& p, Term v) { return executed(p, v); }));
    case Name::Resp: return evt(each("c", clients(), some("v", values(), resp("c", Term::var("v")))));
    default: throw Error("not an assertion");
    }
}

ExprPtr assertion_multi(Name n, std::optional<std::int64_t> slots) {
    if (n == Name::Resp)
        return evt(each("c", clients(), each("v", values(), implies(request("c", Term::var("v")),
                                                                     resp_result("c", Term::var("v"))))));
    const std::int64_t k = need(slots, "n");
    if (k < 1) throw Error("slot count must be at least 1");
    const Term s = Term::var("s");
    ExprPtr body;
    switch (n) {
    case Name::EachVote:
        body = some("r", rounds(), some_quorum_all([&](const std::string& p, Term v) {
                        return voted(p, Term::var("r"), s, v);
                    }));
        break;
    case Name::SomeLearn: body = some_server([&](const std::string& p, Term v) { return learned(p, s, v); }); break;
    case Name::EachLearn: body = some_quorum_all([&](const std::string& p, Term v) { return learned(p, s, v); }); break;
    case Name::SomeExec: body = some_server([&](const std::string& p, Term v) { return executed(p, s, v); }); break;
    case Name::EachExec: body = some_quorum_all([&](const std::string& p, Term v) { return executed(p, s, v); }); break;
    default: throw Error("not an assertion");
    }
    return evt(each("s", range(Term::lit(1), Term::lit(k)), body));
}

ExprPtr property(const CatalogId& id) {
    auto p = [&](std::size_t k) -> std::optional<std::int64_t> {
        if (k < id.params.size()) return id.params[k];
        return std::nullopt;
    };
    switch (id.kind) {
    case Kind::Link: return link_property(id.name, p(0));
    case Kind::Server: return server_property(id.name, p(0), p(1));
    case Kind::AssertionSingle: return assertion_single(id.name);
    case Kind::AssertionMulti: return assertion_multi(id.name, p(0));
    }
    throw Error("bad catalog id");
}

std::string canonical_text(Kind k, Name n) { return row(k, n).text; }
std::vector<std::string> parameter_names(Kind k, Name n) { return row(k, n).params; }

std::string display_family(Kind k, Name n) {
    const Row& r = row(k, n);
    std::string s = r.label;
    if (k == Kind::AssertionMulti && n == Name::Resp) return s + "-Multi";
    if (r.params.empty()) return s;
    s += "(";
    for (std::size_t i = 0; i < r.params.size(); ++i) s += (i ? "," : "") + r.params[i];
    return s + ")";
}

std::string display(const CatalogId& id) {
    const Row& r = row(id.kind, id.name);
    std::string s = r.label;
    if (id.kind == Kind::AssertionMulti && id.name == Name::Resp) return s + "-Multi";
    if (id.params.empty()) return s;
    s += "(";
    for (std::size_t i = 0; i < id.params.size(); ++i) s += (i ? "," : "") + std::to_string(id.params[i]);
    return s + ")";
}

std::optional<CatalogId> parse_id(std::string_view text) {
    static const std::regex re(R"(^\s*([A-Za-z][A-Za-z\-]*)\s*(\(\s*(\d+)\s*(,\s*(\d+)\s*)?\))?\s*$)");
    std::string s(text);
    std::smatch m;
    if (!std::regex_match(s, m, re)) return std::nullopt;
    std::string label = m[1].str();
    std::vector<std::int64_t> params;
    if (m[3].matched) params.push_back(std::stoll(m[3].str()));
    if (m[5].matched) params.push_back(std::stoll(m[5].str()));
    if (label == "Resp-Multi" && params.empty()) return CatalogId{Kind::AssertionMulti, Name::Resp, {}};
    for (const auto& r : rows()) {
        if (r.label != label) continue;
        if (r.kind == Kind::AssertionMulti && r.name == Name::Resp) continue;
        if (r.params.size() == params.size()) return CatalogId{r.kind, r.name, params};
    }
    return std::nullopt;
}

std::vector<std::pair<Kind, Name>> families() {
    std::vector<std::pair<Kind, Name>> out;
    for (const auto& r : rows()) out.emplace_back(r.kind, r.name);
    return out;
}

std::vector<std::pair<Kind, Name>> core_families() {
    auto all = families();
    all.resize(16);
    return all;
}

std::vector<Edge> hierarchy_edges() {
    const auto S = [](Name n) { return CatalogId{Kind::AssertionSingle, n, {}}; };
    const auto V = [](Name n, std::vector<std::int64_t> p = {}) { return CatalogId{Kind::Server, n, std::move(p)}; };
    const auto L = [](Name n, std::vector<std::int64_t> p = {}) { return CatalogId{Kind::Link, n, std::move(p)}; };
    return {
        {L(Name::Fair), L(Name::Raw)},
        {L(Name::Sure, {2}), L(Name::Fair)},
        {V(Name::Alw), V(Name::PQAlw)},
        {V(Name::PQAlw), V(Name::QAlw)},
        {V(Name::QAlw), V(Name::AlwQ)},
        {V(Name::PQAlw), V(Name::PAlwQ)},
        {V(Name::PAlwQ), V(Name::AlwQ)},
        {V(Name::Alw), V(Name::PQExtraDur, {2, 2})},
        {V(Name::PQExtraDur, {2, 2}), V(Name::PQDur, {2})},
        {V(Name::PQAlw), V(Name::PQDur, {2})},
        {S(Name::EachExec), S(Name::SomeExec)},
        {S(Name::EachExec), S(Name::EachLearn)},
        {S(Name::EachLearn), S(Name::SomeLearn)},
        {S(Name::SomeExec), S(Name::SomeLearn)},
        {S(Name::SomeLearn), S(Name::EachVote)},
        {S(Name::Resp), S(Name::SomeExec)},
        {S(Name::Resp), S(Name::EachExec), true},
    };
}

std::vector<Edge> edge_instances(const Edge& f) {
    const Name a = f.stronger.name, b = f.weaker.name;
    auto id = [](const CatalogId& base, std::vector<std::int64_t> p) { return CatalogId{base.kind, base.name, std::move(p)}; };
    std::vector<Edge> out;
    if (a == Name::Sure && b == Name::Fair) {
        for (std::int64_t d : {0, 1, 2, 3, 5}) out.push_back({id(f.stronger, {d}), f.weaker});
    } else if (a == Name::Alw && b == Name::PQExtraDur) {
        for (auto [d1, d2] : std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 2}, {3, 1}})
            out.push_back({f.stronger, id(f.weaker, {d1, d2})});
    } else if (a == Name::PQExtraDur && b == Name::PQDur) {
        for (auto [d1, d2, d] : std::vector<std::array<int, 3>>{{2, 2, 0}, {2, 2, 2}, {1, 3, 3}, {0, 1, 1}, {3, 2, 1}})
            out.push_back({id(f.stronger, {d1, d2}), id(f.weaker, {d})});
    } else if (a == Name::PQAlw && b == Name::PQDur) {
        for (std::int64_t d : {0, 2, 4}) out.push_back({f.stronger, id(f.weaker, {d})});
    } else {
        out.push_back(f);
    }
    return out;
}

std::vector<Edge> sure_monotone_edges() {
    std::vector<Edge> out;
    for (std::int64_t a : {0, 1, 2, 3})
        for (std::int64_t b : {0, 1, 2, 3, 5})
            if (a < b) out.push_back({link(Name::Sure, a), link(Name::Sure, b)});
    return out;
}

} // namespace livelab::catalog
