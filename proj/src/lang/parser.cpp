#include "livelab/lang/parser.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <set>

#include "livelab/errors.hpp"
#include "livelab/lang/lexer.hpp"

namespace livelab::lang {

using namespace temporal;
using namespace temporal::build;

namespace {

enum class VarKind { Proc, Quorum, Int, Time, Msg };

const char* kind_name(VarKind k) {
    switch (k) {
    case VarKind::Proc: return "process";
    case VarKind::Quorum: return "quorum";
    case VarKind::Int: return "integer";
    case VarKind::Time: return "time";
    case VarKind::Msg: return "message";
    }
    return "?";
}

const std::set<std::string, std::less<>> kKeywords = {
    "each", "some", "in", "has", "and", "or", "implies", "not", "alw", "evt", "during", "lasts", "after", "at",
    "nf", "inf", "to", "from", "servers", "clients", "client", "quorums", "values", "rounds", "true", "false", "res"};

class Parser {
public:
    Parser(std::string_view src, const Params& params) : toks_(lex(src)), params_(params) {}

    ExprPtr top() {
        auto e = expr();
        expect(Tok::End, "end of input");
        return e;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    const Params& params_;
    std::vector<std::pair<std::string, VarKind>> scope_;

    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    bool is_kw(const char* kw, std::size_t k = 0) const { return peek(k).kind == Tok::Ident && peek(k).text == kw; }
    bool is(Tok t, std::size_t k = 0) const { return peek(k).kind == t; }
    const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    [[noreturn]] void fail(std::vector<std::string> expected) const {
        throw SyntaxError(peek().span, std::move(expected), describe(peek()));
    }
    const Token& expect(Tok t, const char* what) {
        if (!is(t)) fail({what});
        return next();
    }
    void expect_kw(const char* kw) {
        if (!is_kw(kw)) fail({std::string("\"") + kw + "\""});
        next();
    }
    bool accept_kw(const char* kw) {
        if (!is_kw(kw)) return false;
        next();
        return true;
    }
    std::string ident(const char* what) {
        if (!is(Tok::Ident) || kKeywords.count(peek().text)) fail({what});
        return next().text;
    }

    const VarKind* bound(std::string_view n) const {
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
            if (it->first == n) return &it->second;
        return nullptr;
    }

    [[noreturn]] void unbound(const std::string& n) const {
        if (n == "n" || std::isupper(static_cast<unsigned char>(n[0]))) throw UnboundParameter(n);
        throw UnboundVariable(n);
    }

    std::string var_of(VarKind k, const char* what) {
        const Token tok = peek();
        std::string n = ident(what);
        const VarKind* b = bound(n);
        if (!b) unbound(n);
        if (*b != k)
            throw TypeMismatch("'" + n + "' at " + std::to_string(tok.span.line) + ":" + std::to_string(tok.span.column) +
                               " is a " + kind_name(*b) + ", expected a " + kind_name(k));
        return n;
    }

    std::int64_t param_value(const std::string& n) const {
        auto it = params_.find(n);
        if (it == params_.end()) unbound(n);
        return it->second;
    }

    // INT | parameter
    std::int64_t constant() {
        if (is(Tok::Int)) return next().value;
        if (is(Tok::Ident) && !kKeywords.count(peek().text) && !bound(peek().text)) return param_value(next().text);
        fail({"integer", "parameter"});
    }

    std::int64_t offsets() {
        std::int64_t off = 0;
        while (is(Tok::Plus) || is(Tok::Minus)) {
            const bool minus = next().kind == Tok::Minus;
            const std::int64_t v = constant();
            off += minus ? -v : v;
        }
        return off;
    }

    std::int64_t duration() { return constant() + offsets(); }

    TimeTerm time_term() {
        if (is(Tok::Dot)) {
            next();
            return TimeTerm::now(offsets());
        }
        if (is(Tok::Int)) {
            std::int64_t v = next().value;
            return TimeTerm::abs(v + offsets());
        }
        if (is(Tok::Ident) && !kKeywords.count(peek().text)) {
            const std::string n = peek().text;
            if (const VarKind* b = bound(n)) {
                if (*b != VarKind::Time) throw TypeMismatch("'" + n + "' is not a time variable");
                next();
                return TimeTerm::of(n, offsets());
            }
            next();
            return TimeTerm::abs(param_value(n) + offsets());
        }
        fail({"time term"});
    }

    Interval interval() {
        Interval iv;
        if (is(Tok::LBrack)) iv.lo_closed = true;
        else if (is(Tok::LParen)) iv.lo_closed = false;
        else fail({"\"[\"", "\"(\""});
        next();
        iv.lo = time_term();
        expect(Tok::Comma, "\",\"");
        if (accept_kw("inf")) {
            expect(Tok::RParen, "\")\"");
            iv.hi_closed = false;
            return iv;
        }
        iv.hi = time_term();
        if (is(Tok::RBrack)) iv.hi_closed = true;
        else if (is(Tok::RParen)) iv.hi_closed = false;
        else fail({"\"]\"", "\")\""});
        next();
        return iv;
    }

    Term int_term() {
        if (is(Tok::Int)) return Term::lit(next().value);
        if (is(Tok::Ident) && !kKeywords.count(peek().text)) {
            const std::string n = peek().text;
            if (const VarKind* b = bound(n)) {
                if (*b != VarKind::Int) throw TypeMismatch("'" + n + "' is not an integer variable");
                next();
                return Term::var(n);
            }
            next();
            return Term::lit(param_value(n));
        }
        fail({"integer term"});
    }

    // ---- expressions ----

    bool at_quant() const { return is_kw("each") || is_kw("some"); }

    ExprPtr expr() { return at_quant() ? quant() : implies_expr(); }

    struct Binder {
        std::vector<std::string> vars;
        Domain dom;
        std::vector<VarKind> kinds;
    };

    Binder binder() {
        Binder b;
        if (is(Tok::Ident, 0) && is(Tok::Dot, 1)) {
            std::string a = ident("variable");
            next();
            const bool sent = is_kw("sent");
            if (!sent && !is_kw("received")) fail({"\"sent\"", "\"received\""});
            next();
            std::string m = ident("message variable");
            expect_kw(sent ? "to" : "from");
            std::string c = ident("variable");
            b.vars = {a, m, c};
            b.kinds = {VarKind::Proc, VarKind::Msg, VarKind::Proc};
            b.dom = sent ? sent_history() : received_history();
            if (accept_kw("at")) b.dom.at = time_term();
            return b;
        }
        std::string v = ident("variable");
        expect_kw("in");
        b.vars = {v};
        if (accept_kw("servers")) {
            b.dom = servers();
            if (accept_kw("at")) b.dom.at = time_term();
            b.kinds = {VarKind::Proc};
        } else if (accept_kw("clients") || accept_kw("client")) {
            b.dom = clients();
            b.kinds = {VarKind::Proc};
        } else if (accept_kw("quorums")) {
            b.dom = quorums();
            b.kinds = {VarKind::Quorum};
        } else if (accept_kw("values")) {
            b.dom = values();
            b.kinds = {VarKind::Int};
        } else if (accept_kw("rounds")) {
            b.dom = rounds();
            b.kinds = {VarKind::Int};
        } else if (is(Tok::LBrack) || is(Tok::LParen)) {
            b.dom = time(interval());
            b.kinds = {VarKind::Time};
        } else if (is(Tok::Int) || (is(Tok::Ident) && is(Tok::DotDot, 1))) {
            Term lo = int_term();
            expect(Tok::DotDot, "\"..\"");
            Term hi = int_term();
            b.dom = range(lo, hi);
            b.kinds = {VarKind::Int};
        } else if (is(Tok::Ident) && !kKeywords.count(peek().text)) {
            const std::string n = peek().text;
            const VarKind* k = bound(n);
            if (!k) throw UnknownDomain(n);
            if (*k != VarKind::Quorum) throw TypeMismatch("'" + n + "' is not a quorum");
            next();
            b.dom = members(n);
            b.kinds = {VarKind::Proc};
        } else {
            fail({"domain"});
        }
        return b;
    }

    ExprPtr quant() {
        const Quantifier q = next().text == "each" ? Quantifier::Each : Quantifier::Some;
        std::vector<Binder> bs;
        const auto mark = scope_.size();
        do {
            bs.push_back(binder());
            for (std::size_t k = 0; k < bs.back().vars.size(); ++k) scope_.emplace_back(bs.back().vars[k], bs.back().kinds[k]);
        } while (is(Tok::Comma) && (next(), true));
        expect_kw("has");
        ExprPtr body = expr();
        scope_.resize(mark);
        for (auto it = bs.rbegin(); it != bs.rend(); ++it) body = build::quant(q, it->vars, it->dom, body);
        return body;
    }

    ExprPtr implies_expr() {
        ExprPtr l = or_expr();
        if (accept_kw("implies")) return implies(l, at_quant() ? quant() : implies_expr());
        return l;
    }

    ExprPtr or_expr() {
        ExprPtr l = and_expr();
        while (accept_kw("or")) {
            if (at_quant()) return or_(l, quant());
            l = or_(l, and_expr());
        }
        return l;
    }

    ExprPtr and_expr() {
        ExprPtr l = unary();
        while (accept_kw("and")) {
            if (at_quant()) return and_(l, quant());
            l = and_(l, unary());
        }
        return l;
    }

    ExprPtr unary_or_quant() { return at_quant() ? quant() : unary(); }

    ExprPtr unary() {
        if (accept_kw("not")) return not_(unary_or_quant());
        if (accept_kw("alw")) return alw(unary_or_quant());
        if (accept_kw("evt")) return evt(unary_or_quant());
        return postfix();
    }

    ExprPtr postfix() {
        ExprPtr e = primary();
        for (;;) {
            if (accept_kw("during")) e = during(e, interval());
            else if (accept_kw("lasts")) e = lasts(e, duration());
            else if (accept_kw("after")) e = after(e, duration());
            else if (accept_kw("at")) e = at(e, time_term());
            else return e;
        }
    }

    ExprPtr primary() {
        if (is(Tok::LParen)) {
            next();
            ExprPtr e = expr();
            expect(Tok::RParen, "\")\"");
            return e;
        }
        if (accept_kw("true")) return truth();
        if (accept_kw("false")) return falsity();
        if (accept_kw("servers")) {
            if (accept_kw("nf")) return nf_set(SetTerm{SetTerm::Kind::Servers, {}});
            expect_kw("at");
            TimeTerm a = time_term();
            expect(Tok::Eq, "\"=\"");
            expect_kw("servers");
            expect_kw("at");
            return roster_eq(a, time_term());
        }
        if (is_kw("clients") || is_kw("client")) {
            next();
            expect_kw("nf");
            return nf_set(SetTerm{SetTerm::Kind::Clients, {}});
        }
        if (!is(Tok::Ident) || kKeywords.count(peek().text)) fail({"expression"});
        if (is_kw("nf", 1)) {
            std::string q = var_of(VarKind::Quorum, "quorum variable");
            next();
            return nf_set(q);
        }
        std::string p = var_of(VarKind::Proc, "process variable");
        expect(Tok::Dot, "\".\"");
        if (!is(Tok::Ident)) fail({"predicate"});
        const std::string pred = next().text;
        if (pred == "nf") return nf(p);
        if (pred == "is_primary") return is_primary(p);
        if (pred == "sent") {
            if (is(Tok::LParen)) {
                next();
                tagged("req");
                expect(Tok::Comma, "\",\"");
                Term v = int_term();
                expect(Tok::RParen, "\")\"");
                return request(p, v);
            }
            std::string m = var_of(VarKind::Msg, "message variable");
            expect_kw("to");
            return sent(p, m, var_of(VarKind::Proc, "process variable"));
        }
        if (pred == "received") {
            if (is(Tok::LParen)) {
                next();
                tagged("resp");
                expect(Tok::Comma, "\",\"");
                Term v = int_term();
                if (is(Tok::Comma)) {
                    next();
                    expect_kw("res");
                    expect(Tok::LParen, "\"(\"");
                    Term w = int_term();
                    if (!(w == v)) throw TypeMismatch("res(...) must repeat the response value");
                    expect(Tok::RParen, "\")\"");
                    expect(Tok::RParen, "\")\"");
                    return resp_result(p, v);
                }
                expect(Tok::RParen, "\")\"");
                return resp(p, v);
            }
            std::string m = var_of(VarKind::Msg, "message variable");
            expect_kw("from");
            return received(p, m, var_of(VarKind::Proc, "process variable"));
        }
        if (pred == "voted" || pred == "learned" || pred == "executed") {
            expect(Tok::LParen, "\"(\"");
            std::vector<Term> args{Term::var(p)};
            args.push_back(int_term());
            while (is(Tok::Comma)) {
                next();
                args.push_back(int_term());
            }
            expect(Tok::RParen, "\")\"");
            const std::size_t want = pred == "voted" ? 3 : 2;
            if (args.size() != want && args.size() != want + 1)
                throw SyntaxError(peek().span, {std::to_string(want - 1) + " or " + std::to_string(want) + " arguments"},
                                  std::to_string(args.size() - 1) + " arguments");
            const Pred pr = pred == "voted" ? Pred::Voted : pred == "learned" ? Pred::Learned : Pred::Executed;
            return atom(pr, std::move(args));
        }
        throw SyntaxError(toks_[pos_ - 1].span, {"nf", "is_primary", "sent", "received", "voted", "learned", "executed"},
                          "\"" + pred + "\"");
    }

    void tagged(const char* tag) {
        if (!is(Tok::Str) || peek().text != tag) fail({std::string("'") + tag + "'"});
        next();
    }
};

} // namespace

ExprPtr parse(std::string_view text, const Params& params) {
    Parser p(text, params);
    return p.top();
}

std::vector<NamedProperty> parse_file(std::string_view text, const Params& params) {
    static const std::regex header(R"(^\s*([A-Za-z][A-Za-z0-9_\-]*(\([A-Za-z0-9_, ]*\))?)\s*=(?!=)(.*)$)");
    std::vector<std::pair<std::string, std::string>> blocks;
    std::string src(text), line;
    std::size_t start = 0;
    while (start <= src.size()) {
        std::size_t end = src.find('\n', start);
        if (end == std::string::npos) end = src.size();
        line = src.substr(start, end - start);
        std::smatch m;
        if (std::regex_match(line, m, header)) {
            blocks.emplace_back(m[1].str(), m[3].str() + "\n");
        } else if (!blocks.empty()) {
            blocks.back().second += line + "\n";
        } else if (line.find_first_not_of(" \t\r") != std::string::npos && line.find_first_not_of(" \t\r") != line.find('#')) {
            blocks.emplace_back("", src);
            break;
        }
        start = end + 1;
    }
    std::vector<NamedProperty> out;
    for (const auto& [name, body] : blocks) out.push_back({name, parse(body, params)});
    return out;
}

} // namespace livelab::lang
