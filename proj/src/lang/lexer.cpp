#include "livelab/lang/lexer.hpp"

#include <cctype>

namespace livelab::lang {

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    std::size_t i = 0;
    int line = 1, col = 1;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < src.size()) {
        const char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        Token t{Tok::End, {}, 0, SourceSpan{i, i, line, col}};
        std::size_t n = 1;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i + n < src.size() && (std::isalnum(static_cast<unsigned char>(src[i + n])) || src[i + n] == '_')) ++n;
            t.kind = Tok::Ident;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i + n < src.size() && std::isdigit(static_cast<unsigned char>(src[i + n]))) ++n;
            t.kind = Tok::Int;
            t.value = std::stoll(std::string(src.substr(i, n)));
        } else if (c == '\'') {
            while (i + n < src.size() && src[i + n] != '\'') ++n;
            if (i + n >= src.size()) throw SyntaxError(t.span, {"closing quote"}, "end of input");
            ++n;
            t.kind = Tok::Str;
        } else if (c == '.' && i + 1 < src.size() && src[i + 1] == '.') {
            n = 2;
            t.kind = Tok::DotDot;
        } else {
            switch (c) {
            case '.': t.kind = Tok::Dot; break;
            case ',': t.kind = Tok::Comma; break;
            case '(': t.kind = Tok::LParen; break;
            case ')': t.kind = Tok::RParen; break;
            case '[': t.kind = Tok::LBrack; break;
            case ']': t.kind = Tok::RBrack; break;
            case '=': t.kind = Tok::Eq; break;
            case '+': t.kind = Tok::Plus; break;
            case '-': t.kind = Tok::Minus; break;
            default: throw SyntaxError(t.span, {}, std::string("character '") + c + "'");
            }
        }
        t.text = std::string(src.substr(i, n));
        if (t.kind == Tok::Str) t.text = t.text.substr(1, t.text.size() - 2);
        t.span.end = i + n;
        out.push_back(std::move(t));
        advance(n);
    }
    out.push_back(Token{Tok::End, {}, 0, SourceSpan{src.size(), src.size(), line, col}});
    return out;
}

std::string describe(const Token& t) {
    switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::Str: return "'" + t.text + "'";
    default: return "\"" + t.text + "\"";
    }
}

} // namespace livelab::lang
