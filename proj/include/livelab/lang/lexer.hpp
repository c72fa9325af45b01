#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "livelab/errors.hpp"

namespace livelab::lang {

enum class Tok : std::uint8_t { Ident, Int, Str, Dot, DotDot, Comma, LParen, RParen, LBrack, RBrack, Eq, Plus, Minus, End };

struct Token {
    Tok kind;
    std::string text;
    std::int64_t value = 0;
    SourceSpan span;
};

std::vector<Token> lex(std::string_view src);
std::string describe(const Token& t);

} // namespace livelab::lang
