#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "livelab/temporal/expr.hpp"

namespace livelab::lang {

using Params = std::map<std::string, std::int64_t, std::less<>>;

// Throws SyntaxError, UnknownDomain, UnboundParameter, UnboundVariable, TypeMismatch.
temporal::ExprPtr parse(std::string_view text, const Params& params = {});

struct NamedProperty {
    std::string name;
    temporal::ExprPtr expr;
};

// `.lspec` content: either a single expression or a sequence of `Name = <expr>` blocks.
std::vector<NamedProperty> parse_file(std::string_view text, const Params& params = {});

} // namespace livelab::lang
