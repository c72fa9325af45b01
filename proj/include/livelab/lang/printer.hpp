#pragma once

#include <string>

#include "livelab/temporal/expr.hpp"

namespace livelab::lang {

// Canonical concrete syntax; parse(print(e)) == e.
std::string print(const temporal::Expr& e);
inline std::string print(const temporal::ExprPtr& e) { return print(*e); }

std::string print(const temporal::TimeTerm& t);
std::string print(const temporal::Interval& iv);

// S-expression dump of the tree structure.
std::string dump(const temporal::Expr& e);
inline std::string dump(const temporal::ExprPtr& e) { return dump(*e); }

} // namespace livelab::lang
