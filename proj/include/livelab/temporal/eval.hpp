#pragma once

#include <cstdint>
#include <string>

#include "livelab/temporal/expr.hpp"
#include "livelab/temporal/trace.hpp"

namespace livelab::temporal {

enum class Bool3 : std::uint8_t { False = 0, Unknown = 1, True = 2 };

constexpr Bool3 operator!(Bool3 a) { return static_cast<Bool3>(2 - static_cast<int>(a)); }
constexpr Bool3 operator&&(Bool3 a, Bool3 b) { return a < b ? a : b; }
constexpr Bool3 operator||(Bool3 a, Bool3 b) { return a < b ? b : a; }
constexpr Bool3 lift(bool b) { return b ? Bool3::True : Bool3::False; }

struct Verdict {
    enum class Kind : std::uint8_t { Holds, Violated, Undetermined };
    Kind kind = Kind::Undetermined;
    Tick bound = 0;  // meaningful for Undetermined

    static Verdict holds() { return {Kind::Holds, 0}; }
    static Verdict violated() { return {Kind::Violated, 0}; }
    static Verdict undetermined(Tick b) { return {Kind::Undetermined, b}; }

    bool is_holds() const { return kind == Kind::Holds; }
    bool is_violated() const { return kind == Kind::Violated; }
    bool is_undetermined() const { return kind == Kind::Undetermined; }
    std::string str() const;
    bool operator==(const Verdict&) const = default;
};

Bool3 eval3(const Expr& e, const Trace& trace, Tick now = 0);
Verdict eval(const Expr& e, const Trace& trace, Tick now = 0);
inline Verdict eval(const ExprPtr& e, const Trace& trace, Tick now = 0) { return eval(*e, trace, now); }

} // namespace livelab::temporal
