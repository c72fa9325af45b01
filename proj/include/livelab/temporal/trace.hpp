#pragma once

#include <optional>
#include <vector>

#include "livelab/config.hpp"
#include "livelab/temporal/observation.hpp"

namespace livelab::temporal {

struct Trace {
    SystemConfig config;
    std::vector<ObservationState> states;
    std::optional<Tick> loop_start;

    Tick length() const { return static_cast<Tick>(states.size()); }
    bool is_lasso() const { return loop_start.has_value(); }
    Tick period() const { return is_lasso() ? length() - *loop_start : 1; }

    // State observed at tick t; nullptr beyond the end of a finite trace.
    const ObservationState* at(Tick t) const;

    // Throws Error when empty, when histories shrink, when received is not backed by sent,
    // or when a lasso's histories differ between loop_start and the last state.
    void validate() const;

    bool operator==(const Trace&) const = default;
};

// Finite, non-lasso prefix of the infinite unrolling of `t` with `length` states.
Trace unroll(const Trace& t, Tick length);

} // namespace livelab::temporal
