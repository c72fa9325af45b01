#pragma once

#include <cstdint>

#include "livelab/adversary/schedule.hpp"

namespace livelab::adversary {

struct GeneratorOptions {
    std::uint64_t step_budget = 10'000;  // machine steps summed over all attempts
};

struct Generated {
    Schedule schedule;
    temporal::Trace trace;
    std::uint64_t attempts = 0;
};

// Random prefix under a sampled link policy and crash rate, an optional drain phase, then a
// cycle pattern from a fixed library; every candidate is validated and only a conforming one is
// returned. Throws CannotRealize once the step budget is spent.
Generated generate(const AssumptionTarget& target, const SystemConfig& config, std::uint64_t seed,
                   const GeneratorOptions& opts = {});

} // namespace livelab::adversary
