#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "livelab/config.hpp"

namespace livelab::mc {

struct SafetyReport {
    std::uint64_t states = 0;
    std::uint64_t transitions = 0;
    std::uint64_t learned_states = 0;  // states where some server has learned
    std::vector<std::string> violations;  // first few, with the offending action path length
    bool complete = false;
};

// Exhaustive reachability deduplicated without the tick. By default only protocol actions fire
// (prepare, promise, accept, vote, learn, election); `faults` adds drops, stale deliveries,
// crashes and recoveries. Stale in-flight messages are removed from every state.
SafetyReport check_safety(const SystemConfig& config, bool faults = false, std::uint64_t max_states = 20'000'000);

} // namespace livelab::mc
