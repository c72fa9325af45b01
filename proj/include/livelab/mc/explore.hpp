#pragma once

#include <cstdint>
#include <vector>

#include "livelab/config.hpp"

namespace livelab::mc {

// j*min(x,i) + j + 2 + ceil((j+1)/2)
std::int64_t formula_oracle(std::int64_t i, std::int64_t j, std::int64_t x);

struct CheckRun {
    SystemConfig config;
    Tick stable_start = 0;
    Tick stable_length = -1;
    std::uint64_t states_generated = 0;
    std::uint64_t distinct_states = 0;
    double elapsed_seconds = 0;
    std::vector<std::uint64_t> level_sizes;  // distinct states per tick
};

struct ExploreOptions {
    std::int64_t slack = 8;
    std::uint64_t max_states = 200'000'000;
    int jobs = 1;  // 1: serial reference; otherwise OpenMP threads (0 = runtime default)
};

// Breadth-first search over ticks. Before tick x every machine action except elections, drops
// and stale deliveries may fire; at tick x a non-faulty proposer starts an election with a fresh
// highest ballot; afterwards only acceptors and the elected leader act, with no faults.
// stable_length is the largest (T - x) over behaviours, T the first tick where Each-Vote holds.
CheckRun explore(const SystemConfig& config, Tick stable_start, const ExploreOptions& opts = {});
CheckRun explore_serial(const SystemConfig& config, Tick stable_start, const ExploreOptions& opts = {});
CheckRun explore_parallel(const SystemConfig& config, Tick stable_start, const ExploreOptions& opts = {});

} // namespace livelab::mc
