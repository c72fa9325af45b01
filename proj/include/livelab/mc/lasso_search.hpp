#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "livelab/catalog/catalog.hpp"
#include "livelab/paxos/machine.hpp"
#include "livelab/temporal/trace.hpp"

namespace livelab::mc {

struct LassoBudget {
    std::uint64_t max_states = 400'000;
    Tick max_depth = 40;
};

struct LassoOptions {
    // After the first election: no further elections, crashes, recoveries or drops.
    bool stable_election = false;
    // Only prefixes containing at least one StartLeaderElection are candidates.
    bool require_election = true;
};

enum class LassoOutcome { Holds, Counterexample, Undetermined };

struct LassoResult {
    LassoOutcome outcome = LassoOutcome::Undetermined;
    std::optional<temporal::Trace> lasso;
    std::vector<paxos::Action> prefix;
    std::string cycle;  // "stutter" or "rotate-acceptors"
    std::uint64_t states = 0;
    std::string bound;  // Holds is bounded by max_depth unless the space was exhausted
};

// The link regime Raw admits every trace; every other assumption admits a trace when it Holds.
bool admitted(const catalog::CatalogId& assumption, const temporal::Trace& t);

// Breadth-first search over machine prefixes; each reached state is closed into lassos by a
// stutter cycle and, when nobody is crashed, by a cycle crashing and recovering each acceptor in
// turn. Returns the first admissible lasso violating the assertion. States are deduplicated on
// the machine core (histories are rebuilt by replay), so the search covers lassos up to the
// eventual-behaviour equivalence of the catalog properties. Stale messages are set aside during
// the search and delivered just before the cycle.
LassoResult check_liveness_lasso(const SystemConfig& config, const catalog::CatalogId& link,
                                 const catalog::CatalogId& server, const catalog::CatalogId& assertion,
                                 const LassoBudget& budget = {}, const LassoOptions& opts = {});

const char* outcome_name(LassoOutcome o);

} // namespace livelab::mc
