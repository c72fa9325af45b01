#pragma once

#include <vector>

#include "livelab/paxos/machine.hpp"
#include "livelab/temporal/trace.hpp"

namespace livelab::adversary {

// Preemptive elections keep every accept stale; the last leader crashes and recovers, its
// promises are delivered late, and the cycle crashes and recovers one acceptor at a time.
// Needs at least two proposers and ballot counters up to 3.
temporal::Trace alwq_adversary(const SystemConfig& config);
std::vector<paxos::Action> alwq_adversary_actions(const paxos::Machine& m);

// One prepare broadcast, every message dropped, then a stutter. Needs at least one client.
temporal::Trace raw_blackout(const SystemConfig& config);

} // namespace livelab::adversary
