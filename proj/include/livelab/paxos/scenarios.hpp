#pragma once

#include "livelab/temporal/trace.hpp"

namespace livelab::paxos {

// Servers S1..S3. S1 leads with value 1 voted by {S1,S2}, S1 fails, S3 leads and enforces
// value 3 onto S2, S3 fails before anyone learns, S1 returns; the leadership pattern repeats.
temporal::Trace raft_eachvote_lasso();

// Replicas R1, R2 and clients c1, c2. Slot 1 is decided with c2's value; c1's value keeps
// losing slot 2 to re-proposals while both replicas stay healthy.
temporal::Trace paxos_complex_livelock_lasso();

} // namespace livelab::paxos
