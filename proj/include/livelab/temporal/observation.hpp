#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "livelab/config.hpp"

namespace livelab::temporal {

struct Message {
    std::string kind;
    std::vector<std::int64_t> args;

    auto operator<=>(const Message&) const = default;
    bool operator==(const Message&) const = default;
    std::string str() const;  // kind(a,b,...)
};

struct SentFact {
    ProcessId from;
    Message msg;
    ProcessId to;
    auto operator<=>(const SentFact&) const = default;
    bool operator==(const SentFact&) const = default;
};

struct ReceivedFact {
    ProcessId to;
    Message msg;
    ProcessId from;
    auto operator<=>(const ReceivedFact&) const = default;
    bool operator==(const ReceivedFact&) const = default;
};

struct VoteFact {
    ProcessId server;
    std::int64_t round;
    std::int64_t slot;
    std::int64_t value;
    auto operator<=>(const VoteFact&) const = default;
    bool operator==(const VoteFact&) const = default;
};

struct DecisionFact {
    ProcessId server;
    std::int64_t slot;
    std::int64_t value;
    auto operator<=>(const DecisionFact&) const = default;
    bool operator==(const DecisionFact&) const = default;
};

struct ResponseFact {
    ProcessId client;
    std::int64_t value;
    std::int64_t result;
    auto operator<=>(const ResponseFact&) const = default;
    bool operator==(const ResponseFact&) const = default;
};

struct RequestFact {
    ProcessId client;
    std::int64_t value;
    auto operator<=>(const RequestFact&) const = default;
    bool operator==(const RequestFact&) const = default;
};

struct ObservationState {
    std::set<ProcessId> nf_procs;
    std::set<ProcessId> primaries;
    std::set<ProcessId> roster;
    std::set<SentFact> sent;
    std::set<ReceivedFact> received;
    std::set<VoteFact> voted;
    std::set<DecisionFact> learned;
    std::set<DecisionFact> executed;
    std::set<ResponseFact> responded;
    std::set<RequestFact> requested;

    bool operator==(const ObservationState&) const = default;

    // Every cumulative set of `earlier` is contained in this state's.
    bool extends(const ObservationState& earlier) const;
    bool same_histories(const ObservationState& other) const;
};

} // namespace livelab::temporal
