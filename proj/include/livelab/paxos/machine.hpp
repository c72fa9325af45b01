#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "livelab/config.hpp"
#include "livelab/temporal/observation.hpp"
#include "livelab/temporal/trace.hpp"

namespace livelab::paxos {

// (counter, proposer ordinal), ordered lexicographically; counter 0 means "none".
struct Ballot {
    std::uint8_t counter = 0;
    std::uint8_t proposer = 0;  // 1-based ordinal

    auto operator<=>(const Ballot&) const = default;
    bool none() const { return counter == 0; }
    std::int64_t round() const { return none() ? 0 : counter * kRoundStride + proposer; }
};

enum class MsgKind : std::uint8_t { Prepare, Promise, Accept, Vote, Response };

// Process indices are ProcessId raw values. Values are 1..127, 0 is "none".
struct Msg {
    MsgKind kind = MsgKind::Prepare;
    std::uint8_t from = 0;
    std::uint8_t to = 0;
    Ballot ballot;
    Ballot vballot;  // Promise: last vote of the acceptor
    std::uint8_t value = 0;

    auto operator<=>(const Msg&) const = default;
};

enum class Phase : std::uint8_t { Idle, Preparing, Accepting };

struct ProposerState {
    Ballot ballot;
    Phase phase = Phase::Idle;
    std::uint8_t value = 0;
    auto operator<=>(const ProposerState&) const = default;
};

struct AcceptorState {
    Ballot promised;
    Ballot vballot;
    std::uint8_t vvalue = 0;
    auto operator<=>(const AcceptorState&) const = default;
};

struct Vote {
    std::uint8_t acceptor = 0;
    Ballot ballot;
    std::uint8_t value = 0;
    auto operator<=>(const Vote&) const = default;
};

struct History {
    std::set<temporal::SentFact> sent;
    std::set<temporal::ReceivedFact> received;
    std::set<temporal::ResponseFact> responded;
    std::set<temporal::RequestFact> requested;
    bool operator==(const History&) const = default;
};

struct MachineState {
    Tick tick = 0;
    std::vector<ProposerState> proposers;
    std::vector<AcceptorState> acceptors;
    std::vector<Msg> flight;              // sorted multiset
    std::uint64_t crashed = 0;            // bit per process index
    std::vector<Vote> votes;              // sorted set, cumulative
    std::vector<std::uint8_t> learned;    // per process index, 0 = nothing
    std::shared_ptr<const History> history;  // null when not recorded

    bool is_crashed(std::size_t p) const { return (crashed >> p) & 1U; }
    // Core equality ignores tick and history.
    bool same_core(const MachineState& o) const;
};

enum class ActionKind : std::uint8_t {
    ProposerSendPrepare, AcceptorPromise, ProposerSendAccept, AcceptorVote, Learn,
    DeliverMessage, DropMessage, Crash, Recover, StartLeaderElection
};

struct Action {
    ActionKind kind = ActionKind::ProposerSendPrepare;
    std::uint8_t actor = 0;  // process index
    Msg msg;                 // consumed message for Promise/Vote/Deliver/Drop
    Ballot ballot;           // Learn group, election ballot
    std::uint8_t value = 0;  // Learn group

    auto operator<=>(const Action&) const = default;
};

const char* kind_name(ActionKind k);

class Machine {
public:
    // Throws InvalidQuorumSystem for intersecting-quorum defects, Error for unusable configs.
    explicit Machine(SystemConfig config);

    const SystemConfig& config() const { return cfg_; }

    MachineState init(bool record_history = true) const;
    std::vector<Action> enabled(const MachineState& s) const;  // sorted, unique
    MachineState apply(const MachineState& s, const Action& a) const;  // throws ActionNotEnabled
    bool is_enabled(const MachineState& s, const Action& a) const;
    temporal::ObservationState observe(const MachineState& s) const;

    // Successor without the enabledness check; `a` must come from enabled(s).
    MachineState step(const MachineState& s, const Action& a) const;

    // Description of the first agreement defect, if any.
    std::optional<std::string> safety_violation(const MachineState& s) const;
    bool each_vote(const MachineState& s) const;

    // Canonical bytes of the core state (no history); tick prepended when requested.
    std::string key(const MachineState& s, bool with_tick) const;

    temporal::Message message(const Msg& m) const;
    std::string describe(const Action& a) const;

    std::size_t proposer_index(std::size_t ordinal) const { return props_.at(ordinal); }
    std::size_t acceptor_index(std::size_t ordinal) const { return accs_.at(ordinal); }
    std::size_t proposer_count() const { return props_.size(); }
    std::size_t acceptor_count() const { return accs_.size(); }
    std::uint8_t max_counter(const MachineState& s) const;
    // Ordinal of the proposer holding the unique highest ballot, if any.
    std::optional<std::size_t> top_proposer(const MachineState& s) const;
    bool has_live_quorum(const MachineState& s) const;
    // A message that no later step can consume; staleness is permanent.
    bool stale(const MachineState& s, const Msg& m) const;

private:
    bool quorum_of(const std::vector<std::uint8_t>& acceptor_indices) const;
    bool round_allowed(Ballot b) const;
    void send(MachineState& s, History* h, Msg m) const;
    void consume(MachineState& s, History* h, const Msg& m) const;

    SystemConfig cfg_;
    std::vector<std::size_t> props_, accs_, servers_, clients_;
    std::vector<int> proposer_ordinal_;  // per process index, -1 otherwise
    std::vector<int> acceptor_ordinal_;
    std::vector<std::uint64_t> quorum_masks_;  // over acceptor ordinals
};

// Runs `actions` from init and records one observation per tick.
temporal::Trace record(const Machine& m, const std::vector<Action>& actions);

// Builds a trace from a recorded state sequence.
temporal::Trace trace_of(const Machine& m, const std::vector<MachineState>& states,
                         std::optional<Tick> loop_start = std::nullopt);

} // namespace livelab::paxos
