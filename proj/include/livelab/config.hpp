#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace livelab {

enum class ProcessId : std::uint16_t {};

constexpr std::uint16_t raw(ProcessId p) { return static_cast<std::uint16_t>(p); }
constexpr ProcessId pid(std::uint16_t v) { return static_cast<ProcessId>(v); }

using Tick = std::int64_t;

enum class Role : std::uint8_t { Proposer, Acceptor, Server, Client };

struct ProcessInfo {
    std::string name;
    Role role;
    bool operator==(const ProcessInfo&) const = default;
};

using Quorum = std::vector<ProcessId>;

// Round ids for Paxos ballots: counter * kRoundStride + proposer ordinal (1-based).
inline constexpr std::int64_t kRoundStride = 100;

struct SystemConfig {
    std::vector<ProcessInfo> processes;
    std::vector<Quorum> quorums;
    std::vector<std::int64_t> values;
    std::vector<std::int64_t> rounds;
    std::int64_t slot_bound = 1;

    // i proposers p1.., j acceptors a1.., clients c1..; majority quorums over acceptors;
    // values 1..i; rounds are ballots with counters 1..round_bound.
    static SystemConfig paxos(int proposers, int acceptors, int clients = 1, int round_bound = 3);
    // Plain servers named by `names` with majority quorums over all of them.
    static SystemConfig servers(const std::vector<std::string>& names, int clients,
                                std::vector<std::int64_t> values, std::vector<std::int64_t> rounds);

    static std::vector<Quorum> majorities(const std::vector<ProcessId>& members);

    // Throws InvalidQuorumSystem on disjoint or empty quorums, Error on other defects.
    void validate() const;

    std::size_t size() const { return processes.size(); }
    std::vector<ProcessId> with_role(Role r) const;
    std::vector<ProcessId> servers() const;  // everything except clients
    std::vector<ProcessId> clients() const { return with_role(Role::Client); }
    std::vector<ProcessId> proposers() const { return with_role(Role::Proposer); }
    std::vector<ProcessId> acceptors() const { return with_role(Role::Acceptor); }
    bool is_server(ProcessId p) const;
    const std::string& name(ProcessId p) const;
    std::optional<ProcessId> find(std::string_view name) const;
    // True when `members` (sorted) includes every process of some quorum.
    bool contains_quorum(const std::vector<ProcessId>& members) const;
    std::int64_t result_of(std::int64_t v) const { return v; }

    bool operator==(const SystemConfig&) const = default;
};

} // namespace livelab
