#include "livelab/config.hpp"

#include <algorithm>
#include <set>

#include "livelab/errors.hpp"

namespace livelab {

namespace {

void combinations(const std::vector<ProcessId>& xs, std::size_t k, std::size_t from, Quorum& cur,
                  std::vector<Quorum>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = from; i < xs.size(); ++i) {
        cur.push_back(xs[i]);
        combinations(xs, k, i + 1, cur, out);
        cur.pop_back();
    }
}

} // namespace

std::vector<Quorum> SystemConfig::majorities(const std::vector<ProcessId>& members) {
    std::vector<ProcessId> xs = members;
    std::sort(xs.begin(), xs.end());
    std::vector<Quorum> out;
    Quorum cur;
    combinations(xs, xs.size() / 2 + 1, 0, cur, out);
    return out;
}

SystemConfig SystemConfig::paxos(int proposers, int acceptors, int clients, int round_bound) {
    if (proposers < 1 || acceptors < 1) throw Error("a Paxos configuration needs at least one proposer and one acceptor");
    if (clients < 0 || round_bound < 1) throw Error("invalid client count or round bound");
    SystemConfig c;
    for (int k = 1; k <= proposers; ++k) c.processes.push_back({"p" + std::to_string(k), Role::Proposer});
    for (int k = 1; k <= acceptors; ++k) c.processes.push_back({"a" + std::to_string(k), Role::Acceptor});
    for (int k = 1; k <= clients; ++k) c.processes.push_back({"c" + std::to_string(k), Role::Client});
    c.quorums = majorities(c.acceptors());
    for (int v = 1; v <= proposers; ++v) c.values.push_back(v);
    for (int n = 1; n <= round_bound; ++n)
        for (int k = 1; k <= proposers; ++k) c.rounds.push_back(n * kRoundStride + k);
    return c;
}

SystemConfig SystemConfig::servers(const std::vector<std::string>& names, int clients,
                                   std::vector<std::int64_t> values, std::vector<std::int64_t> rounds) {
    SystemConfig c;
    for (const auto& n : names) c.processes.push_back({n, Role::Server});
    for (int k = 1; k <= clients; ++k) c.processes.push_back({"c" + std::to_string(k), Role::Client});
    c.quorums = majorities(c.servers());
    c.values = std::move(values);
    c.rounds = std::move(rounds);
    std::sort(c.values.begin(), c.values.end());
    std::sort(c.rounds.begin(), c.rounds.end());
    return c;
}

void SystemConfig::validate() const {
    std::set<std::string> names;
    for (const auto& p : processes)
        if (!names.insert(p.name).second) throw Error("duplicate process name '" + p.name + "'");
    if (quorums.empty()) throw InvalidQuorumSystem("quorum system is empty");
    for (const auto& q : quorums) {
        if (q.empty()) throw InvalidQuorumSystem("empty quorum");
        if (!std::is_sorted(q.begin(), q.end())) throw InvalidQuorumSystem("quorum members must be sorted");
        for (auto p : q)
            if (raw(p) >= processes.size() || !is_server(p)) throw InvalidQuorumSystem("quorum member is not a server");
    }
    for (std::size_t a = 0; a < quorums.size(); ++a)
        for (std::size_t b = a + 1; b < quorums.size(); ++b) {
            std::vector<ProcessId> common;
            std::set_intersection(quorums[a].begin(), quorums[a].end(), quorums[b].begin(), quorums[b].end(),
                                  std::back_inserter(common));
            if (common.empty()) throw InvalidQuorumSystem("two quorums do not intersect");
        }
    if (!std::is_sorted(values.begin(), values.end()) || !std::is_sorted(rounds.begin(), rounds.end()))
        throw Error("values and rounds must be sorted");
    if (slot_bound < 1) throw Error("slot bound must be positive");
}

std::vector<ProcessId> SystemConfig::with_role(Role r) const {
    std::vector<ProcessId> out;
    for (std::size_t k = 0; k < processes.size(); ++k)
        if (processes[k].role == r) out.push_back(pid(static_cast<std::uint16_t>(k)));
    return out;
}

std::vector<ProcessId> SystemConfig::servers() const {
    std::vector<ProcessId> out;
    for (std::size_t k = 0; k < processes.size(); ++k)
        if (processes[k].role != Role::Client) out.push_back(pid(static_cast<std::uint16_t>(k)));
    return out;
}

bool SystemConfig::is_server(ProcessId p) const {
    return raw(p) < processes.size() && processes[raw(p)].role != Role::Client;
}

const std::string& SystemConfig::name(ProcessId p) const {
    if (raw(p) >= processes.size()) throw Error("process id out of range");
    return processes[raw(p)].name;
}

std::optional<ProcessId> SystemConfig::find(std::string_view n) const {
    for (std::size_t k = 0; k < processes.size(); ++k)
        if (processes[k].name == n) return pid(static_cast<std::uint16_t>(k));
    return std::nullopt;
}

bool SystemConfig::contains_quorum(const std::vector<ProcessId>& members) const {
    return std::any_of(quorums.begin(), quorums.end(), [&](const Quorum& q) {
        return std::includes(members.begin(), members.end(), q.begin(), q.end());
    });
}

} // namespace livelab
