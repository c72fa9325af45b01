#include "livelab/mc/safety.hpp"

#include <unordered_set>

#include "livelab/paxos/machine.hpp"

namespace livelab::mc {

SafetyReport check_safety(const SystemConfig& config, bool faults, std::uint64_t max_states) {
    const paxos::Machine m(config);
    SafetyReport r;
    std::unordered_set<std::string> seen;
    std::vector<paxos::MachineState> frontier{m.init(false)};
    seen.insert(m.key(frontier[0], false));
    while (!frontier.empty()) {
        std::vector<paxos::MachineState> next;
        for (const auto& s : frontier) {
            ++r.states;
            if (auto bad = m.safety_violation(s); bad && r.violations.size() < 16)
                r.violations.push_back(*bad + " at depth " + std::to_string(s.tick));
            for (std::size_t p = 0; p < s.learned.size(); ++p)
                if (s.learned[p]) {
                    ++r.learned_states;
                    break;
                }
            for (const auto& a : m.enabled(s)) {
                if (!faults && (a.kind == paxos::ActionKind::DropMessage || a.kind == paxos::ActionKind::DeliverMessage ||
                                a.kind == paxos::ActionKind::Crash || a.kind == paxos::ActionKind::Recover))
                    continue;
                ++r.transitions;
                auto n = m.step(s, a);
                // Stale messages can never enable a protocol step again, so states that differ
                // only in them are bisimilar; keep one representative.
                std::erase_if(n.flight, [&](const paxos::Msg& msg) { return m.stale(n, msg); });
                if (seen.insert(m.key(n, false)).second) next.push_back(std::move(n));
            }
            if (seen.size() > max_states) return r;
        }
        frontier = std::move(next);
    }
    r.complete = true;
    return r;
}

} // namespace livelab::mc
