#include "livelab/mc/lasso_search.hpp"

#include <algorithm>
#include <unordered_set>

#include "livelab/temporal/eval.hpp"

namespace livelab::mc {

using catalog::CatalogId;
using catalog::Kind;
using catalog::Name;
using paxos::Action;
using paxos::ActionKind;
using paxos::MachineState;

namespace {

struct Node {
    std::int64_t parent;
    Action action;
};

bool fair_link(const CatalogId& link) {
    return link.kind == Kind::Link && (link.name == Name::Fair || link.name == Name::Sure);
}

} // namespace

const char* outcome_name(LassoOutcome o) {
    switch (o) {
    case LassoOutcome::Holds: return "Holds";
    case LassoOutcome::Counterexample: return "CounterexampleLasso";
    case LassoOutcome::Undetermined: return "Undetermined";
    }
    return "?";
}

bool admitted(const CatalogId& assumption, const temporal::Trace& t) {
    if (assumption.kind == Kind::Link && assumption.name == Name::Raw) return true;
    return temporal::eval(catalog::property(assumption), t).kind == temporal::Verdict::Kind::Holds;
}

LassoResult check_liveness_lasso(const SystemConfig& config, const CatalogId& link, const CatalogId& server,
                                 const CatalogId& assertion, const LassoBudget& budget, const LassoOptions& opts) {
    const paxos::Machine m(config);
    const auto assertion_expr = catalog::property(assertion);
    const bool no_drops = fair_link(link);

    std::vector<Node> nodes{{-1, {}}};
    struct Open {
        std::size_t node;
        MachineState state;
        bool elected;
    };
    std::vector<Open> frontier{{0, m.init(false), false}};
    std::unordered_set<std::string> seen;
    seen.insert(m.key(frontier[0].state, false) + "0");

    auto path_of = [&](std::size_t n) {
        std::vector<Action> acts;
        for (auto k = static_cast<std::int64_t>(n); nodes[static_cast<std::size_t>(k)].parent >= 0;
             k = nodes[static_cast<std::size_t>(k)].parent)
            acts.push_back(nodes[static_cast<std::size_t>(k)].action);
        return std::vector<Action>(acts.rbegin(), acts.rend());
    };

    auto try_close = [&](const Open& o, LassoResult& out) {
        if (opts.require_election && !o.elected) return false;
        // Without drops, sent minus received is exactly the in-flight set.
        if (no_drops && !o.state.flight.empty()) return false;
        auto acts = path_of(o.node);
        std::vector<MachineState> states{m.init(true)};
        for (const auto& a : acts) states.push_back(m.step(states.back(), a));
        // The search drops stale messages from its states; deliver them for real now.
        while (true) {
            const MachineState& cur = states.back();
            auto it = std::find_if(cur.flight.begin(), cur.flight.end(), [&](const paxos::Msg& msg) {
                return m.stale(cur, msg) && !cur.is_crashed(msg.to);
            });
            if (it == cur.flight.end()) break;
            acts.push_back(Action{ActionKind::DeliverMessage, it->to, *it});
            states.push_back(m.step(cur, acts.back()));
        }
        if (no_drops && !states.back().flight.empty()) return false;
        const MachineState& last = states.back();

        std::vector<std::pair<std::string, std::vector<MachineState>>> cycles;
        cycles.push_back({"stutter", {}});
        if (o.state.crashed == 0 && !opts.stable_election) {
            std::vector<MachineState> rot;
            MachineState cur = last;
            for (std::size_t k = 0; k < m.acceptor_count(); ++k) {
                const auto a = static_cast<std::uint8_t>(m.acceptor_index(k));
                cur = m.step(cur, Action{ActionKind::Crash, a});
                rot.push_back(cur);
                cur = m.step(cur, Action{ActionKind::Recover, a});
                if (k + 1 < m.acceptor_count()) rot.push_back(cur);
            }
            cycles.push_back({"rotate-acceptors", std::move(rot)});
        }
        for (auto& [name, extra] : cycles) {
            std::vector<MachineState> all = states;
            all.insert(all.end(), extra.begin(), extra.end());
            auto t = paxos::trace_of(m, all, static_cast<Tick>(states.size()) - 1);
            if (temporal::eval(assertion_expr, t).kind != temporal::Verdict::Kind::Violated) continue;
            if (!admitted(link, t) || !admitted(server, t)) continue;
            out.outcome = LassoOutcome::Counterexample;
            out.lasso = std::move(t);
            out.prefix = acts;
            out.cycle = name;
            return true;
        }
        return false;
    };

    LassoResult res;
    for (Tick depth = 0; !frontier.empty(); ++depth) {
        for (const auto& o : frontier)
            if (try_close(o, res)) {
                res.states = seen.size();
                return res;
            }
        if (depth == budget.max_depth) {
            res.outcome = LassoOutcome::Holds;
            res.states = seen.size();
            res.bound = "prefixes up to " + std::to_string(budget.max_depth) + " steps";
            return res;
        }
        std::vector<Open> next;
        for (const auto& o : frontier) {
            for (const auto& a : m.enabled(o.state)) {
                if (no_drops && a.kind == ActionKind::DropMessage) continue;
                // An acceptor keeps its state across a crash, so in a prefix a crash is the same
                // as not scheduling it; only proposers (which lose their phase) crash here.
                if ((a.kind == ActionKind::Crash || a.kind == ActionKind::Recover) &&
                    m.config().processes[a.actor].role != Role::Proposer)
                    continue;
                if (opts.stable_election && o.elected &&
                    (a.kind == ActionKind::StartLeaderElection || a.kind == ActionKind::Crash ||
                     a.kind == ActionKind::Recover || a.kind == ActionKind::DropMessage))
                    continue;
                if (a.kind == ActionKind::DeliverMessage) continue;
                auto n = m.step(o.state, a);
                std::erase_if(n.flight, [&](const paxos::Msg& msg) { return m.stale(n, msg); });
                const bool elected = o.elected || a.kind == ActionKind::StartLeaderElection;
                if (!seen.insert(m.key(n, false) + (elected ? "1" : "0")).second) continue;
                nodes.push_back({static_cast<std::int64_t>(o.node), a});
                next.push_back({nodes.size() - 1, std::move(n), elected});
                if (seen.size() > budget.max_states) {
                    res.outcome = LassoOutcome::Undetermined;
                    res.states = seen.size();
                    res.bound = std::to_string(budget.max_states) + " states";
                    return res;
                }
            }
        }
        frontier = std::move(next);
    }
    res.outcome = LassoOutcome::Holds;
    res.states = seen.size();
    res.bound = "exhausted";
    return res;
}

} // namespace livelab::mc
