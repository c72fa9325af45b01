#include "livelab/adversary/constructions.hpp"

#include "livelab/errors.hpp"

namespace livelab::adversary {

using paxos::Action;
using paxos::ActionKind;
using paxos::Ballot;
using paxos::Machine;
using paxos::MachineState;
using paxos::Msg;
using paxos::MsgKind;

namespace {

class Script {
public:
    explicit Script(const Machine& m) : m_(m), states_{m.init()} {}

    void act(const Action& a) {
        states_.push_back(m_.apply(states_.back(), a));
        acts_.push_back(a);
    }
    const MachineState& cur() const { return states_.back(); }

    // Every enabled action of `kind` whose consumed message has the given kind and ballot.
    void all(ActionKind kind, MsgKind msg, Ballot b) {
        while (true) {
            bool found = false;
            for (const auto& a : m_.enabled(cur()))
                if (a.kind == kind && a.msg.kind == msg && a.msg.ballot == b) {
                    act(a);
                    found = true;
                    break;
                }
            if (!found) return;
        }
    }

    void elect(std::uint8_t proposer_proc, Ballot b) { act(Action{ActionKind::StartLeaderElection, proposer_proc, {}, b}); }

    std::vector<MachineState>& states() { return states_; }
    const std::vector<Action>& actions() const { return acts_; }

private:
    const Machine& m_;
    std::vector<MachineState> states_;
    std::vector<Action> acts_;
};

} // namespace

std::vector<Action> alwq_adversary_actions(const Machine& m) {
    if (m.proposer_count() < 2) throw Error("the Alw-Q adversary needs at least two proposers");
    const auto p1 = static_cast<std::uint8_t>(m.proposer_index(0));
    const auto p2 = static_cast<std::uint8_t>(m.proposer_index(1));
    const Ballot b1{1, 1}, b2{2, 2}, b3{3, 1};
    Script s(m);

    // p1 wins promises and sends accepts, which are held back until p2 has taken over.
    s.elect(p1, b1);
    s.all(ActionKind::AcceptorPromise, MsgKind::Prepare, b1);
    s.act(Action{ActionKind::ProposerSendAccept, p1});
    s.elect(p2, b2);
    s.all(ActionKind::AcceptorPromise, MsgKind::Prepare, b2);
    s.all(ActionKind::DeliverMessage, MsgKind::Accept, b1);
    // The same happens to p2.
    s.act(Action{ActionKind::ProposerSendAccept, p2});
    s.elect(p1, b3);
    s.all(ActionKind::AcceptorPromise, MsgKind::Prepare, b3);
    s.all(ActionKind::DeliverMessage, MsgKind::Accept, b2);
    // p1 restarts before using its promises, which then arrive for a ballot it abandoned.
    s.act(Action{ActionKind::Crash, p1});
    s.act(Action{ActionKind::Recover, p1});
    s.all(ActionKind::DeliverMessage, MsgKind::Promise, b3);
    if (!s.cur().flight.empty()) throw Error("Alw-Q adversary left messages in flight");

    // Cycle: one acceptor at a time goes down and comes back.
    for (std::size_t k = 0; k < m.acceptor_count(); ++k) {
        const auto a = static_cast<std::uint8_t>(m.acceptor_index(k));
        s.act(Action{ActionKind::Crash, a});
        s.act(Action{ActionKind::Recover, a});
    }
    return s.actions();
}

temporal::Trace alwq_adversary(const SystemConfig& config) {
    const Machine m(config);
    const auto acts = alwq_adversary_actions(m);
    std::vector<MachineState> states{m.init()};
    for (const auto& a : acts) states.push_back(m.apply(states.back(), a));
    const auto loop = static_cast<Tick>(states.size() - 1 - 2 * m.acceptor_count());
    states.pop_back();
    auto t = paxos::trace_of(m, states, loop);
    t.validate();
    return t;
}

temporal::Trace raw_blackout(const SystemConfig& config) {
    if (config.clients().empty()) throw Error("the blackout trace needs at least one client");
    const Machine m(config);
    Script s(m);
    s.act(Action{ActionKind::ProposerSendPrepare, static_cast<std::uint8_t>(m.proposer_index(0))});
    while (!s.cur().flight.empty()) s.act(Action{ActionKind::DropMessage, s.cur().flight.front().to, s.cur().flight.front()});
    auto t = paxos::trace_of(m, s.states(), static_cast<Tick>(s.states().size()) - 1);
    t.validate();
    return t;
}

} // namespace livelab::adversary
