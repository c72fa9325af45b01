#include "livelab/paxos/machine.hpp"

#include <algorithm>
#include <map>

#include "livelab/errors.hpp"

namespace livelab::paxos {

using temporal::Message;

const char* kind_name(ActionKind k) {
    switch (k) {
    case ActionKind::ProposerSendPrepare: return "ProposerSendPrepare";
    case ActionKind::AcceptorPromise: return "AcceptorPromise";
    case ActionKind::ProposerSendAccept: return "ProposerSendAccept";
    case ActionKind::AcceptorVote: return "AcceptorVote";
    case ActionKind::Learn: return "Learn";
    case ActionKind::DeliverMessage: return "DeliverMessage";
    case ActionKind::DropMessage: return "DropMessage";
    case ActionKind::Crash: return "Crash";
    case ActionKind::Recover: return "Recover";
    case ActionKind::StartLeaderElection: return "StartLeaderElection";
    }
    return "?";
}

bool MachineState::same_core(const MachineState& o) const {
    return proposers == o.proposers && acceptors == o.acceptors && flight == o.flight && crashed == o.crashed &&
           votes == o.votes && learned == o.learned;
}

Machine::Machine(SystemConfig config) : cfg_(std::move(config)) {
    cfg_.validate();
    if (cfg_.size() > 64) throw Error("at most 64 processes are supported");
    proposer_ordinal_.assign(cfg_.size(), -1);
    acceptor_ordinal_.assign(cfg_.size(), -1);
    for (std::size_t p = 0; p < cfg_.size(); ++p) {
        switch (cfg_.processes[p].role) {
        case Role::Proposer:
            proposer_ordinal_[p] = static_cast<int>(props_.size());
            props_.push_back(p);
            servers_.push_back(p);
            break;
        case Role::Acceptor:
            acceptor_ordinal_[p] = static_cast<int>(accs_.size());
            accs_.push_back(p);
            servers_.push_back(p);
            break;
        case Role::Client: clients_.push_back(p); break;
        case Role::Server: throw Error("the Paxos machine needs proposer and acceptor roles");
        }
    }
    if (props_.empty() || accs_.empty()) throw Error("the Paxos machine needs at least one proposer and one acceptor");
    if (props_.size() > 99) throw Error("too many proposers for round ids");
    for (const auto& q : cfg_.quorums) {
        std::uint64_t mask = 0;
        for (ProcessId p : q) {
            int a = acceptor_ordinal_.at(raw(p));
            if (a < 0) throw InvalidQuorumSystem("quorum member " + cfg_.name(p) + " is not an acceptor");
            mask |= std::uint64_t{1} << a;
        }
        quorum_masks_.push_back(mask);
    }
    for (auto v : cfg_.values)
        if (v < 1 || v > 127) throw Error("machine values must lie in 1..127");
}

MachineState Machine::init(bool record_history) const {
    MachineState s;
    s.proposers.resize(props_.size());
    for (std::size_t k = 0; k < props_.size(); ++k)
        s.proposers[k].value = static_cast<std::uint8_t>(cfg_.values.empty() ? 1 : cfg_.values[k % cfg_.values.size()]);
    s.acceptors.resize(accs_.size());
    s.learned.assign(cfg_.size(), 0);
    if (record_history) {
        auto h = std::make_shared<History>();
        for (std::size_t k = 0; k < clients_.size() && !cfg_.values.empty(); ++k)
            h->requested.insert({pid(static_cast<std::uint16_t>(clients_[k])), cfg_.values[k % cfg_.values.size()]});
        s.history = std::move(h);
    }
    return s;
}

bool Machine::quorum_of(const std::vector<std::uint8_t>& acceptor_indices) const {
    std::uint64_t mask = 0;
    for (auto a : acceptor_indices) mask |= std::uint64_t{1} << acceptor_ordinal_[a];
    return std::any_of(quorum_masks_.begin(), quorum_masks_.end(), [&](std::uint64_t q) { return (q & mask) == q; });
}

bool Machine::has_live_quorum(const MachineState& s) const {
    std::uint64_t live = 0;
    for (std::size_t k = 0; k < accs_.size(); ++k)
        if (!s.is_crashed(accs_[k])) live |= std::uint64_t{1} << k;
    return std::any_of(quorum_masks_.begin(), quorum_masks_.end(), [&](std::uint64_t q) { return (q & live) == q; });
}

bool Machine::round_allowed(Ballot b) const {
    return std::binary_search(cfg_.rounds.begin(), cfg_.rounds.end(), b.round());
}

std::uint8_t Machine::max_counter(const MachineState& s) const {
    std::uint8_t mx = 0;
    for (const auto& p : s.proposers) mx = std::max(mx, p.ballot.counter);
    return mx;
}

std::optional<std::size_t> Machine::top_proposer(const MachineState& s) const {
    std::optional<std::size_t> best;
    bool tie = false;
    for (std::size_t k = 0; k < s.proposers.size(); ++k) {
        if (s.proposers[k].ballot.none()) continue;
        if (!best || s.proposers[*best].ballot < s.proposers[k].ballot) {
            best = k;
            tie = false;
        } else if (s.proposers[*best].ballot == s.proposers[k].ballot) {
            tie = true;
        }
    }
    if (tie) return std::nullopt;
    return best;
}

// A message that no later step can ever consume.
bool Machine::stale(const MachineState& s, const Msg& m) const {
    switch (m.kind) {
    case MsgKind::Prepare: return m.ballot <= s.acceptors[acceptor_ordinal_[m.to]].promised;
    case MsgKind::Accept: return m.ballot < s.acceptors[acceptor_ordinal_[m.to]].promised;
    case MsgKind::Promise: {
        const auto& p = s.proposers[proposer_ordinal_[m.to]];
        return !(p.phase == Phase::Preparing && p.ballot == m.ballot);
    }
    case MsgKind::Vote: return s.learned[m.to] != 0;
    case MsgKind::Response: return true;
    }
    return false;
}

std::vector<Action> Machine::enabled(const MachineState& s) const {
    std::vector<Action> out;
    const auto alive = [&](std::size_t p) { return !s.is_crashed(p); };

    for (std::size_t k = 0; k < props_.size(); ++k) {
        const std::size_t p = props_[k];
        if (!alive(p)) continue;
        const auto& st = s.proposers[k];
        const auto actor = static_cast<std::uint8_t>(p);
        if (st.phase == Phase::Idle && st.ballot.none() &&
            round_allowed(Ballot{1, static_cast<std::uint8_t>(k + 1)}))
            out.push_back({ActionKind::ProposerSendPrepare, actor});
        if (st.phase == Phase::Preparing) {
            std::vector<std::uint8_t> from;
            for (const auto& m : s.flight)
                if (m.kind == MsgKind::Promise && m.to == p && m.ballot == st.ballot) from.push_back(m.from);
            if (quorum_of(from)) out.push_back({ActionKind::ProposerSendAccept, actor});
        }
        const Ballot next{static_cast<std::uint8_t>(max_counter(s) + 1), static_cast<std::uint8_t>(k + 1)};
        if (round_allowed(next)) out.push_back({ActionKind::StartLeaderElection, actor, {}, next});
    }

    for (const auto& m : s.flight) {
        if (!alive(m.to)) continue;
        if (m.kind == MsgKind::Prepare && m.ballot > s.acceptors[acceptor_ordinal_[m.to]].promised)
            out.push_back({ActionKind::AcceptorPromise, m.to, m});
        if (m.kind == MsgKind::Accept && m.ballot >= s.acceptors[acceptor_ordinal_[m.to]].promised)
            out.push_back({ActionKind::AcceptorVote, m.to, m});
        if (stale(s, m)) out.push_back({ActionKind::DeliverMessage, m.to, m});
    }

    for (std::size_t p : servers_) {
        if (!alive(p) || s.learned[p] != 0) continue;
        std::map<std::pair<Ballot, std::uint8_t>, std::vector<std::uint8_t>> groups;
        for (const auto& m : s.flight)
            if (m.kind == MsgKind::Vote && m.to == p) groups[{m.ballot, m.value}].push_back(m.from);
        for (const auto& [g, from] : groups)
            if (quorum_of(from)) out.push_back({ActionKind::Learn, static_cast<std::uint8_t>(p), {}, g.first, g.second});
    }

    for (const auto& m : s.flight) out.push_back({ActionKind::DropMessage, m.to, m});
    for (std::size_t p : servers_)
        out.push_back({alive(p) ? ActionKind::Crash : ActionKind::Recover, static_cast<std::uint8_t>(p)});

    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool Machine::is_enabled(const MachineState& s, const Action& a) const {
    auto en = enabled(s);
    return std::binary_search(en.begin(), en.end(), a);
}

Message Machine::message(const Msg& m) const {
    switch (m.kind) {
    case MsgKind::Prepare: return {"prepare", {m.ballot.round()}};
    case MsgKind::Promise: return {"promise", {m.ballot.round(), m.vballot.round(), m.value}};
    case MsgKind::Accept: return {"accept", {m.ballot.round(), m.value}};
    case MsgKind::Vote: return {"vote", {m.ballot.round(), m.value}};
    case MsgKind::Response: return {"resp", {m.value, cfg_.result_of(m.value)}};
    }
    return {};
}

void Machine::send(MachineState& s, History* h, Msg m) const {
    s.flight.insert(std::upper_bound(s.flight.begin(), s.flight.end(), m), m);
    if (h) h->sent.insert({pid(m.from), message(m), pid(m.to)});
}

void Machine::consume(MachineState& s, History* h, const Msg& m) const {
    auto it = std::lower_bound(s.flight.begin(), s.flight.end(), m);
    if (it == s.flight.end() || *it != m) throw ActionNotEnabled("message not in flight");
    s.flight.erase(it);
    if (h) {
        h->received.insert({pid(m.to), message(m), pid(m.from)});
        if (m.kind == MsgKind::Response) h->responded.insert({pid(m.to), m.value, cfg_.result_of(m.value)});
    }
}

MachineState Machine::apply(const MachineState& s, const Action& a) const {
    if (!is_enabled(s, a)) throw ActionNotEnabled(describe(a) + " is not enabled at tick " + std::to_string(s.tick));
    return step(s, a);
}

MachineState Machine::step(const MachineState& s, const Action& a) const {
    MachineState n = s;
    n.tick = s.tick + 1;
    std::shared_ptr<History> hist;
    if (s.history) hist = std::make_shared<History>(*s.history);
    History* h = hist.get();
    const auto p = static_cast<std::size_t>(a.actor);

    auto prepare_all = [&](std::size_t k, Ballot b) {
        auto& st = n.proposers[k];
        st.ballot = b;
        st.phase = Phase::Preparing;
        for (std::size_t acc : accs_)
            send(n, h, Msg{MsgKind::Prepare, a.actor, static_cast<std::uint8_t>(acc), b, {}, 0});
    };

    switch (a.kind) {
    case ActionKind::ProposerSendPrepare: {
        const auto k = static_cast<std::size_t>(proposer_ordinal_[p]);
        prepare_all(k, Ballot{1, static_cast<std::uint8_t>(k + 1)});
        break;
    }
    case ActionKind::StartLeaderElection: prepare_all(static_cast<std::size_t>(proposer_ordinal_[p]), a.ballot); break;
    case ActionKind::AcceptorPromise: {
        consume(n, h, a.msg);
        auto& acc = n.acceptors[acceptor_ordinal_[p]];
        acc.promised = a.msg.ballot;
        send(n, h, Msg{MsgKind::Promise, a.actor, a.msg.from, a.msg.ballot, acc.vballot, acc.vvalue});
        break;
    }
    case ActionKind::ProposerSendAccept: {
        auto& st = n.proposers[proposer_ordinal_[p]];
        std::vector<Msg> proms;
        for (const auto& m : s.flight)
            if (m.kind == MsgKind::Promise && m.to == p && m.ballot == st.ballot) proms.push_back(m);
        Ballot best;
        std::uint8_t v = st.value;
        for (const auto& m : proms) {
            consume(n, h, m);
            if (!m.vballot.none() && best < m.vballot) {
                best = m.vballot;
                v = m.value;
            }
        }
        st.phase = Phase::Accepting;
        for (std::size_t acc : accs_)
            send(n, h, Msg{MsgKind::Accept, a.actor, static_cast<std::uint8_t>(acc), st.ballot, {}, v});
        break;
    }
    case ActionKind::AcceptorVote: {
        consume(n, h, a.msg);
        auto& acc = n.acceptors[acceptor_ordinal_[p]];
        acc.promised = acc.vballot = a.msg.ballot;
        acc.vvalue = a.msg.value;
        Vote vt{a.actor, a.msg.ballot, a.msg.value};
        auto it = std::lower_bound(n.votes.begin(), n.votes.end(), vt);
        if (it == n.votes.end() || *it != vt) n.votes.insert(it, vt);
        for (std::size_t srv : servers_)
            send(n, h, Msg{MsgKind::Vote, a.actor, static_cast<std::uint8_t>(srv), a.msg.ballot, {}, a.msg.value});
        break;
    }
    case ActionKind::Learn: {
        std::vector<Msg> used;
        for (const auto& m : s.flight)
            if (m.kind == MsgKind::Vote && m.to == p && m.ballot == a.ballot && m.value == a.value) used.push_back(m);
        for (const auto& m : used) consume(n, h, m);
        n.learned[p] = a.value;
        if (proposer_ordinal_[p] >= 0)
            for (std::size_t c : clients_)
                send(n, h, Msg{MsgKind::Response, a.actor, static_cast<std::uint8_t>(c), {}, {}, a.value});
        break;
    }
    case ActionKind::DeliverMessage: consume(n, h, a.msg); break;
    case ActionKind::DropMessage: {
        auto it = std::lower_bound(n.flight.begin(), n.flight.end(), a.msg);
        if (it == n.flight.end() || *it != a.msg) throw ActionNotEnabled("message not in flight");
        n.flight.erase(it);
        break;
    }
    case ActionKind::Crash: n.crashed |= std::uint64_t{1} << p; break;
    case ActionKind::Recover: {
        n.crashed &= ~(std::uint64_t{1} << p);
        if (proposer_ordinal_[p] >= 0) n.proposers[proposer_ordinal_[p]].phase = Phase::Idle;
        break;
    }
    }
    n.history = std::move(hist);
    return n;
}

temporal::ObservationState Machine::observe(const MachineState& s) const {
    temporal::ObservationState o;
    for (std::size_t p = 0; p < cfg_.size(); ++p)
        if (!s.is_crashed(p)) o.nf_procs.insert(pid(static_cast<std::uint16_t>(p)));
    for (std::size_t p : servers_) o.roster.insert(pid(static_cast<std::uint16_t>(p)));
    Ballot top;
    for (std::size_t k = 0; k < props_.size(); ++k)
        if (!s.is_crashed(props_[k]) && s.proposers[k].phase != Phase::Idle) top = std::max(top, s.proposers[k].ballot);
    for (std::size_t k = 0; k < props_.size(); ++k)
        if (!top.none() && !s.is_crashed(props_[k]) && s.proposers[k].phase != Phase::Idle && s.proposers[k].ballot == top)
            o.primaries.insert(pid(static_cast<std::uint16_t>(props_[k])));
    for (const auto& v : s.votes) o.voted.insert({pid(v.acceptor), v.ballot.round(), 1, v.value});
    for (std::size_t p = 0; p < cfg_.size(); ++p) {
        if (s.learned[p] == 0) continue;
        o.learned.insert({pid(static_cast<std::uint16_t>(p)), 1, s.learned[p]});
        o.executed.insert({pid(static_cast<std::uint16_t>(p)), 1, s.learned[p]});
    }
    if (s.history) {
        o.sent = s.history->sent;
        o.received = s.history->received;
        o.responded = s.history->responded;
        o.requested = s.history->requested;
    }
    return o;
}

std::optional<std::string> Machine::safety_violation(const MachineState& s) const {
    std::map<std::pair<Ballot, std::uint8_t>, std::vector<std::uint8_t>> groups;
    for (const auto& v : s.votes) groups[{v.ballot, v.value}].push_back(v.acceptor);
    std::set<std::uint8_t> chosen;
    for (const auto& [g, who] : groups)
        if (quorum_of(who)) chosen.insert(g.second);
    if (chosen.size() > 1) return "two values have a quorum of same-round votes";
    for (std::size_t p = 0; p < cfg_.size(); ++p)
        if (s.learned[p] != 0 && !chosen.count(s.learned[p]))
            return cfg_.name(pid(static_cast<std::uint16_t>(p))) + " learned a value without a quorum of votes";
    for (std::size_t k = 0; k < accs_.size(); ++k)
        if (s.acceptors[k].promised < s.acceptors[k].vballot) return "acceptor vote above its promise";
    return std::nullopt;
}

bool Machine::each_vote(const MachineState& s) const {
    std::map<std::pair<Ballot, std::uint8_t>, std::vector<std::uint8_t>> groups;
    for (const auto& v : s.votes) groups[{v.ballot, v.value}].push_back(v.acceptor);
    return std::any_of(groups.begin(), groups.end(), [&](const auto& g) { return quorum_of(g.second); });
}

std::string Machine::key(const MachineState& s, bool with_tick) const {
    std::string k;
    k.reserve(16 + 3 * s.proposers.size() + 5 * s.acceptors.size() + 8 * s.flight.size() + 4 * s.votes.size() +
              s.learned.size());
    auto put = [&](std::uint8_t b) { k.push_back(static_cast<char>(b)); };
    if (with_tick)
        for (int i = 0; i < 8; ++i) put(static_cast<std::uint8_t>(static_cast<std::uint64_t>(s.tick) >> (8 * i)));
    for (int i = 0; i < 8; ++i) put(static_cast<std::uint8_t>(s.crashed >> (8 * i)));
    for (const auto& p : s.proposers) {
        put(p.ballot.counter);
        put(p.ballot.proposer);
        put(static_cast<std::uint8_t>(p.phase));
        put(p.value);
    }
    for (const auto& a : s.acceptors) {
        put(a.promised.counter);
        put(a.promised.proposer);
        put(a.vballot.counter);
        put(a.vballot.proposer);
        put(a.vvalue);
    }
    put(0xFF);
    for (const auto& m : s.flight) {
        put(static_cast<std::uint8_t>(m.kind));
        put(m.from);
        put(m.to);
        put(m.ballot.counter);
        put(m.ballot.proposer);
        put(m.vballot.counter);
        put(m.vballot.proposer);
        put(m.value);
    }
    put(0xFE);
    for (const auto& v : s.votes) {
        put(v.acceptor);
        put(v.ballot.counter);
        put(v.ballot.proposer);
        put(v.value);
    }
    for (auto l : s.learned) put(l);
    return k;
}

std::string Machine::describe(const Action& a) const {
    std::string s = kind_name(a.kind);
    s += "(" + cfg_.name(pid(a.actor));
    switch (a.kind) {
    case ActionKind::AcceptorPromise:
    case ActionKind::AcceptorVote:
    case ActionKind::DeliverMessage:
    case ActionKind::DropMessage:
        s += ", " + cfg_.name(pid(a.msg.from)) + "->" + cfg_.name(pid(a.msg.to)) + " " + message(a.msg).str();
        break;
    case ActionKind::Learn: s += ", " + std::to_string(a.ballot.round()) + ", " + std::to_string(a.value); break;
    case ActionKind::StartLeaderElection: s += ", " + std::to_string(a.ballot.round()); break;
    default: break;
    }
    return s + ")";
}

temporal::Trace trace_of(const Machine& m, const std::vector<MachineState>& states, std::optional<Tick> loop_start) {
    temporal::Trace t{m.config(), {}, loop_start};
    t.states.reserve(states.size());
    for (const auto& s : states) t.states.push_back(m.observe(s));
    return t;
}

temporal::Trace record(const Machine& m, const std::vector<Action>& actions) {
    std::vector<MachineState> states{m.init()};
    for (const auto& a : actions) states.push_back(m.apply(states.back(), a));
    return trace_of(m, states);
}

} // namespace livelab::paxos
