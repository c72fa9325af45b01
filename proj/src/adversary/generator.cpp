#include "livelab/adversary/generator.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "livelab/errors.hpp"

namespace livelab::adversary {

using catalog::Kind;
using catalog::Name;
using paxos::Action;
using paxos::ActionKind;
using paxos::MachineState;

namespace {

enum class Policy { Eager, Lazy, Lossy, Blackout, Quiet };
enum class Pattern { Stutter, RotateAcceptors, RotateServers, OneDown, MajorityDown, ProposersDown, RecoverAll };

constexpr Policy kPolicies[] = {Policy::Eager, Policy::Lazy, Policy::Lossy, Policy::Blackout, Policy::Quiet};
constexpr Pattern kPatterns[] = {Pattern::Stutter,      Pattern::RotateAcceptors, Pattern::RotateServers,
                                 Pattern::OneDown,      Pattern::MajorityDown,    Pattern::ProposersDown,
                                 Pattern::RecoverAll};

const char* pattern_name(Pattern p) {
    switch (p) {
    case Pattern::Stutter: return "stutter";
    case Pattern::RotateAcceptors: return "rotate-acceptors";
    case Pattern::RotateServers: return "rotate-servers";
    case Pattern::OneDown: return "one-down";
    case Pattern::MajorityDown: return "majority-down";
    case Pattern::ProposersDown: return "proposers-down";
    case Pattern::RecoverAll: return "recover-all";
    }
    return "?";
}

std::set<Policy> policies_for(const Requirement& r) {
    const bool sat = r.mode == Mode::Satisfy;
    switch (r.id.name) {
    case Name::Raw:
        return sat ? std::set<Policy>{Policy::Eager, Policy::Lazy, Policy::Lossy}
                   : std::set<Policy>{Policy::Blackout, Policy::Quiet};
    case Name::Fair:
        return sat ? std::set<Policy>{Policy::Eager, Policy::Lazy, Policy::Quiet}
                   : std::set<Policy>{Policy::Lossy, Policy::Lazy, Policy::Blackout};
    case Name::Sure:
        return sat ? std::set<Policy>{Policy::Eager, Policy::Quiet}
                   : std::set<Policy>{Policy::Lazy, Policy::Lossy, Policy::Blackout};
    default: return {std::begin(kPolicies), std::end(kPolicies)};
    }
}

bool initiating(ActionKind k) { return k == ActionKind::ProposerSendPrepare || k == ActionKind::StartLeaderElection; }
bool consuming(ActionKind k) {
    return k == ActionKind::AcceptorPromise || k == ActionKind::ProposerSendAccept || k == ActionKind::AcceptorVote ||
           k == ActionKind::Learn || k == ActionKind::DeliverMessage;
}
bool fault(ActionKind k) { return k == ActionKind::Crash || k == ActionKind::Recover; }

class Attempt {
public:
    Attempt(const paxos::Machine& m, std::mt19937_64& rng) : m_(m), rng_(rng), states_{m.init()} {}

    const MachineState& cur() const { return states_.back(); }
    std::size_t steps() const { return acts_.size(); }

    std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
    double coin() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_); }

    void take(const Action& a) {
        acts_.push_back(a);
        states_.push_back(m_.step(cur(), a));
    }

    // One prefix step; false when nothing is admissible under the policy.
    bool prefix_step(Policy pol, double crash_rate) {
        const auto en = m_.enabled(cur());
        std::vector<Action> faults, init, cons, drops;
        for (const auto& a : en) {
            if (fault(a.kind)) faults.push_back(a);
            else if (initiating(a.kind)) init.push_back(a);
            else if (consuming(a.kind)) cons.push_back(a);
            else if (a.kind == ActionKind::DropMessage) drops.push_back(a);
        }
        std::vector<Action> pool;
        if (!faults.empty() && coin() < crash_rate) {
            pool = faults;
        } else {
            switch (pol) {
            case Policy::Eager:
                pool = !cons.empty() && coin() < 0.9 ? cons : init;
                if (pool.empty()) pool = cons;
                break;
            case Policy::Lazy:
                pool = init;
                pool.insert(pool.end(), cons.begin(), cons.end());
                break;
            case Policy::Lossy:
                pool = init;
                pool.insert(pool.end(), cons.begin(), cons.end());
                pool.insert(pool.end(), drops.begin(), drops.end());
                break;
            case Policy::Blackout:
                pool = init;
                pool.insert(pool.end(), drops.begin(), drops.end());
                break;
            case Policy::Quiet: break;
            }
        }
        if (pool.empty()) pool = faults;
        if (pool.empty()) return false;
        take(pool[pick(pool.size())]);
        return true;
    }

    // Consume what is in flight; recover crashed receivers when nothing else moves.
    void drain(bool ordered, std::size_t limit) {
        for (std::size_t i = 0; i < limit && !cur().flight.empty(); ++i) {
            const auto en = m_.enabled(cur());
            std::vector<Action> cons;
            for (const auto& a : en)
                if (consuming(a.kind)) cons.push_back(a);
            if (cons.empty()) {
                std::vector<Action> rec;
                for (const auto& a : en)
                    if (a.kind == ActionKind::Recover)
                        for (const auto& msg : cur().flight)
                            if (msg.to == a.actor) {
                                rec.push_back(a);
                                break;
                            }
                if (rec.empty()) return;
                take(rec[pick(rec.size())]);
                continue;
            }
            take(ordered ? cons.front() : cons[pick(cons.size())]);
        }
    }

    // Appends the cycle; returns the loop start or nothing when the pattern does not apply.
    std::optional<Tick> cycle(Pattern p) {
        const auto& cfg = m_.config();
        auto crash = [&](std::size_t proc) {
            if (!cur().is_crashed(proc)) take(Action{ActionKind::Crash, static_cast<std::uint8_t>(proc)});
        };
        auto rotate = [&](const std::vector<std::size_t>& procs) -> std::optional<Tick> {
            for (auto q : procs)
                if (cur().is_crashed(q)) return std::nullopt;
            const Tick loop = static_cast<Tick>(steps());
            const auto start = m_.observe(cur());
            for (auto q : procs) {
                take(Action{ActionKind::Crash, static_cast<std::uint8_t>(q)});
                take(Action{ActionKind::Recover, static_cast<std::uint8_t>(q)});
            }
            if (!(m_.observe(cur()) == start)) return std::nullopt;
            return loop;
        };
        std::vector<std::size_t> accs, props, servers;
        for (std::size_t k = 0; k < m_.acceptor_count(); ++k) accs.push_back(m_.acceptor_index(k));
        for (std::size_t k = 0; k < m_.proposer_count(); ++k) props.push_back(m_.proposer_index(k));
        for (auto s : cfg.servers()) servers.push_back(raw(s));
        switch (p) {
        case Pattern::Stutter: break;
        case Pattern::RotateAcceptors: return rotate(accs);
        case Pattern::RotateServers: return rotate(servers);
        case Pattern::OneDown: {
            std::vector<std::size_t> alive;
            for (auto s : servers)
                if (!cur().is_crashed(s)) alive.push_back(s);
            if (alive.empty()) return std::nullopt;
            crash(alive[pick(alive.size())]);
            break;
        }
        case Pattern::MajorityDown: {
            std::shuffle(accs.begin(), accs.end(), rng_);
            for (auto a : accs) {
                if (!m_.has_live_quorum(cur())) break;
                crash(a);
            }
            break;
        }
        case Pattern::ProposersDown:
            for (auto q : props) crash(q);
            break;
        case Pattern::RecoverAll:
            for (auto s : servers)
                if (cur().is_crashed(s)) take(Action{ActionKind::Recover, static_cast<std::uint8_t>(s)});
            break;
        }
        return static_cast<Tick>(steps());
    }

    const std::vector<Action>& actions() const { return acts_; }
    const std::vector<MachineState>& states() const { return states_; }

private:
    const paxos::Machine& m_;
    std::mt19937_64& rng_;
    std::vector<MachineState> states_;
    std::vector<Action> acts_;
};

} // namespace

Generated generate(const AssumptionTarget& target, const SystemConfig& config, std::uint64_t seed,
                   const GeneratorOptions& opts) {
    target.check();
    const paxos::Machine m(config);
    std::mt19937_64 rng(seed);

    std::set<Policy> allowed(std::begin(kPolicies), std::end(kPolicies));
    for (const auto& r : target.requirements()) {
        if (r.id.kind != Kind::Link) continue;
        std::set<Policy> p = policies_for(r), both;
        std::set_intersection(allowed.begin(), allowed.end(), p.begin(), p.end(), std::inserter(both, both.end()));
        allowed = both;
    }
    if (allowed.empty()) allowed = {std::begin(kPolicies), std::end(kPolicies)};
    const std::vector<Policy> policies(allowed.begin(), allowed.end());
    constexpr double kCrashRates[] = {0.0, 0.03, 0.1, 0.25};

    std::uint64_t spent = 0, attempts = 0;
    while (spent < opts.step_budget) {
        ++attempts;
        Attempt a(m, rng);
        const Policy pol = policies[a.pick(policies.size())];
        const double crash_rate = kCrashRates[a.pick(4)];
        const std::size_t len = 2 + a.pick(30);
        for (std::size_t i = 0; i < len; ++i)
            if (!a.prefix_step(pol, crash_rate)) break;
        if ((pol == Policy::Eager || pol == Policy::Lazy) && a.coin() < 0.85) a.drain(pol == Policy::Eager, 120);
        const Pattern pat = kPatterns[a.pick(std::size(kPatterns))];
        const auto loop = a.cycle(pat);
        spent += a.steps() + 1;
        if (!loop) continue;

        auto states = a.states();
        const auto n = static_cast<Tick>(states.size()) - 1;
        if (*loop < n) states.pop_back();
        auto trace = paxos::trace_of(m, states, *loop);
        if (!conforms(trace, target)) continue;

        Generated g;
        g.schedule = schedule_of(m, a.actions(), *loop);
        g.schedule.seed = seed;
        g.schedule.pattern = pattern_name(pat);
        g.trace = std::move(trace);
        g.attempts = attempts;
        return g;
    }
    throw CannotRealize("no conforming schedule within " + std::to_string(opts.step_budget) + " steps (" +
                        std::to_string(attempts) + " attempts)");
}

} // namespace livelab::adversary
