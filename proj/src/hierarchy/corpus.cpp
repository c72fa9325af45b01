#include "livelab/hierarchy/corpus.hpp"

#include <algorithm>
#include <map>

namespace livelab::hierarchy {

using temporal::ObservationState;
using temporal::Trace;

namespace {

template <class Fact>
struct Timed {
    Tick at;
    Fact fact;
};

enum class NfMode { AllUp, OneDown, Rotate, MajorityDown, Random, EdgeBurst };
enum class PrimaryMode { Fixed, Rotating, None, Random };

struct Builder {
    std::mt19937_64& rng;
    SystemConfig cfg;
    std::vector<ProcessId> servers, clients, procs;

    std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng() % n); }
    bool coin(double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p; }

    // Delays cluster on both sides of the Sure bounds (delay D + 1 still satisfies Sure(D)).
    Tick delay() {
        constexpr Tick kDelays[] = {0, 1, 2, 3, 4, 5, 6, 7, 2, 3, 4};
        return kDelays[pick(std::size(kDelays))];
    }

    std::set<ProcessId> nf_at(NfMode mode, Tick i, Tick period, ProcessId fixed) {
        std::set<ProcessId> up(servers.begin(), servers.end());
        const std::size_t n = servers.size();
        switch (mode) {
        case NfMode::AllUp: break;
        case NfMode::OneDown: up.erase(fixed); break;
        case NfMode::Rotate: up.erase(servers[static_cast<std::size_t>(i) % n]); break;
        case NfMode::MajorityDown:
            for (std::size_t k = 0; k < n / 2 + 1; ++k) up.erase(servers[(raw(fixed) + k) % n]);
            break;
        case NfMode::Random:
            for (auto s : servers)
                if (coin(0.3)) up.erase(s);
            break;
        case NfMode::EdgeBurst:
            if (i == 0 || i == period - 1)
                for (std::size_t k = 0; k < n / 2 + 1; ++k) up.erase(servers[(raw(fixed) + k) % n]);
            break;
        }
        return up;
    }

    std::set<ProcessId> primaries_at(PrimaryMode mode, Tick i, ProcessId fixed) {
        switch (mode) {
        case PrimaryMode::Fixed: return {fixed};
        case PrimaryMode::Rotating: return {servers[static_cast<std::size_t>(i) % servers.size()]};
        case PrimaryMode::None: return {};
        case PrimaryMode::Random: {
            std::set<ProcessId> out;
            for (auto s : servers)
                if (coin(0.25)) out.insert(s);
            return out;
        }
        }
        return {};
    }

    NfMode nf_mode() { return static_cast<NfMode>(pick(6)); }
    PrimaryMode primary_mode() { return coin(0.5) ? PrimaryMode::Fixed : static_cast<PrimaryMode>(pick(4)); }
};

} // namespace

Trace random_lasso(std::mt19937_64& rng) {
    const int n_servers = 3 + static_cast<int>(rng() % 3);
    const int n_clients = 1 + static_cast<int>(rng() % 2);
    std::vector<std::string> names;
    for (int k = 1; k <= n_servers; ++k) names.push_back("S" + std::to_string(k));
    Builder b{rng, SystemConfig::servers(names, n_clients, {1, 2}, {1, 2}), {}, {}, {}};
    b.servers = b.cfg.servers();
    b.clients = b.cfg.clients();
    b.procs = b.servers;
    b.procs.insert(b.procs.end(), b.clients.begin(), b.clients.end());

    // Histories first; the prefix is stretched to cover every event.
    std::vector<Timed<temporal::SentFact>> sent;
    std::vector<Timed<temporal::ReceivedFact>> received;
    const std::size_t n_msgs = 1 + b.pick(4);
    for (std::size_t k = 0; k < n_msgs; ++k) {
        const auto from = b.procs[b.pick(b.procs.size())];
        auto to = b.procs[b.pick(b.procs.size())];
        if (to == from) to = b.procs[(raw(from) + 1) % b.procs.size()];
        temporal::Message msg{"m", {static_cast<std::int64_t>(k)}};
        const Tick at = static_cast<Tick>(b.pick(4));
        sent.push_back({at, {from, msg, to}});
        if (!b.coin(0.2)) received.push_back({at + b.delay(), {to, msg, from}});
    }

    std::vector<Timed<temporal::VoteFact>> votes;
    std::map<std::int64_t, std::pair<std::size_t, Tick>> support;  // value -> (voters in round 1, last vote)
    const std::int64_t round = b.cfg.rounds[b.pick(b.cfg.rounds.size())];
    for (auto s : b.servers) {
        if (!b.coin(0.6)) continue;
        const std::int64_t v = b.coin(0.8) ? 1 : 2;
        const Tick at = static_cast<Tick>(b.pick(5));
        votes.push_back({at, {s, round, 1, v}});
        auto& [count, last] = support[v];
        ++count;
        last = std::max(last, at);
    }
    if (b.coin(0.2)) votes.push_back({0, {b.servers[0], 3 - round, 1, 2}});

    std::vector<Timed<temporal::DecisionFact>> learned, executed;
    std::vector<Timed<temporal::ResponseFact>> responded;
    std::optional<std::int64_t> chosen;
    Tick chosen_at = 0;
    for (const auto& [v, cl] : support)
        if (cl.first >= b.servers.size() / 2 + 1) chosen = v, chosen_at = cl.second;
    std::optional<Tick> first_exec;
    if (chosen) {
        const double learn_p = b.coin(0.5) ? 0.9 : 0.4;
        for (auto s : b.servers) {
            if (!b.coin(learn_p)) continue;
            const Tick lt = chosen_at + static_cast<Tick>(b.pick(3));
            learned.push_back({lt, {s, 1, *chosen}});
            if (b.coin(0.5)) {
                const Tick et = lt + static_cast<Tick>(b.pick(2));
                executed.push_back({et, {s, 1, *chosen}});
                first_exec = std::min(first_exec.value_or(et), et);
            }
        }
        if (first_exec)
            for (auto c : b.clients)
                if (b.coin(0.7)) responded.push_back({*first_exec + static_cast<Tick>(b.pick(2)), {c, *chosen, *chosen}});
    }

    Tick last_event = 0;
    auto bump = [&](const auto& xs) {
        for (const auto& x : xs) last_event = std::max(last_event, x.at);
    };
    bump(sent), bump(received), bump(votes), bump(learned), bump(executed), bump(responded);
    const Tick prefix = std::max<Tick>(last_event, static_cast<Tick>(b.pick(7)));
    const Tick period = 1 + static_cast<Tick>(b.pick(6));

    Trace t;
    t.config = b.cfg;
    t.loop_start = prefix;
    t.states.resize(static_cast<std::size_t>(prefix + period));

    // Prefix and cycle get independent fault and primary patterns.
    const auto pre_nf = b.nf_mode(), cyc_nf = b.nf_mode();
    const auto pre_pr = b.primary_mode(), cyc_pr = b.primary_mode();
    const auto pre_fixed = b.servers[b.pick(b.servers.size())], cyc_fixed = b.servers[b.pick(b.servers.size())];
    const bool shrink_prefix = b.coin(0.2);
    const auto left_out = b.servers[b.pick(b.servers.size())];
    auto prim = b.servers[b.pick(b.servers.size())];
    if (shrink_prefix && prim == left_out) prim = b.servers[(raw(prim) + 1) % b.servers.size()];
    for (Tick i = 0; i < prefix + period; ++i) {
        auto& s = t.states[static_cast<std::size_t>(i)];
        const bool cyc = i >= prefix;
        const Tick local = cyc ? i - prefix : i;
        s.nf_procs = b.nf_at(cyc ? cyc_nf : pre_nf, local, cyc ? period : prefix, cyc ? cyc_fixed : pre_fixed);
        s.primaries = b.primaries_at(cyc ? cyc_pr : pre_pr, local, prim);
        s.roster.insert(b.servers.begin(), b.servers.end());
        if (!cyc && shrink_prefix) s.roster.erase(left_out);
        for (auto c : b.clients) s.nf_procs.insert(c);
    }
    bool cycle_all_up = true;
    for (Tick i = prefix; i < prefix + period; ++i) {
        const auto& s = t.states[static_cast<std::size_t>(i)];
        for (auto p : s.roster) cycle_all_up = cycle_all_up && s.nf_procs.count(p);
    }
    if (cycle_all_up)
        for (Tick i = prefix; i < prefix + period; ++i) t.states[static_cast<std::size_t>(i)].primaries = {prim};

    for (std::size_t k = 0; k < b.clients.size(); ++k)
        t.states[0].requested.insert({b.clients[k], b.cfg.values[k % b.cfg.values.size()]});
    auto place = [&](const auto& xs, auto member) {
        for (const auto& x : xs)
            for (Tick i = x.at; i < prefix + period; ++i) (t.states[static_cast<std::size_t>(i)].*member).insert(x.fact);
    };
    place(sent, &ObservationState::sent);
    place(received, &ObservationState::received);
    place(votes, &ObservationState::voted);
    place(learned, &ObservationState::learned);
    place(executed, &ObservationState::executed);
    place(responded, &ObservationState::responded);
    for (std::size_t i = 1; i < t.states.size(); ++i) t.states[i].requested = t.states[0].requested;
    return t;
}

Trace corpus_trace(std::uint64_t seed, std::size_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::mt19937_64 rng(seq);
    return random_lasso(rng);
}

std::vector<Trace> generate_corpus(const CorpusOptions& opts) {
    std::vector<Trace> out(opts.size);
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(opts.size); ++i)
        out[static_cast<std::size_t>(i)] = corpus_trace(opts.seed, static_cast<std::size_t>(i));
    return out;
}

std::optional<std::string> axiom_violation(const Trace& t) {
    if (t.config.clients().empty()) return "no client";
    if (t.states.empty() || t.states.back().sent.empty()) return "no sent message";
    for (std::size_t i = 0; i < t.states.size(); ++i) {
        const auto& s = t.states[i];
        for (const auto& e : s.executed)
            if (!s.learned.count(e)) return "executed without learning at tick " + std::to_string(i);
        for (const auto& l : s.learned) {
            bool backed = false;
            for (auto r : t.config.rounds) {
                std::vector<ProcessId> voters;
                for (const auto& v : s.voted)
                    if (v.round == r && v.slot == l.slot && v.value == l.value) voters.push_back(v.server);
                std::sort(voters.begin(), voters.end());
                backed = backed || t.config.contains_quorum(voters);
            }
            if (!backed) return "learned without a quorum of votes at tick " + std::to_string(i);
        }
        for (const auto& r : s.responded) {
            const bool backed = std::any_of(s.executed.begin(), s.executed.end(),
                                            [&](const temporal::DecisionFact& e) { return e.value == r.value; });
            if (!backed) return "response without execution at tick " + std::to_string(i);
        }
    }
    if (t.loop_start) {
        const auto l = static_cast<std::size_t>(*t.loop_start);
        bool all_up = true;
        for (std::size_t i = l; i < t.states.size(); ++i) {
            if (t.states[i].roster != t.states[l].roster) return "roster changes inside the cycle";
            for (auto p : t.states[i].roster) all_up = all_up && t.states[i].nf_procs.count(p);
        }
        if (all_up) {
            std::set<ProcessId> fixed = t.states[l].primaries;
            for (std::size_t i = l; i < t.states.size(); ++i)
                for (auto it = fixed.begin(); it != fixed.end();)
                    it = t.states[i].primaries.count(*it) ? std::next(it) : fixed.erase(it);
            // The primary must also be in the tick-0 roster.
            bool ok = false;
            for (auto p : fixed) ok = ok || (t.states[l].roster.count(p) && t.states[0].roster.count(p));
            if (!ok) return "fault-free cycle without a fixed primary";
        }
    }
    return std::nullopt;
}

} // namespace livelab::hierarchy
