#include "livelab/mc/explore.hpp"

#include <algorithm>
#include <chrono>
#include <string_view>
#include <unordered_set>

#include <omp.h>

#include "livelab/errors.hpp"
#include "livelab/paxos/machine.hpp"

namespace livelab::mc {

using paxos::ActionKind;
using paxos::Machine;
using paxos::MachineState;

namespace {

bool allowed_before(ActionKind k) {
    switch (k) {
    case ActionKind::ProposerSendPrepare:
    case ActionKind::AcceptorPromise:
    case ActionKind::ProposerSendAccept:
    case ActionKind::AcceptorVote:
    case ActionKind::Learn:
    case ActionKind::Crash:
    case ActionKind::Recover: return true;
    default: return false;
    }
}

enum class Status { Terminal, Expanded, Pruned, Deadlock, TooDeep };

struct Step {
    const Machine& m;
    Tick x;
    Tick depth_limit;

    Status operator()(const MachineState& s, std::vector<MachineState>& out, Tick& length) const {
        if (m.each_vote(s)) {
            length = std::max<Tick>(0, s.tick - x);
            return Status::Terminal;
        }
        if (s.tick - x >= depth_limit) return Status::TooDeep;
        const auto actions = m.enabled(s);
        if (s.tick < x) {
            for (const auto& a : actions)
                if (allowed_before(a.kind)) out.push_back(m.step(s, a));
        } else if (s.tick == x) {
            if (!m.has_live_quorum(s)) return Status::Pruned;
            for (const auto& a : actions)
                if (a.kind == ActionKind::StartLeaderElection) out.push_back(m.step(s, a));
            if (out.empty()) return Status::Pruned;
        } else {
            const auto leader = m.top_proposer(s);
            const std::size_t lp = leader ? m.proposer_index(*leader) : SIZE_MAX;
            for (const auto& a : actions) {
                const bool ok = a.kind == ActionKind::AcceptorPromise || a.kind == ActionKind::AcceptorVote ||
                                (a.kind == ActionKind::ProposerSendAccept && a.actor == lp) ||
                                (a.kind == ActionKind::Learn);
                if (ok) out.push_back(m.step(s, a));
            }
            if (out.empty()) return Status::Deadlock;
        }
        return Status::Expanded;
    }
};

int proposers_of(const SystemConfig& c) { return static_cast<int>(c.proposers().size()); }
int acceptors_of(const SystemConfig& c) { return static_cast<int>(c.acceptors().size()); }

Tick depth_limit(const SystemConfig& c, Tick x, const ExploreOptions& o) {
    return formula_oracle(proposers_of(c), acceptors_of(c), x) + o.slack;
}

[[noreturn]] void fail(Status st, Tick x, Tick limit) {
    if (st == Status::Deadlock)
        throw NoConsensusPath("a stable behaviour stops before Each-Vote (start " + std::to_string(x) + ")");
    throw BudgetExceeded("Each-Vote not reached within " + std::to_string(limit) + " ticks after start " +
                         std::to_string(x));
}

} // namespace

CheckRun explore_serial(const SystemConfig& config, Tick x, const ExploreOptions& opts) {
    if (x < 0) throw Error("stable start must be non-negative");
    const auto t0 = std::chrono::steady_clock::now();
    const Machine m(config);
    const Step step{m, x, depth_limit(config, x, opts)};

    CheckRun run{config, x};
    std::vector<MachineState> frontier{m.init(false)};
    run.states_generated = run.distinct_states = 1;
    run.level_sizes.push_back(1);
    std::vector<MachineState> succ;
    while (!frontier.empty()) {
        std::vector<MachineState> next;
        std::unordered_set<std::string> seen;
        for (const auto& s : frontier) {
            succ.clear();
            Tick len = 0;
            const Status st = step(s, succ, len);
            if (st == Status::Terminal) run.stable_length = std::max(run.stable_length, len);
            if (st == Status::Deadlock || st == Status::TooDeep) fail(st, x, step.depth_limit);
            for (auto& n : succ) {
                ++run.states_generated;
                if (seen.insert(m.key(n, false)).second) next.push_back(std::move(n));
            }
        }
        if (next.empty()) break;
        run.distinct_states += next.size();
        run.level_sizes.push_back(next.size());
        if (run.distinct_states > opts.max_states) throw BudgetExceeded("state budget exceeded");
        frontier = std::move(next);
    }
    run.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return run;
}

CheckRun explore_parallel(const SystemConfig& config, Tick x, const ExploreOptions& opts) {
    if (x < 0) throw Error("stable start must be non-negative");
    const auto t0 = std::chrono::steady_clock::now();
    const Machine m(config);
    const Step step{m, x, depth_limit(config, x, opts)};
    const int threads = opts.jobs > 0 ? opts.jobs : omp_get_max_threads();
    constexpr std::size_t kShards = 64;

    struct Item {
        std::string key;
        std::size_t hash;
        MachineState state;
    };

    CheckRun run{config, x};
    std::vector<MachineState> frontier{m.init(false)};
    run.states_generated = run.distinct_states = 1;
    run.level_sizes.push_back(1);
    while (!frontier.empty()) {
        std::vector<std::vector<Item>> local(static_cast<std::size_t>(threads));
        std::vector<Tick> best(static_cast<std::size_t>(threads), -1);
        std::vector<int> bad(static_cast<std::size_t>(threads), 0);
        const auto n = static_cast<std::int64_t>(frontier.size());

#pragma omp parallel num_threads(threads)
        {
            const auto tid = static_cast<std::size_t>(omp_get_thread_num());
            std::vector<MachineState> succ;
#pragma omp for schedule(static)
            for (std::int64_t i = 0; i < n; ++i) {
                succ.clear();
                Tick len = 0;
                const Status st = step(frontier[static_cast<std::size_t>(i)], succ, len);
                if (st == Status::Terminal) best[tid] = std::max(best[tid], len);
                if (st == Status::Deadlock) bad[tid] = std::max(bad[tid], 2);
                if (st == Status::TooDeep) bad[tid] = std::max(bad[tid], 1);
                for (auto& s : succ) {
                    std::string k = m.key(s, false);
                    const std::size_t h = std::hash<std::string_view>{}(k);
                    local[tid].push_back({std::move(k), h, std::move(s)});
                }
            }
        }
        for (int t = 0; t < threads; ++t) {
            run.stable_length = std::max(run.stable_length, best[static_cast<std::size_t>(t)]);
            if (bad[static_cast<std::size_t>(t)] == 2) fail(Status::Deadlock, x, step.depth_limit);
        }
        for (int b : bad)
            if (b == 1) fail(Status::TooDeep, x, step.depth_limit);

        // Hash-sharded deduplication; within a shard the first occurrence in (thread, index)
        // order wins, so the kept set does not depend on merge timing.
        std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> shards(kShards);
        for (std::size_t t = 0; t < local.size(); ++t) {
            run.states_generated += local[t].size();
            for (std::size_t i = 0; i < local[t].size(); ++i)
                shards[local[t][i].hash % kShards].emplace_back(static_cast<std::uint32_t>(t),
                                                                static_cast<std::uint32_t>(i));
        }
        std::vector<std::vector<char>> keep(local.size());
        for (std::size_t t = 0; t < local.size(); ++t) keep[t].assign(local[t].size(), 0);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
        for (std::int64_t sh = 0; sh < static_cast<std::int64_t>(kShards); ++sh) {
            std::unordered_set<std::string_view> seen;
            for (auto [t, i] : shards[static_cast<std::size_t>(sh)])
                if (seen.insert(local[t][i].key).second) keep[t][i] = 1;
        }
        std::vector<MachineState> next;
        for (std::size_t t = 0; t < local.size(); ++t)
            for (std::size_t i = 0; i < local[t].size(); ++i)
                if (keep[t][i]) next.push_back(std::move(local[t][i].state));
        if (next.empty()) break;
        run.distinct_states += next.size();
        run.level_sizes.push_back(next.size());
        if (run.distinct_states > opts.max_states) throw BudgetExceeded("state budget exceeded");
        frontier = std::move(next);
    }
    run.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return run;
}

CheckRun explore(const SystemConfig& config, Tick x, const ExploreOptions& opts) {
    return opts.jobs == 1 ? explore_serial(config, x, opts) : explore_parallel(config, x, opts);
}

} // namespace livelab::mc
