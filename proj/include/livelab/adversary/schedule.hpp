#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "livelab/catalog/catalog.hpp"
#include "livelab/paxos/machine.hpp"
#include "livelab/temporal/eval.hpp"
#include "livelab/temporal/trace.hpp"

namespace livelab::adversary {

enum class Mode : std::uint8_t { Satisfy, Violate };

const char* mode_name(Mode m);
std::optional<Mode> parse_mode(std::string_view s);

struct Requirement {
    catalog::CatalogId id;
    Mode mode;
    bool operator==(const Requirement&) const = default;
};

struct AssumptionTarget {
    std::optional<catalog::CatalogId> link;
    std::optional<catalog::CatalogId> server;
    Mode link_mode = Mode::Satisfy;
    Mode server_mode = Mode::Satisfy;
    std::vector<Requirement> extra;  // further constraints, e.g. Violate Q-Alw next to Satisfy Alw-Q

    static AssumptionTarget of(std::optional<catalog::CatalogId> link, std::optional<catalog::CatalogId> server,
                               Mode mode);
    std::vector<Requirement> requirements() const;
    // Throws Error when link/server ids have the wrong kind.
    void check() const;
    bool operator==(const AssumptionTarget&) const = default;
};

// One rank into enabled(state) per step. With steps producing states s0..sN, loop_start == N
// closes the trace with a stutter at sN; a smaller loop_start L drops sN, which must be
// observation-equal to sL.
struct Schedule {
    std::vector<std::uint32_t> steps;
    std::optional<Tick> loop_start;
    std::uint64_t seed = 0;
    std::string pattern;
    bool operator==(const Schedule&) const = default;
};

std::vector<paxos::Action> resolve(const paxos::Machine& m, const Schedule& s);
// Throws Error when a rank is out of range or the loop does not close.
temporal::Trace run_schedule(const paxos::Machine& m, const Schedule& s);
// Ranks of a concrete action sequence (throws ActionNotEnabled).
Schedule schedule_of(const paxos::Machine& m, const std::vector<paxos::Action>& actions,
                     std::optional<Tick> loop_start);

// Verdicts of the link and server components (absent components are not evaluated).
std::pair<std::optional<temporal::Verdict>, std::optional<temporal::Verdict>> validate(const temporal::Trace& t,
                                                                                      const AssumptionTarget& target);
bool matches(temporal::Verdict v, Mode m);
bool conforms(const temporal::Trace& t, const AssumptionTarget& target);

// JSON: {"config", "seed", "target", "pattern", "loop_start", "steps"}.
void write_schedule(std::ostream& out, const SystemConfig& config, const AssumptionTarget& target, const Schedule& s);
struct ScheduleFile {
    SystemConfig config;
    AssumptionTarget target;
    Schedule schedule;
};
ScheduleFile read_schedule(std::istream& in);

} // namespace livelab::adversary
