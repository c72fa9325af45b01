#include "livelab/adversary/schedule.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "livelab/errors.hpp"
#include "livelab/temporal/trace_io.hpp"

namespace livelab::adversary {

using nlohmann::json;
using catalog::CatalogId;
using catalog::Kind;

const char* mode_name(Mode m) { return m == Mode::Satisfy ? "satisfy" : "violate"; }

std::optional<Mode> parse_mode(std::string_view s) {
    if (s == "satisfy") return Mode::Satisfy;
    if (s == "violate") return Mode::Violate;
    return std::nullopt;
}

AssumptionTarget AssumptionTarget::of(std::optional<CatalogId> link, std::optional<CatalogId> server, Mode mode) {
    AssumptionTarget t;
    t.link = std::move(link);
    t.server = std::move(server);
    t.link_mode = t.server_mode = mode;
    t.check();
    return t;
}

std::vector<Requirement> AssumptionTarget::requirements() const {
    std::vector<Requirement> r;
    if (link) r.push_back({*link, link_mode});
    if (server) r.push_back({*server, server_mode});
    r.insert(r.end(), extra.begin(), extra.end());
    return r;
}

void AssumptionTarget::check() const {
    if (link && link->kind != Kind::Link) throw Error(catalog::display(*link) + " is not a link assumption");
    if (server && server->kind != Kind::Server) throw Error(catalog::display(*server) + " is not a server assumption");
    for (const auto& r : extra)
        if (r.id.kind != Kind::Link && r.id.kind != Kind::Server)
            throw Error(catalog::display(r.id) + " is not an assumption");
}

std::vector<paxos::Action> resolve(const paxos::Machine& m, const Schedule& s) {
    std::vector<paxos::Action> out;
    auto st = m.init();
    for (std::size_t i = 0; i < s.steps.size(); ++i) {
        auto en = m.enabled(st);
        if (s.steps[i] >= en.size())
            throw Error("schedule step " + std::to_string(i) + " selects rank " + std::to_string(s.steps[i]) + " of " +
                        std::to_string(en.size()));
        out.push_back(en[s.steps[i]]);
        st = m.step(st, out.back());
    }
    return out;
}

temporal::Trace run_schedule(const paxos::Machine& m, const Schedule& s) {
    std::vector<paxos::MachineState> states{m.init()};
    for (const auto& a : resolve(m, s)) states.push_back(m.step(states.back(), a));
    const auto n = static_cast<Tick>(states.size()) - 1;
    if (!s.loop_start) return paxos::trace_of(m, states);
    const Tick l = *s.loop_start;
    if (l < 0 || l > n) throw Error("loop start outside the schedule");
    if (l < n) {
        if (!(m.observe(states.back()) == m.observe(states[static_cast<std::size_t>(l)])))
            throw Error("schedule cycle does not return to its loop start");
        states.pop_back();
    }
    auto t = paxos::trace_of(m, states, l);
    t.validate();
    return t;
}

Schedule schedule_of(const paxos::Machine& m, const std::vector<paxos::Action>& actions, std::optional<Tick> loop) {
    Schedule s;
    s.loop_start = loop;
    auto st = m.init(false);
    for (const auto& a : actions) {
        auto en = m.enabled(st);
        auto it = std::lower_bound(en.begin(), en.end(), a);
        if (it == en.end() || *it != a) throw ActionNotEnabled(m.describe(a) + " is not enabled");
        s.steps.push_back(static_cast<std::uint32_t>(it - en.begin()));
        st = m.step(st, a);
    }
    return s;
}

std::pair<std::optional<temporal::Verdict>, std::optional<temporal::Verdict>> validate(const temporal::Trace& t,
                                                                                      const AssumptionTarget& target) {
    std::pair<std::optional<temporal::Verdict>, std::optional<temporal::Verdict>> out;
    if (target.link) out.first = temporal::eval(catalog::property(*target.link), t);
    if (target.server) out.second = temporal::eval(catalog::property(*target.server), t);
    return out;
}

bool matches(temporal::Verdict v, Mode m) { return m == Mode::Satisfy ? v.is_holds() : v.is_violated(); }

bool conforms(const temporal::Trace& t, const AssumptionTarget& target) {
    for (const auto& r : target.requirements())
        if (!matches(temporal::eval(catalog::property(r.id), t), r.mode)) return false;
    return true;
}

namespace {

json req_json(const Requirement& r) { return {{"id", catalog::display(r.id)}, {"mode", mode_name(r.mode)}}; }

CatalogId id_from(const json& j) {
    auto id = catalog::parse_id(j.get<std::string>());
    if (!id) throw TraceFormatError("unknown catalog id " + j.dump());
    return *id;
}

Mode mode_from(const json& j) {
    auto m = parse_mode(j.get<std::string>());
    if (!m) throw TraceFormatError("unknown mode " + j.dump());
    return *m;
}

} // namespace

void write_schedule(std::ostream& out, const SystemConfig& config, const AssumptionTarget& target, const Schedule& s) {
    json t;
    t["link"] = target.link ? json(catalog::display(*target.link)) : json(nullptr);
    t["server"] = target.server ? json(catalog::display(*target.server)) : json(nullptr);
    t["link_mode"] = mode_name(target.link_mode);
    t["server_mode"] = mode_name(target.server_mode);
    t["extra"] = json::array();
    for (const auto& r : target.extra) t["extra"].push_back(req_json(r));
    json j{{"config", json::parse(temporal::config_to_json(config))},
           {"seed", s.seed},
           {"target", t},
           {"pattern", s.pattern},
           {"loop_start", s.loop_start ? json(*s.loop_start) : json(nullptr)},
           {"steps", s.steps}};
    out << j.dump() << "\n";
}

ScheduleFile read_schedule(std::istream& in) {
    try {
        json j = json::parse(in);
        ScheduleFile f;
        f.config = temporal::config_from_json(j.at("config").dump());
        const auto& t = j.at("target");
        if (!t.at("link").is_null()) f.target.link = id_from(t.at("link"));
        if (!t.at("server").is_null()) f.target.server = id_from(t.at("server"));
        f.target.link_mode = mode_from(t.at("link_mode"));
        f.target.server_mode = mode_from(t.at("server_mode"));
        for (const auto& r : t.at("extra")) f.target.extra.push_back({id_from(r.at("id")), mode_from(r.at("mode"))});
        f.schedule.seed = j.at("seed").get<std::uint64_t>();
        f.schedule.pattern = j.at("pattern").get<std::string>();
        if (!j.at("loop_start").is_null()) f.schedule.loop_start = j.at("loop_start").get<Tick>();
        f.schedule.steps = j.at("steps").get<std::vector<std::uint32_t>>();
        return f;
    } catch (const json::exception& e) {
        throw TraceFormatError(std::string("malformed schedule: ") + e.what());
    }
}

} // namespace livelab::adversary
