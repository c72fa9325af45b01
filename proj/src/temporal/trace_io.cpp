#include "livelab/temporal/trace_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "livelab/errors.hpp"

namespace livelab::temporal {

using nlohmann::json;

namespace {

const char* role_name(Role r) {
    switch (r) {
    case Role::Proposer: return "proposer";
    case Role::Acceptor: return "acceptor";
    case Role::Server: return "server";
    case Role::Client: return "client";
    }
    return "?";
}

Role role_of(const std::string& s) {
    if (s == "proposer") return Role::Proposer;
    if (s == "acceptor") return Role::Acceptor;
    if (s == "server") return Role::Server;
    if (s == "client") return Role::Client;
    throw TraceFormatError("unknown role '" + s + "'");
}

struct Codec {
    const SystemConfig& cfg;

    json name(ProcessId p) const { return cfg.name(p); }
    ProcessId proc(const json& j) const {
        auto p = cfg.find(j.get<std::string>());
        if (!p) throw TraceFormatError("unknown process '" + j.get<std::string>() + "'");
        return *p;
    }
    json procs(const std::set<ProcessId>& s) const {
        json a = json::array();
        for (auto p : s) a.push_back(name(p));
        return a;
    }
    std::set<ProcessId> procs(const json& j) const {
        std::set<ProcessId> s;
        for (const auto& x : j) s.insert(proc(x));
        return s;
    }
    static json msg(const Message& m) { return json::array({m.kind, m.args}); }
    static Message msg(const json& j) { return Message{j.at(0).get<std::string>(), j.at(1).get<std::vector<std::int64_t>>()}; }

    json state(const ObservationState& s, Tick k) const {
        json r;
        r["tick"] = k;
        r["nf"] = procs(s.nf_procs);
        r["primaries"] = procs(s.primaries);
        r["roster"] = procs(s.roster);
        json a = json::array();
        for (const auto& f : s.sent) a.push_back(json::array({name(f.from), msg(f.msg), name(f.to)}));
        r["sent"] = a;
        a = json::array();
        for (const auto& f : s.received) a.push_back(json::array({name(f.to), msg(f.msg), name(f.from)}));
        r["received"] = a;
        a = json::array();
        for (const auto& f : s.voted) a.push_back(json::array({name(f.server), f.round, f.slot, f.value}));
        r["voted"] = a;
        a = json::array();
        for (const auto& f : s.learned) a.push_back(json::array({name(f.server), f.slot, f.value}));
        r["learned"] = a;
        a = json::array();
        for (const auto& f : s.executed) a.push_back(json::array({name(f.server), f.slot, f.value}));
        r["executed"] = a;
        a = json::array();
        for (const auto& f : s.responded) a.push_back(json::array({name(f.client), f.value, f.result}));
        r["responded"] = a;
        a = json::array();
        for (const auto& f : s.requested) a.push_back(json::array({name(f.client), f.value}));
        r["requested"] = a;
        return r;
    }

    ObservationState state(const json& r) const {
        ObservationState s;
        s.nf_procs = procs(r.at("nf"));
        s.primaries = procs(r.at("primaries"));
        s.roster = procs(r.at("roster"));
        for (const auto& f : r.at("sent")) s.sent.insert({proc(f.at(0)), msg(f.at(1)), proc(f.at(2))});
        for (const auto& f : r.at("received")) s.received.insert({proc(f.at(0)), msg(f.at(1)), proc(f.at(2))});
        for (const auto& f : r.at("voted"))
            s.voted.insert({proc(f.at(0)), f.at(1).get<std::int64_t>(), f.at(2).get<std::int64_t>(), f.at(3).get<std::int64_t>()});
        for (const auto& f : r.at("learned"))
            s.learned.insert({proc(f.at(0)), f.at(1).get<std::int64_t>(), f.at(2).get<std::int64_t>()});
        for (const auto& f : r.at("executed"))
            s.executed.insert({proc(f.at(0)), f.at(1).get<std::int64_t>(), f.at(2).get<std::int64_t>()});
        for (const auto& f : r.at("responded"))
            s.responded.insert({proc(f.at(0)), f.at(1).get<std::int64_t>(), f.at(2).get<std::int64_t>()});
        for (const auto& f : r.at("requested")) s.requested.insert({proc(f.at(0)), f.at(1).get<std::int64_t>()});
        return s;
    }
};

json config_json(const SystemConfig& c) {
    json procs = json::array();
    for (const auto& p : c.processes) procs.push_back({{"name", p.name}, {"role", role_name(p.role)}});
    json qs = json::array();
    for (const auto& q : c.quorums) {
        json m = json::array();
        for (auto p : q) m.push_back(c.name(p));
        qs.push_back(m);
    }
    return {{"processes", procs}, {"quorums", qs}, {"values", c.values}, {"rounds", c.rounds}, {"slot_bound", c.slot_bound}};
}

SystemConfig config_from(const json& j) {
    SystemConfig c;
    for (const auto& p : j.at("processes"))
        c.processes.push_back({p.at("name").get<std::string>(), role_of(p.at("role").get<std::string>())});
    for (const auto& q : j.at("quorums")) {
        Quorum m;
        for (const auto& n : q) {
            auto p = c.find(n.get<std::string>());
            if (!p) throw TraceFormatError("unknown quorum member");
            m.push_back(*p);
        }
        c.quorums.push_back(m);
    }
    c.values = j.at("values").get<std::vector<std::int64_t>>();
    c.rounds = j.at("rounds").get<std::vector<std::int64_t>>();
    c.slot_bound = j.at("slot_bound").get<std::int64_t>();
    return c;
}

} // namespace

void write_trace(std::ostream& out, const Trace& t) {
    json header{{"config", config_json(t.config)}, {"loop_start", nullptr}};
    if (t.loop_start) header["loop_start"] = *t.loop_start;
    out << header.dump() << '\n';
    Codec codec{t.config};
    for (std::size_t k = 0; k < t.states.size(); ++k) out << codec.state(t.states[k], static_cast<Tick>(k)).dump() << '\n';
}

std::string write_trace(const Trace& t) {
    std::ostringstream os;
    write_trace(os, t);
    return os.str();
}

Trace read_trace(std::istream& in) {
    Trace t;
    std::string line;
    bool header = true;
    try {
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            json j = json::parse(line);
            if (header) {
                t.config = config_from(j.at("config"));
                if (!j.at("loop_start").is_null()) t.loop_start = j.at("loop_start").get<Tick>();
                header = false;
                continue;
            }
            if (j.at("tick").get<Tick>() != t.length()) throw TraceFormatError("tick records out of order");
            t.states.push_back(Codec{t.config}.state(j));
        }
    } catch (const json::exception& e) {
        throw TraceFormatError(std::string("malformed trace record: ") + e.what());
    }
    if (header) throw TraceFormatError("missing trace header");
    t.validate();
    return t;
}

std::string config_to_json(const SystemConfig& c) { return config_json(c).dump(); }

SystemConfig config_from_json(const std::string& text) {
    try {
        return config_from(json::parse(text));
    } catch (const json::exception& e) {
        throw TraceFormatError(std::string("malformed configuration: ") + e.what());
    }
}

Trace read_trace_string(const std::string& text) {
    std::istringstream is(text);
    return read_trace(is);
}

Trace load_trace(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return read_trace(in);
}

void save_trace(const std::string& path, const Trace& t) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    write_trace(out, t);
}

} // namespace livelab::temporal
