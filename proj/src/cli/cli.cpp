#include "livelab/cli/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "livelab/adversary/constructions.hpp"
#include "livelab/adversary/generator.hpp"
#include "livelab/adversary/schedule.hpp"
#include "livelab/catalog/catalog.hpp"
#include "livelab/errors.hpp"
#include "livelab/hierarchy/analyzer.hpp"
#include "livelab/hierarchy/corpus.hpp"
#include "livelab/hierarchy/witnesses.hpp"
#include "livelab/lang/parser.hpp"
#include "livelab/lang/printer.hpp"
#include "livelab/mc/explore.hpp"
#include "livelab/mc/lasso_search.hpp"
#include "livelab/mc/safety.hpp"
#include "livelab/paxos/scenarios.hpp"
#include "livelab/temporal/eval.hpp"
#include "livelab/temporal/trace_io.hpp"

namespace livelab::cli {

using nlohmann::json;
using temporal::Verdict;

namespace {

class UsageError : public Error {
public:
    using Error::Error;
};

enum class Format { Text, Csv, Records };

struct Globals {
    std::uint64_t seed = 1;
    std::string out;
    Format format = Format::Text;
};

struct PaxosShape {
    int proposers = 2;
    int acceptors = 3;
    int clients = 1;
    int rounds = 3;

    SystemConfig config() const { return SystemConfig::paxos(proposers, acceptors, clients, rounds); }
};

void shape_options(CLI::App* app, PaxosShape& s) {
    app->add_option("--proposers", s.proposers, "Number of proposers")->check(CLI::Range(1, 9));
    app->add_option("--acceptors", s.acceptors, "Number of acceptors")->check(CLI::Range(1, 9));
    app->add_option("--clients", s.clients, "Number of clients")->check(CLI::Range(0, 9));
    app->add_option("--rounds", s.rounds, "Ballot counter bound")->check(CLI::Range(1, 50));
}

// Writes to --out when given, otherwise to the command's output stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
        if (path.empty()) return;
        file_.open(path);
        if (!file_) throw UsageError("cannot write " + path);
    }
    std::ostream& get() { return file_.is_open() ? file_ : fallback_; }

private:
    std::ofstream file_;
    std::ostream& fallback_;
};

lang::Params parse_params(const std::vector<std::string>& items) {
    lang::Params out;
    for (const auto& it : items) {
        const auto eq = it.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError("parameter '" + it + "' is not NAME=VALUE");
        try {
            out[it.substr(0, eq)] = std::stoll(it.substr(eq + 1));
        } catch (const std::exception&) {
            throw UsageError("parameter '" + it + "' has no integer value");
        }
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// "D" for Sure(D) etc.: a family label given without its parameters.
bool is_family_label(const std::string& text) {
    for (auto [k, n] : catalog::families()) {
        const auto fam = catalog::display_family(k, n);
        if (fam.substr(0, fam.find('(')) == text) return true;
    }
    return false;
}

struct NamedExpr {
    std::string name;
    temporal::ExprPtr expr;
};

// A catalog id, a .lspec file, or an inline expression.
std::vector<NamedExpr> resolve_property(const std::string& text, const lang::Params& params) {
    if (auto id = catalog::parse_id(text)) return {{catalog::display(*id), catalog::property(*id)}};
    if (is_family_label(text)) throw MissingParameter(text + " needs its parameters, e.g. " + text + "(2)");
    if (std::filesystem::is_regular_file(text)) {
        std::vector<NamedExpr> out;
        for (auto& p : lang::parse_file(read_file(text), params)) out.push_back({p.name, std::move(p.expr)});
        return out;
    }
    return {{text, lang::parse(text, params)}};
}

// Parse errors with the offending line and a caret under the span.
void report_syntax(std::ostream& err, const SyntaxError& e, const std::string& text) {
    err << "error: " << e.what() << "\n";
    const auto& sp = e.span();
    const std::size_t start = std::min(sp.start, text.size());
    std::size_t begin = start == 0 ? std::string::npos : text.rfind('\n', start - 1);
    begin = begin == std::string::npos ? 0 : begin + 1;
    const std::size_t end = text.find('\n', start);
    const std::string line = text.substr(begin, end == std::string::npos ? std::string::npos : end - begin);
    err << "  " << line << "\n  " << std::string(start - begin, ' ')
        << std::string(std::max<std::size_t>(1, sp.end > sp.start ? sp.end - sp.start : 1), '^') << "\n";
}

int verdict_code(const std::vector<Verdict>& vs) {
    for (const auto& v : vs)
        if (v.is_violated()) return kViolated;
    return kOk;
}

void emit_verdicts(std::ostream& out, Format f, const std::vector<std::pair<std::string, Verdict>>& rows) {
    if (f == Format::Csv) out << "property,verdict\n";
    for (const auto& [name, v] : rows) {
        switch (f) {
        case Format::Text: out << name << ": " << v.str() << "\n"; break;
        case Format::Csv: out << '"' << name << "\"," << v.str() << "\n"; break;
        case Format::Records: out << json{{"property", name}, {"verdict", v.str()}}.dump() << "\n"; break;
        }
    }
}

// Every figure property at D = 2, D1 = D2 = 2, and the multi-value forms at the config's slot bound.
std::vector<std::pair<std::string, Verdict>> catalog_verdicts(const temporal::Trace& t) {
    std::vector<std::pair<std::string, Verdict>> rows;
    for (auto [k, n] : catalog::families()) {
        catalog::CatalogId id{k, n, {}};
        for (const auto& p : catalog::parameter_names(k, n)) id.params.push_back(p == "n" ? t.config.slot_bound : 2);
        rows.emplace_back(catalog::display(id), temporal::eval(catalog::property(id), t));
    }
    return rows;
}

std::optional<catalog::CatalogId> required_id(const std::string& text, const char* what) {
    if (text.empty() || text == "-") return std::nullopt;
    auto id = catalog::parse_id(text);
    if (!id) throw UsageError(std::string("unknown ") + what + " '" + text + "'");
    return id;
}

adversary::Mode required_mode(const std::string& text) {
    auto m = adversary::parse_mode(text);
    if (!m) throw UsageError("mode must be satisfy or violate, got '" + text + "'");
    return *m;
}

const char* csv_header = "start,length,states,distinct_states,seconds";

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Liveness assumption lab: temporal specifications, Paxos models and adversaries"};
    app.name("livelab");
    app.fallthrough();
    app.require_subcommand(1);
    Globals g;
    std::string format = "text";
    app.add_option("--seed", g.seed, "Seed for every randomized run");
    app.add_option("--out", g.out, "Write the main artifact to this file");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "csv", "records"}));

    std::function<int()> action;

    // spec
    auto* spec = app.add_subcommand("spec", "Parse and print specification text");
    spec->require_subcommand(1);
    std::string spec_text, spec_file;
    std::vector<std::string> spec_params;
    for (const char* mode : {"parse", "print"}) {
        auto* sub = spec->add_subcommand(mode, std::string(mode) == "parse" ? "Dump the syntax tree"
                                                                             : "Print canonical text");
        sub->add_option("text", spec_text, "Expression text");
        sub->add_option("--file", spec_file, "Read a .lspec file instead");
        sub->add_option("--param", spec_params, "Parameter binding NAME=VALUE");
        const bool dump = std::string(mode) == "parse";
        sub->callback([&, dump, sub] {
            action = [&, dump, sub]() -> int {
                if (spec_text.empty() == spec_file.empty())
                    throw CLI::ValidationError(sub->get_name(), "give either an expression or --file");
                const auto params = parse_params(spec_params);
                const std::string text = spec_file.empty() ? spec_text : read_file(spec_file);
                Sink sink(g.out, out);
                try {
                    std::vector<lang::NamedProperty> props;
                    if (spec_file.empty()) props.push_back({"", lang::parse(text, params)});
                    else props = lang::parse_file(text, params);
                    for (const auto& p : props) {
                        if (!p.name.empty()) sink.get() << p.name << " = ";
                        sink.get() << (dump ? lang::dump(p.expr) : lang::print(p.expr)) << "\n";
                    }
                } catch (const SyntaxError& e) {
                    report_syntax(err, e, text);
                    return kUsage;
                }
                return kOk;
            };
        });
    }

    // catalog
    auto* cat = app.add_subcommand("catalog", "Catalog of link, server and assertion properties");
    cat->require_subcommand(1);
    cat->add_subcommand("list", "List every property family")->callback([&] {
        action = [&]() -> int {
            Sink sink(g.out, out);
            auto& o = sink.get();
            const char* kinds[] = {"link", "server", "assertion", "assertion-multi"};
            if (g.format == Format::Csv) o << "name,kind,params,text\n";
            for (auto [k, n] : catalog::families()) {
                const auto name = catalog::display_family(k, n);
                const char* kind = kinds[static_cast<int>(k)];
                std::string params;
                for (const auto& p : catalog::parameter_names(k, n)) params += (params.empty() ? "" : " ") + p;
                auto text = catalog::canonical_text(k, n);
                switch (g.format) {
                case Format::Text: {
                    o << name << " [" << kind << "]\n";
                    std::istringstream lines(text);
                    for (std::string l; std::getline(lines, l);) o << "    " << l << "\n";
                    break;
                }
                case Format::Csv: {
                    std::string q;
                    for (char c : text) q += c == '"' ? std::string("\"\"") : std::string(1, c == '\n' ? ' ' : c);
                    o << name << "," << kind << "," << params << ",\"" << q << "\"\n";
                    break;
                }
                case Format::Records:
                    o << json{{"name", name}, {"kind", kind}, {"params", catalog::parameter_names(k, n)}, {"text", text}}.dump()
                      << "\n";
                    break;
                }
            }
            return kOk;
        };
    });

    // trace
    auto* trace = app.add_subcommand("trace", "Evaluate properties on a recorded trace");
    trace->require_subcommand(1);
    auto* tcheck = trace->add_subcommand("check", "Evaluate one property, or every property of a .lspec file");
    std::string trace_file, trace_prop;
    std::vector<std::string> trace_params;
    tcheck->add_option("file", trace_file, "Trace file (JSON lines)")->required();
    tcheck->add_option("--property", trace_prop, "Catalog name, .lspec file or expression")->required();
    tcheck->add_option("--param", trace_params, "Parameter binding NAME=VALUE");
    tcheck->callback([&] {
        action = [&]() -> int {
            const auto t = temporal::load_trace(trace_file);
            std::vector<NamedExpr> props;
            try {
                props = resolve_property(trace_prop, parse_params(trace_params));
            } catch (const SyntaxError& e) {
                report_syntax(err, e, trace_prop);
                return kUsage;
            }
            std::vector<std::pair<std::string, Verdict>> rows;
            std::vector<Verdict> vs;
            for (const auto& p : props) {
                rows.emplace_back(p.name, temporal::eval(p.expr, t));
                vs.push_back(rows.back().second);
            }
            Sink sink(g.out, out);
            emit_verdicts(sink.get(), g.format, rows);
            return verdict_code(vs);
        };
    });

    // simulate
    auto* sim = app.add_subcommand("simulate", "Generate a schedule conforming to assumption targets");
    PaxosShape sim_shape;
    shape_options(sim, sim_shape);
    std::string sim_target, sim_mode = "satisfy", sim_link_mode, sim_server_mode, sim_replay, sim_schedule_out;
    std::vector<std::string> sim_extra;
    std::uint64_t sim_budget = 10'000;
    sim->add_option("--target", sim_target, "LINK,SERVER (either may be '-')");
    sim->add_option("--mode", sim_mode, "satisfy or violate, for both components");
    sim->add_option("--link-mode", sim_link_mode, "Overrides --mode for the link component");
    sim->add_option("--server-mode", sim_server_mode, "Overrides --mode for the server component");
    sim->add_option("--require", sim_extra, "Additional requirement ID=satisfy|violate");
    sim->add_option("--budget", sim_budget, "Step budget across attempts");
    sim->add_option("--replay", sim_replay, "Re-run a saved schedule file instead of generating");
    sim->add_option("--schedule", sim_schedule_out, "Write the schedule (replayable with --replay)");
    sim->callback([&] {
        action = [&]() -> int {
            adversary::ScheduleFile f;
            temporal::Trace t;
            if (!sim_replay.empty()) {
                std::ifstream in(sim_replay);
                if (!in) throw UsageError("cannot read " + sim_replay);
                f = adversary::read_schedule(in);
                t = adversary::run_schedule(paxos::Machine(f.config), f.schedule);
            } else {
                if (sim_target.empty()) throw UsageError("simulate needs --target or --replay");
                const auto comma = sim_target.find(',');
                if (comma == std::string::npos) throw UsageError("--target expects LINK,SERVER");
                f.config = sim_shape.config();
                f.target.link = required_id(sim_target.substr(0, comma), "link assumption");
                f.target.server = required_id(sim_target.substr(comma + 1), "server assumption");
                f.target.link_mode = required_mode(sim_link_mode.empty() ? sim_mode : sim_link_mode);
                f.target.server_mode = required_mode(sim_server_mode.empty() ? sim_mode : sim_server_mode);
                for (const auto& r : sim_extra) {
                    const auto eq = r.rfind('=');
                    if (eq == std::string::npos) throw UsageError("--require expects ID=MODE");
                    f.target.extra.push_back({*required_id(r.substr(0, eq), "assumption"), required_mode(r.substr(eq + 1))});
                }
                try {
                    f.target.check();
                } catch (const Error& e) {
                    throw UsageError(e.what());
                }
                auto gen = adversary::generate(f.target, f.config, g.seed, {sim_budget});
                f.schedule = gen.schedule;
                t = std::move(gen.trace);
                if (!sim_schedule_out.empty()) {
                    std::ofstream so(sim_schedule_out);
                    if (!so) throw UsageError("cannot write " + sim_schedule_out);
                    adversary::write_schedule(so, f.config, f.target, f.schedule);
                }
            }
            if (!g.out.empty()) temporal::save_trace(g.out, t);
            std::vector<std::pair<std::string, Verdict>> rows;
            for (const auto& r : f.target.requirements())
                rows.emplace_back(catalog::display(r.id) + " (" + adversary::mode_name(r.mode) + ")",
                                  temporal::eval(catalog::property(r.id), t));
            if (g.format == Format::Text)
                out << "pattern " << f.schedule.pattern << ", " << f.schedule.steps.size() << " steps, loop at "
                    << (f.schedule.loop_start ? std::to_string(*f.schedule.loop_start) : std::string("none")) << "\n";
            emit_verdicts(out, g.format, rows);
            return adversary::conforms(t, f.target) ? kOk : kViolated;
        };
    });

    // scenario
    auto* scen = app.add_subcommand("scenario", "Export a hand-built or constructed trace");
    PaxosShape scen_shape;
    shape_options(scen, scen_shape);
    std::string scen_name;
    scen->add_option("name", scen_name, "Scenario name")
        ->required()
        ->check(CLI::IsMember({"raft-eachvote", "paxos-complex-livelock", "alwq-adversary", "raw-blackout"}));
    scen->callback([&] {
        action = [&]() -> int {
            temporal::Trace t;
            if (scen_name == "raft-eachvote") t = paxos::raft_eachvote_lasso();
            else if (scen_name == "paxos-complex-livelock") t = paxos::paxos_complex_livelock_lasso();
            else if (scen_name == "alwq-adversary") t = adversary::alwq_adversary(scen_shape.config());
            else t = adversary::raw_blackout(scen_shape.config());
            if (!g.out.empty()) temporal::save_trace(g.out, t);
            else if (g.format == Format::Records) temporal::write_trace(out, t);
            if (g.out.empty() && g.format == Format::Records) return kOk;
            emit_verdicts(out, g.format, catalog_verdicts(t));
            return kOk;
        };
    });

    // modelcheck
    auto* mcheck = app.add_subcommand("modelcheck", "Stable-duration exploration of the Paxos machine");
    PaxosShape mc_shape;
    shape_options(mcheck, mc_shape);
    std::vector<long long> mc_starts;
    int mc_jobs = 1;
    bool mc_safety = false, mc_faults = false;
    std::string mc_csv;
    std::uint64_t mc_max = 200'000'000;
    mcheck->add_option("--start", mc_starts, "Stable duration start(s)");
    mcheck->add_option("--jobs", mc_jobs, "Worker threads (1 = serial reference, 0 = all cores)")->check(CLI::Range(0, 1024));
    auto* mc_csv_opt = mcheck->add_option("--csv", mc_csv, "Write CSV to FILE (to the output stream when no FILE)")
                           ->expected(0, 1);
    mcheck->add_option("--max-states", mc_max, "Distinct state budget");
    mcheck->add_flag("--safety", mc_safety, "Exhaustive agreement check instead");
    mcheck->add_flag("--faults", mc_faults, "With --safety: include drops, crashes and recoveries");
    mcheck->callback([&] {
        action = [&]() -> int {
            const auto cfg = mc_shape.config();
            Sink sink(g.out, out);
            auto& o = sink.get();
            if (mc_safety) {
                const auto r = mc::check_safety(cfg, mc_faults, mc_max);
                o << "states=" << r.states << " transitions=" << r.transitions << " learned_states=" << r.learned_states
                  << " violations=" << r.violations.size() << " complete=" << (r.complete ? "yes" : "no") << "\n";
                for (const auto& v : r.violations) o << "  " << v << "\n";
                if (!r.violations.empty()) return kViolated;
                return r.complete ? kOk : kBudget;
            }
            if (mc_starts.empty()) throw UsageError("modelcheck needs --start (or --safety)");
            const bool csv_here = mc_csv_opt->count() > 0 && mc_csv.empty();
            const Format f = csv_here ? Format::Csv : g.format;
            std::ofstream csv_file;
            if (!mc_csv.empty()) {
                csv_file.open(mc_csv);
                if (!csv_file) throw UsageError("cannot write " + mc_csv);
                csv_file << csv_header << "\n";
            }
            if (f == Format::Csv) o << csv_header << "\n";
            for (auto x : mc_starts) {
                const auto r = mc::explore(cfg, x, {8, mc_max, mc_jobs});
                std::ostringstream secs;
                secs << std::fixed << std::setprecision(3) << r.elapsed_seconds;
                switch (f) {
                case Format::Text:
                    o << "start=" << x << " length=" << r.stable_length << " states=" << r.states_generated
                      << " distinct_states=" << r.distinct_states << " seconds=" << secs.str() << "\n";
                    break;
                case Format::Csv:
                    o << x << "," << r.stable_length << "," << r.states_generated << "," << r.distinct_states << ","
                      << secs.str() << "\n";
                    break;
                case Format::Records:
                    o << json{{"proposers", mc_shape.proposers}, {"acceptors", mc_shape.acceptors}, {"start", x},
                              {"length", r.stable_length}, {"formula", mc::formula_oracle(mc_shape.proposers, mc_shape.acceptors, x)},
                              {"states", r.states_generated}, {"distinct_states", r.distinct_states},
                              {"seconds", r.elapsed_seconds}, {"level_sizes", r.level_sizes}}
                             .dump()
                      << "\n";
                    break;
                }
                if (csv_file.is_open())
                    csv_file << x << "," << r.stable_length << "," << r.states_generated << "," << r.distinct_states
                             << "," << secs.str() << "\n";
                o.flush();
            }
            return kOk;
        };
    });

    // lasso
    auto* lasso = app.add_subcommand("lasso", "Search for an admissible lasso violating an assertion");
    PaxosShape ls_shape;
    shape_options(lasso, ls_shape);
    std::string ls_link = "Fair", ls_server = "Alw-Q", ls_assert = "Some-Learn";
    mc::LassoBudget ls_budget;
    mc::LassoOptions ls_opts;
    lasso->add_option("--link", ls_link, "Link assumption");
    lasso->add_option("--server", ls_server, "Server assumption");
    lasso->add_option("--assertion", ls_assert, "Liveness assertion");
    lasso->add_option("--max-states", ls_budget.max_states, "State budget");
    lasso->add_option("--max-depth", ls_budget.max_depth, "Prefix length bound");
    lasso->add_flag("--stable-election", ls_opts.stable_election, "Freeze elections and faults after the first election");
    lasso->callback([&] {
        action = [&]() -> int {
            const auto link = *required_id(ls_link, "link assumption");
            const auto server = *required_id(ls_server, "server assumption");
            const auto assertion = *required_id(ls_assert, "assertion");
            const auto r = mc::check_liveness_lasso(ls_shape.config(), link, server, assertion, ls_budget, ls_opts);
            out << mc::outcome_name(r.outcome) << " after " << r.states << " states";
            if (!r.bound.empty()) out << " (" << r.bound << ")";
            out << "\n";
            if (r.lasso) {
                const paxos::Machine m(ls_shape.config());
                out << "prefix:\n";
                for (const auto& a : r.prefix) out << "  " << m.describe(a) << "\n";
                out << "cycle: " << r.cycle << "\n";
                if (!g.out.empty()) temporal::save_trace(g.out, *r.lasso);
            }
            switch (r.outcome) {
            case mc::LassoOutcome::Holds: return kOk;
            case mc::LassoOutcome::Counterexample: return kViolated;
            case mc::LassoOutcome::Undetermined: return kBudget;
            }
            return kOk;
        };
    });

    // hierarchy
    auto* hier = app.add_subcommand("hierarchy", "Check implication edges on a random lasso corpus");
    hier->require_subcommand(1);
    auto* hcheck = hier->add_subcommand("check", "Count edge violations and attach strictness witnesses");
    std::size_t h_corpus = 10'000;
    int h_jobs = 1;
    std::string h_report;
    hcheck->add_option("--corpus", h_corpus, "Corpus size");
    hcheck->add_option("--jobs", h_jobs, "Worker threads (1 = serial reference, 0 = all cores)")->check(CLI::Range(0, 1024));
    auto* h_report_opt =
        hcheck->add_option("--report", h_report, "Full report (table, witnesses, incomparable pairs, records) to FILE")
            ->expected(0, 1);
    hcheck->callback([&] {
        action = [&]() -> int {
            const auto corpus = hierarchy::generate_corpus({h_corpus, g.seed});
            auto reports = hierarchy::check_edges(corpus, h_jobs);
            hierarchy::attach_witnesses(reports);
            Sink sink(g.out, out);
            auto& o = sink.get();
            if (g.format == Format::Records) {
                o << hierarchy::report_records(reports);
            } else if (g.format == Format::Csv) {
                o << "stronger,weaker,corpus_size,stronger_holds,violations,witness\n";
                for (const auto& r : reports)
                    o << catalog::display(r.edge.stronger) << "," << catalog::display(r.edge.weaker) << ","
                      << r.corpus_size << "," << r.stronger_holds << "," << r.violations.size() << ","
                      << (r.witness ? "yes" : "no") << "\n";
            } else {
                o << hierarchy::report_table(reports);
            }
            bool ok = true;
            for (const auto& r : reports) ok = ok && r.violations.empty();
            if (h_report_opt->count() > 0) {
                std::ofstream rf;
                if (!h_report.empty()) {
                    rf.open(h_report);
                    if (!rf) throw UsageError("cannot write " + h_report);
                    rf << hierarchy::report_table(reports);
                }
                std::ostream& ro = rf.is_open() ? static_cast<std::ostream&>(rf) : o;
                for (const auto& r : reports) {
                    if (!r.witness) continue;
                    const auto w = temporal::eval(catalog::property(r.edge.weaker), *r.witness);
                    const auto s = temporal::eval(catalog::property(r.edge.stronger), *r.witness);
                    ro << "witness " << catalog::display(r.edge.weaker) << " not " << catalog::display(r.edge.stronger)
                       << ": " << w.str() << "/" << s.str() << "\n";
                }
                for (const auto& i : hierarchy::incomparability_report()) {
                    const auto pa = catalog::property(i.a), pb = catalog::property(i.b);
                    ro << "incomparable " << catalog::display(i.a) << " | " << catalog::display(i.b) << ": "
                       << temporal::eval(pa, i.a_not_b).str() << "/" << temporal::eval(pb, i.a_not_b).str() << ", "
                       << temporal::eval(pa, i.b_not_a).str() << "/" << temporal::eval(pb, i.b_not_a).str() << "\n";
                }
                if (rf.is_open()) rf << hierarchy::report_records(reports);
            }
            return ok ? kOk : kViolated;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    g.format = format == "csv" ? Format::Csv : format == "records" ? Format::Records : Format::Text;
    if (!action) {
        err << "error: incomplete command\n";
        return kUsage;
    }
    try {
        return action();
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return kBudget;
    } catch (const CannotRealize& e) {
        err << "cannot realize: " << e.what() << "\n";
        return kBudget;
    } catch (const NoConsensusPath& e) {
        err << "no consensus: " << e.what() << "\n";
        return kViolated;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
}

int run(int argc, const char* const* argv) { return run(argc, argv, std::cout, std::cerr); }

} // namespace livelab::cli
