#include "livelab/hierarchy/analyzer.hpp"

#include <map>
#include <sstream>

#include <json.hpp>
#include <omp.h>

#include "livelab/errors.hpp"
#include "livelab/hierarchy/witnesses.hpp"
#include "livelab/temporal/eval.hpp"

namespace livelab::hierarchy {

using catalog::CatalogId;
using catalog::Edge;
using temporal::Trace;

std::vector<Edge> checked_edges() {
    using catalog::Name;
    std::vector<Edge> out{{catalog::link(Name::Fair), catalog::link(Name::Raw)}};
    for (std::int64_t d : {0, 1, 2, 3, 5}) out.push_back({catalog::link(Name::Sure, d), catalog::link(Name::Fair)});
    for (const auto& e : catalog::sure_monotone_edges()) out.push_back(e);
    for (const auto& f : catalog::hierarchy_edges()) {
        if (f.dashed || f.stronger.kind == catalog::Kind::Link) continue;
        for (const auto& e : catalog::edge_instances(f)) out.push_back(e);
    }
    return out;
}

namespace {

// Distinct properties of the edge list, compiled once.
struct Plan {
    std::vector<Edge> edges;
    std::vector<temporal::ExprPtr> props;
    std::vector<std::pair<std::size_t, std::size_t>> idx;  // (stronger, weaker) per edge

    Plan() : edges(checked_edges()) {
        std::map<CatalogId, std::size_t> seen;
        auto id_of = [&](const CatalogId& c) {
            auto [it, fresh] = seen.emplace(c, props.size());
            if (fresh) props.push_back(catalog::property(c));
            return it->second;
        };
        for (const auto& e : edges) idx.emplace_back(id_of(e.stronger), id_of(e.weaker));
    }

    // Bit k: edge k violated on t; bit k of `strong`: stronger Holds.
    void check(const Trace& t, std::vector<char>& holds, std::vector<char>& strong, std::vector<char>& bad) const {
        holds.resize(props.size());
        for (std::size_t p = 0; p < props.size(); ++p) holds[p] = temporal::eval(props[p], t).is_holds();
        strong.resize(edges.size());
        bad.resize(edges.size());
        for (std::size_t k = 0; k < edges.size(); ++k) {
            strong[k] = holds[idx[k].first];
            bad[k] = strong[k] && !holds[idx[k].second];
        }
    }

    std::vector<EdgeReport> empty(std::size_t n) const {
        std::vector<EdgeReport> r(edges.size());
        for (std::size_t k = 0; k < edges.size(); ++k) r[k].edge = edges[k], r[k].corpus_size = n;
        return r;
    }
};

} // namespace

std::vector<EdgeReport> check_edges_serial(const std::vector<Trace>& corpus) {
    const Plan plan;
    auto reports = plan.empty(corpus.size());
    std::vector<char> holds, strong, bad;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        plan.check(corpus[i], holds, strong, bad);
        for (std::size_t k = 0; k < reports.size(); ++k) {
            reports[k].stronger_holds += static_cast<std::size_t>(strong[k]);
            if (bad[k]) reports[k].violations.push_back(i);
        }
    }
    return reports;
}

std::vector<EdgeReport> check_edges_parallel(const std::vector<Trace>& corpus, int jobs) {
    const Plan plan;
    const int threads = jobs > 0 ? jobs : omp_get_max_threads();
    const std::size_t n = corpus.size(), m = plan.edges.size();
    std::vector<char> strong_all(n * m), bad_all(n * m);
#pragma omp parallel num_threads(threads)
    {
        std::vector<char> holds, strong, bad;
#pragma omp for schedule(dynamic, 32)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
            const auto row = static_cast<std::size_t>(i) * m;
            plan.check(corpus[static_cast<std::size_t>(i)], holds, strong, bad);
            std::copy(strong.begin(), strong.end(), strong_all.begin() + static_cast<std::ptrdiff_t>(row));
            std::copy(bad.begin(), bad.end(), bad_all.begin() + static_cast<std::ptrdiff_t>(row));
        }
    }
    auto reports = plan.empty(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < m; ++k) {
            reports[k].stronger_holds += static_cast<std::size_t>(strong_all[i * m + k]);
            if (bad_all[i * m + k]) reports[k].violations.push_back(i);
        }
    return reports;
}

std::vector<EdgeReport> check_edges(const std::vector<Trace>& corpus, int jobs) {
    return jobs == 1 ? check_edges_serial(corpus) : check_edges_parallel(corpus, jobs);
}

void attach_witnesses(std::vector<EdgeReport>& reports) {
    for (auto& r : reports) {
        try {
            r.witness = separating_witness(r.edge.weaker, r.edge.stronger);
        } catch (const NoWitnessShipped& e) {
            r.witness_note = e.what();
        }
    }
}

std::string report_table(const std::vector<EdgeReport>& reports) {
    std::ostringstream out;
    std::size_t broken = 0;
    for (const auto& r : reports) {
        out << catalog::display(r.edge.stronger) << " -> " << catalog::display(r.edge.weaker) << ": "
            << r.violations.size() << " violations / " << r.corpus_size << " traces (stronger holds on "
            << r.stronger_holds << ")";
        if (r.witness) out << ", strict";
        else if (!r.witness_note.empty()) out << ", " << r.witness_note;
        out << "\n";
        broken += !r.violations.empty();
    }
    out << (broken ? std::to_string(broken) + " edges violated" : std::string("all edges hold")) << "\n";
    return out.str();
}

std::string report_records(const std::vector<EdgeReport>& reports) {
    std::ostringstream out;
    for (const auto& r : reports) {
        nlohmann::json j{{"stronger", catalog::display(r.edge.stronger)},
                         {"weaker", catalog::display(r.edge.weaker)},
                         {"corpus_size", r.corpus_size},
                         {"stronger_holds", r.stronger_holds},
                         {"violations", r.violations},
                         {"witness", r.witness.has_value()}};
        if (!r.witness_note.empty()) j["witness_note"] = r.witness_note;
        out << j.dump() << "\n";
    }
    return out.str();
}

} // namespace livelab::hierarchy
