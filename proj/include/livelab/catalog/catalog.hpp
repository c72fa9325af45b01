#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "livelab/temporal/expr.hpp"

namespace livelab::catalog {

enum class Kind : std::uint8_t { Link, Server, AssertionSingle, AssertionMulti };

enum class Name : std::uint8_t {
    Raw, Fair, Sure,
    AlwQ, QAlw, PAlwQ, PQAlw, Alw, PQDur, PQExtraDur,
    EachVote, SomeLearn, EachLearn, SomeExec, EachExec, Resp
};

struct CatalogId {
    Kind kind;
    Name name;
    std::vector<std::int64_t> params;  // D | D1,D2 | n

    bool operator==(const CatalogId&) const = default;
    auto operator<=>(const CatalogId&) const = default;
};

// Number of parameters a (kind, name) pair takes.
std::size_t arity(Kind k, Name n);
Kind natural_kind(Name n);  // single-value kind for assertions

CatalogId link(Name n, std::optional<std::int64_t> d = std::nullopt);
CatalogId server(Name n, std::vector<std::int64_t> params = {});
CatalogId single(Name n);
CatalogId multi(Name n, std::optional<std::int64_t> slots = std::nullopt);

temporal::ExprPtr link_property(Name n, std::optional<std::int64_t> d = std::nullopt);
temporal::ExprPtr server_property(Name n, std::optional<std::int64_t> a = std::nullopt,
                                  std::optional<std::int64_t> b = std::nullopt);
temporal::ExprPtr assertion_single(Name n);
temporal::ExprPtr assertion_multi(Name n, std::optional<std::int64_t> slots = std::nullopt);
temporal::ExprPtr property(const CatalogId& id);  // throws MissingParameter

// Canonical text with symbolic parameters (D, D1, D2, n).
std::string canonical_text(Kind k, Name n);
std::vector<std::string> parameter_names(Kind k, Name n);

// "Sure(3)", "Alw-Q", "PQ-Extra-Dur(2,2)", "Each-Vote(2)", "Resp-Multi".
std::string display(const CatalogId& id);
std::string display_family(Kind k, Name n);  // with symbolic parameters
std::optional<CatalogId> parse_id(std::string_view text);

// The sixteen core properties (3 link, 7 server, 6 single-value assertions) followed by the
// six multi-value forms.
std::vector<std::pair<Kind, Name>> families();
std::vector<std::pair<Kind, Name>> core_families();  // the sixteen

struct Edge {
    CatalogId stronger;
    CatalogId weaker;
    bool dashed = false;  // "may" edge: kept as metadata, never checked
};

// Solid edges (link implications plus the server and assertion orders) instantiated with default parameters
// D = 2, D1 = D2 = 2, followed by the single dashed edge.
std::vector<Edge> hierarchy_edges();

// Parameter instantiations used when checking an edge family on a corpus.
std::vector<Edge> edge_instances(const Edge& family);

// Derived edges Sure(D1) -> Sure(D2) for sampled D1 <= D2.
std::vector<Edge> sure_monotone_edges();

} // namespace livelab::catalog
