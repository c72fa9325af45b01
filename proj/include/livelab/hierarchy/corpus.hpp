#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "livelab/temporal/trace.hpp"

namespace livelab::hierarchy {

struct CorpusOptions {
    std::size_t size = 10'000;
    std::uint64_t seed = 1;
};

// Random lasso over servers S1..Sk (k in 3..5) and one or two clients. Histories only change in
// the prefix; nf patterns are biased toward whole-cycle faults, rotations and crash bursts at the
// loop boundary; message delays are drawn around the Sure bounds. Every trace obeys the corpus
// axioms below.
temporal::Trace random_lasso(std::mt19937_64& rng);

// Trace i is drawn from its own generator seeded by (seed, i), so corpora are prefix-stable.
std::vector<temporal::Trace> generate_corpus(const CorpusOptions& opts);
temporal::Trace corpus_trace(std::uint64_t seed, std::size_t index);

// Axioms: executed implies learned; learned implies a quorum of votes for that value; a
// response implies some earlier execution of that value; at least one client and one sent
// message; roster constant over the cycle; a cycle in which every roster server is nf has one
// fixed primary, which is also in the roster at tick 0. Returns the first failed axiom.
std::optional<std::string> axiom_violation(const temporal::Trace& t);

} // namespace livelab::hierarchy
