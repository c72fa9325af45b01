#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "livelab/catalog/catalog.hpp"
#include "livelab/temporal/trace.hpp"

namespace livelab::hierarchy {

struct EdgeReport {
    catalog::Edge edge;
    std::size_t corpus_size = 0;
    std::size_t stronger_holds = 0;
    std::vector<std::size_t> violations;  // trace ids where stronger Holds and weaker does not
    std::optional<temporal::Trace> witness;  // weaker Holds, stronger Violated
    std::string witness_note;
};

// Link instances (Fair->Raw, Sure(D)->Fair, Sure(D1)->Sure(D2)) followed by every solid
// hierarchy edge expanded into its parameter instances. The dashed edge is excluded.
std::vector<catalog::Edge> checked_edges();

// jobs == 1 runs the serial reference; otherwise traces are split across OpenMP threads
// (0 = runtime default). Reports are identical either way.
std::vector<EdgeReport> check_edges(const std::vector<temporal::Trace>& corpus, int jobs = 1);
std::vector<EdgeReport> check_edges_serial(const std::vector<temporal::Trace>& corpus);
std::vector<EdgeReport> check_edges_parallel(const std::vector<temporal::Trace>& corpus, int jobs);

// Attaches separating witnesses (or a NoWitnessShipped note) to each report.
void attach_witnesses(std::vector<EdgeReport>& reports);

std::string report_table(const std::vector<EdgeReport>& reports);
// One JSON object per line.
std::string report_records(const std::vector<EdgeReport>& reports);

} // namespace livelab::hierarchy
