#pragma once

#include <iosfwd>
#include <string>

#include "livelab/temporal/trace.hpp"

namespace livelab::temporal {

// JSON lines: a header record {"config":..., "loop_start":...} then one record per tick.
void write_trace(std::ostream& out, const Trace& t);
std::string write_trace(const Trace& t);
Trace read_trace(std::istream& in);
Trace read_trace_string(const std::string& text);
Trace load_trace(const std::string& path);
void save_trace(const std::string& path, const Trace& t);

// The configuration object used in trace headers, as compact JSON text.
std::string config_to_json(const SystemConfig& c);
SystemConfig config_from_json(const std::string& text);

} // namespace livelab::temporal
