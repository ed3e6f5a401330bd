#pragma once

#include <iosfwd>
#include <string>

#include "binotrack/metrics.hpp"
#include "binotrack/simulator.hpp"

namespace binotrack {

// Scenario files are JSON with a fixed schema; unknown keys anywhere in
// the document are rejected so typos cannot silently fall back to
// defaults. Parse and validation failures throw std::invalid_argument
// with location context (line for syntax errors, field path otherwise).
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);
std::string scenario_to_json(const Scenario& scenario);

enum class TraceFormat { Csv, Jsonl };

// Trace writers. CSV carries a format-version comment line, then the
// fixed header t,plx,ply,prx,pry,ptx,pty,e1,e2,e3,V,vc,veta,vxi,c with
// 12 significant digits per value. decimate keeps every Nth record (the
// first and last records are always kept).
void write_trace(std::ostream& out, const Trace& trace, TraceFormat format,
                 int decimate);
void write_trace_file(const std::string& path, const Trace& trace,
                      TraceFormat format, int decimate);

// Strict re-parser for the CSV writer's output; throws
// std::invalid_argument on any header or field mismatch.
Trace read_trace_csv(std::istream& in);
Trace read_trace_csv_file(const std::string& path);

std::string summary_to_json(const ConvergenceSummary& summary);

}  // namespace binotrack
