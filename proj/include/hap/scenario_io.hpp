// Scenario and trace file handling: strict JSON parsing with key-addressed
// diagnostics, serialization, and monospace grid rendering.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "hap/core.hpp"

namespace hap {

/// Parse or schema failure; the message carries the file and key path.
class ScenarioParseError : public std::runtime_error {
 public:
  ScenarioParseError(const std::string& where, const std::string& what)
      : std::runtime_error(where + ": " + what) {}
};

/// A scenario file also carries the planner's lambda blend, which is not
/// part of the in-memory Scenario.
struct ScenarioDocument {
  Scenario scenario;
  double lambda = 0.0;
};

// Strict parsing: unknown keys are errors, as are missing required ones.
// `source` names the input in diagnostics.
ScenarioDocument parse_scenario(const std::string& json_text, const std::string& source);
ScenarioDocument load_scenario_file(const std::string& path);
std::string scenario_to_json(const ScenarioDocument& doc);

Trace parse_trace(const std::string& json_text, const std::string& source);
Trace load_trace_file(const std::string& path);
std::string trace_to_json(const Trace& trace);

// Monospace diagram, row 0 first: '.' free, '#' blocked, 'S' start, goal
// cells as the uppercased first letter of their model id ('!' when two
// goals collide), the trace path as '*' with 'S' preserved.
std::string render_text(const Scenario& scenario, const Trace* trace = nullptr);

// The canonical office scenario as a plan-ready document (explicable
// objective, uniform weights).
ScenarioDocument office_fixture_document();

}  // namespace hap
