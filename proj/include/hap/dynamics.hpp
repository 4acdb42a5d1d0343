// Exact enumeration of trace spaces: complete traces of a goal model,
// completions of an observed prefix, and the universal trace set behind
// the unknown-model hypothesis. Desk scale, no pruning.
#pragma once

#include <cstddef>
#include <vector>

#include "hap/core.hpp"

namespace hap {

/// An ordered collection of traces in the canonical order: shorter first,
/// then lexicographic by action sequence with Down < Left < Right.
class TraceSet {
 public:
  TraceSet() = default;
  // Sorts into canonical order; rejects duplicates.
  explicit TraceSet(std::vector<Trace> traces);

  std::size_t size() const { return traces_.size(); }
  bool empty() const { return traces_.empty(); }
  const Trace& operator[](std::size_t i) const { return traces_[i]; }
  const std::vector<Trace>& traces() const { return traces_; }
  auto begin() const { return traces_.begin(); }
  auto end() const { return traces_.end(); }

 private:
  std::vector<Trace> traces_;
};

// All valid traces from model.start() that end at the goal and visit it
// exactly once (termination at the first goal visit). An unreachable goal
// yields the empty set. Start == goal yields exactly the empty trace.
TraceSet enumerate_complete_traces(const GridModel& model);

// All complete traces of the model that extend the given prefix. The
// prefix must be valid on the model's grid and start at the model's start;
// a prefix already ending on the goal is its own unique completion, and a
// prefix whose goal visit lies in the middle (or from which the goal is
// unreachable) has no completions.
TraceSet enumerate_completions(const GridModel& model, const Trace& prefix);

// Every valid trace of length 0..horizon from start, all stopping points
// counted as complete behaviors ("a random agent").
TraceSet universal_trace_set(const GridSpec& grid, Cell start, std::size_t horizon);

// Canonical two-goal office scenario: a 7x6 open grid, start (3,0), the
// coffee door at (0,5) and the mail door at (6,5), unit costs, beta = 2,
// prior 0.45/0.45/0.10. Both goals are 8 steps away. The agent delivers
// coffee; the objective is left unset for the caller to choose.
Scenario office_fixture();

}  // namespace hap
