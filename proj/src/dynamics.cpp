#include "hap/dynamics.hpp"

#include <algorithm>
#include <stdexcept>

namespace hap {

namespace {

// Shared depth-first walker. Visits cells in the fixed action order
// Down < Left < Right so enumeration is deterministic; results are sorted
// into canonical order afterwards.
class Enumerator {
 public:
  Enumerator(const GridSpec& grid, Cell start) : grid_(grid), start_(start) {
    if (!grid.is_free(start)) {
      throw std::invalid_argument("enumeration start cell is blocked or out of bounds");
    }
    visited_.assign(grid.cell_count(), 0);
  }

  // Collect all complete traces of a goal model below the given prefix
  // cells. `current` must already be marked visited.
  void complete_from(Cell current, Cell goal, std::vector<Action>& actions,
                     std::vector<Trace>& out) {
    if (current == goal) {
      out.push_back({start_, actions});
      return;
    }
    for (Action a : kActionOrder) {
      Cell next = displaced(current, a);
      if (!grid_.is_free(next) || seen(next)) continue;
      mark(next, true);
      actions.push_back(a);
      complete_from(next, goal, actions, out);
      actions.pop_back();
      mark(next, false);
    }
  }

  // Collect every valid trace up to the horizon (every node is a result).
  void universal_from(Cell current, std::size_t horizon, std::vector<Action>& actions,
                      std::vector<Trace>& out) {
    out.push_back({start_, actions});
    if (actions.size() >= horizon) return;
    for (Action a : kActionOrder) {
      Cell next = displaced(current, a);
      if (!grid_.is_free(next) || seen(next)) continue;
      mark(next, true);
      actions.push_back(a);
      universal_from(next, horizon, actions, out);
      actions.pop_back();
      mark(next, false);
    }
  }

  bool seen(Cell c) const { return visited_[index(c)] != 0; }
  void mark(Cell c, bool on) { visited_[index(c)] = on ? 1 : 0; }

 private:
  std::size_t index(Cell c) const {
    return static_cast<std::size_t>(c.row) * grid_.width() + c.col;
  }

  const GridSpec& grid_;
  Cell start_;
  std::vector<char> visited_;
};

}  // namespace

TraceSet::TraceSet(std::vector<Trace> traces) : traces_(std::move(traces)) {
  std::sort(traces_.begin(), traces_.end(), trace_less);
  auto dup = std::adjacent_find(traces_.begin(), traces_.end());
  if (dup != traces_.end()) {
    throw std::invalid_argument("trace set contains duplicates");
  }
}

TraceSet enumerate_complete_traces(const GridModel& model) {
  Enumerator e(model.grid(), model.start());
  e.mark(model.start(), true);
  std::vector<Action> actions;
  std::vector<Trace> out;
  e.complete_from(model.start(), model.goal(), actions, out);
  return TraceSet(std::move(out));
}

TraceSet enumerate_completions(const GridModel& model, const Trace& prefix) {
  if (prefix.start != model.start()) {
    throw std::invalid_argument("prefix does not start at the model's start cell");
  }
  TraceCheck check = validate_trace(model.grid(), prefix);
  if (!check.ok) {
    throw std::invalid_argument("prefix invalid on the model grid: " + check.describe());
  }

  Enumerator e(model.grid(), model.start());
  const std::vector<Cell> states = prefix.states();
  // A goal visit strictly inside the prefix rules out every completion,
  // because complete traces hold the goal exactly once, at the end.
  for (std::size_t i = 0; i + 1 < states.size(); ++i) {
    if (states[i] == model.goal()) return TraceSet();
  }
  for (Cell c : states) e.mark(c, true);

  std::vector<Action> actions = prefix.actions;
  std::vector<Trace> out;
  e.complete_from(states.back(), model.goal(), actions, out);
  return TraceSet(std::move(out));
}

TraceSet universal_trace_set(const GridSpec& grid, Cell start, std::size_t horizon) {
  Enumerator e(grid, start);
  e.mark(start, true);
  std::vector<Action> actions;
  std::vector<Trace> out;
  e.universal_from(start, horizon, actions, out);
  return TraceSet(std::move(out));
}

Scenario office_fixture() {
  GridSpec grid(7, 6);
  const Cell start{3, 0};
  GridModel coffee("coffee", grid, start, {0, 5}, {}, 2.0);
  GridModel mail("mail", grid, start, {6, 5}, {}, 2.0);
  BeliefDistribution prior({{"coffee", 0.45}, {"mail", 0.45}, {"M0", 0.10}});
  HypothesisSet hs({coffee, mail}, prior);
  return Scenario(std::move(hs), coffee, WeightProfile::uniform());
}

}  // namespace hap
