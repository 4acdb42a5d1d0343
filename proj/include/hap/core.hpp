// Domain types shared across the library: grids, traces, agent models,
// belief distributions, per-step weight profiles and scenario bundles.
// Everything here is immutable after construction and safe to share
// across threads.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace hap {

// Movement alphabet. There is deliberately no Up action: together with the
// no-revisit rule this keeps every trace space finite.
enum class Action : std::uint8_t { Down = 0, Left = 1, Right = 2 };

inline constexpr int kActionCount = 3;
inline constexpr Action kActionOrder[kActionCount] = {Action::Down, Action::Left,
                                                      Action::Right};

struct Cell {
  int col = 0;
  int row = 0;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

// Row 0 is the top of the grid; Down increases the row index.
Cell displaced(Cell from, Action a);

char action_char(Action a);
std::optional<Action> action_from_char(char c);
std::string actions_to_string(const std::vector<Action>& actions);
// Throws std::invalid_argument naming the offending position.
std::vector<Action> actions_from_string(const std::string& s);

/// Rectangular grid with optional blocked cells, (col,row) 0-indexed.
class GridSpec {
 public:
  GridSpec(int width, int height, std::vector<Cell> blocked = {});

  int width() const { return width_; }
  int height() const { return height_; }
  const std::vector<Cell>& blocked() const { return blocked_; }
  std::size_t cell_count() const;

  bool in_bounds(Cell c) const;
  bool is_blocked(Cell c) const;
  bool is_free(Cell c) const { return in_bounds(c) && !is_blocked(c); }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  int width_;
  int height_;
  std::vector<Cell> blocked_;  // sorted, duplicate-free
  std::vector<char> mask_;     // row-major blocked lookup
};

/// A start cell plus an action sequence. The induced state sequence is
/// states()[i] after i actions; validity against a grid is checked by
/// validate_trace, not by the type itself.
struct Trace {
  Cell start;
  std::vector<Action> actions;

  std::size_t length() const { return actions.size(); }
  Cell end() const;
  std::vector<Cell> states() const;

  friend bool operator==(const Trace&, const Trace&) = default;
};

// Canonical trace order: shorter first, then lexicographic with D < L < R.
bool trace_less(const Trace& a, const Trace& b);

enum class TraceViolation { OutOfBounds, Blocked, Revisit };

/// Result of validate_trace. `step` is the index of the first offending
/// state (0 = the start cell itself).
struct TraceCheck {
  bool ok = true;
  std::size_t step = 0;
  TraceViolation reason = TraceViolation::OutOfBounds;

  std::string describe() const;
};

// Accepts iff the induced state sequence stays in bounds, avoids blocked
// cells and never revisits a cell. Violations are reported, not thrown.
TraceCheck validate_trace(const GridSpec& grid, const Trace& trace);

// First i actions as a trace, remainder as a raw action sequence.
// Throws std::out_of_range unless 0 <= i <= trace.length().
std::pair<Trace, std::vector<Action>> split(const Trace& trace, std::size_t i);
Trace prefix_of(const Trace& trace, std::size_t i);

/// Model parameters are opaque tagged values; "goal" always mirrors the
/// goal cell so parameter-level queries can target it like any other key.
using ParamValue = std::variant<Cell, std::string, double, bool>;
using ParamMap = std::map<std::string, ParamValue>;

std::string param_to_string(const ParamValue& v);

struct ActionCosts {
  double down = 1.0;
  double left = 1.0;
  double right = 1.0;

  double of(Action a) const;
  friend bool operator==(const ActionCosts&, const ActionCosts&) = default;
};

/// One hypothesized agent model: a grid, a start/goal pair, per-action
/// costs and the rationality parameter beta of the Boltzmann likelihood.
class GridModel {
 public:
  GridModel(std::string id, GridSpec grid, Cell start, Cell goal,
            ActionCosts costs = {}, double beta = 1.0, ParamMap params = {});

  const std::string& id() const { return id_; }
  const GridSpec& grid() const { return grid_; }
  Cell start() const { return start_; }
  Cell goal() const { return goal_; }
  const ActionCosts& costs() const { return costs_; }
  double beta() const { return beta_; }
  const ParamMap& params() const { return params_; }

  // Parameter lookup; throws std::out_of_range for unknown keys.
  const ParamValue& theta(const std::string& key) const;

  friend bool operator==(const GridModel&, const GridModel&) = default;

 private:
  std::string id_;
  GridSpec grid_;
  Cell start_;
  Cell goal_;
  ActionCosts costs_;
  double beta_;
  ParamMap params_;
};

// Sum of per-action costs; 0 for the empty trace. Throws
// std::invalid_argument if the trace is invalid on the model's grid.
double trace_cost(const GridModel& model, const Trace& trace);

/// Normalized probability vector over model identifiers.
class BeliefDistribution {
 public:
  explicit BeliefDistribution(std::map<std::string, double> entries);

  // 0 for identifiers not present.
  double prob(const std::string& id) const;
  const std::map<std::string, double>& entries() const { return entries_; }

 private:
  std::map<std::string, double> entries_;
};

/// Per-timestep weights of the generalized cost. Materialized against a
/// trace of length n this yields alpha_0..alpha_n, normalized to sum 1 so
/// costs stay comparable across trace lengths.
class WeightProfile {
 public:
  enum class Kind { Uniform, FinalOnly, Discount, KroneckerAt, Explicit };

  static WeightProfile uniform();
  static WeightProfile final_only();
  static WeightProfile discount(double gamma);  // gamma in (0, 1]
  static WeightProfile kronecker_at(std::size_t k);
  static WeightProfile explicit_weights(std::vector<double> values);

  Kind kind() const { return kind_; }
  double gamma() const { return gamma_; }
  std::size_t k() const { return k_; }
  const std::vector<double>& values() const { return values_; }

  // Throws std::invalid_argument when the profile cannot cover a trace of
  // this length (KroneckerAt(k) with k > n, Explicit of the wrong size).
  std::vector<double> materialize(std::size_t trace_length) const;
  bool can_materialize(std::size_t trace_length) const;

  friend bool operator==(const WeightProfile&, const WeightProfile&) = default;

 private:
  WeightProfile(Kind kind, double gamma, std::size_t k, std::vector<double> values)
      : kind_(kind), gamma_(gamma), k_(k), values_(std::move(values)) {}

  Kind kind_;
  double gamma_;
  std::size_t k_;
  std::vector<double> values_;
};

/// The explicit models a human observer entertains for the agent, plus the
/// reserved unknown-model hypothesis "M0" (uniform over every behavior the
/// grid dynamics allow, up to m0_horizon actions).
class HypothesisSet {
 public:
  static constexpr const char* kUnknownModelId = "M0";

  // All explicit models must share one grid and one start cell. The prior
  // must cover exactly the explicit ids plus "M0" and sum to 1.
  HypothesisSet(std::vector<GridModel> explicit_models, BeliefDistribution prior,
                std::optional<std::size_t> m0_horizon = std::nullopt);

  const std::vector<GridModel>& explicit_models() const { return explicit_models_; }
  const BeliefDistribution& prior() const { return prior_; }
  std::size_t m0_horizon() const { return m0_horizon_; }
  const GridSpec& grid() const;
  Cell start() const;
  std::size_t hypothesis_count() const { return explicit_models_.size() + 1; }

  // nullptr for unknown ids and for "M0" (which has no explicit model).
  const GridModel* find(const std::string& id) const;

  HypothesisSet with_prior(BeliefDistribution prior) const;

 private:
  std::vector<GridModel> explicit_models_;
  std::size_t m0_horizon_;
  BeliefDistribution prior_;
};

enum class ObjectiveKind {
  Explicable,
  Legible,
  Predictable,
  KPredictable,
  Deceptive,
  Obfuscating
};

std::string objective_kind_name(ObjectiveKind kind);

struct Objective {
  ObjectiveKind kind = ObjectiveKind::Explicable;
  std::string theta_key;    // Legible only
  ParamValue theta_value;   // Legible only
  std::size_t k = 0;        // KPredictable only

  static Objective explicable();
  static Objective legible(std::string key, ParamValue value);
  static Objective predictable();
  static Objective k_predictable(std::size_t k);
  static Objective deceptive();
  static Objective obfuscating();
};

/// A full planning problem: who the observer thinks the agent might be,
/// which model actually drives it, and what the agent optimizes for.
class Scenario {
 public:
  Scenario(HypothesisSet hypothesis_set, GridModel agent_model, WeightProfile weights,
           std::optional<Objective> objective = std::nullopt);

  const HypothesisSet& hypothesis_set() const { return hypothesis_set_; }
  const GridModel& agent_model() const { return agent_model_; }
  const std::string& agent_model_id() const { return agent_model_.id(); }
  const WeightProfile& weights() const { return weights_; }
  const std::optional<Objective>& objective() const { return objective_; }

  Scenario with_objective(Objective objective) const;
  Scenario with_weights(WeightProfile weights) const;
  Scenario with_hypothesis_set(HypothesisSet hs) const;

 private:
  HypothesisSet hypothesis_set_;
  GridModel agent_model_;
  WeightProfile weights_;
  std::optional<Objective> objective_;
};

}  // namespace hap
