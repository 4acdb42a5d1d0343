#include "hap/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace hap {

namespace {

constexpr double kProbSumTolerance = 1e-9;

std::string cell_str(Cell c) {
  std::ostringstream os;
  os << "(" << c.col << "," << c.row << ")";
  return os.str();
}

}  // namespace

Cell displaced(Cell from, Action a) {
  switch (a) {
    case Action::Down:
      return {from.col, from.row + 1};
    case Action::Left:
      return {from.col - 1, from.row};
    case Action::Right:
      return {from.col + 1, from.row};
  }
  throw std::logic_error("displaced: bad action");
}

char action_char(Action a) {
  switch (a) {
    case Action::Down:
      return 'D';
    case Action::Left:
      return 'L';
    case Action::Right:
      return 'R';
  }
  throw std::logic_error("action_char: bad action");
}

std::optional<Action> action_from_char(char c) {
  switch (c) {
    case 'D':
      return Action::Down;
    case 'L':
      return Action::Left;
    case 'R':
      return Action::Right;
    default:
      return std::nullopt;
  }
}

std::string actions_to_string(const std::vector<Action>& actions) {
  std::string s;
  s.reserve(actions.size());
  for (Action a : actions) s.push_back(action_char(a));
  return s;
}

std::vector<Action> actions_from_string(const std::string& s) {
  std::vector<Action> out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto a = action_from_char(s[i]);
    if (!a) {
      throw std::invalid_argument("bad action character '" + std::string(1, s[i]) +
                                  "' at position " + std::to_string(i) +
                                  " (expected D, L or R)");
    }
    out.push_back(*a);
  }
  return out;
}

GridSpec::GridSpec(int width, int height, std::vector<Cell> blocked)
    : width_(width), height_(height), blocked_(std::move(blocked)) {
  if (width_ < 1 || height_ < 1) {
    throw std::invalid_argument("grid dimensions must be at least 1x1");
  }
  std::sort(blocked_.begin(), blocked_.end());
  if (std::adjacent_find(blocked_.begin(), blocked_.end()) != blocked_.end()) {
    throw std::invalid_argument("blocked set contains duplicate cells");
  }
  mask_.assign(static_cast<std::size_t>(width_) * height_, 0);
  for (Cell c : blocked_) {
    if (!in_bounds(c)) {
      throw std::invalid_argument("blocked cell " + cell_str(c) + " out of bounds");
    }
    mask_[static_cast<std::size_t>(c.row) * width_ + c.col] = 1;
  }
}

std::size_t GridSpec::cell_count() const {
  return static_cast<std::size_t>(width_) * height_;
}

bool GridSpec::in_bounds(Cell c) const {
  return c.col >= 0 && c.col < width_ && c.row >= 0 && c.row < height_;
}

bool GridSpec::is_blocked(Cell c) const {
  return in_bounds(c) && mask_[static_cast<std::size_t>(c.row) * width_ + c.col] != 0;
}

Cell Trace::end() const {
  Cell c = start;
  for (Action a : actions) c = displaced(c, a);
  return c;
}

std::vector<Cell> Trace::states() const {
  std::vector<Cell> out;
  out.reserve(actions.size() + 1);
  Cell c = start;
  out.push_back(c);
  for (Action a : actions) {
    c = displaced(c, a);
    out.push_back(c);
  }
  return out;
}

bool trace_less(const Trace& a, const Trace& b) {
  if (a.actions.size() != b.actions.size()) {
    return a.actions.size() < b.actions.size();
  }
  return a.actions < b.actions;
}

std::string TraceCheck::describe() const {
  if (ok) return "ok";
  const char* what = "";
  switch (reason) {
    case TraceViolation::OutOfBounds:
      what = "out-of-bounds";
      break;
    case TraceViolation::Blocked:
      what = "blocked";
      break;
    case TraceViolation::Revisit:
      what = "revisit";
      break;
  }
  return std::string(what) + " at step " + std::to_string(step);
}

TraceCheck validate_trace(const GridSpec& grid, const Trace& trace) {
  auto fail = [](std::size_t step, TraceViolation why) {
    return TraceCheck{false, step, why};
  };
  Cell c = trace.start;
  if (!grid.in_bounds(c)) return fail(0, TraceViolation::OutOfBounds);
  if (grid.is_blocked(c)) return fail(0, TraceViolation::Blocked);
  std::set<Cell> visited{c};
  for (std::size_t i = 0; i < trace.actions.size(); ++i) {
    c = displaced(c, trace.actions[i]);
    if (!grid.in_bounds(c)) return fail(i + 1, TraceViolation::OutOfBounds);
    if (grid.is_blocked(c)) return fail(i + 1, TraceViolation::Blocked);
    if (!visited.insert(c).second) return fail(i + 1, TraceViolation::Revisit);
  }
  return {};
}

std::pair<Trace, std::vector<Action>> split(const Trace& trace, std::size_t i) {
  if (i > trace.actions.size()) {
    throw std::out_of_range("split index " + std::to_string(i) + " exceeds trace length " +
                            std::to_string(trace.actions.size()));
  }
  Trace prefix{trace.start,
               std::vector<Action>(trace.actions.begin(), trace.actions.begin() + i)};
  std::vector<Action> postfix(trace.actions.begin() + i, trace.actions.end());
  return {std::move(prefix), std::move(postfix)};
}

Trace prefix_of(const Trace& trace, std::size_t i) {
  if (i > trace.actions.size()) {
    throw std::out_of_range("prefix index " + std::to_string(i) + " exceeds trace length " +
                            std::to_string(trace.actions.size()));
  }
  return {trace.start, std::vector<Action>(trace.actions.begin(), trace.actions.begin() + i)};
}

std::string param_to_string(const ParamValue& v) {
  struct Visitor {
    std::string operator()(Cell c) const { return cell_str(c); }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(double d) const {
      std::ostringstream os;
      os << d;
      return os.str();
    }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
  };
  return std::visit(Visitor{}, v);
}

double ActionCosts::of(Action a) const {
  switch (a) {
    case Action::Down:
      return down;
    case Action::Left:
      return left;
    case Action::Right:
      return right;
  }
  throw std::logic_error("ActionCosts::of: bad action");
}

GridModel::GridModel(std::string id, GridSpec grid, Cell start, Cell goal, ActionCosts costs,
                     double beta, ParamMap params)
    : id_(std::move(id)),
      grid_(std::move(grid)),
      start_(start),
      goal_(goal),
      costs_(costs),
      beta_(beta),
      params_(std::move(params)) {
  if (id_.empty()) throw std::invalid_argument("model id must be non-empty");
  if (!grid_.is_free(start_)) {
    throw std::invalid_argument("model '" + id_ + "': start " + cell_str(start_) +
                                " is blocked or out of bounds");
  }
  if (!grid_.is_free(goal_)) {
    throw std::invalid_argument("model '" + id_ + "': goal " + cell_str(goal_) +
                                " is blocked or out of bounds");
  }
  if (!(costs_.down > 0 && costs_.left > 0 && costs_.right > 0)) {
    throw std::invalid_argument("model '" + id_ + "': action costs must be positive");
  }
  if (beta_ < 0) {
    throw std::invalid_argument("model '" + id_ + "': beta must be non-negative");
  }
  auto it = params_.find("goal");
  if (it == params_.end()) {
    params_.emplace("goal", goal_);
  } else if (!(it->second == ParamValue(goal_))) {
    throw std::invalid_argument("model '" + id_ + "': params[\"goal\"] does not mirror the goal");
  }
}

const ParamValue& GridModel::theta(const std::string& key) const {
  auto it = params_.find(key);
  if (it == params_.end()) {
    throw std::out_of_range("model '" + id_ + "' has no parameter '" + key + "'");
  }
  return it->second;
}

double trace_cost(const GridModel& model, const Trace& trace) {
  TraceCheck check = validate_trace(model.grid(), trace);
  if (!check.ok) {
    throw std::invalid_argument("trace invalid on model '" + model.id() + "' grid: " +
                                check.describe());
  }
  double sum = 0.0;
  for (Action a : trace.actions) sum += model.costs().of(a);
  return sum;
}

BeliefDistribution::BeliefDistribution(std::map<std::string, double> entries)
    : entries_(std::move(entries)) {
  double sum = 0.0;
  for (const auto& [id, p] : entries_) {
    if (p < 0 || !std::isfinite(p)) {
      throw std::invalid_argument("belief entry '" + id + "' is negative or non-finite");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kProbSumTolerance) {
    throw std::invalid_argument("belief entries sum to " + std::to_string(sum) + ", not 1");
  }
}

double BeliefDistribution::prob(const std::string& id) const {
  auto it = entries_.find(id);
  return it == entries_.end() ? 0.0 : it->second;
}

WeightProfile WeightProfile::uniform() { return {Kind::Uniform, 1.0, 0, {}}; }

WeightProfile WeightProfile::final_only() { return {Kind::FinalOnly, 1.0, 0, {}}; }

WeightProfile WeightProfile::discount(double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("discount gamma must lie in (0, 1]");
  }
  return {Kind::Discount, gamma, 0, {}};
}

WeightProfile WeightProfile::kronecker_at(std::size_t k) {
  return {Kind::KroneckerAt, 1.0, k, {}};
}

WeightProfile WeightProfile::explicit_weights(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("explicit weights must be non-empty");
  double sum = 0.0;
  for (double v : values) {
    if (v < 0 || !std::isfinite(v)) {
      throw std::invalid_argument("explicit weights must be non-negative and finite");
    }
    sum += v;
  }
  if (sum <= 0) throw std::invalid_argument("explicit weights must have positive sum");
  return {Kind::Explicit, 1.0, 0, std::move(values)};
}

bool WeightProfile::can_materialize(std::size_t trace_length) const {
  switch (kind_) {
    case Kind::KroneckerAt:
      return k_ <= trace_length;
    case Kind::Explicit:
      return values_.size() == trace_length + 1;
    default:
      return true;
  }
}

std::vector<double> WeightProfile::materialize(std::size_t trace_length) const {
  const std::size_t n = trace_length;
  switch (kind_) {
    case Kind::Uniform:
      return std::vector<double>(n + 1, 1.0 / static_cast<double>(n + 1));
    case Kind::FinalOnly: {
      std::vector<double> w(n + 1, 0.0);
      w[n] = 1.0;
      return w;
    }
    case Kind::Discount: {
      std::vector<double> w(n + 1);
      double g = 1.0;
      double sum = 0.0;
      for (std::size_t i = 0; i <= n; ++i) {
        w[i] = g;
        sum += g;
        g *= gamma_;
      }
      for (double& v : w) v /= sum;
      return w;
    }
    case Kind::KroneckerAt: {
      if (k_ > n) {
        throw std::invalid_argument("KroneckerAt(" + std::to_string(k_) +
                                    ") cannot cover a trace of length " + std::to_string(n));
      }
      std::vector<double> w(n + 1, 0.0);
      w[k_] = 1.0;
      return w;
    }
    case Kind::Explicit: {
      if (values_.size() != n + 1) {
        throw std::invalid_argument("explicit weights carry " +
                                    std::to_string(values_.size()) + " entries, trace needs " +
                                    std::to_string(n + 1));
      }
      std::vector<double> w = values_;
      double sum = std::accumulate(w.begin(), w.end(), 0.0);
      for (double& v : w) v /= sum;
      return w;
    }
  }
  throw std::logic_error("materialize: bad kind");
}

HypothesisSet::HypothesisSet(std::vector<GridModel> explicit_models, BeliefDistribution prior,
                             std::optional<std::size_t> m0_horizon)
    : explicit_models_(std::move(explicit_models)), m0_horizon_(0), prior_(std::move(prior)) {
  if (explicit_models_.empty()) {
    throw std::invalid_argument("hypothesis set needs at least one explicit model");
  }
  std::set<std::string> ids;
  for (const GridModel& m : explicit_models_) {
    if (m.id() == kUnknownModelId) {
      throw std::invalid_argument("model id 'M0' is reserved for the unknown model");
    }
    if (!ids.insert(m.id()).second) {
      throw std::invalid_argument("duplicate model id '" + m.id() + "'");
    }
    if (!(m.grid() == explicit_models_.front().grid()) ||
        m.start() != explicit_models_.front().start()) {
      throw std::invalid_argument("all explicit models must share one grid and start");
    }
  }
  ids.insert(kUnknownModelId);
  std::set<std::string> prior_ids;
  for (const auto& [id, p] : prior_.entries()) prior_ids.insert(id);
  if (prior_ids != ids) {
    throw std::invalid_argument("prior must cover exactly the explicit model ids plus 'M0'");
  }
  const std::size_t default_horizon = grid().cell_count() - 1;
  m0_horizon_ = m0_horizon.value_or(default_horizon);
}

const GridSpec& HypothesisSet::grid() const { return explicit_models_.front().grid(); }

Cell HypothesisSet::start() const { return explicit_models_.front().start(); }

const GridModel* HypothesisSet::find(const std::string& id) const {
  for (const GridModel& m : explicit_models_) {
    if (m.id() == id) return &m;
  }
  return nullptr;
}

HypothesisSet HypothesisSet::with_prior(BeliefDistribution prior) const {
  return HypothesisSet(explicit_models_, std::move(prior), m0_horizon_);
}

std::string objective_kind_name(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::Explicable:
      return "explicable";
    case ObjectiveKind::Legible:
      return "legible";
    case ObjectiveKind::Predictable:
      return "predictable";
    case ObjectiveKind::KPredictable:
      return "k_predictable";
    case ObjectiveKind::Deceptive:
      return "deceptive";
    case ObjectiveKind::Obfuscating:
      return "obfuscating";
  }
  throw std::logic_error("objective_kind_name: bad kind");
}

Objective Objective::explicable() { return {ObjectiveKind::Explicable, "", {}, 0}; }

Objective Objective::legible(std::string key, ParamValue value) {
  if (key.empty()) throw std::invalid_argument("legible objective needs a parameter key");
  return {ObjectiveKind::Legible, std::move(key), std::move(value), 0};
}

Objective Objective::predictable() { return {ObjectiveKind::Predictable, "", {}, 0}; }

Objective Objective::k_predictable(std::size_t k) {
  return {ObjectiveKind::KPredictable, "", {}, k};
}

Objective Objective::deceptive() { return {ObjectiveKind::Deceptive, "", {}, 0}; }

Objective Objective::obfuscating() { return {ObjectiveKind::Obfuscating, "", {}, 0}; }

Scenario::Scenario(HypothesisSet hypothesis_set, GridModel agent_model, WeightProfile weights,
                   std::optional<Objective> objective)
    : hypothesis_set_(std::move(hypothesis_set)),
      agent_model_(std::move(agent_model)),
      weights_(std::move(weights)),
      objective_(std::move(objective)) {
  if (!(agent_model_.grid() == hypothesis_set_.grid()) ||
      agent_model_.start() != hypothesis_set_.start()) {
    throw std::invalid_argument("agent model must share the hypothesis set's grid and start");
  }
  if (const GridModel* m = hypothesis_set_.find(agent_model_.id())) {
    if (!(*m == agent_model_)) {
      throw std::invalid_argument("agent model '" + agent_model_.id() +
                                  "' differs from the explicit model with the same id");
    }
  }
}

Scenario Scenario::with_objective(Objective objective) const {
  return Scenario(hypothesis_set_, agent_model_, weights_, std::move(objective));
}

Scenario Scenario::with_weights(WeightProfile weights) const {
  return Scenario(hypothesis_set_, agent_model_, std::move(weights), objective_);
}

Scenario Scenario::with_hypothesis_set(HypothesisSet hs) const {
  return Scenario(std::move(hs), agent_model_, weights_, objective_);
}

}  // namespace hap
