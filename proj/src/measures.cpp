#include "hap/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace hap {

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

double explicit_posterior_mass(const Observer& observer, const BeliefDistribution& post) {
  double sum = 0.0;
  for (const GridModel& m : observer.hypotheses().explicit_models()) {
    sum += post.prob(m.id());
  }
  return sum;
}

// Explicit model ids whose theta matches; validates the key on every model.
std::vector<std::string> matching_theta_ids(const HypothesisSet& hs,
                                            const std::string& theta_key,
                                            const ParamValue& theta_value) {
  std::vector<std::string> ids;
  for (const GridModel& m : hs.explicit_models()) {
    if (m.theta(theta_key) == theta_value) ids.push_back(m.id());
  }
  return ids;
}

Trace concatenate(const Trace& prefix, std::span<const Action> postfix) {
  Trace full = prefix;
  full.actions.insert(full.actions.end(), postfix.begin(), postfix.end());
  return full;
}

double predictability_of(const Observer& observer, const Trace& prefix, const Trace& full,
                         PredictabilityMode mode) {
  const HypothesisSet& hs = observer.hypotheses();
  std::optional<BeliefDistribution> posterior_weights;
  if (mode == PredictabilityMode::Posterior) {
    posterior_weights = observer.posterior(prefix);
  }
  const BeliefDistribution* weights =
      posterior_weights ? &*posterior_weights : &hs.prior();

  auto contribution = [&](const std::string& id) {
    const LikelihoodTable& t = observer.table(id);
    double denominator = t.prefix_mass(prefix);
    if (denominator <= 0) return 0.0;
    return (t.prob_of(full) / denominator) * weights->prob(id);
  };

  double value = 0.0;
  for (const GridModel& m : hs.explicit_models()) value += contribution(m.id());
  value += contribution(HypothesisSet::kUnknownModelId);
  return clamp01(value);
}

}  // namespace

std::string measure_name(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::Explicability:
      return "explicability";
    case MeasureKind::Legibility:
      return "legibility";
    case MeasureKind::Predictability:
      return "predictability";
    case MeasureKind::Deception:
      return "deception";
    case MeasureKind::Obfuscation:
      return "obfuscation";
  }
  throw std::logic_error("measure_name: bad kind");
}

MeasureKind measure_for(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::Explicable:
      return MeasureKind::Explicability;
    case ObjectiveKind::Legible:
      return MeasureKind::Legibility;
    case ObjectiveKind::Predictable:
    case ObjectiveKind::KPredictable:
      return MeasureKind::Predictability;
    case ObjectiveKind::Deceptive:
      return MeasureKind::Deception;
    case ObjectiveKind::Obfuscating:
      return MeasureKind::Obfuscation;
  }
  throw std::logic_error("measure_for: bad kind");
}

double explicability(const Observer& observer, const Trace& prefix) {
  return clamp01(explicit_posterior_mass(observer, observer.posterior(prefix)));
}

double legibility(const Observer& observer, const Trace& prefix, const std::string& theta_key,
                  const ParamValue& theta_value) {
  std::vector<std::string> ids =
      matching_theta_ids(observer.hypotheses(), theta_key, theta_value);
  BeliefDistribution post = observer.posterior(prefix);
  double sum = 0.0;
  for (const std::string& id : ids) sum += post.prob(id);
  return clamp01(sum);
}

double predictability(const Observer& observer, const Trace& prefix,
                      std::span<const Action> postfix, PredictabilityMode mode) {
  Trace full = concatenate(prefix, postfix);
  TraceCheck check = validate_trace(observer.hypotheses().grid(), full);
  if (!check.ok) {
    throw std::invalid_argument("prefix+postfix is not a valid trace: " + check.describe());
  }
  return predictability_of(observer, prefix, full, mode);
}

double deception(const Observer& observer, const std::string& agent_model_id,
                 const Trace& prefix) {
  BeliefDistribution post = observer.posterior(prefix);
  return clamp01(1.0 - post.prob(agent_model_id));
}

double obfuscation(const Observer& observer, const Trace& prefix) {
  double h = belief_entropy(observer.posterior(prefix));
  double max_h = std::log(static_cast<double>(observer.hypotheses().hypothesis_count()));
  return std::clamp(h, 0.0, max_h);
}

std::vector<double> per_step_measure(const Observer& observer, MeasureKind kind,
                                     const Trace& trace, const MeasureParams& params) {
  std::vector<double> out;
  out.reserve(trace.length() + 1);
  for (std::size_t i = 0; i <= trace.length(); ++i) {
    Trace prefix = prefix_of(trace, i);
    switch (kind) {
      case MeasureKind::Explicability:
        out.push_back(explicability(observer, prefix));
        break;
      case MeasureKind::Legibility:
        out.push_back(legibility(observer, prefix, params.theta_key, params.theta_value));
        break;
      case MeasureKind::Predictability: {
        std::span<const Action> postfix(trace.actions.data() + i, trace.length() - i);
        out.push_back(predictability(observer, prefix, postfix, params.mode));
        break;
      }
      case MeasureKind::Deception:
        out.push_back(deception(observer, params.agent_model_id, prefix));
        break;
      case MeasureKind::Obfuscation:
        out.push_back(obfuscation(observer, prefix));
        break;
    }
  }
  return out;
}

bool is_complete_trace(const GridModel& model, const Trace& trace) {
  if (trace.start != model.start()) return false;
  if (!validate_trace(model.grid(), trace).ok) return false;
  const std::vector<Cell> states = trace.states();
  if (states.back() != model.goal()) return false;
  for (std::size_t i = 0; i + 1 < states.size(); ++i) {
    if (states[i] == model.goal()) return false;
  }
  return true;
}

double generalized_cost(const Observer& observer, const Scenario& scenario, const Trace& trace,
                        PredictabilityMode mode) {
  if (!scenario.objective()) {
    throw std::invalid_argument("scenario has no objective to cost against");
  }
  if (!is_complete_trace(scenario.agent_model(), trace)) {
    throw std::invalid_argument("trace is not a complete trace of the agent model");
  }
  const Objective& objective = *scenario.objective();
  const std::size_t n = trace.length();

  std::vector<double> alpha = objective.kind == ObjectiveKind::KPredictable
                                  ? WeightProfile::kronecker_at(objective.k).materialize(n)
                                  : scenario.weights().materialize(n);

  std::vector<std::string> theta_ids;
  if (objective.kind == ObjectiveKind::Legible) {
    theta_ids = matching_theta_ids(observer.hypotheses(), objective.theta_key,
                                   objective.theta_value);
  }
  const double log_hypotheses =
      std::log(static_cast<double>(observer.hypotheses().hypothesis_count()));

  // Fixed ascending-i summation keeps results bit-stable however the
  // per-candidate evaluations are scheduled.
  double cost = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    if (alpha[i] == 0.0) continue;
    Trace prefix = prefix_of(trace, i);
    double term = 0.0;
    switch (objective.kind) {
      case ObjectiveKind::Explicable:
        term = observer.posterior(prefix).prob(HypothesisSet::kUnknownModelId);
        break;
      case ObjectiveKind::Legible: {
        BeliefDistribution post = observer.posterior(prefix);
        double l = 0.0;
        for (const std::string& id : theta_ids) l += post.prob(id);
        term = 1.0 - clamp01(l);
        break;
      }
      case ObjectiveKind::Predictable:
      case ObjectiveKind::KPredictable:
        term = 1.0 - predictability_of(observer, prefix, trace, mode);
        break;
      case ObjectiveKind::Deceptive:
        term = 1.0 - deception(observer, scenario.agent_model_id(), prefix);
        break;
      case ObjectiveKind::Obfuscating:
        term = log_hypotheses > 0
                   ? 1.0 - obfuscation(observer, prefix) / log_hypotheses
                   : 0.0;
        break;
    }
    cost += alpha[i] * term;
  }
  return cost;
}

double generalized_cost(const Scenario& scenario, const Trace& trace, PredictabilityMode mode) {
  Observer observer(scenario.hypothesis_set());
  return generalized_cost(observer, scenario, trace, mode);
}

double distance_explicability_oracle(const GridModel& model, const Trace& trace) {
  return distance_explicability_oracle(model, enumerate_complete_traces(model), trace);
}

double distance_explicability_oracle(const GridModel& model, const TraceSet& complete_set,
                                     const Trace& trace) {
  if (complete_set.empty()) {
    throw std::invalid_argument("model '" + model.id() + "' has no complete traces");
  }
  if (!is_complete_trace(model, trace)) {
    throw std::invalid_argument("trace is not a complete trace of model '" + model.id() + "'");
  }
  double best = std::numeric_limits<double>::infinity();
  for (const Trace& t : complete_set) {
    best = std::min(best, trace_cost(model, t));
  }
  return trace_cost(model, trace) - best;
}

}  // namespace hap
