// Interpretability and adversarial scores over observer posteriors, plus
// the generalized per-step cost the planner minimizes. All functions are
// pure; pass an Observer built from the same hypothesis set to avoid
// re-enumerating trace spaces per call.
#pragma once

#include <span>
#include <string>
#include <vector>

#include "hap/core.hpp"
#include "hap/observer.hpp"

namespace hap {

enum class MeasureKind { Explicability, Legibility, Predictability, Deception, Obfuscation };

std::string measure_name(MeasureKind kind);
MeasureKind measure_for(ObjectiveKind kind);

/// One scored prefix (or a whole trace when per_step is filled).
struct ScoreReport {
  MeasureKind kind = MeasureKind::Explicability;
  std::size_t prefix_length = 0;
  double value = 0.0;
  std::vector<double> per_step;  // values at i = 0..n when a full trace is scored
};

// The paper's predictability weights completions by the prior; the chain
// rule calls for the posterior given the prefix. Both are available,
// posterior being the default.
enum class PredictabilityMode { Prior, Posterior };

/// Extra inputs measures may need beyond the prefix itself.
struct MeasureParams {
  std::string theta_key;                                       // legibility
  ParamValue theta_value;                                      // legibility
  std::string agent_model_id;                                  // deception
  PredictabilityMode mode = PredictabilityMode::Posterior;     // predictability
};

// Total posterior mass on explicit (non-M0) hypotheses, in [0, 1].
double explicability(const Observer& observer, const Trace& prefix);

// Posterior mass on explicit models whose parameter theta_key equals
// theta_value. Every explicit model must define the key.
double legibility(const Observer& observer, const Trace& prefix, const std::string& theta_key,
                  const ParamValue& theta_value);

// Probability the observer assigns to the agent actually continuing with
// `postfix`: sum over hypotheses of P(postfix | prefix, M) weighted by the
// prior or by the posterior given the prefix.
double predictability(const Observer& observer, const Trace& prefix,
                      std::span<const Action> postfix,
                      PredictabilityMode mode = PredictabilityMode::Posterior);

// 1 - P(agent model | prefix); an agent model missing from the hypothesis
// set scores 1 for every prefix.
double deception(const Observer& observer, const std::string& agent_model_id,
                 const Trace& prefix);

// Shannon entropy (nats) of the posterior, in [0, ln(#hypotheses)].
double obfuscation(const Observer& observer, const Trace& prefix);

// One measure evaluated at every prefix length i = 0..n of a trace.
std::vector<double> per_step_measure(const Observer& observer, MeasureKind kind,
                                     const Trace& trace, const MeasureParams& params = {});

// The weighted per-step objective cost of a complete agent trace:
//   Explicable    sum_i alpha_i * P(M0 | prefix_i)
//   Legible       sum_i alpha_i * (1 - legibility(prefix_i))
//   Predictable   sum_i alpha_i * (1 - predictability(prefix_i, postfix_i))
//   KPredictable  same, with the weights forced to KroneckerAt(k)
//   Deceptive     sum_i alpha_i * (1 - deception(prefix_i))
//   Obfuscating   sum_i alpha_i * (1 - obfuscation(prefix_i) / ln(#hypotheses))
// The trace must be complete in the scenario's agent model, and the
// observer must be built from the scenario's hypothesis set.
double generalized_cost(const Observer& observer, const Scenario& scenario, const Trace& trace,
                        PredictabilityMode mode = PredictabilityMode::Posterior);
double generalized_cost(const Scenario& scenario, const Trace& trace,
                        PredictabilityMode mode = PredictabilityMode::Posterior);

// Cost difference from the model's optimal complete trace, the
// distance-based explicability of the prior literature. Used as the
// reduction-test oracle; the trace must be complete in the model.
double distance_explicability_oracle(const GridModel& model, const Trace& trace);
// Same, against a precomputed complete-trace set.
double distance_explicability_oracle(const GridModel& model, const TraceSet& complete_set,
                                     const Trace& trace);

// True iff the trace ends on the model's goal and visits it exactly once.
bool is_complete_trace(const GridModel& model, const Trace& trace);

}  // namespace hap
