// Exhaustive scenario solver: scores every complete trace of the agent
// model under the scenario objective and returns the minimizer under a
// fixed, schedule-independent tie-break.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "hap/core.hpp"
#include "hap/measures.hpp"

namespace hap {

class SolveError : public std::runtime_error {
 public:
  explicit SolveError(const std::string& what) : std::runtime_error(what) {}
};

struct PlanResult {
  Trace chosen;
  double objective_cost = 0.0;
  double agent_cost = 0.0;
  std::vector<ScoreReport> per_step_scores;  // objective measure at i = 0..n
  std::size_t candidates_evaluated = 0;
};

struct SolveOptions {
  // Restrict the search to traces that are cost-optimal in the agent model
  // ("lie by omission" for the explicable objective).
  bool restrict_optimal = false;
  // Blend weight on the agent's own cost: minimize objective + lambda * C.
  double lambda = 0.0;
  PredictabilityMode mode = PredictabilityMode::Posterior;
  // 0 = pick automatically. Candidate evaluation is embarrassingly
  // parallel; the argmin reduction is always the same serial pass.
  unsigned threads = 0;
};

// Minimizes generalized_cost + lambda * C(trace) over the agent model's
// complete traces. Candidates whose length the weight profile cannot cover
// (KroneckerAt(k) with k > n, Explicit of another size) are excluded
// before the search. Ties break on lower agent cost, then on canonical
// enumeration order. Throws SolveError when nothing is searchable.
PlanResult solve(const Scenario& scenario, const SolveOptions& options = {});

// solve() with the weights forced to KroneckerAt(k); candidates shorter
// than k are excluded. The objective must be KPredictable.
PlanResult k_step_predictable_plan(const Scenario& scenario, const SolveOptions& options = {});

// solve() with restrict_optimal = true; the objective must be Explicable.
// The returned agent_cost equals the agent model's optimum.
PlanResult restricted_explicable_plan(const Scenario& scenario,
                                      const SolveOptions& options = {});

}  // namespace hap
