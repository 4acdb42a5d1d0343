#include "hap/planner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "hap/dynamics.hpp"
#include "hap/observer.hpp"

namespace hap {

namespace {

// Chunked parallel map into a pre-sized result vector. Each index is
// computed exactly once with a fixed per-index recipe, so results do not
// depend on scheduling.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  if (threads <= 1 || n < 64) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    constexpr std::size_t kChunk = 16;
    for (;;) {
      std::size_t begin = next.fetch_add(kChunk);
      if (begin >= n) return;
      std::size_t end = std::min(begin + kChunk, n);
      for (std::size_t i = begin; i < end; ++i) fn(i);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
}

unsigned pick_threads(unsigned requested, std::size_t candidates) {
  if (requested != 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (candidates < 256) return 1;
  return hw;
}

}  // namespace

PlanResult solve(const Scenario& scenario, const SolveOptions& options) {
  if (!scenario.objective()) {
    throw SolveError("scenario has no objective");
  }
  const Objective& objective = *scenario.objective();

  TraceSet all = enumerate_complete_traces(scenario.agent_model());
  if (all.empty()) {
    throw SolveError("agent model '" + scenario.agent_model_id() +
                     "' has no complete traces (goal unreachable)");
  }

  std::vector<double> agent_costs(all.size());
  double optimum = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < all.size(); ++i) {
    agent_costs[i] = trace_cost(scenario.agent_model(), all[i]);
    optimum = std::min(optimum, agent_costs[i]);
  }

  auto coverable = [&](std::size_t n) {
    if (objective.kind == ObjectiveKind::KPredictable) return objective.k <= n;
    return scenario.weights().can_materialize(n);
  };

  std::vector<std::size_t> candidates;
  candidates.reserve(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (options.restrict_optimal && agent_costs[i] > optimum) continue;
    if (!coverable(all[i].length())) continue;
    candidates.push_back(i);
  }
  if (candidates.empty()) {
    throw SolveError(options.restrict_optimal || objective.kind == ObjectiveKind::KPredictable
                         ? "no candidate trace satisfies the search restrictions"
                         : "weight profile covers no candidate trace");
  }

  Observer observer(scenario.hypothesis_set());
  std::vector<double> objective_costs(candidates.size());
  parallel_for(candidates.size(), pick_threads(options.threads, candidates.size()),
               [&](std::size_t j) {
                 objective_costs[j] =
                     generalized_cost(observer, scenario, all[candidates[j]], options.mode);
               });

  // Serial argmin with the documented tie-break: total score, then agent
  // cost, then canonical enumeration order.
  std::size_t best = 0;
  double best_total = objective_costs[0] + options.lambda * agent_costs[candidates[0]];
  for (std::size_t j = 1; j < candidates.size(); ++j) {
    double total = objective_costs[j] + options.lambda * agent_costs[candidates[j]];
    if (total < best_total ||
        (total == best_total &&
         agent_costs[candidates[j]] < agent_costs[candidates[best]])) {
      best = j;
      best_total = total;
    }
  }

  const Trace& chosen = all[candidates[best]];
  PlanResult result;
  result.chosen = chosen;
  result.objective_cost = objective_costs[best];
  result.agent_cost = agent_costs[candidates[best]];
  result.candidates_evaluated = candidates.size();

  MeasureParams params;
  params.theta_key = objective.theta_key;
  params.theta_value = objective.theta_value;
  params.agent_model_id = scenario.agent_model_id();
  params.mode = options.mode;
  std::vector<double> steps =
      per_step_measure(observer, measure_for(objective.kind), chosen, params);
  result.per_step_scores.reserve(steps.size());
  for (std::size_t i = 0; i < steps.size(); ++i) {
    result.per_step_scores.push_back({measure_for(objective.kind), i, steps[i], {}});
  }
  return result;
}

PlanResult k_step_predictable_plan(const Scenario& scenario, const SolveOptions& options) {
  if (!scenario.objective() || scenario.objective()->kind != ObjectiveKind::KPredictable) {
    throw SolveError("k_step_predictable_plan needs a KPredictable objective");
  }
  return solve(scenario, options);
}

PlanResult restricted_explicable_plan(const Scenario& scenario, const SolveOptions& options) {
  if (!scenario.objective() || scenario.objective()->kind != ObjectiveKind::Explicable) {
    throw SolveError("restricted_explicable_plan needs an Explicable objective");
  }
  SolveOptions restricted = options;
  restricted.restrict_optimal = true;
  return solve(scenario, restricted);
}

}  // namespace hap
