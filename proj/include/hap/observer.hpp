// The human observer's inference engine: Boltzmann trace likelihoods per
// model, prefix likelihoods by marginalizing over completions, and the
// Bayesian posterior over the hypothesis set given an observed prefix.
#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hap/core.hpp"
#include "hap/dynamics.hpp"

namespace hap {

/// Raised when no hypothesis assigns positive likelihood to an observed
/// prefix (only possible once the unknown-model prior is zero).
class NoExplanation : public std::runtime_error {
 public:
  explicit NoExplanation(std::size_t prefix_length)
      : std::runtime_error("no hypothesis explains the observed prefix of length " +
                           std::to_string(prefix_length)),
        prefix_length_(prefix_length) {}

  std::size_t prefix_length() const { return prefix_length_; }

 private:
  std::size_t prefix_length_;
};

/// Probability table over one model's complete-trace set.
///
/// Prefix masses are served from a trie whose node masses are bottom-up
/// sums of the per-trace probabilities. Summing only positive subtree
/// terms keeps masses of order exp(-beta*gap) intact; differencing
/// cumulative sums would cancel them to zero.
class LikelihoodTable {
 public:
  LikelihoodTable() = default;
  // probs must align with traces and sum to 1 (empty set: both empty).
  LikelihoodTable(std::string model_id, TraceSet traces, std::vector<double> probs);

  const std::string& model_id() const { return model_id_; }
  const TraceSet& traces() const { return traces_; }
  const std::vector<double>& probs() const { return probs_; }
  bool empty() const { return traces_.empty(); }
  std::size_t size() const { return traces_.size(); }

  // Probability of this exact trace; 0 when absent.
  double prob_of(const Trace& trace) const;
  // Total probability of complete traces extending the prefix (the prefix
  // itself included when it is complete); 0 when none exists.
  double prefix_mass(const Trace& prefix) const;

 private:
  struct Node {
    double mass = 0.0;
    double prob = 0.0;
    std::int32_t child[kActionCount] = {-1, -1, -1};
  };

  const Node* walk(const Trace& t) const;

  std::string model_id_;
  TraceSet traces_;
  std::vector<double> probs_;
  Cell start_{};
  std::vector<Node> nodes_;  // nodes_[0] is the empty-prefix root
};

// Boltzmann (noisy-rational) likelihood over the model's complete-trace
// set: P(trace) = exp(-beta * (C - C*)) / Z with C* the set's minimum
// cost. The C* shift is the numerically stable form of the proportional
// definition and makes the table invariant to constant cost offsets.
// beta = 0 degenerates to the uniform table. Empty set: empty table.
LikelihoodTable trace_likelihood(const GridModel& model, const TraceSet& trace_set);

// The unknown model's table: uniform over the universal trace set.
LikelihoodTable m0_likelihood(const TraceSet& universal);

double prefix_likelihood(const LikelihoodTable& table, const Trace& prefix);

/// Caches one likelihood table per hypothesis (explicit models plus "M0")
/// and answers posterior queries. Read-only after construction.
class Observer {
 public:
  explicit Observer(HypothesisSet hypothesis_set);

  const HypothesisSet& hypotheses() const { return hypothesis_set_; }
  const LikelihoodTable& table(const std::string& id) const;

  // P(M | prefix) over explicit models plus "M0"; throws NoExplanation
  // when every hypothesis assigns the prefix zero mass.
  BeliefDistribution posterior(const Trace& prefix) const;
  // Posterior after each prefix of the trace, i = 0..n (entry 0 = prior
  // updated with unit likelihoods, i.e. the prior itself).
  std::vector<BeliefDistribution> posterior_trajectory(const Trace& trace) const;

 private:
  HypothesisSet hypothesis_set_;
  std::map<std::string, LikelihoodTable> tables_;
};

// Shannon entropy in nats, 0*ln(0) taken as 0.
double belief_entropy(const BeliefDistribution& b);

}  // namespace hap
