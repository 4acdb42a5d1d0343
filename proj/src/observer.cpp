#include "hap/observer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hap {

LikelihoodTable::LikelihoodTable(std::string model_id, TraceSet traces,
                                 std::vector<double> probs)
    : model_id_(std::move(model_id)), traces_(std::move(traces)), probs_(std::move(probs)) {
  if (traces_.size() != probs_.size()) {
    throw std::invalid_argument("likelihood table: traces and probabilities disagree in size");
  }
  if (traces_.empty()) return;

  start_ = traces_[0].start;
  double sum = 0.0;
  for (double p : probs_) {
    if (p < 0 || !std::isfinite(p)) {
      throw std::invalid_argument("likelihood table: negative or non-finite probability");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("likelihood table probabilities sum to " +
                                std::to_string(sum) + ", not 1");
  }

  // Build the prefix trie. Insertion follows the canonical trace order, so
  // the node layout (and every mass accumulation below) is deterministic.
  nodes_.emplace_back();
  for (std::size_t t = 0; t < traces_.size(); ++t) {
    if (traces_[t].start != start_) {
      throw std::invalid_argument("likelihood table: traces disagree on the start cell");
    }
    std::int32_t node = 0;
    for (Action a : traces_[t].actions) {
      std::int32_t& slot = nodes_[node].child[static_cast<int>(a)];
      if (slot < 0) {
        slot = static_cast<std::int32_t>(nodes_.size());
        nodes_.emplace_back();
      }
      node = slot;
    }
    nodes_[node].prob += probs_[t];
  }
  // Children were allocated after their parents, so a reverse sweep sees
  // every subtree before its root.
  for (std::size_t i = nodes_.size(); i-- > 0;) {
    Node& n = nodes_[i];
    n.mass = n.prob;
    for (std::int32_t c : n.child) {
      if (c >= 0) n.mass += nodes_[c].mass;
    }
  }
}

const LikelihoodTable::Node* LikelihoodTable::walk(const Trace& t) const {
  if (nodes_.empty() || t.start != start_) return nullptr;
  std::int32_t node = 0;
  for (Action a : t.actions) {
    node = nodes_[node].child[static_cast<int>(a)];
    if (node < 0) return nullptr;
  }
  return &nodes_[node];
}

double LikelihoodTable::prob_of(const Trace& trace) const {
  const Node* n = walk(trace);
  return n ? n->prob : 0.0;
}

double LikelihoodTable::prefix_mass(const Trace& prefix) const {
  const Node* n = walk(prefix);
  return n ? n->mass : 0.0;
}

LikelihoodTable trace_likelihood(const GridModel& model, const TraceSet& trace_set) {
  if (trace_set.empty()) return {};

  std::vector<double> costs(trace_set.size());
  double min_cost = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < trace_set.size(); ++i) {
    costs[i] = trace_cost(model, trace_set[i]);
    min_cost = std::min(min_cost, costs[i]);
  }
  std::vector<double> probs(trace_set.size());
  double z = 0.0;
  for (std::size_t i = 0; i < trace_set.size(); ++i) {
    probs[i] = std::exp(-model.beta() * (costs[i] - min_cost));
    z += probs[i];
  }
  for (double& p : probs) p /= z;
  return LikelihoodTable(model.id(), trace_set, std::move(probs));
}

LikelihoodTable m0_likelihood(const TraceSet& universal) {
  if (universal.empty()) {
    throw std::invalid_argument("the universal trace set must be non-empty");
  }
  std::vector<double> probs(universal.size(), 1.0 / static_cast<double>(universal.size()));
  return LikelihoodTable(HypothesisSet::kUnknownModelId, universal, std::move(probs));
}

double prefix_likelihood(const LikelihoodTable& table, const Trace& prefix) {
  return table.prefix_mass(prefix);
}

Observer::Observer(HypothesisSet hypothesis_set) : hypothesis_set_(std::move(hypothesis_set)) {
  for (const GridModel& m : hypothesis_set_.explicit_models()) {
    tables_.emplace(m.id(), trace_likelihood(m, enumerate_complete_traces(m)));
  }
  TraceSet universal = universal_trace_set(hypothesis_set_.grid(), hypothesis_set_.start(),
                                           hypothesis_set_.m0_horizon());
  tables_.emplace(HypothesisSet::kUnknownModelId, m0_likelihood(universal));
}

const LikelihoodTable& Observer::table(const std::string& id) const {
  auto it = tables_.find(id);
  if (it == tables_.end()) {
    throw std::out_of_range("no likelihood table for hypothesis '" + id + "'");
  }
  return it->second;
}

BeliefDistribution Observer::posterior(const Trace& prefix) const {
  std::map<std::string, double> unnormalized;
  double total = 0.0;
  for (const auto& [id, table] : tables_) {
    double u = hypothesis_set_.prior().prob(id) * table.prefix_mass(prefix);
    unnormalized.emplace(id, u);
    total += u;
  }
  if (total <= 0.0) throw NoExplanation(prefix.length());
  for (auto& [id, u] : unnormalized) u /= total;
  return BeliefDistribution(std::move(unnormalized));
}

std::vector<BeliefDistribution> Observer::posterior_trajectory(const Trace& trace) const {
  std::vector<BeliefDistribution> out;
  out.reserve(trace.length() + 1);
  for (std::size_t i = 0; i <= trace.length(); ++i) {
    out.push_back(posterior(prefix_of(trace, i)));
  }
  return out;
}

double belief_entropy(const BeliefDistribution& b) {
  double h = 0.0;
  for (const auto& [id, p] : b.entries()) {
    if (p > 0) h -= p * std::log(p);
  }
  return std::max(h, 0.0);
}

}  // namespace hap
