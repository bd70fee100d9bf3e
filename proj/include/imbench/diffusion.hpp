#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "imbench/graph.hpp"
#include "imbench/rng.hpp"

namespace imbench {

enum class DiffusionModel { IC, LT };

std::string to_string(DiffusionModel model);
DiffusionModel model_from_string(const std::string& name);

// Monte-Carlo spread estimate: mean activated-node count, sample standard
// deviation with the (r-1) denominator, and std_error = sample_sd/sqrt(r).
// No binning, no smoothing, no outlier removal, ever.
struct SpreadEstimate {
  double mean = 0.0;
  double sample_sd = 0.0;
  uint32_t rounds = 0;
  double std_error = 0.0;
};

// mean/sd/std_error of raw per-round activation counts (needs >= 2 values).
SpreadEstimate sample_stats(std::span<const uint32_t> counts);

// One stochastic cascade; returns the number of activated nodes, seeds
// included. IC: every newly active node attempts each inactive out-
// neighbor once with the arc probability. LT: each node draws a fresh
// uniform threshold and activates when its active in-weight reaches it.
// Outcomes are pure functions of (graph, model, seeds, rng), so cascades
// replay identically in any execution order.
uint32_t simulate_cascade(const WeightedGraph& g, DiffusionModel model,
                          std::span<const NodeId> seeds, const RngStream& rng);

// rounds >= 2 independent cascades on substreams rng.substream(0..r-1).
SpreadEstimate estimate_spread(const WeightedGraph& g, DiffusionModel model,
                               std::span<const NodeId> seeds, uint32_t rounds,
                               const RngStream& rng);

// Reusable cascade runner; keeps scratch buffers across rounds.
class CascadeSimulator {
 public:
  CascadeSimulator(const WeightedGraph& g, DiffusionModel model);
  uint32_t run(std::span<const NodeId> seeds, const RngStream& rng);

 private:
  const WeightedGraph& g_;
  DiffusionModel model_;
  std::vector<uint32_t> mark_;     // activation epoch per node
  std::vector<uint32_t> acc_mark_; // LT accumulator epoch
  std::vector<double> acc_;        // LT accumulated in-weight
  std::vector<NodeId> queue_;
  uint32_t epoch_ = 0;
};

// Exact expected spread by live-edge world enumeration. Built for one
// graph + model; answers arbitrary seed sets fast, which is what the
// exhaustive searches in the tests need. Caps (with diagnostics):
//   nodes <= 64; IC arcs with 0 < p < 1 <= 20; LT choice product <= 2^20;
//   worlds * nodes <= 2^24 reach entries.
class ExactSpreadOracle {
 public:
  static constexpr uint32_t kMaxNodes = 64;
  static constexpr uint32_t kMaxRandomArcs = 20;
  static constexpr uint64_t kMaxWorlds = 1ull << 20;
  static constexpr uint64_t kMaxReachEntries = 1ull << 24;

  ExactSpreadOracle(const WeightedGraph& g, DiffusionModel model);

  double spread(std::span<const NodeId> seeds) const;
  uint32_t node_count() const { return n_; }
  uint64_t world_count() const { return world_prob_.size(); }

 private:
  void enumerate_ic(const WeightedGraph& g);
  void enumerate_lt(const WeightedGraph& g);
  void push_world(double prob, std::span<const std::pair<NodeId, NodeId>> live);

  uint32_t n_ = 0;
  std::vector<double> world_prob_;
  std::vector<uint64_t> reach_;  // [world * n_ + v] = reach bitmask of v
};

// One-shot exact spread. Restricts the graph to the forward-reachable
// part from the seeds first (spread is unaffected), so tiny gadgets
// inside large graphs stay within the oracle caps.
double exact_spread(const WeightedGraph& g, DiffusionModel model,
                    std::span<const NodeId> seeds);

}  // namespace imbench
