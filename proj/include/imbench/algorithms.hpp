#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "imbench/diffusion.hpp"
#include "imbench/graph.hpp"
#include "imbench/rng.hpp"

namespace imbench {

struct SeedSet {
  std::vector<NodeId> nodes;   // selection order
  uint32_t k = 0;
  std::vector<double> gains;   // per-seed estimated marginal gain; may be empty
};

struct SelectionStats {
  uint64_t evaluations = 0;     // marginal-gain evaluation events
  double select_seconds = 0.0;  // selection only, no evaluation
  uint64_t storage_slots = 0;   // RR node-slots held (RIS only)
  bool padded_zero_coverage = false;
};

// Marginal-gain evaluator shared by the greedy family. Implementations
// must be monotone and submodular in the committed set for identical
// (graph, rounds, stream), which is what lets lazy evaluation skip
// recomputations without ever changing the selected seeds.
class GainOracle {
 public:
  virtual ~GainOracle() = default;
  virtual uint32_t node_count() const = 0;
  // Marginal spread of w on top of the committed seeds.
  virtual double gain(NodeId w) = 0;
  // (gain(w | S), gain(w | S + {wstar})) computed in one evaluation event.
  virtual std::pair<double, double> gain_with_lookahead(NodeId w,
                                                        NodeId wstar) = 0;
  virtual void commit(NodeId w) = 0;
  uint64_t evaluations() const { return evals_; }

 protected:
  uint64_t evals_ = 0;
};

// Monte-Carlo oracle over a fixed pool of live-edge worlds, all keyed off
// one evaluation stream. Every candidate in every iteration is scored
// against the same worlds (common random numbers), so the estimated
// objective is a genuinely monotone submodular set function and spreads
// are exact integer averages. IC worlds realize every arc up front; LT
// worlds give each node at most one live in-arc, the live-edge form of
// threshold activation.
class WorldGainOracle : public GainOracle {
 public:
  WorldGainOracle(const WeightedGraph& g, DiffusionModel model,
                  uint32_t rounds, const RngStream& stream);

  uint32_t node_count() const override { return g_.node_count(); }
  double gain(NodeId w) override;
  std::pair<double, double> gain_with_lookahead(NodeId w, NodeId wstar) override;
  void commit(NodeId w) override;

  // Committed-set spread under the world pool (mean over rounds).
  double committed_spread() const;

 private:
  template <typename Visit>
  void world_reach(uint32_t world, NodeId from, Visit&& visit);
  bool arc_live(uint32_t world, uint64_t arc_index) const {
    return ic_live_[world * ic_words_ + (arc_index >> 6)] >> (arc_index & 63) & 1;
  }

  const WeightedGraph& g_;
  DiffusionModel model_;
  uint32_t rounds_;
  // IC: live-arc bitset per world. LT: chosen in-arc source per node.
  size_t ic_words_ = 0;
  std::vector<uint64_t> ic_live_;
  std::vector<NodeId> lt_choice_;  // [world * n + v], kNoChoice when none
  static constexpr NodeId kNoChoice = static_cast<NodeId>(-1);

  std::vector<uint8_t> active_;    // [world * n + v]
  std::vector<uint32_t> tmp_mark_; // scratch epochs, [world * n + v]
  uint32_t tmp_epoch_ = 0;
  uint64_t active_total_ = 0;      // sum of |active| over worlds
  std::vector<NodeId> stack_;
};

// Oracle backed by exact spread enumeration (tiny instances).
class ExactGainOracle : public GainOracle {
 public:
  ExactGainOracle(const WeightedGraph& g, DiffusionModel model);

  uint32_t node_count() const override { return oracle_.node_count(); }
  double gain(NodeId w) override;
  std::pair<double, double> gain_with_lookahead(NodeId w, NodeId wstar) override;
  void commit(NodeId w) override;

 private:
  ExactSpreadOracle oracle_;
  std::vector<NodeId> committed_;
  double base_ = 0.0;
};

struct GreedyResult {
  SeedSet seeds;
  SelectionStats stats;
};

// Hill climbing: k rounds of argmax marginal gain, ties to the lower id.
GreedyResult greedy_select(uint32_t k, GainOracle& oracle);
// Lazy-forward variant; identical seeds, fewer evaluations.
GreedyResult celf_select(uint32_t k, GainOracle& oracle);
// CELF with the speculative look-ahead gain; identical seeds again.
GreedyResult celfpp_select(uint32_t k, GainOracle& oracle);

// Conveniences binding the MC world oracle. Passing the same rng gives
// the three algorithms identical evaluation streams and hence identical
// seed sets.
GreedyResult greedy_mc(const WeightedGraph& g, DiffusionModel model, uint32_t k,
                       uint32_t rounds, const RngStream& rng);
GreedyResult celf_mc(const WeightedGraph& g, DiffusionModel model, uint32_t k,
                     uint32_t rounds, const RngStream& rng);
GreedyResult celfpp_mc(const WeightedGraph& g, DiffusionModel model, uint32_t k,
                       uint32_t rounds, const RngStream& rng);

SeedSet random_select(const WeightedGraph& g, uint32_t k, RngStream rng);
SeedSet degree_select(const WeightedGraph& g, uint32_t k);

// Sampled reverse-reachable sets in CSR form plus the node -> set-ids
// transpose.
struct RRIndex {
  uint32_t node_count = 0;
  DiffusionModel model = DiffusionModel::IC;
  uint64_t theta = 0;
  std::vector<uint64_t> set_off;   // theta + 1
  std::vector<NodeId> set_nodes;
  std::vector<uint64_t> inv_off;   // node_count + 1
  std::vector<uint32_t> inv_sets;

  std::span<const NodeId> set(uint64_t i) const {
    return {set_nodes.data() + set_off[i], set_nodes.data() + set_off[i + 1]};
  }
  std::span<const uint32_t> sets_covering(NodeId v) const {
    return {inv_sets.data() + inv_off[v], inv_sets.data() + inv_off[v + 1]};
  }
  uint64_t slots() const { return set_nodes.size(); }
  void build_inverted();
};

// Single RR set rooted at `root`. IC: reverse BFS keeping each in-arc
// independently with its probability. LT: reverse walk picking one in-arc
// per step (stop with probability 1 - sum of weights, or on revisiting a
// node). Root always included.
std::vector<NodeId> generate_rr_set(const WeightedGraph& g,
                                    DiffusionModel model, NodeId root,
                                    RngStream& rng);

// theta RR sets with uniform random roots; set i derives from
// rng.substream(i), so the index is reproducible for (seed, theta)
// regardless of generation order. Throws CapExceeded when accumulated
// node-slots pass cap_slots.
RRIndex sample_rr_index(const WeightedGraph& g, DiffusionModel model,
                        uint64_t theta, const RngStream& rng,
                        uint64_t cap_slots);

// 2 GiB worth of 4-byte node slots unless IMBENCH_RR_CAP_SLOTS says else.
uint64_t default_rr_cap_slots();

// How many RR sets to draw: an explicit theta, or a worst-case bound
// computed from (epsilon, ell, k, n).
struct SamplePolicy {
  enum class Kind { Fixed, TimPlus, Imm };

  Kind kind = Kind::Fixed;
  uint64_t fixed_theta = 1;
  double epsilon = 0.0;
  double ell = 1.0;

  static SamplePolicy fixed(uint64_t theta);
  static SamplePolicy tim_plus(double epsilon, double ell = 1.0);
  static SamplePolicy imm(double epsilon, double ell = 1.0);

  uint64_t theta_for(uint32_t n, uint32_t k) const;
  std::string name() const;
};

double log_n_choose_k(uint32_t n, uint32_t k);

// Greedy max coverage over the sampled sets: repeatedly take the node
// covering the most uncovered sets, ties to the lower id. Runs out of
// coverage before k picks -> pads with the lowest unused ids and flags it.
SeedSet max_coverage(const RRIndex& index, uint32_t k,
                     SelectionStats* stats = nullptr);

struct RisResult {
  SeedSet seeds;
  RRIndex index;
  SelectionStats stats;
};

RisResult ris_select(const WeightedGraph& g, DiffusionModel model, uint32_t k,
                     const SamplePolicy& policy, const RngStream& rng,
                     uint64_t cap_slots = default_rr_cap_slots());

}  // namespace imbench
