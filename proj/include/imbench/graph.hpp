#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "imbench/errors.hpp"
#include "imbench/rng.hpp"

namespace imbench {

using NodeId = uint32_t;
using Label = long long;

// Influence-probability assignment schemes.
//   UniformIC       every arc gets the same probability p
//   WeightedCascade arc (u,v) gets 1/indegree(v), multiplicity counted
//   LtUniform       same weights as WeightedCascade, intended for LT
//   LtParallel      parallel arcs (u,v) with multiplicity c collapse to
//                   a single arc of weight c/indegree(v)
enum class WeightKind { UniformIC, WeightedCascade, LtUniform, LtParallel };

struct WeightScheme {
  WeightKind kind;
  double p = 0.0;  // UniformIC only

  static WeightScheme uniform_ic(double p);
  static WeightScheme weighted_cascade() { return {WeightKind::WeightedCascade}; }
  static WeightScheme lt_uniform() { return {WeightKind::LtUniform}; }
  static WeightScheme lt_parallel() { return {WeightKind::LtParallel}; }
};

// What id normalization did to the input labels. Input labels may be
// arbitrary non-negative integers (including 0); internal ids are always
// contiguous from 0, so no id value is ever structurally special.
struct IdNormalizationReport {
  uint64_t label_count = 0;       // distinct original labels seen
  uint64_t remapped = 0;          // == resulting node count
  bool contained_zero = false;    // some original label was 0
  uint64_t edges_read = 0;        // input lines that carried an edge
  uint64_t self_loops_dropped = 0;
};

struct Arc {
  NodeId src;
  NodeId dst;
  double p;
};

// Immutable directed graph with per-arc influence probability and dual
// CSR adjacency. Construct through GraphBuilder; safe to share across
// concurrent readers afterwards.
class WeightedGraph {
 public:
  uint32_t node_count() const { return node_count_; }
  uint64_t arc_count() const { return static_cast<uint64_t>(out_dst_.size()); }

  std::span<const NodeId> out_targets(NodeId u) const {
    return {out_dst_.data() + out_off_[u], out_dst_.data() + out_off_[u + 1]};
  }
  std::span<const double> out_probs(NodeId u) const {
    return {out_p_.data() + out_off_[u], out_p_.data() + out_off_[u + 1]};
  }
  std::span<const NodeId> in_sources(NodeId v) const {
    return {in_src_.data() + in_off_[v], in_src_.data() + in_off_[v + 1]};
  }
  std::span<const double> in_probs(NodeId v) const {
    return {in_p_.data() + in_off_[v], in_p_.data() + in_off_[v + 1]};
  }

  uint32_t out_degree(NodeId u) const { return out_off_[u + 1] - out_off_[u]; }
  uint32_t in_degree(NodeId v) const { return in_off_[v + 1] - in_off_[v]; }

  // Global index of u's first out-arc; (base + j) addresses out-arc j of u
  // uniquely across the graph, which is what keyed coin flips hash on.
  uint64_t out_arc_base(NodeId u) const { return out_off_[u]; }

  // Sum of incoming weights of v; the LT invariant requires <= 1 + 1e-9.
  double in_weight_sum(NodeId v) const;
  double max_in_weight_sum() const { return max_in_weight_sum_; }
  bool lt_weights_ok() const { return max_in_weight_sum_ <= 1.0 + 1e-9; }

  Label label_of(NodeId v) const { return labels_[v]; }
  std::optional<NodeId> id_of(Label label) const;
  const std::unordered_map<Label, NodeId>& id_map() const { return id_of_; }

  // All arcs in (src, dst, p) order with internal ids.
  std::vector<Arc> arcs() const;

  // Canonical dump: header "src,dst,p", original labels, rows sorted by
  // (src label, dst label, p).
  void dump_csv(std::ostream& out) const;

  bool valid_node(NodeId v) const { return v < node_count_; }

 private:
  friend class GraphBuilder;

  uint32_t node_count_ = 0;
  std::vector<uint64_t> out_off_, in_off_;
  std::vector<NodeId> out_dst_, in_src_;
  std::vector<double> out_p_, in_p_;
  std::vector<Label> labels_;
  std::unordered_map<Label, NodeId> id_of_;
  double max_in_weight_sum_ = 0.0;
};

class GraphBuilder {
 public:
  explicit GraphBuilder(uint32_t node_count) : node_count_(node_count) {}

  void add_arc(NodeId src, NodeId dst, double p);
  void reserve(size_t arcs) { arcs_.reserve(arcs); }

  // labels: internal id -> original label; identity when empty.
  WeightedGraph build(std::vector<Label> labels = {});

 private:
  uint32_t node_count_;
  std::vector<Arc> arcs_;
};

// Whitespace-separated integer edge list. '#' starts a comment line,
// blank lines are skipped. Labels are remapped to contiguous ids in
// first-appearance order; self-loops are dropped; duplicate edges are
// kept as parallel arcs (LtParallel consumes the multiplicity later).
// directed=false emits both arc directions per edge. Arcs carry
// placeholder probability 1 until assign_weights runs.
std::pair<WeightedGraph, IdNormalizationReport> parse_edge_list(
    std::istream& in, bool directed);
std::pair<WeightedGraph, IdNormalizationReport> parse_edge_list(
    const std::string& text, bool directed);

// Reads a canonical "src,dst,p" dump back; labels normalized the same way.
std::pair<WeightedGraph, IdNormalizationReport> parse_weighted_csv(
    std::istream& in);

WeightedGraph assign_weights(const WeightedGraph& g, const WeightScheme& scheme);

// Adversarial instance on which the mu* - sd* bar is arbitrarily far
// below the optimum: v0 reaches 2n gadget hubs with probability 1/(2n),
// each hub owns n-1 probability-1 leaves, and n^3 detached 2-cliques
// {x_j, y_j} have probability-1 arcs both ways. Closed forms, k = 1:
//   spread({v0}) = 1 + n
//   sd({v0})     = n * sqrt(1 - 1/(2n))
//   mu - sd     <= 1.5, while every 2-clique node has spread exactly 2.
// Node ids: v0 = 0, hubs 1..2n, leaves follow, then clique pairs.
WeightedGraph counterexample_graph(uint32_t n);

// The v0 gadget alone (no 2-cliques): 1 + 2n + 2n(n-1) nodes, small
// enough for the exact oracle at n = 2.
WeightedGraph counterexample_core(uint32_t n);

NodeId counterexample_v0();
// [first x, last y) id range of the 2-clique block in counterexample_graph(n).
std::pair<NodeId, NodeId> counterexample_clique_range(uint32_t n);

// Simple directed G(n, m): m distinct non-loop arcs, placeholder weight 1.
WeightedGraph random_graph(uint32_t nodes, uint64_t arcs, RngStream rng);

}  // namespace imbench
