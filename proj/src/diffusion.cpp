#include "imbench/diffusion.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "imbench/errors.hpp"

namespace imbench {

std::string to_string(DiffusionModel model) {
  return model == DiffusionModel::IC ? "ic" : "lt";
}

DiffusionModel model_from_string(const std::string& name) {
  if (name == "ic" || name == "IC") return DiffusionModel::IC;
  if (name == "lt" || name == "LT") return DiffusionModel::LT;
  throw std::invalid_argument("unknown diffusion model: " + name);
}

SpreadEstimate sample_stats(std::span<const uint32_t> counts) {
  if (counts.size() < 2) {
    throw std::invalid_argument("sample stats need at least 2 rounds");
  }
  const double r = static_cast<double>(counts.size());
  uint64_t total = 0;
  for (uint32_t c : counts) total += c;
  const double mean = static_cast<double>(total) / r;
  double ss = 0.0;
  for (uint32_t c : counts) {
    const double d = static_cast<double>(c) - mean;
    ss += d * d;
  }
  const double sd = std::sqrt(ss / (r - 1.0));
  return {mean, sd, static_cast<uint32_t>(counts.size()), sd / std::sqrt(r)};
}

namespace {

void validate_seeds(const WeightedGraph& g, std::span<const NodeId> seeds) {
  std::unordered_set<NodeId> seen;
  for (NodeId s : seeds) {
    if (!g.valid_node(s)) {
      throw std::invalid_argument("seed id " + std::to_string(s) +
                                  " out of range");
    }
    if (!seen.insert(s).second) {
      throw std::invalid_argument("duplicate seed id " + std::to_string(s));
    }
  }
}

}  // namespace

CascadeSimulator::CascadeSimulator(const WeightedGraph& g, DiffusionModel model)
    : g_(g), model_(model) {
  mark_.assign(g.node_count(), 0);
  if (model_ == DiffusionModel::LT) {
    if (!g.lt_weights_ok()) {
      throw std::invalid_argument(
          "LT requires per-node in-weight sums <= 1 (max is " +
          std::to_string(g.max_in_weight_sum()) + ")");
    }
    acc_mark_.assign(g.node_count(), 0);
    acc_.assign(g.node_count(), 0.0);
  }
  queue_.reserve(g.node_count());
}

uint32_t CascadeSimulator::run(std::span<const NodeId> seeds,
                               const RngStream& rng) {
  validate_seeds(g_, seeds);
  ++epoch_;
  queue_.clear();
  for (NodeId s : seeds) {
    mark_[s] = epoch_;
    queue_.push_back(s);
  }
  size_t head = 0;
  if (model_ == DiffusionModel::IC) {
    // Arc coins are addressed by global out-arc index, so an attempt's
    // outcome does not depend on traversal order.
    while (head < queue_.size()) {
      const NodeId u = queue_[head++];
      const auto targets = g_.out_targets(u);
      const auto probs = g_.out_probs(u);
      const uint64_t base = g_.out_arc_base(u);
      for (size_t j = 0; j < targets.size(); ++j) {
        const NodeId v = targets[j];
        if (mark_[v] == epoch_) continue;
        if (rng.unit_at(base + j) < probs[j]) {
          mark_[v] = epoch_;
          queue_.push_back(v);
        }
      }
    }
  } else {
    // Thresholds are drawn per node in (0,1]; activation happens once the
    // accumulated weight of active in-neighbors reaches the threshold.
    while (head < queue_.size()) {
      const NodeId u = queue_[head++];
      const auto targets = g_.out_targets(u);
      const auto probs = g_.out_probs(u);
      for (size_t j = 0; j < targets.size(); ++j) {
        const NodeId v = targets[j];
        if (mark_[v] == epoch_) continue;
        if (acc_mark_[v] != epoch_) {
          acc_mark_[v] = epoch_;
          acc_[v] = 0.0;
        }
        acc_[v] += probs[j];
        const double threshold = 1.0 - rng.unit_at(v);
        if (acc_[v] >= threshold) {
          mark_[v] = epoch_;
          queue_.push_back(v);
        }
      }
    }
  }
  return static_cast<uint32_t>(queue_.size());
}

uint32_t simulate_cascade(const WeightedGraph& g, DiffusionModel model,
                          std::span<const NodeId> seeds, const RngStream& rng) {
  CascadeSimulator sim(g, model);
  return sim.run(seeds, rng);
}

SpreadEstimate estimate_spread(const WeightedGraph& g, DiffusionModel model,
                               std::span<const NodeId> seeds, uint32_t rounds,
                               const RngStream& rng) {
  if (rounds < 2) {
    throw std::invalid_argument(
        "estimate_spread needs rounds >= 2 (sample sd undefined otherwise)");
  }
  CascadeSimulator sim(g, model);
  std::vector<uint32_t> counts(rounds);
  for (uint32_t i = 0; i < rounds; ++i) {
    counts[i] = sim.run(seeds, rng.substream(i));
  }
  return sample_stats(counts);
}

ExactSpreadOracle::ExactSpreadOracle(const WeightedGraph& g,
                                     DiffusionModel model)
    : n_(g.node_count()) {
  if (n_ > kMaxNodes) {
    throw CapExceeded("exact oracle cap: " + std::to_string(n_) +
                      " nodes > " + std::to_string(kMaxNodes));
  }
  if (model == DiffusionModel::IC) {
    enumerate_ic(g);
  } else {
    if (!g.lt_weights_ok()) {
      throw std::invalid_argument("LT requires per-node in-weight sums <= 1");
    }
    enumerate_lt(g);
  }
}

void ExactSpreadOracle::push_world(
    double prob, std::span<const std::pair<NodeId, NodeId>> live) {
  if (prob <= 0.0) return;
  // Per-node forward reach over the live arcs, as 64-bit node masks.
  std::vector<std::vector<NodeId>> adj(n_);
  for (auto [u, v] : live) adj[u].push_back(v);
  const size_t base = reach_.size();
  reach_.resize(base + n_, 0);
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < n_; ++s) {
    uint64_t seen = 1ull << s;
    stack.assign(1, s);
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      for (NodeId v : adj[u]) {
        const uint64_t bit = 1ull << v;
        if (!(seen & bit)) {
          seen |= bit;
          stack.push_back(v);
        }
      }
    }
    reach_[base + s] = seen;
  }
  world_prob_.push_back(prob);
}

void ExactSpreadOracle::enumerate_ic(const WeightedGraph& g) {
  std::vector<std::pair<NodeId, NodeId>> certain;
  std::vector<Arc> random;
  for (const Arc& a : g.arcs()) {
    if (a.p >= 1.0) {
      certain.emplace_back(a.src, a.dst);
    } else if (a.p > 0.0) {
      random.push_back(a);
    }
  }
  if (random.size() > kMaxRandomArcs) {
    throw CapExceeded("exact oracle cap: " + std::to_string(random.size()) +
                      " probabilistic arcs > " + std::to_string(kMaxRandomArcs));
  }
  const uint64_t worlds = 1ull << random.size();
  if (worlds * n_ > kMaxReachEntries) {
    throw CapExceeded("exact oracle cap: world table too large");
  }
  std::vector<std::pair<NodeId, NodeId>> live;
  for (uint64_t mask = 0; mask < worlds; ++mask) {
    double prob = 1.0;
    live = certain;
    for (size_t j = 0; j < random.size(); ++j) {
      if (mask & (1ull << j)) {
        prob *= random[j].p;
        live.emplace_back(random[j].src, random[j].dst);
      } else {
        prob *= 1.0 - random[j].p;
      }
    }
    push_world(prob, live);
  }
}

void ExactSpreadOracle::enumerate_lt(const WeightedGraph& g) {
  // Live-edge form of LT: every node independently keeps at most one
  // in-arc, arc (u,v) with probability w(u,v) and none with 1 - sum(w).
  struct Choice {
    NodeId src;      // meaningful when is_arc
    bool is_arc;
    double prob;
  };
  std::vector<std::vector<Choice>> choices(n_);
  uint64_t worlds = 1;
  for (NodeId v = 0; v < n_; ++v) {
    auto sources = g.in_sources(v);
    auto probs = g.in_probs(v);
    double total = 0.0;
    for (size_t j = 0; j < sources.size(); ++j) {
      if (probs[j] > 0.0) {
        choices[v].push_back({sources[j], true, probs[j]});
        total += probs[j];
      }
    }
    if (1.0 - total > 1e-12) {
      choices[v].push_back({0, false, 1.0 - total});
    }
    if (choices[v].empty()) choices[v].push_back({0, false, 1.0});
    worlds *= choices[v].size();
    if (worlds > kMaxWorlds) {
      throw CapExceeded("exact oracle cap: LT choice product > 2^20");
    }
  }
  if (worlds * n_ > kMaxReachEntries) {
    throw CapExceeded("exact oracle cap: world table too large");
  }

  std::vector<size_t> odometer(n_, 0);
  std::vector<std::pair<NodeId, NodeId>> live;
  for (uint64_t w = 0; w < worlds; ++w) {
    double prob = 1.0;
    live.clear();
    for (NodeId v = 0; v < n_; ++v) {
      const Choice& c = choices[v][odometer[v]];
      prob *= c.prob;
      if (c.is_arc) live.emplace_back(c.src, v);
    }
    push_world(prob, live);
    for (NodeId v = 0; v < n_; ++v) {
      if (++odometer[v] < choices[v].size()) break;
      odometer[v] = 0;
    }
  }
}

double ExactSpreadOracle::spread(std::span<const NodeId> seeds) const {
  uint64_t seed_mask = 0;
  for (NodeId s : seeds) {
    if (s >= n_) throw std::invalid_argument("seed id out of range");
    seed_mask |= 1ull << s;
  }
  double total = 0.0;
  const size_t worlds = world_prob_.size();
  for (size_t w = 0; w < worlds; ++w) {
    uint64_t covered = 0;
    const uint64_t* row = reach_.data() + w * n_;
    uint64_t rest = seed_mask;
    while (rest) {
      const unsigned s = std::countr_zero(rest);
      rest &= rest - 1;
      covered |= row[s];
    }
    total += world_prob_[w] * static_cast<double>(std::popcount(covered));
  }
  return total;
}

double exact_spread(const WeightedGraph& g, DiffusionModel model,
                    std::span<const NodeId> seeds) {
  validate_seeds(g, seeds);
  // Forward restriction: nodes unreachable from the seeds can never
  // activate and cannot affect activation of reachable ones.
  std::vector<NodeId> order;
  std::vector<uint8_t> reached(g.node_count(), 0);
  for (NodeId s : seeds) {
    if (!reached[s]) {
      reached[s] = 1;
      order.push_back(s);
    }
  }
  for (size_t head = 0; head < order.size(); ++head) {
    const NodeId u = order[head];
    auto targets = g.out_targets(u);
    auto probs = g.out_probs(u);
    for (size_t j = 0; j < targets.size(); ++j) {
      if (probs[j] > 0.0 && !reached[targets[j]]) {
        reached[targets[j]] = 1;
        order.push_back(targets[j]);
      }
    }
  }
  if (order.size() > ExactSpreadOracle::kMaxNodes) {
    throw CapExceeded("exact oracle cap: reachable part has " +
                      std::to_string(order.size()) + " nodes > " +
                      std::to_string(ExactSpreadOracle::kMaxNodes));
  }
  std::vector<NodeId> to_sub(g.node_count(), 0);
  std::sort(order.begin(), order.end());
  for (size_t i = 0; i < order.size(); ++i) to_sub[order[i]] = static_cast<NodeId>(i);

  GraphBuilder builder(static_cast<uint32_t>(order.size()));
  for (NodeId u : order) {
    auto targets = g.out_targets(u);
    auto probs = g.out_probs(u);
    for (size_t j = 0; j < targets.size(); ++j) {
      if (reached[targets[j]]) {
        builder.add_arc(to_sub[u], to_sub[targets[j]], probs[j]);
      }
    }
  }
  ExactSpreadOracle oracle(builder.build(), model);
  std::vector<NodeId> sub_seeds;
  sub_seeds.reserve(seeds.size());
  for (NodeId s : seeds) sub_seeds.push_back(to_sub[s]);
  return oracle.spread(sub_seeds);
}

}  // namespace imbench
