#include "imbench/graph.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace imbench {

WeightScheme WeightScheme::uniform_ic(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("UniformIC probability must lie in [0,1]");
  }
  return {WeightKind::UniformIC, p};
}

double WeightedGraph::in_weight_sum(NodeId v) const {
  double s = 0.0;
  for (double p : in_probs(v)) s += p;
  return s;
}

std::optional<NodeId> WeightedGraph::id_of(Label label) const {
  auto it = id_of_.find(label);
  if (it == id_of_.end()) return std::nullopt;
  return it->second;
}

std::vector<Arc> WeightedGraph::arcs() const {
  std::vector<Arc> out;
  out.reserve(arc_count());
  for (NodeId u = 0; u < node_count_; ++u) {
    auto dst = out_targets(u);
    auto p = out_probs(u);
    for (size_t j = 0; j < dst.size(); ++j) out.push_back({u, dst[j], p[j]});
  }
  return out;
}

void WeightedGraph::dump_csv(std::ostream& out) const {
  std::vector<std::tuple<Label, Label, double>> rows;
  rows.reserve(arc_count());
  for (const Arc& a : arcs()) {
    rows.emplace_back(labels_[a.src], labels_[a.dst], a.p);
  }
  std::sort(rows.begin(), rows.end());
  out << "src,dst,p\n";
  for (const auto& [s, d, p] : rows) {
    out << s << ',' << d << ',' << p << '\n';
  }
}

void GraphBuilder::add_arc(NodeId src, NodeId dst, double p) {
  if (src >= node_count_ || dst >= node_count_) {
    throw std::invalid_argument("arc endpoint out of range");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("arc probability must lie in [0,1]");
  }
  arcs_.push_back({src, dst, p});
}

WeightedGraph GraphBuilder::build(std::vector<Label> labels) {
  WeightedGraph g;
  g.node_count_ = node_count_;
  if (labels.empty()) {
    labels.resize(node_count_);
    for (uint32_t v = 0; v < node_count_; ++v) labels[v] = v;
  } else if (labels.size() != node_count_) {
    throw std::invalid_argument("label vector size != node count");
  }
  g.labels_ = std::move(labels);
  g.id_of_.reserve(g.labels_.size());
  for (uint32_t v = 0; v < node_count_; ++v) g.id_of_[g.labels_[v]] = v;

  std::sort(arcs_.begin(), arcs_.end(), [](const Arc& a, const Arc& b) {
    return std::tie(a.src, a.dst, a.p) < std::tie(b.src, b.dst, b.p);
  });

  const size_t m = arcs_.size();
  g.out_off_.assign(node_count_ + 1, 0);
  g.in_off_.assign(node_count_ + 1, 0);
  for (const Arc& a : arcs_) {
    ++g.out_off_[a.src + 1];
    ++g.in_off_[a.dst + 1];
  }
  for (uint32_t v = 0; v < node_count_; ++v) {
    g.out_off_[v + 1] += g.out_off_[v];
    g.in_off_[v + 1] += g.in_off_[v];
  }
  g.out_dst_.resize(m);
  g.out_p_.resize(m);
  g.in_src_.resize(m);
  g.in_p_.resize(m);
  std::vector<uint64_t> out_pos(g.out_off_.begin(), g.out_off_.end() - 1);
  std::vector<uint64_t> in_pos(g.in_off_.begin(), g.in_off_.end() - 1);
  for (const Arc& a : arcs_) {
    const uint64_t o = out_pos[a.src]++;
    g.out_dst_[o] = a.dst;
    g.out_p_[o] = a.p;
    const uint64_t i = in_pos[a.dst]++;
    g.in_src_[i] = a.src;
    g.in_p_[i] = a.p;
  }

  double max_sum = 0.0;
  for (uint32_t v = 0; v < node_count_; ++v) {
    max_sum = std::max(max_sum, g.in_weight_sum(v));
  }
  g.max_in_weight_sum_ = max_sum;
  return g;
}

namespace {

struct LabelInterner {
  std::unordered_map<Label, NodeId> ids;
  std::vector<Label> labels;
  bool saw_zero = false;

  NodeId intern(Label lab) {
    if (lab == 0) saw_zero = true;
    auto [it, inserted] = ids.emplace(lab, static_cast<NodeId>(labels.size()));
    if (inserted) labels.push_back(lab);
    return it->second;
  }
};

bool parse_label(const std::string& tok, Label& out) {
  if (tok.empty()) return false;
  size_t pos = 0;
  try {
    out = std::stoll(tok, &pos);
  } catch (const std::exception&) {
    return false;
  }
  return pos == tok.size();
}

}  // namespace

std::pair<WeightedGraph, IdNormalizationReport> parse_edge_list(
    std::istream& in, bool directed) {
  LabelInterner interner;
  IdNormalizationReport report;
  std::vector<std::pair<NodeId, NodeId>> edges;

  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;

    std::istringstream ls(line);
    std::string tok_u, tok_v, extra;
    ls >> tok_u >> tok_v;
    if (tok_v.empty() || (ls >> extra)) {
      throw ParseError(line_no, "expected exactly two integer labels");
    }
    Label lu, lv;
    if (!parse_label(tok_u, lu) || !parse_label(tok_v, lv)) {
      throw ParseError(line_no, "malformed integer label");
    }
    if (lu < 0 || lv < 0) {
      throw ParseError(line_no, "negative node label");
    }
    ++report.edges_read;
    if (lu == lv) {
      interner.intern(lu);  // the node still exists
      ++report.self_loops_dropped;
      continue;
    }
    const NodeId u = interner.intern(lu);
    const NodeId v = interner.intern(lv);
    edges.emplace_back(u, v);
  }

  GraphBuilder builder(static_cast<uint32_t>(interner.labels.size()));
  builder.reserve(directed ? edges.size() : 2 * edges.size());
  for (auto [u, v] : edges) {
    builder.add_arc(u, v, 1.0);
    if (!directed) builder.add_arc(v, u, 1.0);
  }
  report.label_count = interner.labels.size();
  report.remapped = interner.labels.size();
  report.contained_zero = interner.saw_zero;
  return {builder.build(std::move(interner.labels)), report};
}

std::pair<WeightedGraph, IdNormalizationReport> parse_edge_list(
    const std::string& text, bool directed) {
  std::istringstream in(text);
  return parse_edge_list(in, directed);
}

std::pair<WeightedGraph, IdNormalizationReport> parse_weighted_csv(
    std::istream& in) {
  LabelInterner interner;
  IdNormalizationReport report;
  std::vector<Arc> arcs;

  std::string line;
  size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;  // "src,dst,p"
    }
    std::istringstream ls(line);
    std::string tok_u, tok_v, tok_p;
    if (!std::getline(ls, tok_u, ',') || !std::getline(ls, tok_v, ',') ||
        !std::getline(ls, tok_p)) {
      throw ParseError(line_no, "expected src,dst,p");
    }
    Label lu, lv;
    if (!parse_label(tok_u, lu) || !parse_label(tok_v, lv)) {
      throw ParseError(line_no, "malformed integer label");
    }
    if (lu < 0 || lv < 0) throw ParseError(line_no, "negative node label");
    double p;
    try {
      p = std::stod(tok_p);
    } catch (const std::exception&) {
      throw ParseError(line_no, "malformed probability");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ParseError(line_no, "probability outside [0,1]");
    }
    ++report.edges_read;
    if (lu == lv) {
      interner.intern(lu);
      ++report.self_loops_dropped;
      continue;
    }
    arcs.push_back({interner.intern(lu), interner.intern(lv), p});
  }

  GraphBuilder builder(static_cast<uint32_t>(interner.labels.size()));
  builder.reserve(arcs.size());
  for (const Arc& a : arcs) builder.add_arc(a.src, a.dst, a.p);
  report.label_count = interner.labels.size();
  report.remapped = interner.labels.size();
  report.contained_zero = interner.saw_zero;
  return {builder.build(std::move(interner.labels)), report};
}

WeightedGraph assign_weights(const WeightedGraph& g, const WeightScheme& scheme) {
  if (g.node_count() == 0) {
    throw std::invalid_argument("assign_weights requires a non-empty graph");
  }
  if (scheme.kind == WeightKind::UniformIC &&
      !(scheme.p >= 0.0 && scheme.p <= 1.0)) {
    throw std::invalid_argument("UniformIC probability must lie in [0,1]");
  }

  GraphBuilder builder(g.node_count());
  std::vector<Label> labels(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) labels[v] = g.label_of(v);

  switch (scheme.kind) {
    case WeightKind::UniformIC:
      for (const Arc& a : g.arcs()) builder.add_arc(a.src, a.dst, scheme.p);
      break;
    case WeightKind::WeightedCascade:
    case WeightKind::LtUniform:
      // 1/indegree(v), multiplicity included; in-weights of every node
      // with indegree > 0 sum to exactly 1.
      for (NodeId v = 0; v < g.node_count(); ++v) {
        const double deg = g.in_degree(v);
        for (NodeId u : g.in_sources(v)) builder.add_arc(u, v, 1.0 / deg);
      }
      break;
    case WeightKind::LtParallel: {
      // Parallel arcs (u,v) x c become one arc of weight c/indegree(v).
      for (NodeId v = 0; v < g.node_count(); ++v) {
        const double deg = g.in_degree(v);
        auto sources = g.in_sources(v);
        size_t i = 0;
        while (i < sources.size()) {
          size_t j = i;
          while (j < sources.size() && sources[j] == sources[i]) ++j;
          builder.add_arc(sources[i], v, static_cast<double>(j - i) / deg);
          i = j;
        }
      }
      break;
    }
  }
  return builder.build(std::move(labels));
}

WeightedGraph counterexample_graph(uint32_t n) {
  if (n < 2) throw std::invalid_argument("counterexample_graph requires n >= 2");
  const uint64_t hubs = 2ull * n;
  const uint64_t leaves = hubs * (n - 1);
  const uint64_t cliques = static_cast<uint64_t>(n) * n * n;
  const uint64_t total = 1 + hubs + leaves + 2 * cliques;
  if (total > (1ull << 27)) {
    throw CapExceeded("counterexample size cap: n = " + std::to_string(n) +
                      " needs " + std::to_string(total) + " nodes");
  }

  GraphBuilder builder(static_cast<uint32_t>(total));
  builder.reserve(hubs + leaves + 2 * cliques);
  const double hub_p = 1.0 / static_cast<double>(hubs);
  NodeId next_leaf = static_cast<NodeId>(1 + hubs);
  for (uint64_t i = 1; i <= hubs; ++i) {
    builder.add_arc(0, static_cast<NodeId>(i), hub_p);
    for (uint32_t j = 0; j + 1 < n; ++j) {
      builder.add_arc(static_cast<NodeId>(i), next_leaf++, 1.0);
    }
  }
  NodeId c = static_cast<NodeId>(1 + hubs + leaves);
  for (uint64_t j = 0; j < cliques; ++j, c += 2) {
    builder.add_arc(c, c + 1, 1.0);
    builder.add_arc(c + 1, c, 1.0);
  }
  return builder.build();
}

WeightedGraph counterexample_core(uint32_t n) {
  if (n < 2) throw std::invalid_argument("counterexample_core requires n >= 2");
  const uint64_t hubs = 2ull * n;
  GraphBuilder builder(static_cast<uint32_t>(1 + hubs + hubs * (n - 1)));
  const double hub_p = 1.0 / static_cast<double>(hubs);
  NodeId next_leaf = static_cast<NodeId>(1 + hubs);
  for (uint64_t i = 1; i <= hubs; ++i) {
    builder.add_arc(0, static_cast<NodeId>(i), hub_p);
    for (uint32_t j = 0; j + 1 < n; ++j) {
      builder.add_arc(static_cast<NodeId>(i), next_leaf++, 1.0);
    }
  }
  return builder.build();
}

NodeId counterexample_v0() { return 0; }

std::pair<NodeId, NodeId> counterexample_clique_range(uint32_t n) {
  const uint64_t hubs = 2ull * n;
  const uint64_t first = 1 + hubs + hubs * (n - 1);
  const uint64_t last = first + 2ull * n * n * n;
  return {static_cast<NodeId>(first), static_cast<NodeId>(last)};
}

WeightedGraph random_graph(uint32_t nodes, uint64_t arcs, RngStream rng) {
  if (nodes < 2 && arcs > 0) {
    throw std::invalid_argument("random_graph needs >= 2 nodes to place arcs");
  }
  const uint64_t max_arcs = static_cast<uint64_t>(nodes) * (nodes - 1);
  if (arcs > max_arcs) {
    throw std::invalid_argument("random_graph: more arcs than node pairs");
  }
  GraphBuilder builder(nodes);
  builder.reserve(arcs);
  std::unordered_map<uint64_t, bool> used;
  used.reserve(arcs * 2);
  uint64_t placed = 0;
  while (placed < arcs) {
    const NodeId u = rng.next_below(nodes);
    const NodeId v = rng.next_below(nodes);
    if (u == v) continue;
    const uint64_t code = static_cast<uint64_t>(u) * nodes + v;
    if (used.emplace(code, true).second) {
      builder.add_arc(u, v, 1.0);
      ++placed;
    }
  }
  return builder.build();
}

}  // namespace imbench
