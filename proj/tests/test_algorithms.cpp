#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "imbench/algorithms.hpp"
#include "imbench/diffusion.hpp"
#include "imbench/errors.hpp"
#include "imbench/graph.hpp"

using namespace imbench;

namespace {

WeightedGraph uniform(const WeightedGraph& g, double p) {
  return assign_weights(g, WeightScheme::uniform_ic(p));
}

RRIndex manual_index(uint32_t node_count,
                     const std::vector<std::vector<NodeId>>& sets) {
  RRIndex index;
  index.node_count = node_count;
  index.theta = sets.size();
  index.set_off.push_back(0);
  for (const auto& s : sets) {
    index.set_nodes.insert(index.set_nodes.end(), s.begin(), s.end());
    index.set_off.push_back(index.set_nodes.size());
  }
  index.build_inverted();
  return index;
}

}  // namespace

TEST_CASE("random_select") {
  auto g = random_graph(12, 30, RngStream(1));
  SUBCASE("k equal to node count returns every node") {
    auto s = random_select(g, 12, RngStream(5));
    std::set<NodeId> uniq(s.nodes.begin(), s.nodes.end());
    CHECK(uniq.size() == 12);
  }
  SUBCASE("k zero returns the empty set") {
    CHECK(random_select(g, 0, RngStream(5)).nodes.empty());
  }
  SUBCASE("deterministic under a fixed stream") {
    auto a = random_select(g, 5, RngStream(9));
    auto b = random_select(g, 5, RngStream(9));
    CHECK(a.nodes == b.nodes);
  }
  SUBCASE("k above node count rejected") {
    CHECK_THROWS_AS(random_select(g, 13, RngStream(1)), std::invalid_argument);
  }
}

TEST_CASE("degree_select") {
  SUBCASE("star center wins") {
    GraphBuilder b(6);
    for (NodeId v = 1; v < 6; ++v) b.add_arc(0, v, 1.0);
    auto g = b.build();
    CHECK(degree_select(g, 1).nodes == std::vector<NodeId>{0});
  }
  SUBCASE("regular graph ties to node 0") {
    GraphBuilder b(5);
    for (NodeId v = 0; v < 5; ++v) b.add_arc(v, (v + 1) % 5, 1.0);
    auto g = b.build();
    CHECK(degree_select(g, 1).nodes == std::vector<NodeId>{0});
  }
  SUBCASE("two hubs of degree 5 and 4") {
    GraphBuilder b(12);
    for (NodeId v = 2; v < 7; ++v) b.add_arc(0, v, 1.0);
    for (NodeId v = 7; v < 11; ++v) b.add_arc(1, v, 1.0);
    auto g = b.build();
    auto s = degree_select(g, 2);
    CHECK(s.nodes == std::vector<NodeId>{0, 1});
  }
}

TEST_CASE("greedy with the exact oracle") {
  SUBCASE("picks v0 over the 2-cliques on the counterexample") {
    // Random selection on this graph would almost surely return a clique
    // node of spread 2; greedy must take v0 with spread 1 + n = 3.
    auto g = counterexample_graph(2);
    ExactGainOracle oracle(g, DiffusionModel::IC);
    auto r = greedy_select(1, oracle);
    CHECK(r.seeds.nodes == std::vector<NodeId>{counterexample_v0()});
    CHECK(r.seeds.gains[0] == doctest::Approx(3.0));
  }
  SUBCASE("all-zero probabilities fall back to the id tie rule") {
    auto g = uniform(random_graph(8, 20, RngStream(2)), 0.0);
    ExactGainOracle oracle(g, DiffusionModel::IC);
    auto r = greedy_select(2, oracle);
    CHECK(r.seeds.nodes == std::vector<NodeId>{0, 1});
  }
  SUBCASE("k=1 matches the exhaustive singleton argmax") {
    for (uint64_t seed : {31u, 32u, 33u}) {
      auto g = uniform(random_graph(12, 16, RngStream(seed)), 0.4);
      double best = -1.0;
      NodeId best_id = 0;
      for (NodeId v = 0; v < g.node_count(); ++v) {
        const std::vector<NodeId> s{v};
        const double sp = exact_spread(g, DiffusionModel::IC, s);
        if (sp > best) {
          best = sp;
          best_id = v;
        }
      }
      ExactGainOracle oracle(g, DiffusionModel::IC);
      auto r = greedy_select(1, oracle);
      CHECK(r.seeds.nodes == std::vector<NodeId>{best_id});
    }
  }
  SUBCASE("approximation factor against exhaustive k-subsets") {
    const uint32_t k = 3;
    for (uint64_t seed : {41u, 42u}) {
      auto base = random_graph(10, 15, RngStream(seed));
      for (auto model : {DiffusionModel::IC, DiffusionModel::LT}) {
        auto g = model == DiffusionModel::IC
                     ? uniform(base, 0.5)
                     : assign_weights(base, WeightScheme::lt_uniform());
        ExactSpreadOracle oracle(g, model);
        double opt = 0.0;
        std::vector<NodeId> subset(k);
        for (NodeId a = 0; a < 10; ++a)
          for (NodeId b2 = a + 1; b2 < 10; ++b2)
            for (NodeId c = b2 + 1; c < 10; ++c) {
              subset = {a, b2, c};
              opt = std::max(opt, oracle.spread(subset));
            }
        ExactGainOracle gains(g, model);
        auto r = greedy_select(k, gains);
        const double achieved = oracle.spread(r.seeds.nodes);
        CHECK(achieved >= (1.0 - 1.0 / std::exp(1.0)) * opt - 1e-9);
      }
    }
  }
}

TEST_CASE("greedy family equivalence under shared streams") {
  for (uint64_t seed : {51u, 52u, 53u}) {
    auto base = random_graph(60, 200, RngStream(seed));
    for (auto model : {DiffusionModel::IC, DiffusionModel::LT}) {
      auto g = model == DiffusionModel::IC
                   ? uniform(base, 0.15)
                   : assign_weights(base, WeightScheme::lt_uniform());
      const RngStream rng(seed * 1000 + 17);
      auto greedy = greedy_mc(g, model, 4, 120, rng);
      auto celf = celf_mc(g, model, 4, 120, rng);
      auto celfpp = celfpp_mc(g, model, 4, 120, rng);
      CHECK(greedy.seeds.nodes == celf.seeds.nodes);
      CHECK(celf.seeds.nodes == celfpp.seeds.nodes);
      CHECK(greedy.seeds.gains == celf.seeds.gains);
      CHECK(celf.stats.evaluations <= greedy.stats.evaluations);
      CHECK(celfpp.stats.evaluations <= celf.stats.evaluations);
      CHECK(greedy.stats.evaluations >= 4);  // >= k always
    }
  }
}

TEST_CASE("celf evaluation accounting") {
  auto g = uniform(random_graph(40, 120, RngStream(61)), 0.2);
  SUBCASE("first iteration scores every node") {
    WorldGainOracle oracle(g, DiffusionModel::IC, 64, RngStream(62));
    auto r = celf_select(1, oracle);
    CHECK(r.stats.evaluations == g.node_count());
  }
  SUBCASE("k=1 costs celf and celfpp the same") {
    WorldGainOracle o1(g, DiffusionModel::IC, 64, RngStream(63));
    WorldGainOracle o2(g, DiffusionModel::IC, 64, RngStream(63));
    auto celf = celf_select(1, o1);
    auto celfpp = celfpp_select(1, o2);
    CHECK(celf.stats.evaluations == celfpp.stats.evaluations);
    CHECK(celf.seeds.nodes == celfpp.seeds.nodes);
  }
}

TEST_CASE("celfpp look-ahead reuse skips re-simulation") {
  // Star with certain arcs: node 0 dominates iteration one, so every
  // entry scored against it is promoted for free in iteration two.
  GraphBuilder b(10);
  for (NodeId v = 1; v < 10; ++v) b.add_arc(0, v, 1.0);
  auto g = b.build();
  WorldGainOracle o1(g, DiffusionModel::IC, 16, RngStream(64));
  WorldGainOracle o2(g, DiffusionModel::IC, 16, RngStream(64));
  auto celf = celf_select(2, o1);
  auto celfpp = celfpp_select(2, o2);
  CHECK(celf.seeds.nodes == celfpp.seeds.nodes);
  CHECK(celfpp.stats.evaluations < celf.stats.evaluations);
  CHECK(celfpp.stats.evaluations == g.node_count());
}

TEST_CASE("generate_rr_set") {
  SUBCASE("zero probabilities leave only the root") {
    auto g = uniform(random_graph(15, 45, RngStream(71)), 0.0);
    RngStream rng(72);
    for (auto model : {DiffusionModel::IC, DiffusionModel::LT}) {
      auto set = generate_rr_set(g, model, 6, rng);
      CHECK(set == std::vector<NodeId>{6});
    }
  }
  SUBCASE("certain DAG yields the exact ancestor set") {
    // 0 -> 1 -> 3, 2 -> 3, all p = 1; ancestors of 3 are everyone.
    GraphBuilder b(4);
    b.add_arc(0, 1, 1.0);
    b.add_arc(1, 3, 1.0);
    b.add_arc(2, 3, 1.0);
    auto g = b.build();
    RngStream rng(73);
    auto set = generate_rr_set(g, DiffusionModel::IC, 3, rng);
    std::set<NodeId> got(set.begin(), set.end());
    CHECK(got == std::set<NodeId>{0, 1, 2, 3});
    auto leaf = generate_rr_set(g, DiffusionModel::IC, 0, rng);
    CHECK(leaf == std::vector<NodeId>{0});
  }
  SUBCASE("membership frequency matches the binomial oracle") {
    GraphBuilder b(2);
    b.add_arc(0, 1, 0.5);
    auto g = b.build();
    RngStream rng(74);
    int hits = 0;
    for (int i = 0; i < 10000; ++i) {
      if (generate_rr_set(g, DiffusionModel::IC, 1, rng).size() == 2) ++hits;
    }
    // Bin(10000, 1/2): 3 sigma = 150.
    CHECK(std::abs(hits - 5000) <= 150);
  }
  SUBCASE("lt walk stops on cycle revisits") {
    GraphBuilder b(3);
    b.add_arc(0, 1, 1.0);
    b.add_arc(1, 2, 1.0);
    b.add_arc(2, 0, 1.0);
    auto g = b.build();
    RngStream rng(75);
    auto set = generate_rr_set(g, DiffusionModel::LT, 0, rng);
    std::set<NodeId> got(set.begin(), set.end());
    CHECK(got == std::set<NodeId>{0, 1, 2});
  }
}

TEST_CASE("rr index structure") {
  auto g = assign_weights(random_graph(30, 120, RngStream(81)),
                          WeightScheme::weighted_cascade());
  auto index = sample_rr_index(g, DiffusionModel::IC, 500, RngStream(82),
                               default_rr_cap_slots());
  REQUIRE(index.theta == 500);
  SUBCASE("inverted index is the exact transpose") {
    std::set<std::pair<NodeId, uint32_t>> direct, inverted;
    for (uint64_t i = 0; i < index.theta; ++i) {
      for (NodeId v : index.set(i)) direct.insert({v, uint32_t(i)});
    }
    for (NodeId v = 0; v < index.node_count; ++v) {
      for (uint32_t i : index.sets_covering(v)) inverted.insert({v, i});
    }
    CHECK(direct == inverted);
  }
  SUBCASE("regeneration is bit-identical") {
    auto again = sample_rr_index(g, DiffusionModel::IC, 500, RngStream(82),
                                 default_rr_cap_slots());
    CHECK(again.set_nodes == index.set_nodes);
    CHECK(again.set_off == index.set_off);
  }
  SUBCASE("every set contains its root") {
    for (uint64_t i = 0; i < index.theta; ++i) {
      CHECK(!index.set(i).empty());
    }
    CHECK(index.slots() >= index.theta);
  }
  SUBCASE("storage cap rejected with diagnostics") {
    CHECK_THROWS_AS(
        sample_rr_index(g, DiffusionModel::IC, 500, RngStream(82), 100),
        CapExceeded);
  }
}

TEST_CASE("max_coverage") {
  SUBCASE("hand example: {1,2},{2,3},{4}") {
    auto index = manual_index(6, {{1, 2}, {2, 3}, {4}});
    auto one = max_coverage(index, 1);
    CHECK(one.nodes == std::vector<NodeId>{2});
    auto two = max_coverage(index, 2);
    CHECK(two.nodes == std::vector<NodeId>{2, 4});
  }
  SUBCASE("identical singleton sets") {
    auto index = manual_index(9, {{7}, {7}, {7}});
    CHECK(max_coverage(index, 1).nodes == std::vector<NodeId>{7});
  }
  SUBCASE("empty index pads with the lowest ids and flags it") {
    auto index = manual_index(5, {});
    SelectionStats stats;
    auto s = max_coverage(index, 2, &stats);
    CHECK(s.nodes == std::vector<NodeId>{0, 1});
    CHECK(stats.padded_zero_coverage);
  }
  SUBCASE("greedy pair covers at least (1 - 1/e) of the best pair") {
    auto g = assign_weights(random_graph(12, 40, RngStream(83)),
                            WeightScheme::weighted_cascade());
    auto index = sample_rr_index(g, DiffusionModel::IC, 400, RngStream(84),
                                 default_rr_cap_slots());
    auto covered_by = [&](NodeId a, NodeId b) {
      std::set<uint32_t> covered;
      for (uint32_t i : index.sets_covering(a)) covered.insert(i);
      for (uint32_t i : index.sets_covering(b)) covered.insert(i);
      return covered.size();
    };
    size_t best = 0;
    for (NodeId a = 0; a < 12; ++a)
      for (NodeId b2 = a + 1; b2 < 12; ++b2)
        best = std::max(best, covered_by(a, b2));
    auto greedy = max_coverage(index, 2);
    const size_t got = covered_by(greedy.nodes[0], greedy.nodes[1]);
    CHECK(static_cast<double>(got) >=
          (1.0 - 1.0 / std::exp(1.0)) * static_cast<double>(best));
  }
}

TEST_CASE("sample policies") {
  SUBCASE("fixed passes theta through") {
    CHECK(SamplePolicy::fixed(37).theta_for(1000, 5) == 37);
    CHECK_THROWS_AS(SamplePolicy::fixed(0), std::invalid_argument);
  }
  SUBCASE("parameter validation") {
    CHECK_THROWS_AS(SamplePolicy::imm(0.0), std::invalid_argument);
    CHECK_THROWS_AS(SamplePolicy::imm(-0.5), std::invalid_argument);
    CHECK_THROWS_AS(SamplePolicy::tim_plus(0.1, 0.0), std::invalid_argument);
  }
  SUBCASE("imm needs no more samples than tim+ and both shrink with eps") {
    for (uint32_t n : {100u, 1000u, 10000u}) {
      uint64_t prev_tim = UINT64_MAX, prev_imm = UINT64_MAX;
      for (double eps = 0.05; eps <= 0.501; eps += 0.05) {
        const uint64_t tim = SamplePolicy::tim_plus(eps).theta_for(n, 10);
        const uint64_t imm = SamplePolicy::imm(eps).theta_for(n, 10);
        CHECK(imm <= tim);
        CHECK(tim <= prev_tim);
        CHECK(imm <= prev_imm);
        prev_tim = tim;
        prev_imm = imm;
      }
    }
  }
}

TEST_CASE("ris_select") {
  auto g = assign_weights(random_graph(40, 160, RngStream(91)),
                          WeightScheme::weighted_cascade());
  SUBCASE("fixed policy twice with the same stream is identical") {
    auto a = ris_select(g, DiffusionModel::IC, 3, SamplePolicy::fixed(800),
                        RngStream(92));
    auto b = ris_select(g, DiffusionModel::IC, 3, SamplePolicy::fixed(800),
                        RngStream(92));
    CHECK(a.seeds.nodes == b.seeds.nodes);
    CHECK(a.index.set_nodes == b.index.set_nodes);
    CHECK(a.stats.storage_slots == b.stats.storage_slots);
  }
  SUBCASE("lt variant works against lt weights") {
    auto r = ris_select(g, DiffusionModel::LT, 2, SamplePolicy::fixed(500),
                        RngStream(93));
    CHECK(r.seeds.nodes.size() == 2);
    CHECK(r.index.theta == 500);
  }
  SUBCASE("cap overflow rejected") {
    CHECK_THROWS_AS(ris_select(g, DiffusionModel::IC, 2,
                               SamplePolicy::fixed(100000), RngStream(94), 1000),
                    CapExceeded);
  }
  SUBCASE("k below one rejected") {
    CHECK_THROWS_AS(ris_select(g, DiffusionModel::IC, 0, SamplePolicy::fixed(10),
                               RngStream(95)),
                    std::invalid_argument);
  }
}

TEST_CASE("coverage fraction estimates spread") {
  // n * covered-fraction is an unbiased estimator of sigma(S); compare
  // with the exact oracle within 4 standard errors.
  auto g = uniform(random_graph(10, 16, RngStream(96)), 0.4);
  const uint64_t theta = 20000;
  auto r = ris_select(g, DiffusionModel::IC, 2, SamplePolicy::fixed(theta),
                      RngStream(97));
  uint64_t covered = 0;
  std::vector<uint8_t> hit(theta, 0);
  for (NodeId s : r.seeds.nodes) {
    for (uint32_t i : r.index.sets_covering(s)) {
      if (!hit[i]) {
        hit[i] = 1;
        ++covered;
      }
    }
  }
  const double f = static_cast<double>(covered) / static_cast<double>(theta);
  const double estimate = f * g.node_count();
  const double exact = exact_spread(g, DiffusionModel::IC, r.seeds.nodes);
  const double se =
      g.node_count() * std::sqrt(f * (1.0 - f) / static_cast<double>(theta));
  CHECK(std::fabs(estimate - exact) <= 4.0 * se + 1e-9);
}

TEST_CASE("equal sample sizes give statistically equal seed quality") {
  auto g = uniform(random_graph(10, 16, RngStream(98)), 0.4);
  ExactSpreadOracle oracle(g, DiffusionModel::IC);
  std::vector<double> spread_a, spread_b;
  for (int rep = 0; rep < 30; ++rep) {
    auto a = ris_select(g, DiffusionModel::IC, 2, SamplePolicy::fixed(300),
                        RngStream(1000 + rep));
    auto b = ris_select(g, DiffusionModel::IC, 2, SamplePolicy::fixed(300),
                        RngStream(2000 + rep));
    spread_a.push_back(oracle.spread(a.seeds.nodes));
    spread_b.push_back(oracle.spread(b.seeds.nodes));
  }
  auto mean_sd = [](const std::vector<double>& xs) {
    double m = 0.0;
    for (double x : xs) m += x;
    m /= xs.size();
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    return std::pair<double, double>{m, std::sqrt(ss / (xs.size() - 1))};
  };
  const auto [ma, sda] = mean_sd(spread_a);
  const auto [mb, sdb] = mean_sd(spread_b);
  const double combined = std::sqrt(sda * sda / 30.0 + sdb * sdb / 30.0);
  CHECK(std::fabs(ma - mb) < 4.0 * combined + 1e-9);
}
