#include <cmath>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "imbench/bench.hpp"
#include "imbench/errors.hpp"

using namespace imbench;

namespace {

const std::vector<double> kMockGrid{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14};

}  // namespace

TEST_CASE("sweep over a mock reproduces the declaration") {
  auto [a, b] = mock_pair_dominated();
  auto curve = sweep(a, kMockGrid, 1e9, 10000, RngStream(1));
  REQUIRE(curve.points.size() == 15);
  CHECK(curve.algorithm == "mock-a");
  for (size_t j = 0; j < curve.points.size(); ++j) {
    CHECK(curve.points[j].param == doctest::Approx(double(j)));
    CHECK(curve.points[j].seconds == doctest::Approx(std::pow(2.0, j)));
    CHECK(curve.points[j].estimate.mean ==
          doctest::Approx(j == 14 ? 1600.0 : 400.0 + 77.0 * j));
    CHECK_FALSE(curve.points[j].truncated);
  }
  CHECK(curve.best_point()->estimate.mean == 1600.0);
}

TEST_CASE("sweep budget flags every over-limit point") {
  auto [a, b] = mock_pair_dominated();
  auto curve = sweep(a, kMockGrid, 0.5, 100, RngStream(2));  // all >= 1 s
  CHECK(curve.all_truncated);
  CHECK(!curve.empty_reason.empty());
  for (const auto& p : curve.points) CHECK(p.truncated);
  CHECK(curve.best_point() == nullptr);
}

TEST_CASE("sweep validates inputs") {
  auto [a, b] = mock_pair_dominated();
  CHECK_THROWS_AS(sweep(a, {}, 1.0, 100, RngStream(3)), std::invalid_argument);
  CHECK_THROWS_AS(sweep(a, kMockGrid, 0.0, 100, RngStream(3)),
                  std::invalid_argument);
}

TEST_CASE("flawed bar reproduces the mu* - sd* arithmetic") {
  auto [a, b] = mock_pair_dominated();
  auto curve_a = sweep(a, kMockGrid, 1e9, 10000, RngStream(4));
  auto curve_b = sweep(b, kMockGrid, 1e9, 10000, RngStream(5));
  const Bar bar_a = flawed_bar(curve_a, a);
  const Bar bar_b = flawed_bar(curve_b, b);
  CHECK(bar_a.value == doctest::Approx(1400.0));
  CHECK(bar_a.mu_star == doctest::Approx(1600.0));
  CHECK(bar_a.sd_star == doctest::Approx(200.0));
  CHECK(bar_b.value == doctest::Approx(400.0));

  // The flawed pipeline lets the dominated algorithm look fast.
  CHECK(*time_to_bar(curve_a, bar_a) == doctest::Approx(8192.0));
  CHECK(*time_to_bar(curve_b, bar_b) == doctest::Approx(1.0));
}

TEST_CASE("flawed bar needs a usable curve") {
  auto [a, b] = mock_pair_dominated();
  auto truncated = sweep(a, kMockGrid, 0.5, 100, RngStream(6));
  CHECK_THROWS_AS(flawed_bar(truncated, a), std::invalid_argument);
}

TEST_CASE("single point curve bars at its own mu - sd") {
  MockAlgorithm solo("solo", {{1.0, 5.0, 120.0, 30.0}});
  const std::vector<double> grid{1.0};
  auto curve = sweep(solo, grid, 1e9, 10000, RngStream(7));
  const Bar bar = flawed_bar(curve, solo);
  CHECK(bar.value == doctest::Approx(90.0));
}

TEST_CASE("time_to_bar on the two-algorithm example") {
  auto [a, b] = mock_pair_example();
  const std::vector<double> grid_a{1, 2}, grid_b{1};
  auto curve_a = sweep(a, grid_a, 1e9, 10000, RngStream(8));
  auto curve_b = sweep(b, grid_b, 1e9, 10000, RngStream(9));
  // 0.1 minutes vs 1 minute at the shared spread bar of 100.
  CHECK(*time_to_bar(curve_a, Bar::sound(100)) == doctest::Approx(6.0));
  CHECK(*time_to_bar(curve_b, Bar::sound(100)) == doctest::Approx(60.0));
  CHECK_FALSE(time_to_bar(curve_b, Bar::sound(101)).has_value());
  CHECK_FALSE(time_to_bar(curve_a, Bar::sound(2000)).has_value());
}

TEST_CASE("dominance verdicts") {
  auto [a, b] = mock_pair_dominated();
  auto curve_a = sweep(a, kMockGrid, 1e9, 10000, RngStream(10));
  auto curve_b = sweep(b, kMockGrid, 1e9, 10000, RngStream(11));
  SUBCASE("the mock pair dominates one way") {
    CHECK(dominance(curve_a, curve_b) == Dominance::Dominates);
    CHECK(dominance(curve_b, curve_a) == Dominance::DominatedBy);
  }
  SUBCASE("identical curves are incomparable") {
    CHECK(dominance(curve_a, curve_a) == Dominance::Incomparable);
  }
  SUBCASE("crossing curves are incomparable") {
    MockAlgorithm x("x", {{0, 1.0, 100.0, 0.0}, {1, 10.0, 200.0, 0.0}});
    MockAlgorithm y("y", {{0, 1.0, 150.0, 0.0}, {1, 10.0, 160.0, 0.0}});
    const std::vector<double> grid{0, 1};
    auto cx = sweep(x, grid, 1e9, 100, RngStream(12));
    auto cy = sweep(y, grid, 1e9, 100, RngStream(13));
    CHECK(dominance(cx, cy) == Dominance::Incomparable);
  }
}

TEST_CASE("sound_compare holds everyone to one bar") {
  auto [a, b] = mock_pair_example();
  const std::vector<double> grid_a{1, 2}, grid_b{1};
  std::vector<TradeoffCurve> curves;
  curves.push_back(sweep(a, grid_a, 1e9, 10000, RngStream(14)));
  curves.push_back(sweep(b, grid_b, 1e9, 10000, RngStream(15)));
  auto report = sound_compare(curves, 100.0);
  CHECK(report.rank_of("mock-a") < report.rank_of("mock-b"));
  CHECK(*report.times[0].seconds == doctest::Approx(6.0));
  CHECK(*report.times[1].seconds == doctest::Approx(60.0));

  SUBCASE("unreachable targets stay flagged, not dropped") {
    auto all_out = sound_compare(curves, 5000.0);
    for (const auto& t : all_out.times) CHECK_FALSE(t.seconds.has_value());
  }
  SUBCASE("single curve trivial report") {
    std::vector<TradeoffCurve> one{curves[0]};
    auto r = sound_compare(one, 100.0);
    CHECK(r.times.size() == 1);
  }
}

TEST_CASE("a dominator is never ranked behind its dominated partner") {
  // Random dominating pairs: same time grid, B monotone, A = B + margin.
  for (uint64_t seed = 0; seed < 20; ++seed) {
    RngStream rng(9000 + seed);
    std::vector<MockAlgorithm::Point> pa, pb;
    double spread_b = 50.0 + 100.0 * rng.next_unit();
    double margin = 1.0 + 50.0 * rng.next_unit();
    for (int j = 0; j < 6; ++j) {
      const double t = std::pow(4.0, j);
      spread_b += 120.0 * rng.next_unit();
      margin += 30.0 * rng.next_unit();
      pb.push_back({double(j), t, spread_b, 0.0});
      pa.push_back({double(j), t, spread_b + margin, 0.0});
    }
    MockAlgorithm a("a", pa), b("b", pb);
    const std::vector<double> grid{0, 1, 2, 3, 4, 5};
    std::vector<TradeoffCurve> curves;
    curves.push_back(sweep(a, grid, 1e9, 100, RngStream(seed * 2)));
    curves.push_back(sweep(b, grid, 1e9, 100, RngStream(seed * 2 + 1)));
    REQUIRE(dominance(curves[0], curves[1]) == Dominance::Dominates);
    for (int bar_trial = 0; bar_trial < 8; ++bar_trial) {
      const double bar = 40.0 + 700.0 * rng.next_unit();
      auto report = sound_compare(curves, bar);
      const auto& ta = report.times[report.rank_of("a")];
      const auto& tb = report.times[report.rank_of("b")];
      if (tb.seconds) {
        REQUIRE(ta.seconds.has_value());
        CHECK(*ta.seconds <= *tb.seconds);
        CHECK(report.rank_of("a") < report.rank_of("b"));
      }
    }
  }
}

TEST_CASE("flawed_compare reports the dominated algorithm as faster") {
  auto [a, b] = mock_pair_dominated();
  std::vector<TradeoffCurve> curves;
  curves.push_back(sweep(a, kMockGrid, 1e9, 10000, RngStream(16)));
  curves.push_back(sweep(b, kMockGrid, 1e9, 10000, RngStream(17)));
  std::vector<BenchAlgorithm*> algos{&a, &b};
  auto report = flawed_compare(curves, algos, 10000, RngStream(18));
  // The regression the methodology critique is about: B comes out ahead
  // under per-algorithm bars even though A dominates it.
  CHECK(report.rank_of("mock-b") < report.rank_of("mock-a"));
  CHECK(*report.times[report.rank_of("mock-b")].seconds == doctest::Approx(1.0));
  CHECK(*report.times[report.rank_of("mock-a")].seconds >=
        doctest::Approx(8192.0));
  CHECK(report.dominance_matrix[0][1] == Dominance::Dominates);
}

TEST_CASE("shared_seed_experiment") {
  SUBCASE("deterministic algorithm against itself gives p = 1") {
    auto [a, b] = mock_pair_example();
    auto report = shared_seed_experiment(a, 1.0, a, 1.0, 10, RngStream(19));
    REQUIRE(report.ttest.has_value());
    CHECK(report.ttest->p == 1.0);
    CHECK(report.runs.size() == 10);
  }
  SUBCASE("run_count below two rejected") {
    auto [a, b] = mock_pair_example();
    CHECK_THROWS_AS(shared_seed_experiment(a, 1.0, b, 1.0, 1, RngStream(20)),
                    std::invalid_argument);
  }
  SUBCASE("celf vs celfpp on a real instance") {
    auto g = assign_weights(random_graph(40, 150, RngStream(21)),
                            WeightScheme::weighted_cascade());
    GraphAlgorithm celf(g, DiffusionModel::IC, SeedAlgoKind::Celf, 3, "rand40");
    GraphAlgorithm celfpp(g, DiffusionModel::IC, SeedAlgoKind::CelfPp, 3,
                          "rand40");
    auto report = shared_seed_experiment(celf, 100, celfpp, 100, 4, RngStream(22));
    REQUIRE(report.ttest.has_value());
    CHECK(report.ttest->p >= 0.0);
    CHECK(report.ttest->p <= 1.0);
    for (const auto& run : report.runs) CHECK(run.seeds_equal);
  }
}

TEST_CASE("report json embeds config and results") {
  auto [a, b] = mock_pair_example();
  auto report = shared_seed_experiment(a, 1.0, b, 1.0, 3, RngStream(23));
  auto j = report.to_json();
  CHECK(j["schema"] == "imbench-report/1");
  CHECK(j["config"]["run_count"] == 3);
  CHECK(j["ttest"].contains("p"));
  CHECK(j["runs"].size() == 3);

  // Same stream, same report.
  auto again = shared_seed_experiment(a, 1.0, b, 1.0, 3, RngStream(23));
  CHECK(again.to_json() == j);
}

TEST_CASE("csv writers keep their headers") {
  auto [a, b] = mock_pair_example();
  const std::vector<double> grid{1};
  std::vector<TradeoffCurve> curves;
  curves.push_back(sweep(b, grid, 1e9, 100, RngStream(24)));
  std::ostringstream curve_csv;
  write_curves_csv(curve_csv, curves);
  CHECK(curve_csv.str().rfind("algorithm,instance,k,parameter,seconds,"
                              "truncated,mean,sample_sd,rounds,std_error,"
                              "storage_slots\n", 0) == 0);
  auto report = sound_compare(curves, 50.0);
  std::ostringstream times_csv;
  write_times_csv(times_csv, report);
  CHECK(times_csv.str().rfind("algorithm,bar_kind,bar_value,reachable,seconds\n",
                              0) == 0);
}
