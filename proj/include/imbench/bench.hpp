#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "imbench/algorithms.hpp"
#include "imbench/diffusion.hpp"
#include "imbench/graph.hpp"
#include "imbench/rng.hpp"
#include "imbench/stats.hpp"

namespace imbench {

struct AlgoRunResult {
  SeedSet seeds;
  double seconds = 0.0;        // selection wall time only
  uint64_t storage_slots = 0;  // RR node-slots (RIS family)
  uint64_t evaluations = 0;
};

// One algorithm bound to one instance, runnable at a tradeoff parameter
// and re-evaluable afterwards. Selection time never includes evaluation.
class BenchAlgorithm {
 public:
  virtual ~BenchAlgorithm() = default;
  virtual std::string name() const = 0;
  virtual std::string instance() const = 0;
  virtual uint32_t k() const = 0;
  virtual AlgoRunResult run(double param, uint64_t master_seed) = 0;
  virtual SpreadEstimate evaluate(const AlgoRunResult& run, double param,
                                  uint32_t rounds, uint64_t master_seed) = 0;
};

enum class SeedAlgoKind {
  Random,
  Degree,
  Greedy,   // param = MC rounds
  Celf,     // param = MC rounds
  CelfPp,   // param = MC rounds
  RisFixed, // param = theta
  RisTim,   // param = epsilon
  RisImm,   // param = epsilon
  Fixed,    // always returns the configured seed set
};

std::string to_string(SeedAlgoKind kind);
SeedAlgoKind seed_algo_from_string(const std::string& name);

class GraphAlgorithm : public BenchAlgorithm {
 public:
  GraphAlgorithm(const WeightedGraph& g, DiffusionModel model,
                 SeedAlgoKind kind, uint32_t k, std::string instance_name,
                 double ell = 1.0,
                 uint64_t rr_cap_slots = default_rr_cap_slots());

  // Fixed-kind payload.
  void set_fixed_seeds(SeedSet seeds) { fixed_ = std::move(seeds); }

  std::string name() const override;
  std::string instance() const override { return instance_; }
  uint32_t k() const override { return k_; }
  AlgoRunResult run(double param, uint64_t master_seed) override;
  SpreadEstimate evaluate(const AlgoRunResult& run, double param,
                          uint32_t rounds, uint64_t master_seed) override;

  const WeightedGraph& graph() const { return g_; }
  DiffusionModel model() const { return model_; }

 private:
  const WeightedGraph& g_;
  DiffusionModel model_;
  SeedAlgoKind kind_;
  uint32_t k_;
  std::string instance_;
  double ell_;
  uint64_t rr_cap_slots_;
  SeedSet fixed_;
};

// Declares its tradeoff curve instead of computing one; noise_width = 0
// reproduces the declared values exactly.
class MockAlgorithm : public BenchAlgorithm {
 public:
  struct Point {
    double param;
    double seconds;
    double spread;
    double sd;
  };

  MockAlgorithm(std::string name, std::vector<Point> points,
                double noise_width = 0.0, uint32_t k = 200);

  std::string name() const override { return name_; }
  std::string instance() const override { return "mock"; }
  uint32_t k() const override { return k_; }
  AlgoRunResult run(double param, uint64_t master_seed) override;
  SpreadEstimate evaluate(const AlgoRunResult& run, double param,
                          uint32_t rounds, uint64_t master_seed) override;

 private:
  const Point& point_at(double param) const;

  std::string name_;
  std::vector<Point> points_;
  double noise_width_;
  uint32_t k_;
};

struct CurvePoint {
  double param = 0.0;
  double seconds = 0.0;
  bool truncated = false;  // exceeded the shared budget; kept, not used
  SpreadEstimate estimate;
  uint64_t storage_slots = 0;
  SeedSet seeds;
  uint64_t run_seed = 0;
  uint64_t eval_seed = 0;
};

struct TradeoffCurve {
  std::string algorithm;
  std::string instance;
  uint32_t k = 0;
  std::vector<CurvePoint> points;  // sorted by param
  bool all_truncated = false;
  std::string empty_reason;

  // Highest-mean usable point; nullptr when all points are truncated.
  const CurvePoint* best_point() const;
};

// Runs the algorithm once per grid value under one shared wall-time
// budget, then scores the returned seeds with evaluation_rounds rounds.
// Over-budget points are flagged truncated rather than dropped. One
// warmup run (last grid value) precedes the timed runs.
TradeoffCurve sweep(BenchAlgorithm& algo, std::span<const double> grid,
                    double budget_seconds, uint32_t evaluation_rounds,
                    const RngStream& rng);

struct Bar {
  enum class Kind { Sound, Flawed };
  Kind kind = Kind::Sound;
  double value = 0.0;
  double mu_star = 0.0;  // Flawed provenance
  double sd_star = 0.0;

  static Bar sound(double target) { return {Kind::Sound, target, 0, 0}; }
  static Bar flawed(double mu, double sd) {
    return {Kind::Flawed, mu - sd, mu, sd};
  }
};

// The per-algorithm "near-optimal" bar under critique: re-evaluate the
// best curve point with evaluation_rounds rounds and take mu* - sd*.
Bar flawed_bar(const TradeoffCurve& curve, BenchAlgorithm& algo,
               uint32_t evaluation_rounds = 10000,
               const RngStream& rng = RngStream(0x0f1a3edbaaULL));

// Smallest selection time among usable points meeting the bar.
std::optional<double> time_to_bar(const TradeoffCurve& curve, const Bar& bar);

enum class Dominance { Dominates, DominatedBy, Incomparable };
std::string to_string(Dominance d);

// Step-function comparison: A dominates B iff A is at least as good at
// every time budget and every spread level, strictly better somewhere.
Dominance dominance(const TradeoffCurve& a, const TradeoffCurve& b);

struct AlgoTime {
  std::string algorithm;
  Bar bar;
  std::optional<double> seconds;  // nullopt = bar unreachable
};

struct RunRecord {
  uint64_t seed = 0;
  double seconds_a = 0.0;
  double seconds_b = 0.0;
  bool seeds_equal = false;
};

struct ComparisonReport {
  std::string mode;  // "sound" | "flawed" | "shared-seed"
  std::vector<std::string> algorithms;
  std::vector<AlgoTime> times;  // ranked: fastest first, unreachable last
  std::vector<std::vector<Dominance>> dominance_matrix;
  std::optional<TTestResult> ttest;
  std::vector<RunRecord> runs;
  nlohmann::json config;

  // Position of an algorithm in the ranking.
  size_t rank_of(const std::string& algorithm) const;
  nlohmann::json to_json() const;
};

// One shared bar for everybody, plus the dominance matrix. The ranking
// is by time-to-bar, so a dominated algorithm can never outrank its
// dominator.
ComparisonReport sound_compare(std::span<const TradeoffCurve> curves,
                               double target_spread);

// The methodology under critique: every curve gets its own mu* - sd* bar.
ComparisonReport flawed_compare(std::span<const TradeoffCurve> curves,
                                std::span<BenchAlgorithm* const> algos,
                                uint32_t evaluation_rounds,
                                const RngStream& rng);

// run_count master seeds shared by both algorithms; each algorithm runs
// its seeds back to back (one warmup first, one experiment at a time),
// and the paired times go through the t-test.
ComparisonReport shared_seed_experiment(BenchAlgorithm& algo_a, double param_a,
                                        BenchAlgorithm& algo_b, double param_b,
                                        uint32_t run_count,
                                        const RngStream& rng);

// Flat CSV emitters with fixed headers (see README for the schema).
void write_curves_csv(std::ostream& out, std::span<const TradeoffCurve> curves);
void write_times_csv(std::ostream& out, const ComparisonReport& report);
void write_ttest_csv(std::ostream& out, const ComparisonReport& report,
                     const std::string& algo_a, const std::string& algo_b);

// The two-hypothetical-algorithms fixture: A reaches spread 100 in 6 s
// and 1000 in 600 s; B reaches 100 in 60 s.
std::pair<MockAlgorithm, MockAlgorithm> mock_pair_example();

// Dominating pair on a 2^0..2^14 s grid where the flawed pipeline ranks
// the dominated algorithm as faster (mu*_A = 1600, mu*_B = 600, sd* = 200).
std::pair<MockAlgorithm, MockAlgorithm> mock_pair_dominated();

}  // namespace imbench
