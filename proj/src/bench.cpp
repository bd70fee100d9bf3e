#include "imbench/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "imbench/errors.hpp"

namespace imbench {

namespace {

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

}  // namespace

std::string to_string(SeedAlgoKind kind) {
  switch (kind) {
    case SeedAlgoKind::Random: return "random";
    case SeedAlgoKind::Degree: return "degree";
    case SeedAlgoKind::Greedy: return "greedy";
    case SeedAlgoKind::Celf: return "celf";
    case SeedAlgoKind::CelfPp: return "celfpp";
    case SeedAlgoKind::RisFixed: return "ris-fixed";
    case SeedAlgoKind::RisTim: return "ris-tim";
    case SeedAlgoKind::RisImm: return "ris-imm";
    case SeedAlgoKind::Fixed: return "fixed";
  }
  return "?";
}

SeedAlgoKind seed_algo_from_string(const std::string& name) {
  if (name == "random") return SeedAlgoKind::Random;
  if (name == "degree") return SeedAlgoKind::Degree;
  if (name == "greedy") return SeedAlgoKind::Greedy;
  if (name == "celf") return SeedAlgoKind::Celf;
  if (name == "celfpp") return SeedAlgoKind::CelfPp;
  if (name == "ris-fixed") return SeedAlgoKind::RisFixed;
  if (name == "ris-tim") return SeedAlgoKind::RisTim;
  if (name == "ris-imm") return SeedAlgoKind::RisImm;
  if (name == "fixed") return SeedAlgoKind::Fixed;
  throw std::invalid_argument("unknown algorithm: " + name);
}

GraphAlgorithm::GraphAlgorithm(const WeightedGraph& g, DiffusionModel model,
                               SeedAlgoKind kind, uint32_t k,
                               std::string instance_name, double ell,
                               uint64_t rr_cap_slots)
    : g_(g),
      model_(model),
      kind_(kind),
      k_(k),
      instance_(std::move(instance_name)),
      ell_(ell),
      rr_cap_slots_(rr_cap_slots) {}

std::string GraphAlgorithm::name() const { return to_string(kind_); }

AlgoRunResult GraphAlgorithm::run(double param, uint64_t master_seed) {
  AlgoRunResult out;
  const RngStream rng(master_seed);
  try {
    switch (kind_) {
      case SeedAlgoKind::Random: {
        const double t0 = now_seconds();
        out.seeds = random_select(g_, k_, rng);
        out.seconds = now_seconds() - t0;
        break;
      }
      case SeedAlgoKind::Degree: {
        const double t0 = now_seconds();
        out.seeds = degree_select(g_, k_);
        out.seconds = now_seconds() - t0;
        break;
      }
      case SeedAlgoKind::Fixed: {
        const double t0 = now_seconds();
        out.seeds = fixed_;
        out.seconds = now_seconds() - t0;
        break;
      }
      case SeedAlgoKind::Greedy:
      case SeedAlgoKind::Celf:
      case SeedAlgoKind::CelfPp: {
        const uint32_t rounds = static_cast<uint32_t>(param);
        GreedyResult r = kind_ == SeedAlgoKind::Greedy
                             ? greedy_mc(g_, model_, k_, rounds, rng)
                             : kind_ == SeedAlgoKind::Celf
                                   ? celf_mc(g_, model_, k_, rounds, rng)
                                   : celfpp_mc(g_, model_, k_, rounds, rng);
        out.seeds = std::move(r.seeds);
        out.seconds = r.stats.select_seconds;
        out.evaluations = r.stats.evaluations;
        break;
      }
      case SeedAlgoKind::RisFixed:
      case SeedAlgoKind::RisTim:
      case SeedAlgoKind::RisImm: {
        SamplePolicy policy =
            kind_ == SeedAlgoKind::RisFixed
                ? SamplePolicy::fixed(static_cast<uint64_t>(param))
                : kind_ == SeedAlgoKind::RisTim
                      ? SamplePolicy::tim_plus(param, ell_)
                      : SamplePolicy::imm(param, ell_);
        RisResult r = ris_select(g_, model_, k_, policy, rng, rr_cap_slots_);
        out.seeds = std::move(r.seeds);
        out.seconds = r.stats.select_seconds;
        out.storage_slots = r.stats.storage_slots;
        out.evaluations = r.stats.evaluations;
        break;
      }
    }
  } catch (const CapExceeded&) {
    throw;  // resource cap keeps its own exit class
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception& e) {
    throw AlgorithmError(name() + " failed: " + e.what());
  }
  return out;
}

SpreadEstimate GraphAlgorithm::evaluate(const AlgoRunResult& run,
                                        double /*param*/, uint32_t rounds,
                                        uint64_t master_seed) {
  return estimate_spread(g_, model_, run.seeds.nodes, rounds,
                         RngStream(master_seed));
}

MockAlgorithm::MockAlgorithm(std::string name, std::vector<Point> points,
                             double noise_width, uint32_t k)
    : name_(std::move(name)),
      points_(std::move(points)),
      noise_width_(noise_width),
      k_(k) {
  if (points_.empty()) {
    throw std::invalid_argument("mock algorithm needs declared points");
  }
}

const MockAlgorithm::Point& MockAlgorithm::point_at(double param) const {
  for (const Point& p : points_) {
    if (p.param == param) return p;
  }
  throw std::invalid_argument(name_ + ": undeclared mock parameter " +
                              std::to_string(param));
}

AlgoRunResult MockAlgorithm::run(double param, uint64_t /*master_seed*/) {
  const Point& p = point_at(param);
  AlgoRunResult out;
  out.seconds = p.seconds;
  out.seeds.k = k_;
  return out;
}

SpreadEstimate MockAlgorithm::evaluate(const AlgoRunResult& /*run*/,
                                       double param, uint32_t rounds,
                                       uint64_t master_seed) {
  const Point& p = point_at(param);
  double mean = p.spread;
  if (noise_width_ > 0.0) {
    const RngStream rng(master_seed);
    mean += noise_width_ * (2.0 * rng.unit_at(0) - 1.0);
  }
  return {mean, p.sd, rounds, p.sd / std::sqrt(static_cast<double>(rounds))};
}

const CurvePoint* TradeoffCurve::best_point() const {
  const CurvePoint* best = nullptr;
  for (const CurvePoint& p : points) {
    if (p.truncated) continue;
    if (!best || p.estimate.mean > best->estimate.mean) best = &p;
  }
  return best;
}

TradeoffCurve sweep(BenchAlgorithm& algo, std::span<const double> grid,
                    double budget_seconds, uint32_t evaluation_rounds,
                    const RngStream& rng) {
  if (grid.empty()) throw std::invalid_argument("sweep needs a non-empty grid");
  if (!(budget_seconds > 0.0)) {
    throw std::invalid_argument("sweep budget must be > 0");
  }
  if (evaluation_rounds < 2) {
    throw std::invalid_argument("sweep needs evaluation_rounds >= 2");
  }
  std::vector<double> params(grid.begin(), grid.end());
  std::sort(params.begin(), params.end());

  TradeoffCurve curve;
  curve.algorithm = algo.name();
  curve.instance = algo.instance();
  curve.k = algo.k();

  algo.run(params.back(), rng.substream(0xaaaa).key());  // warmup

  for (size_t i = 0; i < params.size(); ++i) {
    CurvePoint point;
    point.param = params[i];
    point.run_seed = rng.substream(2 * i).key();
    point.eval_seed = rng.substream(2 * i + 1).key();
    AlgoRunResult r = algo.run(params[i], point.run_seed);
    point.seconds = r.seconds;
    point.storage_slots = r.storage_slots;
    point.seeds = std::move(r.seeds);
    point.truncated = point.seconds > budget_seconds;
    if (!point.truncated) {
      AlgoRunResult for_eval;
      for_eval.seeds = point.seeds;
      point.estimate = algo.evaluate(for_eval, params[i], evaluation_rounds,
                                     point.eval_seed);
    }
    curve.points.push_back(std::move(point));
  }
  curve.all_truncated = std::all_of(curve.points.begin(), curve.points.end(),
                                    [](const CurvePoint& p) { return p.truncated; });
  if (curve.all_truncated) {
    curve.empty_reason = "every grid point exceeded the shared budget of " +
                         std::to_string(budget_seconds) + " s";
  }
  return curve;
}

Bar flawed_bar(const TradeoffCurve& curve, BenchAlgorithm& algo,
               uint32_t evaluation_rounds, const RngStream& rng) {
  const CurvePoint* best = curve.best_point();
  if (!best) {
    throw std::invalid_argument("flawed_bar needs a usable curve point");
  }
  AlgoRunResult run;
  run.seeds = best->seeds;
  const SpreadEstimate est = algo.evaluate(run, best->param, evaluation_rounds,
                                           rng.substream(0xba5).key());
  return Bar::flawed(est.mean, est.sample_sd);
}

std::optional<double> time_to_bar(const TradeoffCurve& curve, const Bar& bar) {
  std::optional<double> best;
  for (const CurvePoint& p : curve.points) {
    if (p.truncated) continue;
    if (p.estimate.mean >= bar.value) {
      if (!best || p.seconds < *best) best = p.seconds;
    }
  }
  return best;
}

std::string to_string(Dominance d) {
  switch (d) {
    case Dominance::Dominates: return "dominates";
    case Dominance::DominatedBy: return "dominated-by";
    case Dominance::Incomparable: return "incomparable";
  }
  return "?";
}

namespace {

double best_spread_by(const TradeoffCurve& c, double budget) {
  double best = -std::numeric_limits<double>::infinity();
  for (const CurvePoint& p : c.points) {
    if (!p.truncated && p.seconds <= budget) {
      best = std::max(best, p.estimate.mean);
    }
  }
  return best;
}

double min_time_for(const TradeoffCurve& c, double spread) {
  double best = std::numeric_limits<double>::infinity();
  for (const CurvePoint& p : c.points) {
    if (!p.truncated && p.estimate.mean >= spread) {
      best = std::min(best, p.seconds);
    }
  }
  return best;
}

}  // namespace

Dominance dominance(const TradeoffCurve& a, const TradeoffCurve& b) {
  std::set<double> budgets, spreads;
  for (const TradeoffCurve* c : {&a, &b}) {
    for (const CurvePoint& p : c->points) {
      if (!p.truncated) {
        budgets.insert(p.seconds);
        spreads.insert(p.estimate.mean);
      }
    }
  }
  if (budgets.empty()) return Dominance::Incomparable;

  bool a_never_worse = true, b_never_worse = true, a_strict = false,
       b_strict = false;
  for (double t : budgets) {
    const double sa = best_spread_by(a, t), sb = best_spread_by(b, t);
    if (sa < sb) a_never_worse = false;
    if (sb < sa) b_never_worse = false;
    if (sa > sb) a_strict = true;
    if (sb > sa) b_strict = true;
  }
  for (double s : spreads) {
    const double ta = min_time_for(a, s), tb = min_time_for(b, s);
    if (ta > tb) a_never_worse = false;
    if (tb > ta) b_never_worse = false;
    if (ta < tb) a_strict = true;
    if (tb < ta) b_strict = true;
  }
  if (a_never_worse && a_strict) return Dominance::Dominates;
  if (b_never_worse && b_strict) return Dominance::DominatedBy;
  return Dominance::Incomparable;
}

size_t ComparisonReport::rank_of(const std::string& algorithm) const {
  for (size_t i = 0; i < times.size(); ++i) {
    if (times[i].algorithm == algorithm) return i;
  }
  throw std::invalid_argument("unknown algorithm in report: " + algorithm);
}

namespace {

void rank_times(std::vector<AlgoTime>& times) {
  std::stable_sort(times.begin(), times.end(),
                   [](const AlgoTime& x, const AlgoTime& y) {
                     if (x.seconds.has_value() != y.seconds.has_value()) {
                       return x.seconds.has_value();
                     }
                     if (!x.seconds) return false;
                     return *x.seconds < *y.seconds;
                   });
}

std::vector<std::vector<Dominance>> dominance_matrix_of(
    std::span<const TradeoffCurve> curves) {
  std::vector<std::vector<Dominance>> m(
      curves.size(), std::vector<Dominance>(curves.size(), Dominance::Incomparable));
  for (size_t i = 0; i < curves.size(); ++i) {
    for (size_t j = 0; j < curves.size(); ++j) {
      if (i != j) m[i][j] = dominance(curves[i], curves[j]);
    }
  }
  return m;
}

}  // namespace

ComparisonReport sound_compare(std::span<const TradeoffCurve> curves,
                               double target_spread) {
  if (curves.empty()) {
    throw std::invalid_argument("sound_compare needs at least one curve");
  }
  ComparisonReport report;
  report.mode = "sound";
  const Bar bar = Bar::sound(target_spread);
  for (const TradeoffCurve& c : curves) {
    report.algorithms.push_back(c.algorithm);
    report.times.push_back({c.algorithm, bar, time_to_bar(c, bar)});
  }
  rank_times(report.times);
  report.dominance_matrix = dominance_matrix_of(curves);
  report.config["mode"] = "sound";
  report.config["target_spread"] = target_spread;
  return report;
}

ComparisonReport flawed_compare(std::span<const TradeoffCurve> curves,
                                std::span<BenchAlgorithm* const> algos,
                                uint32_t evaluation_rounds,
                                const RngStream& rng) {
  if (curves.size() != algos.size()) {
    throw std::invalid_argument("flawed_compare needs one algorithm per curve");
  }
  ComparisonReport report;
  report.mode = "flawed";
  for (size_t i = 0; i < curves.size(); ++i) {
    const Bar bar =
        flawed_bar(curves[i], *algos[i], evaluation_rounds, rng.substream(i));
    report.algorithms.push_back(curves[i].algorithm);
    report.times.push_back({curves[i].algorithm, bar, time_to_bar(curves[i], bar)});
  }
  rank_times(report.times);
  report.dominance_matrix = dominance_matrix_of(curves);
  report.config["mode"] = "flawed";
  report.config["evaluation_rounds"] = evaluation_rounds;
  return report;
}

ComparisonReport shared_seed_experiment(BenchAlgorithm& algo_a, double param_a,
                                        BenchAlgorithm& algo_b, double param_b,
                                        uint32_t run_count,
                                        const RngStream& rng) {
  if (run_count < 2) {
    throw std::invalid_argument("shared_seed_experiment needs run_count >= 2");
  }
  std::vector<uint64_t> seeds(run_count);
  for (uint32_t i = 0; i < run_count; ++i) {
    seeds[i] = rng.substream(i).key();
  }

  // One experiment at a time: each algorithm runs its seeds back to back
  // after an untimed warmup.
  std::vector<double> times_a(run_count), times_b(run_count);
  std::vector<SeedSet> picked_a(run_count), picked_b(run_count);
  algo_a.run(param_a, rng.substream(0xa0).key());
  for (uint32_t i = 0; i < run_count; ++i) {
    AlgoRunResult r = algo_a.run(param_a, seeds[i]);
    times_a[i] = r.seconds;
    picked_a[i] = std::move(r.seeds);
  }
  algo_b.run(param_b, rng.substream(0xb0).key());
  for (uint32_t i = 0; i < run_count; ++i) {
    AlgoRunResult r = algo_b.run(param_b, seeds[i]);
    times_b[i] = r.seconds;
    picked_b[i] = std::move(r.seeds);
  }

  ComparisonReport report;
  report.mode = "shared-seed";
  report.algorithms = {algo_a.name(), algo_b.name()};
  report.ttest = paired_runtime_test(times_a, times_b);
  for (uint32_t i = 0; i < run_count; ++i) {
    report.runs.push_back(
        {seeds[i], times_a[i], times_b[i], picked_a[i].nodes == picked_b[i].nodes});
  }
  report.config["mode"] = "shared-seed";
  report.config["run_count"] = run_count;
  report.config["seeds"] = seeds;
  report.config["param_a"] = param_a;
  report.config["param_b"] = param_b;
  return report;
}

nlohmann::json ComparisonReport::to_json() const {
  nlohmann::json j;
  j["schema"] = "imbench-report/1";
  j["mode"] = mode;
  j["config"] = config;
  j["algorithms"] = algorithms;
  auto& times_j = j["times"] = nlohmann::json::array();
  for (const AlgoTime& t : times) {
    nlohmann::json row;
    row["algorithm"] = t.algorithm;
    row["bar_kind"] = t.bar.kind == Bar::Kind::Sound ? "sound" : "flawed";
    row["bar_value"] = t.bar.value;
    if (t.bar.kind == Bar::Kind::Flawed) {
      row["mu_star"] = t.bar.mu_star;
      row["sd_star"] = t.bar.sd_star;
    }
    if (t.seconds) {
      row["seconds"] = *t.seconds;
    } else {
      row["bar_unreachable"] = true;
    }
    times_j.push_back(row);
  }
  if (!dominance_matrix.empty()) {
    auto& dom = j["dominance"] = nlohmann::json::array();
    for (size_t i = 0; i < dominance_matrix.size(); ++i) {
      for (size_t k2 = 0; k2 < dominance_matrix[i].size(); ++k2) {
        if (i == k2) continue;
        dom.push_back({{"a", algorithms[i]},
                       {"b", algorithms[k2]},
                       {"verdict", to_string(dominance_matrix[i][k2])}});
      }
    }
  }
  if (ttest) {
    j["ttest"] = {{"t", ttest->t},
                  {"p", ttest->p},
                  {"mean_diff", ttest->mean_diff},
                  {"df", ttest->df},
                  {"degenerate", ttest->degenerate},
                  {"significant_at_0.05", ttest->p <= 0.05}};
  }
  if (!runs.empty()) {
    auto& rj = j["runs"] = nlohmann::json::array();
    for (const RunRecord& r : runs) {
      rj.push_back({{"seed", r.seed},
                    {"seconds_a", r.seconds_a},
                    {"seconds_b", r.seconds_b},
                    {"seeds_equal", r.seeds_equal}});
    }
  }
  return j;
}

void write_curves_csv(std::ostream& out, std::span<const TradeoffCurve> curves) {
  out << "algorithm,instance,k,parameter,seconds,truncated,mean,sample_sd,"
         "rounds,std_error,storage_slots\n";
  for (const TradeoffCurve& c : curves) {
    for (const CurvePoint& p : c.points) {
      out << c.algorithm << ',' << c.instance << ',' << c.k << ',' << p.param
          << ',' << p.seconds << ',' << (p.truncated ? 1 : 0) << ','
          << p.estimate.mean << ',' << p.estimate.sample_sd << ','
          << p.estimate.rounds << ',' << p.estimate.std_error << ','
          << p.storage_slots << '\n';
    }
  }
}

void write_times_csv(std::ostream& out, const ComparisonReport& report) {
  out << "algorithm,bar_kind,bar_value,reachable,seconds\n";
  for (const AlgoTime& t : report.times) {
    out << t.algorithm << ','
        << (t.bar.kind == Bar::Kind::Sound ? "sound" : "flawed") << ','
        << t.bar.value << ',' << (t.seconds ? 1 : 0) << ','
        << (t.seconds ? *t.seconds : 0.0) << '\n';
  }
}

void write_ttest_csv(std::ostream& out, const ComparisonReport& report,
                     const std::string& algo_a, const std::string& algo_b) {
  out << "algo_a,algo_b,runs,t,p,mean_diff\n";
  if (report.ttest) {
    out << algo_a << ',' << algo_b << ',' << report.runs.size() << ','
        << report.ttest->t << ',' << report.ttest->p << ','
        << report.ttest->mean_diff << '\n';
  }
}

std::pair<MockAlgorithm, MockAlgorithm> mock_pair_example() {
  MockAlgorithm a("mock-a", {{1, 6.0, 100.0, 0.0}, {2, 600.0, 1000.0, 0.0}});
  MockAlgorithm b("mock-b", {{1, 60.0, 100.0, 0.0}});
  return {std::move(a), std::move(b)};
}

std::pair<MockAlgorithm, MockAlgorithm> mock_pair_dominated() {
  std::vector<MockAlgorithm::Point> pa, pb;
  for (int j = 0; j <= 14; ++j) {
    const double t = std::pow(2.0, j);
    pa.push_back({static_cast<double>(j), t,
                  j == 14 ? 1600.0 : 400.0 + 77.0 * j, 200.0});
    pb.push_back({static_cast<double>(j), t,
                  j == 14 ? 600.0 : 400.0 + 14.0 * j, 200.0});
  }
  return {MockAlgorithm("mock-a", std::move(pa)),
          MockAlgorithm("mock-b", std::move(pb))};
}

}  // namespace imbench
