// imbench: seed-selection algorithms and a benchmarking harness for
// influence maximization, with the methodology checks runnable from the
// command line.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "imbench/algorithms.hpp"
#include "imbench/bench.hpp"
#include "imbench/concentration.hpp"
#include "imbench/diffusion.hpp"
#include "imbench/errors.hpp"
#include "imbench/graph.hpp"
#include "imbench/rng.hpp"
#include "imbench/stats.hpp"

using nlohmann::json;
using namespace imbench;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitCap = 3;
constexpr int kExitAlgorithm = 4;

uint64_t resolve_seed(std::optional<uint64_t> seed) {
  if (seed) return *seed;
  std::random_device rd;
  const uint64_t s = (uint64_t(rd()) << 32) ^ rd();
  std::cout << "master seed (generated): " << s << "\n";
  return s;
}

WeightScheme scheme_from_string(const std::string& name, double p) {
  if (name == "ic-uniform") return WeightScheme::uniform_ic(p);
  if (name == "wc") return WeightScheme::weighted_cascade();
  if (name == "lt-uniform") return WeightScheme::lt_uniform();
  if (name == "lt-parallel") return WeightScheme::lt_parallel();
  throw std::invalid_argument("unknown weight scheme: " + name);
}

// Canonical dumps start with a "src,dst,p" header (comments aside); raw
// edge lists need a weight scheme.
bool looks_like_canonical_csv(const std::string& path) {
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    const size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return line.rfind("src,dst,p", first) == first;
  }
  return false;
}

WeightedGraph load_graph(const std::string& path,
                         const std::optional<std::string>& scheme, double p,
                         bool directed) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open graph file: " + path);
  if (looks_like_canonical_csv(path)) {
    return parse_weighted_csv(in).first;
  }
  if (!scheme) {
    throw std::invalid_argument(
        "raw edge list needs --scheme (or pass a canonical src,dst,p dump)");
  }
  auto [g, report] = parse_edge_list(in, directed);
  return assign_weights(g, scheme_from_string(*scheme, p));
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stod(tok));
  }
  return out;
}

std::vector<Label> parse_labels(const std::string& text) {
  std::vector<Label> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stoll(tok));
  }
  return out;
}

std::vector<NodeId> labels_to_ids(const WeightedGraph& g,
                                  const std::vector<Label>& labels) {
  std::vector<NodeId> ids;
  for (Label lab : labels) {
    auto id = g.id_of(lab);
    if (!id) {
      throw std::invalid_argument("seed label " + std::to_string(lab) +
                                  " not in graph");
    }
    ids.push_back(*id);
  }
  return ids;
}

void write_seed_csv(std::ostream& out, const WeightedGraph& g,
                    const SeedSet& seeds, const json& config) {
  out << "# config: " << config.dump() << "\n";
  out << "rank,node_label,marginal_gain_estimate\n";
  for (size_t i = 0; i < seeds.nodes.size(); ++i) {
    out << (i + 1) << ',' << g.label_of(seeds.nodes[i]) << ','
        << (i < seeds.gains.size() ? seeds.gains[i] : 0.0) << '\n';
  }
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  return out;
}

// ---- ingest ---------------------------------------------------------

int cmd_ingest(const std::string& input, bool directed,
               const std::optional<std::string>& scheme, double p,
               const std::optional<std::string>& output,
               const std::optional<std::string>& report_path) {
  std::ifstream in(input);
  if (!in) throw std::invalid_argument("cannot open input file: " + input);
  auto [raw, report] = parse_edge_list(in, directed);
  WeightedGraph g =
      scheme ? assign_weights(raw, scheme_from_string(*scheme, p))
             : std::move(raw);

  json config{{"command", "ingest"},       {"input", input},
              {"directed", directed},      {"scheme", scheme ? *scheme : "none"},
              {"p", p}};
  json rep{{"config", config},
           {"labels", report.label_count},
           {"nodes", report.remapped},
           {"arcs", g.arc_count()},
           {"edges_read", report.edges_read},
           {"self_loops_dropped", report.self_loops_dropped},
           {"contained_zero", report.contained_zero}};
  if (report.contained_zero) {
    std::cout << "warning: input used node label 0; ids were renumbered "
                 "from 0 so no label is structurally special\n";
  }
  if (output) {
    auto out = open_out(*output);
    out << "# config: " << config.dump() << "\n";
    g.dump_csv(out);
  } else {
    g.dump_csv(std::cout);
  }
  if (report_path) {
    open_out(*report_path) << rep.dump(2) << "\n";
  }
  std::cout << rep.dump(2) << "\n";
  return kExitOk;
}

// ---- generate -------------------------------------------------------

int cmd_generate(const std::string& kind, uint32_t n, uint32_t nodes,
                 uint64_t arcs, std::optional<uint64_t> seed,
                 const std::optional<std::string>& scheme, double p,
                 const std::optional<std::string>& output) {
  WeightedGraph g = [&] {
    if (kind == "counterexample") return counterexample_graph(n);
    if (kind == "counterexample-core") return counterexample_core(n);
    if (kind == "synthetic") {
      const uint64_t s = resolve_seed(seed);
      auto raw = random_graph(nodes, arcs, RngStream(s));
      return scheme ? assign_weights(raw, scheme_from_string(*scheme, p))
                    : std::move(raw);
    }
    throw std::invalid_argument("unknown generator kind: " + kind);
  }();
  json config{{"command", "generate"}, {"kind", kind}};
  if (kind == "synthetic") {
    config["nodes"] = nodes;
    config["arcs"] = arcs;
    if (scheme) config["scheme"] = *scheme;
  } else {
    config["n"] = n;
  }
  if (output) {
    auto out = open_out(*output);
    out << "# config: " << config.dump() << "\n";
    g.dump_csv(out);
    std::cout << "wrote " << g.node_count() << " nodes, " << g.arc_count()
              << " arcs to " << *output << "\n";
  } else {
    g.dump_csv(std::cout);
  }
  return kExitOk;
}

// ---- simulate -------------------------------------------------------

int cmd_simulate(const std::string& graph_path,
                 const std::optional<std::string>& scheme, double p,
                 bool directed, const std::string& model_name,
                 const std::string& seeds_text, uint32_t rounds,
                 std::optional<uint64_t> seed) {
  auto g = load_graph(graph_path, scheme, p, directed);
  const auto model = model_from_string(model_name);
  const auto seeds = labels_to_ids(g, parse_labels(seeds_text));
  const uint64_t master = resolve_seed(seed);
  const SpreadEstimate est =
      estimate_spread(g, model, seeds, rounds, RngStream(master));
  json out{{"config",
            {{"command", "simulate"},
             {"graph", graph_path},
             {"model", model_name},
             {"seeds", seeds_text},
             {"rounds", rounds},
             {"seed", master}}},
           {"mean", est.mean},
           {"sample_sd", est.sample_sd},
           {"std_error", est.std_error},
           {"rounds", est.rounds}};
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

// ---- select ---------------------------------------------------------

int cmd_select(const std::string& graph_path,
               const std::optional<std::string>& scheme, double p,
               bool directed, const std::string& model_name,
               const std::string& algo_name, uint32_t k, uint32_t rounds,
               double epsilon, double ell, uint64_t theta,
               std::optional<uint64_t> seed,
               const std::optional<std::string>& output) {
  auto g = load_graph(graph_path, scheme, p, directed);
  const auto model = model_from_string(model_name);
  const auto kind = seed_algo_from_string(algo_name);
  const uint64_t master = resolve_seed(seed);

  GraphAlgorithm algo(g, model, kind, k, graph_path, ell);
  double param = 0.0;
  switch (kind) {
    case SeedAlgoKind::Greedy:
    case SeedAlgoKind::Celf:
    case SeedAlgoKind::CelfPp:
      param = rounds;
      break;
    case SeedAlgoKind::RisFixed:
      param = static_cast<double>(theta);
      break;
    case SeedAlgoKind::RisTim:
    case SeedAlgoKind::RisImm:
      if (!(epsilon > 0.0)) {
        throw std::invalid_argument(
            "RIS policies need an explicit --epsilon > 0");
      }
      param = epsilon;
      break;
    default:
      break;
  }
  const AlgoRunResult run = algo.run(param, master);

  json config{{"command", "select"}, {"graph", graph_path},
              {"model", model_name}, {"algo", algo_name},
              {"k", k},              {"param", param},
              {"seed", master}};
  if (output) {
    auto out = open_out(*output);
    write_seed_csv(out, g, run.seeds, config);
  } else {
    write_seed_csv(std::cout, g, run.seeds, config);
  }
  std::cout << "selection seconds: " << run.seconds
            << "  evaluations: " << run.evaluations
            << "  rr_slots: " << run.storage_slots << "\n";
  return kExitOk;
}

// ---- sweep ----------------------------------------------------------

int cmd_sweep(const std::string& graph_path,
              const std::optional<std::string>& scheme, double p, bool directed,
              const std::string& model_name, const std::string& algo_name,
              uint32_t k, const std::string& grid_text, double budget,
              uint32_t eval_rounds, double ell, std::optional<uint64_t> seed,
              const std::string& out_prefix) {
  auto g = load_graph(graph_path, scheme, p, directed);
  const auto model = model_from_string(model_name);
  const uint64_t master = resolve_seed(seed);
  const auto grid = parse_grid(grid_text);

  GraphAlgorithm algo(g, model, seed_algo_from_string(algo_name), k,
                      graph_path, ell);
  TradeoffCurve curve = sweep(algo, grid, budget, eval_rounds, RngStream(master));

  json config{{"command", "sweep"},   {"graph", graph_path},
              {"model", model_name},  {"algo", algo_name},
              {"k", k},               {"grid", grid},
              {"budget_seconds", budget}, {"evaluation_rounds", eval_rounds},
              {"seed", master}};
  auto csv = open_out(out_prefix + ".curve.csv");
  csv << "# config: " << config.dump() << "\n";
  std::vector<TradeoffCurve> curves{curve};
  write_curves_csv(csv, curves);
  std::cout << "curve with " << curve.points.size() << " points -> "
            << out_prefix << ".curve.csv\n";
  if (curve.all_truncated) {
    std::cout << "note: " << curve.empty_reason << "\n";
  }
  return kExitOk;
}

// ---- table1 ---------------------------------------------------------

int cmd_table1(const std::optional<std::string>& epsilons_text, double mu,
               double sigma, double delta,
               const std::optional<std::string>& output) {
  std::vector<double> grid{0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4};
  if (epsilons_text) grid = parse_grid(*epsilons_text);
  const auto rows = sample_size_table(mu, sigma, delta, grid);
  json config{{"command", "table1"}, {"mu", mu},      {"sigma", sigma},
              {"delta", delta},      {"epsilons", grid}};
  if (output) {
    auto out = open_out(*output);
    out << "# config: " << config.dump() << "\n";
    write_sample_size_csv(out, rows);
  }
  write_sample_size_csv(std::cout, rows);
  return kExitOk;
}

// ---- counterexample -------------------------------------------------

int cmd_counterexample(uint32_t n, uint32_t rounds, std::optional<uint64_t> seed,
                       bool exact_core) {
  if (n < 2) throw std::invalid_argument("counterexample needs n >= 2");
  if (rounds < 1000) {
    throw std::invalid_argument("counterexample needs rounds >= 1000");
  }
  const uint64_t master = resolve_seed(seed);
  auto g = counterexample_graph(n);
  const std::vector<NodeId> v0{counterexample_v0()};

  const SpreadEstimate est =
      estimate_spread(g, DiffusionModel::IC, v0, rounds, RngStream(master));
  const double mu_closed = 1.0 + n;
  const double sd_closed = n * std::sqrt(1.0 - 1.0 / (2.0 * n));
  const double bar = est.mean - est.sample_sd;
  const double bar_closed = mu_closed - sd_closed;

  auto [clique_first, clique_last] = counterexample_clique_range(n);
  (void)clique_last;
  const std::vector<NodeId> clique{clique_first};
  const double clique_spread = exact_spread(g, DiffusionModel::IC, clique);

  std::cout << "counterexample n=" << n << " (" << g.node_count() << " nodes, "
            << g.arc_count() << " arcs), r=" << rounds << ", seed=" << master
            << "\n";
  std::cout << "  sigma({v0}) estimate: " << est.mean << "  closed form: "
            << mu_closed << "  (std error " << est.std_error << ")\n";
  std::cout << "  sd estimate:          " << est.sample_sd
            << "  closed form: " << sd_closed << "\n";
  std::cout << "  mu* - sd* bar:        " << bar
            << "  closed form: " << bar_closed << "  (<= 1.5)\n";
  std::cout << "  2-clique spread:      " << clique_spread << " (exact)\n";
  if (exact_core) {
    try {
      const double mu_exact =
          exact_spread(counterexample_core(n), DiffusionModel::IC, v0);
      std::cout << "  sigma({v0}) exact (core gadget): " << mu_exact << "\n";
    } catch (const CapExceeded& e) {
      std::cout << "  exact core gadget skipped: " << e.what() << "\n";
    }
  }
  const bool pass = clique_spread > bar;
  std::cout << (pass ? "PASS" : "FAIL")
            << ": every 2-clique beats the mu*-sd* bar (2 > " << bar << ")\n";
  return pass ? kExitOk : kExitAlgorithm;
}

// ---- bench ----------------------------------------------------------

WeightedGraph instance_from_config(const json& cfg, std::string& name) {
  if (cfg.contains("path")) {
    name = cfg["path"].get<std::string>();
    const auto scheme = cfg.contains("scheme")
                            ? std::optional<std::string>(cfg["scheme"])
                            : std::nullopt;
    return load_graph(name, scheme, cfg.value("p", 0.1),
                      cfg.value("directed", true));
  }
  const std::string kind = cfg.value("generator", "");
  if (kind == "counterexample") {
    const uint32_t n = cfg.at("n").get<uint32_t>();
    name = "counterexample(" + std::to_string(n) + ")";
    return counterexample_graph(n);
  }
  if (kind == "synthetic") {
    const uint32_t nodes = cfg.at("nodes").get<uint32_t>();
    const uint64_t arcs = cfg.at("arcs").get<uint64_t>();
    const uint64_t gseed = cfg.value("gen_seed", 1u);
    name = "synthetic(" + std::to_string(nodes) + "," + std::to_string(arcs) +
           ")";
    auto raw = random_graph(nodes, arcs, RngStream(gseed));
    if (cfg.contains("scheme")) {
      return assign_weights(
          raw, scheme_from_string(cfg["scheme"], cfg.value("p", 0.1)));
    }
    return raw;
  }
  throw std::invalid_argument("instance needs a path or a generator");
}

int cmd_bench(const std::string& config_path) {
  std::ifstream in(config_path);
  if (!in) throw std::invalid_argument("cannot open config: " + config_path);
  json cfg = json::parse(in);

  const std::string mode = cfg.value("mode", "sweep-compare");
  const uint64_t master = cfg.contains("seed")
                              ? cfg["seed"].get<uint64_t>()
                              : resolve_seed(std::nullopt);
  cfg["seed"] = master;
  const std::string prefix = cfg.value("output_prefix", "imbench-out");
  const uint32_t eval_rounds = cfg.value("evaluation_rounds", 10000u);
  const RngStream rng(master);

  if (mode == "mock-demo") {
    // The two-mock regression: sound and flawed pipelines disagree.
    auto [a, b] = mock_pair_dominated();
    std::vector<double> grid;
    for (int j = 0; j <= 14; ++j) grid.push_back(j);
    std::vector<TradeoffCurve> curves;
    curves.push_back(sweep(a, grid, 1e12, eval_rounds, rng.substream(1)));
    curves.push_back(sweep(b, grid, 1e12, eval_rounds, rng.substream(2)));
    auto sound = sound_compare(curves, cfg.value("target_spread", 600.0));
    std::vector<BenchAlgorithm*> algos{&a, &b};
    auto flawed = flawed_compare(curves, algos, eval_rounds, rng.substream(3));
    sound.config["master_seed"] = master;
    flawed.config["master_seed"] = master;

    json out{{"schema", "imbench-report/1"},
             {"config", cfg},
             {"sound", sound.to_json()},
             {"flawed", flawed.to_json()}};
    open_out(prefix + ".report.json") << out.dump(2) << "\n";
    auto curves_csv = open_out(prefix + ".curves.csv");
    write_curves_csv(curves_csv, curves);

    const std::string sound_first = sound.times[0].algorithm;
    const std::string flawed_first = flawed.times[0].algorithm;
    std::cout << "sound bar winner:  " << sound_first << "\n";
    std::cout << "flawed bar winner: " << flawed_first << "\n";
    std::cout << (sound_first != flawed_first
                      ? "verdict flip reproduced: per-algorithm mu*-sd* bars "
                        "invert the ranking\n"
                      : "no verdict flip\n");
    return kExitOk;
  }

  std::string instance_name;
  WeightedGraph g = instance_from_config(cfg.at("instance"), instance_name);
  const auto model = model_from_string(cfg.value("model", "ic"));
  const uint32_t k = cfg.at("k").get<uint32_t>();

  if (mode == "shared-seed") {
    const auto& a_cfg = cfg.at("algorithms").at(0);
    const auto& b_cfg = cfg.at("algorithms").at(1);
    GraphAlgorithm a(g, model, seed_algo_from_string(a_cfg.at("algo")), k,
                     instance_name, a_cfg.value("ell", 1.0));
    GraphAlgorithm b(g, model, seed_algo_from_string(b_cfg.at("algo")), k,
                     instance_name, b_cfg.value("ell", 1.0));
    auto report = shared_seed_experiment(a, a_cfg.value("param", 0.0), b,
                                         b_cfg.value("param", 0.0),
                                         cfg.value("run_count", 10u), rng);
    report.config["master_seed"] = master;
    report.config["instance"] = instance_name;
    open_out(prefix + ".report.json") << report.to_json().dump(2) << "\n";
    auto ttest_csv = open_out(prefix + ".ttest.csv");
    write_ttest_csv(ttest_csv, report, a.name(), b.name());
    std::cout << a.name() << " vs " << b.name() << ": p = " << report.ttest->p
              << (report.ttest->p <= 0.05 ? " (significant at 0.05)"
                                          : " (not significant at 0.05)")
              << ", mean diff = " << report.ttest->mean_diff << " s\n";
    return kExitOk;
  }

  if (mode != "sweep-compare") {
    throw std::invalid_argument("unknown bench mode: " + mode);
  }
  const double budget = cfg.value("budget_seconds", 1e9);
  std::vector<TradeoffCurve> curves;
  std::vector<std::unique_ptr<GraphAlgorithm>> algos;
  size_t idx = 0;
  for (const auto& acfg : cfg.at("algorithms")) {
    algos.push_back(std::make_unique<GraphAlgorithm>(
        g, model, seed_algo_from_string(acfg.at("algo")), k, instance_name,
        acfg.value("ell", 1.0)));
    std::vector<double> grid;
    for (const auto& v : acfg.at("grid")) grid.push_back(v.get<double>());
    curves.push_back(
        sweep(*algos.back(), grid, budget, eval_rounds, rng.substream(idx++)));
  }

  json out{{"schema", "imbench-report/1"}, {"config", cfg}};
  if (cfg.contains("target_spread")) {
    auto sound = sound_compare(curves, cfg["target_spread"].get<double>());
    sound.config["master_seed"] = master;
    out["sound"] = sound.to_json();
    auto times_csv = open_out(prefix + ".times.csv");
    write_times_csv(times_csv, sound);
    std::cout << "sound bar " << cfg["target_spread"] << ": ";
    for (const auto& t : sound.times) {
      std::cout << t.algorithm << "="
                << (t.seconds ? std::to_string(*t.seconds) : "unreachable")
                << "s ";
    }
    std::cout << "\n";
  }
  {
    std::vector<BenchAlgorithm*> raw;
    for (auto& a : algos) raw.push_back(a.get());
    auto flawed = flawed_compare(curves, raw, eval_rounds, rng.substream(999));
    flawed.config["master_seed"] = master;
    out["flawed"] = flawed.to_json();
  }
  open_out(prefix + ".report.json") << out.dump(2) << "\n";
  auto curves_csv = open_out(prefix + ".curves.csv");
  curves_csv << "# config: " << cfg.dump() << "\n";
  write_curves_csv(curves_csv, curves);
  std::cout << "report -> " << prefix << ".report.json\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"influence maximization algorithms and benchmarking lab"};
  app.require_subcommand(1);

  // ingest
  std::string in_path, in_scheme_str;
  bool in_directed = false;
  double in_p = 0.1;
  std::optional<std::string> in_scheme, in_out, in_report;
  auto* ingest = app.add_subcommand("ingest", "normalize an edge list");
  ingest->add_option("--input", in_path, "edge list file")->required();
  ingest->add_flag("--directed", in_directed, "treat edges as directed");
  ingest->add_option("--scheme", in_scheme_str,
                     "ic-uniform | wc | lt-uniform | lt-parallel");
  ingest->add_option("--p", in_p, "probability for ic-uniform");
  std::string in_out_str, in_report_str;
  ingest->add_option("--output", in_out_str, "canonical csv path");
  ingest->add_option("--report", in_report_str, "normalization report path");

  // generate
  std::string gen_kind = "counterexample";
  uint32_t gen_n = 2, gen_nodes = 100;
  uint64_t gen_arcs = 400;
  std::optional<uint64_t> gen_seed;
  std::string gen_scheme_str, gen_out_str;
  double gen_p = 0.1;
  auto* gen = app.add_subcommand("generate", "emit a generated instance");
  gen->add_option("--kind", gen_kind,
                  "counterexample | counterexample-core | synthetic");
  gen->add_option("--n", gen_n, "counterexample size parameter");
  gen->add_option("--nodes", gen_nodes, "synthetic node count");
  gen->add_option("--arcs", gen_arcs, "synthetic arc count");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--scheme", gen_scheme_str, "weight scheme for synthetic");
  gen->add_option("--p", gen_p, "probability for ic-uniform");
  gen->add_option("--output", gen_out_str, "output path (default stdout)");

  // simulate
  std::string sim_graph, sim_model = "ic", sim_seeds, sim_scheme_str;
  uint32_t sim_rounds = 10000;
  bool sim_directed = false;
  double sim_p = 0.1;
  std::optional<uint64_t> sim_seed;
  auto* sim = app.add_subcommand("simulate", "monte-carlo spread estimate");
  sim->add_option("--graph", sim_graph, "graph file")->required();
  sim->add_option("--model", sim_model, "ic | lt");
  sim->add_option("--seeds", sim_seeds, "comma-separated seed labels")
      ->required();
  sim->add_option("--rounds", sim_rounds, "simulation rounds (>= 2)");
  sim->add_option("--seed", sim_seed, "master rng seed");
  sim->add_option("--scheme", sim_scheme_str, "scheme when input is raw");
  sim->add_flag("--directed", sim_directed, "raw edge list is directed");
  sim->add_option("--p", sim_p, "probability for ic-uniform");

  // select
  std::string sel_graph, sel_model = "ic", sel_algo = "greedy",
              sel_scheme_str, sel_out_str;
  uint32_t sel_k = 10, sel_rounds = 1000;
  double sel_eps = 0.0, sel_ell = 1.0, sel_p = 0.1;
  uint64_t sel_theta = 10000;
  bool sel_directed = false;
  std::optional<uint64_t> sel_seed;
  auto* sel = app.add_subcommand("select", "run one seed-selection algorithm");
  sel->add_option("--graph", sel_graph, "graph file")->required();
  sel->add_option("--model", sel_model, "ic | lt");
  sel->add_option("--algo", sel_algo,
                  "random|degree|greedy|celf|celfpp|ris-fixed|ris-tim|ris-imm");
  sel->add_option("--k", sel_k, "seed set size");
  sel->add_option("--rounds", sel_rounds, "MC rounds for the greedy family");
  sel->add_option("--epsilon", sel_eps, "accuracy parameter for RIS policies");
  sel->add_option("--ell", sel_ell, "confidence exponent (default 1)");
  sel->add_option("--theta", sel_theta, "RR sets for ris-fixed");
  sel->add_option("--seed", sel_seed, "master rng seed");
  sel->add_option("--output", sel_out_str, "seed csv path (default stdout)");
  sel->add_option("--scheme", sel_scheme_str, "scheme when input is raw");
  sel->add_flag("--directed", sel_directed, "raw edge list is directed");
  sel->add_option("--p", sel_p, "probability for ic-uniform");

  // sweep
  std::string sw_graph, sw_model = "ic", sw_algo = "ris-imm", sw_grid,
              sw_prefix = "sweep-out", sw_scheme_str;
  uint32_t sw_k = 50, sw_eval_rounds = 10000;
  double sw_budget = 1e9, sw_ell = 1.0, sw_p = 0.1;
  bool sw_directed = false;
  std::optional<uint64_t> sw_seed;
  auto* sw = app.add_subcommand("sweep", "tradeoff curve over a parameter grid");
  sw->add_option("--graph", sw_graph, "graph file")->required();
  sw->add_option("--model", sw_model, "ic | lt");
  sw->add_option("--algo", sw_algo, "algorithm under sweep");
  sw->add_option("--k", sw_k, "seed set size");
  sw->add_option("--grid", sw_grid, "comma-separated parameter grid")
      ->required();
  sw->add_option("--budget", sw_budget, "shared per-point budget, seconds");
  sw->add_option("--eval-rounds", sw_eval_rounds, "evaluation rounds");
  sw->add_option("--ell", sw_ell, "confidence exponent");
  sw->add_option("--seed", sw_seed, "master rng seed");
  sw->add_option("--out-prefix", sw_prefix, "output prefix");
  sw->add_option("--scheme", sw_scheme_str, "scheme when input is raw");
  sw->add_flag("--directed", sw_directed, "raw edge list is directed");
  sw->add_option("--p", sw_p, "probability for ic-uniform");

  // table1
  std::string t1_eps, t1_out_str;
  double t1_mu = 0.5, t1_sigma = 0.5, t1_delta = 1e-3;
  auto* t1 = app.add_subcommand(
      "table1", "chebyshev vs chernoff sample sizes over an epsilon grid");
  t1->add_option("--epsilons", t1_eps, "comma-separated epsilon grid");
  t1->add_option("--mu", t1_mu, "mean");
  t1->add_option("--sigma", t1_sigma, "standard deviation");
  t1->add_option("--delta", t1_delta, "failure probability");
  t1->add_option("--output", t1_out_str, "also write csv here");

  // counterexample
  uint32_t ce_n = 10;
  uint32_t ce_rounds = 10000;
  std::optional<uint64_t> ce_seed;
  bool ce_exact = false;
  auto* ce = app.add_subcommand(
      "counterexample", "verify the mu*-sd* bar gap on the adversarial graph");
  ce->add_option("--n", ce_n, "gadget size (>= 2)");
  ce->add_option("--rounds", ce_rounds, "MC rounds (>= 1000)");
  ce->add_option("--seed", ce_seed, "master rng seed");
  ce->add_flag("--exact", ce_exact, "also run the exact oracle on the core");

  // bench
  std::string bench_config;
  auto* bench = app.add_subcommand("bench", "run a benchmark config");
  bench->add_option("--config", bench_config, "json config path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitInput;
  }

  auto opt_str = [](const std::string& s) {
    return s.empty() ? std::optional<std::string>() : std::optional(s);
  };

  try {
    if (*ingest) {
      return cmd_ingest(in_path, in_directed, opt_str(in_scheme_str), in_p,
                        opt_str(in_out_str), opt_str(in_report_str));
    }
    if (*gen) {
      return cmd_generate(gen_kind, gen_n, gen_nodes, gen_arcs, gen_seed,
                          opt_str(gen_scheme_str), gen_p, opt_str(gen_out_str));
    }
    if (*sim) {
      return cmd_simulate(sim_graph, opt_str(sim_scheme_str), sim_p,
                          sim_directed, sim_model, sim_seeds, sim_rounds,
                          sim_seed);
    }
    if (*sel) {
      return cmd_select(sel_graph, opt_str(sel_scheme_str), sel_p, sel_directed,
                        sel_model, sel_algo, sel_k, sel_rounds, sel_eps,
                        sel_ell, sel_theta, sel_seed, opt_str(sel_out_str));
    }
    if (*sw) {
      return cmd_sweep(sw_graph, opt_str(sw_scheme_str), sw_p, sw_directed,
                       sw_model, sw_algo, sw_k, sw_grid, sw_budget,
                       sw_eval_rounds, sw_ell, sw_seed, sw_prefix);
    }
    if (*t1) {
      return cmd_table1(opt_str(t1_eps), t1_mu, t1_sigma, t1_delta,
                        opt_str(t1_out_str));
    }
    if (*ce) {
      return cmd_counterexample(ce_n, ce_rounds, ce_seed, ce_exact);
    }
    if (*bench) {
      return cmd_bench(bench_config);
    }
  } catch (const CapExceeded& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kExitCap;
  } catch (const AlgorithmError& e) {
    std::cerr << "algorithm failure: " << e.what() << "\n";
    return kExitAlgorithm;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "algorithm failure: " << e.what() << "\n";
    return kExitAlgorithm;
  }
  return kExitOk;
}
