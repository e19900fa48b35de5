#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nfv/errors.hpp"
#include "nfv/harness.hpp"
#include "nfv/oracle.hpp"
#include "nfv/topologies.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

void ensure_parent(const fs::path& p) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
}

std::ofstream open_out(const fs::path& p) {
  ensure_parent(p);
  std::ofstream out(p);
  if (!out) throw nfv::ConfigError("cannot write " + p.string());
  return out;
}

struct RunArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string algorithm;
  std::string trace;
  std::string result;
};

int cmd_run(const RunArgs& a) {
  nfv::ExperimentConfig c = nfv::load_config(a.config);
  if (!a.algorithm.empty()) c.algorithms = {nfv::algorithm_from_string(a.algorithm)};
  const std::uint64_t seed = a.seed.value_or(c.seeds.front());
  json results = json::array();
  for (nfv::Algorithm alg : c.algorithms) {
    const std::string stem = c.name + "-" + std::string(nfv::to_string(alg)) + "-" + std::to_string(seed);
    fs::path trace_path = a.trace.empty() ? c.output_dir / (stem + ".trace.jsonl") : fs::path(a.trace);
    if (!a.trace.empty() && c.algorithms.size() > 1)
      trace_path = trace_path.parent_path() / (trace_path.stem().string() + "-" +
                                               std::string(nfv::to_string(alg)) + trace_path.extension().string());
    auto trace = open_out(trace_path);
    const nfv::Substrate s = nfv::build_topology(c.topology, seed);
    trace << json{{"type", "header"},
                  {"algorithm", nfv::to_string(alg)},
                  {"seed", seed},
                  {"params", nfv::to_json(nfv::resolve_pricing(c, s, alg))},
                  {"substrate", nfv::to_json(s)}}
                 .dump()
          << '\n';
    const auto sink = [&](const nfv::ServiceRequest& req, const nfv::AdmissionOutcome& out) {
      json line = nfv::to_json(out, req, alg);
      line["request"] = nfv::to_json(req);
      trace << line.dump() << '\n';
    };
    const nfv::TrialResult r = nfv::run_trial(c, alg, seed, sink);
    json rj = nfv::to_json(r);
    rj["trace"] = trace_path.string();
    const fs::path result_path =
        a.result.empty() ? c.output_dir / (stem + ".result.json") : fs::path(a.result);
    open_out(result_path) << rj.dump(2) << '\n';
    results.push_back(rj);
  }
  std::cout << (results.size() == 1 ? results.front() : results).dump(2) << '\n';
  return kOk;
}

struct SweepArgs {
  std::string config;
  std::string axis;
  std::string values;
  std::string out;
  int threads{0};
};

int cmd_sweep(const SweepArgs& a) {
  nfv::ExperimentConfig c = nfv::load_config(a.config);
  const std::string axis = a.axis.empty() ? c.sweep_axis : a.axis;
  const auto values = a.values.empty() ? c.sweep_values : split_list(a.values);
  if (axis.empty() || values.empty()) throw nfv::ConfigError("sweep needs an axis and values");
  if (a.threads > 0) c.threads = a.threads;
  const nfv::SweepTable table = nfv::run_sweep(c, axis, values);
  const fs::path csv = a.out.empty() ? c.output_dir / (c.name + "-" + axis + ".csv") : fs::path(a.out);
  {
    auto out = open_out(csv);
    nfv::write_csv(out, table);
  }
  fs::path meta = csv;
  meta.replace_extension(".meta.json");
  open_out(meta) << nfv::sweep_metadata(c, table).dump(2) << '\n';
  for (const auto& s : nfv::summarize(table))
    std::cout << axis << "=" << s.point << " " << nfv::to_string(s.algorithm)
              << " profit=" << s.mean_profit << " +- " << s.stddev_profit
              << " norm=" << s.mean_norm << '\n';
  std::cout << "wrote " << csv.string() << " and " << meta.string() << '\n';
  return kOk;
}

struct TopologyArgs {
  std::string kind;
  int n{8};
  int m{2};
  std::string path;
  std::uint64_t seed{1};
  int catalog{6};
  std::string out;
};

int cmd_gen_topology(const TopologyArgs& a) {
  nfv::HostingSpec hosting;
  hosting.catalog_size = a.catalog;
  const nfv::CapacitySpec caps;
  nfv::Substrate s;
  if (a.kind == "linear") {
    s = nfv::linear(a.n, caps, hosting, a.seed);
  } else if (a.kind == "ba") {
    s = nfv::barabasi_albert(a.n, a.m, caps, hosting, a.seed);
  } else {
    if (a.path.empty()) throw nfv::ConfigError("--kind graphml needs --path");
    const auto g = nfv::read_graphml(a.path);
    std::cerr << "nodes=" << g.node_count << " undirected_edges=" << g.edges.size() << '\n';
    s = nfv::from_undirected(g.node_count, g.edges, caps, hosting, a.seed);
  }
  std::cerr << "links=" << s.link_count() << " diameter=" << nfv::auto_L(s)
            << (nfv::strongly_connected(s) ? "" : " (not strongly connected)") << '\n';
  const std::string text = nfv::to_json(s).dump(2);
  if (a.out.empty())
    std::cout << text << '\n';
  else
    open_out(a.out) << text << '\n';
  return kOk;
}

struct WorkloadArgs {
  std::string config;
  std::string out;
  std::size_t count{1000};
  std::optional<std::uint64_t> seed;
};

int cmd_gen_workload(const WorkloadArgs& a) {
  const nfv::ExperimentConfig c = nfv::load_config(a.config);
  const std::uint64_t seed = a.seed.value_or(c.seeds.front());
  const nfv::Substrate s = nfv::build_topology(c.topology, seed);
  const auto requests = nfv::generate(nfv::trial_workload(c, s, seed), s, a.count);
  auto out = open_out(a.out);
  nfv::write_jsonl(out, requests);
  std::cerr << "wrote " << requests.size() << " requests to " << a.out << '\n';
  return kOk;
}

int cmd_verify(std::size_t instances, std::uint64_t seed) {
  std::size_t holds = 0;
  std::size_t violations = 0;
  std::size_t duality = 0;
  double deviation = 0.0;
  for (std::size_t i = 0; i < instances; ++i) {
    const auto inst = nfv::make_tiny_instance(nfv::Rng::derive(seed, i));
    const auto check = nfv::check_competitive(inst);
    if (check.bound_holds())
      ++holds;
    else
      std::cout << "instance " << i << ": OPT_int=" << check.optimum << " > " << check.factor
                << " * ALG=" << check.online << '\n';
    violations += check.capacity_violations;
    duality += check.weak_duality ? 0 : 1;
    deviation = std::max(deviation, check.closed_form_deviation);
  }
  std::cout << holds << "/" << instances << " instances satisfy OPT_int ≤ 2ξ·ALG\n";
  std::cout << "capacity violations: " << violations << '\n';
  std::cout << "weak duality failures (informational): " << duality << '\n';
  std::cout << "closed-form max deviation: " << deviation << '\n';
  const bool ok = holds == instances && violations == 0 && deviation <= 1e-9;
  std::cout << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kOk : kVerifyFailed;
}

int cmd_dump_state(const std::string& trace_path, const std::string& out_path) {
  std::ifstream in(trace_path);
  if (!in) throw nfv::ConfigError("cannot open trace " + trace_path);
  std::string line;
  if (!std::getline(in, line)) throw nfv::ParseError("trace is empty");
  json header;
  try {
    header = json::parse(line);
  } catch (const json::exception& e) {
    throw nfv::ParseError(std::string("trace header: ") + e.what());
  }
  if (header.value("type", "") != "header") throw nfv::ParseError("trace: first line is not a header");
  const nfv::Substrate s = nfv::substrate_from_json(header.at("substrate"));
  const nfv::PricingParams params = nfv::pricing_from_json(header.at("params"));
  nfv::CostState costs(s);
  nfv::ResidualLedger ledger(s);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw nfv::ParseError("trace line " + std::to_string(line_no) + ": " + e.what());
    }
    if (j.at("decision") == "rejected") continue;
    const nfv::ServiceRequest req = nfv::request_from_json(j.at("request"));
    nfv::Embedding emb;
    for (const auto& l : j.at("route_links")) emb.links.emplace_back(l.get<int>());
    for (const auto& p : j.at("placements"))
      emb.placements.push_back({p.at("position").get<std::size_t>(), nfv::NodeId(p.at("node").get<int>())});
    nfv::Profit gained;
    gained.transmission = j.at("varrho").get<double>();
    gained.processing = j.at("rho").get<double>();
    gained.total = j.at("profit").get<double>();
    nfv::commit_embedding(ledger, s, emb, req);
    nfv::commit_costs(costs, s, emb, req, gained, params);
  }
  json snap = nfv::snapshot(costs, ledger, s);
  snap["closed_form_deviation"] = nfv::closed_form_deviation(costs, ledger, s, params);
  if (out_path.empty())
    std::cout << snap.dump(2) << '\n';
  else
    open_out(out_path) << snap.dump(2) << '\n';
  return kOk;
}

fs::path find_plotter() {
  if (const char* env = std::getenv("NFV_PLOTTER")) return env;
#ifdef NFV_SOURCE_DIR
  const fs::path bundled = fs::path(NFV_SOURCE_DIR) / "plots" / "plot_sweep.py";
  if (fs::exists(bundled)) return bundled;
#endif
  return {};
}

int cmd_figures(const std::string& results, const std::string& out_dir, const std::string& kind) {
  std::ifstream in(results);
  if (!in) throw nfv::ConfigError("cannot open results " + results);
  std::string header;
  std::getline(in, header);
  const auto present = split_list(header);
  for (const auto& col : nfv::csv_columns())
    if (std::find(present.begin(), present.end(), col) == present.end())
      throw nfv::ParseError("results CSV lacks column '" + col + "'");

  const fs::path plotter = find_plotter();
  if (plotter.empty()) {
    std::cout << "no plotting component found (set NFV_PLOTTER or add plots/plot_sweep.py).\n"
              << "It is expected to read a sweep CSV with columns:\n  ";
    const auto& cols = nfv::csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) std::cout << (i ? "," : "") << cols[i];
    std::cout << "\nplus the run metadata JSON next to it (<csv stem>.meta.json), and write\n"
              << "PNG and SVG figures into " << out_dir << ".\n";
    return kOk;
  }
  fs::create_directories(out_dir);
  std::string cmd = "python3 \"" + plotter.string() + "\" --results \"" + results + "\" --out-dir \"" +
                    out_dir + "\"";
  if (!kind.empty()) cmd += " --kind " + kind;
  const int rc = std::system(cmd.c_str());
  return rc == 0 ? kOk : kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online NFV admission control simulator"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run one trial per configured algorithm");
  run_cmd->add_option("--config", run.config, "Experiment config JSON")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--seed", run.seed, "Trial seed (default: first configured seed)");
  run_cmd->add_option("--algorithm", run.algorithm, "approximation | heuristic | greedy");
  run_cmd->add_option("--trace", run.trace, "Decision trace JSONL path");
  run_cmd->add_option("--result", run.result, "Result JSON path");

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a parameter sweep and write a results CSV");
  sweep_cmd->add_option("--config", sweep.config, "Experiment config JSON")->required()->check(CLI::ExistingFile);
  sweep_cmd->add_option("--axis", sweep.axis, "n, m, D_max, k, L, K, eta_policy, chain_length, topology");
  sweep_cmd->add_option("--values", sweep.values, "Comma-separated axis values");
  sweep_cmd->add_option("--out", sweep.out, "Results CSV path");
  sweep_cmd->add_option("--threads", sweep.threads, "Worker threads");

  TopologyArgs topo;
  auto* topo_cmd = app.add_subcommand("gen-topology", "Write a substrate JSON");
  topo_cmd->add_option("--kind", topo.kind, "linear | ba | graphml")
      ->required()
      ->check(CLI::IsMember({"linear", "ba", "graphml"}));
  topo_cmd->add_option("--n", topo.n, "Node count");
  topo_cmd->add_option("--m", topo.m, "Attachment edges per new node (ba)");
  topo_cmd->add_option("--path", topo.path, "GraphML file");
  topo_cmd->add_option("--seed", topo.seed, "Randomization seed");
  topo_cmd->add_option("--catalog-size", topo.catalog, "Number of NF types");
  topo_cmd->add_option("--out", topo.out, "Output path (default: stdout)");

  WorkloadArgs wl;
  auto* wl_cmd = app.add_subcommand("gen-workload", "Write a request sequence as JSON lines");
  wl_cmd->add_option("--config", wl.config, "Experiment config JSON")->required()->check(CLI::ExistingFile);
  wl_cmd->add_option("--out", wl.out, "Output JSONL path")->required();
  wl_cmd->add_option("--count", wl.count, "Number of requests");
  wl_cmd->add_option("--seed", wl.seed, "Trial seed");

  std::size_t instances = 200;
  std::uint64_t verify_seed = 1;
  auto* verify_cmd = app.add_subcommand("verify", "Oracle competitive-ratio suite and invariant checks");
  verify_cmd->add_option("--instances", instances, "Number of tiny instances");
  verify_cmd->add_option("--seed", verify_seed, "Suite seed");

  std::string trace_path;
  std::string state_out;
  auto* dump_cmd = app.add_subcommand("dump-state", "Replay a trace into a cost-state snapshot");
  dump_cmd->add_option("--trace", trace_path, "Trace JSONL written by run")->required()->check(CLI::ExistingFile);
  dump_cmd->add_option("--out", state_out, "Output path (default: stdout)");

  std::string fig_results;
  std::string fig_out;
  std::string fig_kind;
  auto* fig_cmd = app.add_subcommand("figures", "Render figures from a results CSV");
  fig_cmd->add_option("--results", fig_results, "Sweep CSV")->required()->check(CLI::ExistingFile);
  fig_cmd->add_option("--out-dir", fig_out, "Figure directory")->required();
  fig_cmd->add_option("--kind", fig_kind, "linear | incentive | zoo | multicast");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*run_cmd) return cmd_run(run);
    if (*sweep_cmd) return cmd_sweep(sweep);
    if (*topo_cmd) return cmd_gen_topology(topo);
    if (*wl_cmd) return cmd_gen_workload(wl);
    if (*verify_cmd) return cmd_verify(instances, verify_seed);
    if (*dump_cmd) return cmd_dump_state(trace_path, state_out);
    if (*fig_cmd) return cmd_figures(fig_results, fig_out, fig_kind);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
