// Command-line front end: mixed separators, connectivity pairs, path
// systems, conjecture checks, treewidth, and the PVC reduction.
// Machine-readable JSON goes to stdout, human notes to stderr.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "mixedcut/codec.hpp"
#include "mixedcut/complexity.hpp"
#include "mixedcut/conjecture.hpp"
#include "mixedcut/serialize.hpp"
#include "mixedcut/tw_solver.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kSchema = 1;

using namespace mixedcut;
using nlohmann::json;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  long long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

MultiGraph load_graph(const std::string& path) { return parse_graph(read_file(path)); }

void emit(const std::string& command, const json& input, const json& payload) {
  json report{{"tool", "mixedcut"},
              {"version", kVersion},
              {"schema", kSchema},
              {"command", command},
              {"input", input},
              {"result", payload}};
  std::cout << report.dump(2) << "\n";
}

int require_vertex(const MultiGraph& g, int v, const char* name) {
  if (v < 0 || v >= g.vertex_count())
    throw std::invalid_argument(std::string(name) + " is out of range");
  return v;
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
  if (const char* env = std::getenv("MIXEDCUT_SEED")) return std::strtoull(env, nullptr, 10);
  return fallback;
}

int run(int argc, char** argv) {
  CLI::App app{"mixed-connectivity toolkit"};
  app.require_subcommand(1);

  std::string file;
  int s = 0, t = 1, k = 0, l = 1, kmax = -1;
  std::string method = "auto";

  auto* profile_cmd = app.add_subcommand("profile", "connectivity profile of a terminal pair");
  profile_cmd->add_option("file", file)->required();
  profile_cmd->add_option("--s", s)->required();
  profile_cmd->add_option("--t", t)->required();
  profile_cmd->add_option("--kmax", kmax);

  auto* pairs_cmd = app.add_subcommand("pairs", "list the connectivity pairs");
  pairs_cmd->add_option("file", file)->required();
  pairs_cmd->add_option("--s", s)->required();
  pairs_cmd->add_option("--t", t)->required();

  auto* paths_cmd = app.add_subcommand("paths", "find a path system for (k,l)");
  paths_cmd->add_option("file", file)->required();
  paths_cmd->add_option("--s", s)->required();
  paths_cmd->add_option("--t", t)->required();
  paths_cmd->add_option("--k", k)->required();
  paths_cmd->add_option("--l", l)->required();
  paths_cmd->add_option("--method", method)
      ->check(CLI::IsMember({"auto", "exhaustive", "l2", "tw3"}));

  auto* check_cmd = app.add_subcommand("check", "conjecture check for one terminal pair");
  check_cmd->add_option("file", file)->required();
  check_cmd->add_option("--s", s)->required();
  check_cmd->add_option("--t", t)->required();

  auto* tw_cmd = app.add_subcommand("treewidth", "exact treewidth and a decomposition");
  tw_cmd->add_option("file", file)->required();

  bool use_enum = false, use_random = false, emit_reports = false;
  std::vector<int> corpus_args;
  long count = 100;
  std::uint64_t seed = 1;
  int jobs = 0, sample_count = 0;
  auto* hunt_cmd = app.add_subcommand("hunt", "sweep a corpus for counterexamples");
  auto* enum_opt = hunt_cmd->add_option("--enum", corpus_args, "N M MULT: enumerate all graphs")
                       ->expected(3);
  auto* rand_opt = hunt_cmd->add_option("--random", corpus_args, "N M MULT: random graphs")
                       ->expected(3)
                       ->excludes(enum_opt);
  hunt_cmd->add_option("--count", count, "random graphs to draw");
  hunt_cmd->add_option("--seed", seed);
  hunt_cmd->add_option("--jobs", jobs, "worker threads (default: hardware)");
  hunt_cmd->add_option("--sample-pairs", sample_count,
                       "check this many random terminal pairs per graph instead of all");
  hunt_cmd->add_flag("--emit-reports", emit_reports, "include every per-graph report");

  std::string out_prefix;
  auto* reduce_cmd = app.add_subcommand("reduce", "reduce a PVC instance to a separation query");
  std::string reduce_kind;
  reduce_cmd->add_option("kind", reduce_kind)->check(CLI::IsMember({"pvc"}))->required();
  reduce_cmd->add_option("file", file)->required();
  reduce_cmd->add_option("-o,--output", out_prefix)->required();

  std::string demo_name;
  auto* demo_cmd = app.add_subcommand("demo", "built-in demonstration fixtures");
  demo_cmd->add_option("name", demo_name)->check(CLI::IsMember({"figure1"}))->required();

  CLI11_PARSE(app, argc, argv);
  Timer timer;

  if (profile_cmd->parsed()) {
    auto g = load_graph(file);
    require_vertex(g, s, "--s");
    require_vertex(g, t, "--t");
    auto profile = connectivity_profile(g, s, t, kmax);
    emit("profile", json{{"file", file}, {"digest", graph_digest(g)}}, to_json(profile));
    std::cerr << "profile of (" << s << "," << t << "): kappa_reduced=" << profile.kappa_reduced
              << " pairs=" << profile.pairs.size() << " [" << timer.ms() << " ms]\n";
    return 0;
  }

  if (pairs_cmd->parsed()) {
    auto g = load_graph(file);
    require_vertex(g, s, "--s");
    require_vertex(g, t, "--t");
    auto profile = connectivity_profile(g, s, t);
    json pairs = json::array();
    for (auto [pk, pl] : profile.pairs) pairs.push_back(json::array({pk, pl}));
    emit("pairs", json{{"file", file}, {"digest", graph_digest(g)}}, json{{"pairs", pairs}});
    std::cerr << profile.pairs.size() << " connectivity pairs [" << timer.ms() << " ms]\n";
    return 0;
  }

  if (paths_cmd->parsed()) {
    auto g = load_graph(file);
    require_vertex(g, s, "--s");
    require_vertex(g, t, "--t");
    std::optional<PathSystem> sys;
    std::string used = method;
    int divergences = 0;
    auto run_tw3 = [&]() {
      auto res = bh_tw_solve(g, s, t, k, l, TwOptions{false});
      divergences = res.divergences;
      sys = std::move(res.system);
    };
    if (method == "auto") {
      if (l == 1 && is_connectivity_pair(g, s, t, k, 1)) {
        auto flow = max_internally_disjoint_paths(g, s, t);
        PathSystem fs;
        fs.k = k;
        fs.l = 1;
        flow.resize(k + 1);
        fs.paths = std::move(flow);
        for (int i = 0; i <= k; ++i) fs.designated.push_back(i);
        sys = std::move(fs);
        used = "flow";
      } else if (l == 2 && is_connectivity_pair(g, s, t, k, 2)) {
        sys = bh_l2_solve(g, s, t, k, L2Options{false});
        used = "l2";
      } else if (g.vertex_count() <= 20 && treewidth_exact(g).first <= 3 &&
                 is_connectivity_pair(g, s, t, k, l) && l >= 1) {
        run_tw3();
        used = "tw3";
      } else {
        sys = exhaustive_path_system(g, s, t, k, l);
        used = "exhaustive";
      }
    } else if (method == "exhaustive") {
      sys = exhaustive_path_system(g, s, t, k, l);
    } else if (method == "l2") {
      if (l != 2) throw std::invalid_argument("--method l2 requires --l 2");
      sys = bh_l2_solve(g, s, t, k, L2Options{false});
    } else {
      run_tw3();
    }
    json payload{{"method", used}};
    if (used == "tw3") payload["divergences"] = divergences;
    if (sys) {
      auto check = verify_path_system(g, s, t, *sys);
      if (!check.ok) throw std::logic_error("solver produced an invalid system");
      payload["system"] = to_json(*sys);
      payload["found"] = true;
    } else {
      payload["found"] = false;
    }
    emit("paths", json{{"file", file}, {"digest", graph_digest(g)}}, payload);
    std::cerr << (sys ? "system found" : "absent") << " via " << used << " [" << timer.ms()
              << " ms]\n";
    return sys ? 0 : 1;
  }

  if (check_cmd->parsed()) {
    auto g = load_graph(file);
    require_vertex(g, s, "--s");
    require_vertex(g, t, "--t");
    auto rec = conjecture_check(g, s, t);
    emit("check", json{{"file", file}, {"digest", graph_digest(g)}}, to_json(rec));
    std::cerr << (rec.counterexample ? "counterexample flagged" : "all pairs witnessed") << " ["
              << timer.ms() << " ms]\n";
    return rec.counterexample ? 1 : 0;
  }

  if (tw_cmd->parsed()) {
    auto g = load_graph(file);
    auto [width, d] = treewidth_exact(g);
    emit("treewidth", json{{"file", file}, {"digest", graph_digest(g)}},
         json{{"width", width}, {"decomposition", to_json(d)}});
    std::cerr << "treewidth " << width << " [" << timer.ms() << " ms]\n";
    return 0;
  }

  if (hunt_cmd->parsed()) {
    use_enum = enum_opt->count() > 0;
    use_random = rand_opt->count() > 0;
    if (!use_enum && !use_random)
      throw std::invalid_argument("hunt needs --enum or --random");
    CorpusSpec corpus;
    corpus.kind = use_enum ? CorpusSpec::Kind::Enumerate : CorpusSpec::Kind::Random;
    corpus.n = corpus_args[0];
    corpus.m = corpus_args[1];
    corpus.max_mult = corpus_args[2];
    corpus.count = count;
    corpus.seed = seed_from_env(seed);
    TerminalPolicy policy;
    if (sample_count > 0) {
      policy.kind = TerminalPolicy::Kind::Sample;
      policy.sample_count = sample_count;
      policy.seed = corpus.seed;
    }
    json reports = json::array();
    auto sink = [&](const ConjectureReport& r) { reports.push_back(to_json(r)); };
    auto result = hunt(corpus, policy, jobs, CheckOptions{},
                       emit_reports ? std::function<void(const ConjectureReport&)>(sink)
                                    : nullptr);
    json payload{{"summary", to_json(result.summary)}};
    json cx = json::array();
    for (const auto& r : result.counterexamples) cx.push_back(to_json(r));
    payload["counterexamples"] = cx;
    if (emit_reports) payload["reports"] = reports;
    json input{{"mode", use_enum ? "enum" : "random"},
               {"n", corpus.n},
               {"m", corpus.m},
               {"max_mult", corpus.max_mult}};
    if (use_random) {
      input["count"] = corpus.count;
      input["seed"] = corpus.seed;
    }
    emit("hunt", input, payload);
    std::cerr << "checked " << result.summary.pairs_checked << " pairs over "
              << result.summary.graphs << " graphs, " << result.summary.counterexamples
              << " counterexamples [" << timer.ms() << " ms]\n";
    return result.summary.counterexamples > 0 ? 1 : 0;
  }

  if (reduce_cmd->parsed()) {
    auto inst = parse_pvc(read_file(file));
    auto out = reduce_pvc_to_scp(inst);
    json payload;
    if (std::holds_alternative<TriviallyYes>(out)) {
      payload["trivially_yes"] = true;
      payload["cover"] = std::get<TriviallyYes>(out).cover;
      std::cerr << "trivially yes: a full cover fits the budget [" << timer.ms() << " ms]\n";
    } else {
      const auto& scp = std::get<ScpInstance>(out);
      std::ofstream graph_out(out_prefix + ".mg");
      graph_out << serialize_graph(scp.graph);
      json side{{"s", scp.s}, {"t", scp.t}, {"k", scp.k}, {"bound", scp.bound}};
      std::ofstream side_out(out_prefix + ".json");
      side_out << side.dump(2) << "\n";
      payload["trivially_yes"] = false;
      payload["instance"] = side;
      payload["graph_file"] = out_prefix + ".mg";
      payload["sidecar_file"] = out_prefix + ".json";
      std::cerr << "wrote " << out_prefix << ".mg and " << out_prefix << ".json ["
                << timer.ms() << " ms]\n";
    }
    emit("reduce", json{{"file", file}}, payload);
    return 0;
  }

  if (demo_cmd->parsed()) {
    auto g = figure1_graph();
    VertexId x1 = 0, x2 = 1, x5 = 4, x6 = 5;
    json payload;
    payload["n"] = g.vertex_count();
    payload["edges"] = g.edge_count();
    auto profile = connectivity_profile(g, x2, x6, 2);
    payload["profile_x2_x6"] = to_json(profile);
    EdgeId bridge = g.edges_between(x2, x5).at(0);
    bool splits_every_cross_pair = true;
    for (VertexId u : {1, 2, 3})
      for (VertexId v : {4, 5, 6})
        if (!is_disconnecting(g, {u}, {v}, {x1}, {bridge})) splits_every_cross_pair = false;
    payload["hub_plus_bridge_disconnects"] =
        is_disconnecting(g, {x2}, {x6}, {x1}, {bridge}) && splits_every_cross_pair;
    payload["pair_1_1"] = is_connectivity_pair(g, x2, x6, 1, 1);
    payload["pair_1_2"] = is_connectivity_pair(g, x2, x6, 1, 2);
    json pairs = json::array();
    bool all_found = true;
    for (VertexId a = 0; a < g.vertex_count(); ++a)
      for (VertexId b = a + 1; b < g.vertex_count(); ++b) {
        auto sys = exhaustive_path_system(g, a, b, 1, 2);
        bool ok = sys && verify_path_system(g, a, b, *sys).ok;
        all_found = all_found && ok;
        pairs.push_back(json{{"s", a}, {"t", b}, {"found", ok}});
      }
    payload["three_paths_two_disjoint_everywhere"] = all_found;
    payload["pair_systems"] = pairs;
    emit("demo", json{{"name", demo_name}, {"digest", graph_digest(g)}}, payload);
    std::cerr << "demo figure1: " << g.edge_count() << " edges, all pairs "
              << (all_found ? "witnessed" : "FAILED") << " [" << timer.ms() << " ms]\n";
    return all_found ? 0 : 1;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const mixedcut::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
