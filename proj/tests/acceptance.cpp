// Acceptance gate: runs every shipping criterion at its stated tolerance
// and prints one PASS/FAIL line each. Exits nonzero if any fail.
//
// Usage: acceptance_gate <path-to-cli> [--only N]

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mixedcut/complexity.hpp"
#include "mixedcut/conjecture.hpp"
#include "mixedcut/generate.hpp"
#include "mixedcut/mixed_connectivity.hpp"
#include "mixedcut/path_system.hpp"
#include "mixedcut/treewidth.hpp"
#include "mixedcut/tw_solver.hpp"
#include "oracles.hpp"

using namespace mixedcut;
using nlohmann::json;

namespace {

std::string cli_path;

// n <= 5 labeled multigraph corpus: m <= 8, multiplicity <= 2
void for_each_corpus_graph(const std::function<void(const MultiGraph&)>& fn) {
  for (int n = 1; n <= 5; ++n)
    enumerate_multigraphs(n, 8, 2, [&](const MultiGraph& g) {
      fn(g);
      return true;
    });
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string run_cli(const std::string& args, int& exit_code) {
  std::string cmd = cli_path + " " + args + " 2>/dev/null";
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  std::string out;
  char buf[4096];
  while (pipe && fgets(buf, sizeof buf, pipe.get())) out += buf;
  int status = pipe ? pclose(pipe.release()) : -1;
  exit_code = status == -1 ? -1 : WEXITSTATUS(status);
  return out;
}

Outcome criterion1_figure1_demo() {
  auto start = std::chrono::steady_clock::now();
  int code = 0;
  std::string out = run_cli("demo figure1", code);
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start)
                .count();
  Outcome o;
  json rep;
  try {
    rep = json::parse(out);
  } catch (...) {
    o.detail = "CLI output was not JSON";
    return o;
  }
  const auto& r = rep["result"];
  long found = 0;
  for (const auto& p : r["pair_systems"])
    if (p["found"].get<bool>()) ++found;
  bool ok = code == 0 && r["edges"] == 13 && r["hub_plus_bridge_disconnects"] == true &&
            r["pair_1_1"] == true && r["pair_1_2"] == false && found == 21 && ms < 1000;
  o.pass = ok;
  std::ostringstream d;
  d << "edges=" << r["edges"] << " witnessed=" << found << "/21 pair(1,1)=" << r["pair_1_1"]
    << " pair(1,2)=" << r["pair_1_2"] << " in " << ms << " ms";
  o.detail = d.str();
  return o;
}

Outcome criterion2_mixed_menger() {
  long checked = 0, mismatches = 0;
  for_each_corpus_graph([&](const MultiGraph& g) {
    for (VertexId s = 0; s < g.vertex_count(); ++s)
      for (VertexId t = s + 1; t < g.vertex_count(); ++t) {
        int flow = static_cast<int>(max_internally_disjoint_paths(g, s, t).size());
        int brute = oracle::min_disconnecting_cardinality(g, s, t);
        if (flow != brute) ++mismatches;
        int lambda = static_cast<int>(max_edge_disjoint_paths(g, s, t).size());
        if (lambda != oracle::min_edge_separator_brute(g, s, t)) ++mismatches;
        ++checked;
      }
  });
  Outcome o;
  o.pass = mismatches == 0 && checked > 0;
  std::ostringstream d;
  d << checked << " terminal pairs (vertex-edge and edge separators), " << mismatches
    << " mismatches";
  o.detail = d.str();
  return o;
}

Outcome criterion3_profile_uniqueness() {
  long checked = 0, violations = 0;
  for_each_corpus_graph([&](const MultiGraph& g) {
    int n = g.vertex_count();
    if (n < 2) return;
    for (VertexId s = 0; s < n; ++s)
      for (VertexId t = s + 1; t < n; ++t) {
        ++checked;
        int kap = kappa_reduced_value(g, s, t);
        std::vector<int> lk(n - 1);
        for (int k = 0; k <= n - 2; ++k) {
          auto r = min_size_at_order(g, s, t, k);
          lk[k] = r.size;
          if (r.witness.order() != k ||
              !is_disconnecting(g, {s}, {t}, r.witness.vertices, r.witness.edges))
            ++violations;
        }
        for (int k = 1; k <= n - 2; ++k) {
          if (lk[k] > lk[k - 1]) ++violations;
          if (k <= kap && lk[k] >= lk[k - 1]) ++violations;
        }
        if (g.multiplicity(s, t) == 0 && lk[kap] != 0) ++violations;
        for (int k = 0; k <= kap; ++k) {
          // the unique passing size must be l_k itself
          int hits = 0;
          for (int l = 0; l <= g.edge_count(); ++l) {
            bool cp = l == lk[k] && (k == 0 || lk[k - 1] > l);
            if (cp) ++hits;
          }
          if (hits != 1) ++violations;
          if (!is_connectivity_pair(g, s, t, k, lk[k])) ++violations;
          if (lk[k] > 0 && is_connectivity_pair(g, s, t, k, lk[k] - 1)) ++violations;
          if (is_connectivity_pair(g, s, t, k, lk[k] + 1)) ++violations;
        }
      }
  });
  Outcome o;
  o.pass = violations == 0 && checked > 0;
  std::ostringstream d;
  d << checked << " profiles, " << violations << " violations";
  o.detail = d.str();
  return o;
}

Outcome criterion4_l2_solver() {
  long solved = 0, failures = 0, fallbacks = 0, oracle_disagreements = 0;
  for_each_corpus_graph([&](const MultiGraph& g) {
    int n = g.vertex_count();
    if (n < 2) return;
    for (VertexId s = 0; s < n; ++s)
      for (VertexId t = s + 1; t < n; ++t) {
        int kap = kappa_reduced_value(g, s, t);
        int prev = -1;
        for (int k = 0; k <= kap; ++k) {
          int lk = min_size_at_order(g, s, t, k).size;
          bool is_cp = k == 0 || prev > lk;
          prev = lk;
          if (!is_cp || lk != 2) continue;
          ++solved;
          try {
            auto sys = bh_l2_solve(g, s, t, k, L2Options{true});
            if (!verify_path_system(g, s, t, sys).ok) ++failures;
          } catch (...) {
            ++fallbacks;
          }
          if (!exhaustive_path_system(g, s, t, k, 2).has_value()) ++oracle_disagreements;
        }
      }
  });
  Outcome o;
  o.pass = solved > 0 && failures == 0 && fallbacks == 0 && oracle_disagreements == 0;
  std::ostringstream d;
  d << solved << " (k,2) pairs, " << failures << " invalid, " << fallbacks << " fallbacks, "
    << oracle_disagreements << " oracle disagreements";
  o.detail = d.str();
  return o;
}

Outcome criterion5_normalization() {
  long checked = 0, violations = 0;
  for_each_corpus_graph([&](const MultiGraph& g) {
    int n = g.vertex_count();
    if (n < 2) return;
    for (VertexId s = 0; s < n; ++s)
      for (VertexId t = s + 1; t < n; ++t) {
        int mu = g.multiplicity(s, t);
        if (mu == 0) continue;
        ++checked;
        auto [gn, removed] = normalize_st_edges(g, s, t);
        if (removed != mu) ++violations;
        for (int k = 0; k <= n - 2; ++k) {
          int lg = min_size_at_order(g, s, t, k).size;
          int ln = min_size_at_order(gn, s, t, k).size;
          if (lg != ln + mu) ++violations;
        }
        // spot-check the public predicate both ways
        int lk = min_size_at_order(g, s, t, 0).size;
        if (is_connectivity_pair(g, s, t, 0, lk) !=
            is_connectivity_pair(gn, s, t, 0, lk - mu))
          ++violations;
      }
  });
  Outcome o;
  o.pass = violations == 0 && checked > 0;
  std::ostringstream d;
  d << checked << " adjacent pairs, " << violations << " violations";
  o.detail = d.str();
  return o;
}

Outcome criterion6_reduction_roundtrip() {
  long instances = 0, sweeps = 0, disagreements = 0, lift_failures = 0;
  for (int trial = 0; trial < 200; ++trial) {
    int nu = 2 + trial % 3;       // 2..4
    int nv = 2 + (trial / 3) % 3; // 2..4
    int edges = std::min(nu * nv, 3 + trial % 10);
    auto base = random_pvc_instance(nu, nv, edges, 0, 0, 777000 + trial);
    ++instances;
    for (int q = 0; q <= base.graph.edge_count(); ++q)
      for (int b = 0; b <= nu + nv; ++b) {
        PvcInstance inst = base;
        inst.q = q;
        inst.budget = b;
        auto rec = roundtrip_verify(inst);
        ++sweeps;
        if (!rec.agree) ++disagreements;
        if (!rec.witness_lifted) ++lift_failures;
      }
  }
  Outcome o;
  o.pass = instances >= 200 && disagreements == 0 && lift_failures == 0;
  std::ostringstream d;
  d << instances << " instances, " << sweeps << " (q,B) sweeps, " << disagreements
    << " disagreements, " << lift_failures << " lift failures";
  o.detail = d.str();
  return o;
}

Outcome criterion7_konig() {
  long checked = 0, violations = 0;
  for (int trial = 0; trial < 100; ++trial) {
    int nu = 2 + trial % 4;
    int nv = 2 + (trial / 4) % 4;
    int edges = std::min(nu * nv, 2 + trial % 11);
    auto inst = random_pvc_instance(nu, nv, edges, 0, 0, 31000 + trial);
    auto matching = max_matching_bipartite(inst);
    auto cover = konig_min_vertex_cover(inst);
    ++checked;
    if (matching.size() != cover.size()) ++violations;
    std::vector<char> chosen(inst.graph.vertex_count(), 0);
    for (VertexId v : cover) chosen[v] = 1;
    for (const auto& [u, v] : inst.graph.edge_list())
      if (!chosen[u] && !chosen[v]) ++violations;
  }
  Outcome o;
  o.pass = checked == 100 && violations == 0;
  std::ostringstream d;
  d << checked << " bipartite graphs, " << violations << " violations";
  o.detail = d.str();
  return o;
}

Outcome criterion8_treewidth_fixtures() {
  long violations = 0;
  auto expect = [&](const MultiGraph& g, int want) {
    auto [w, d] = treewidth_exact(g);
    if (w != want) ++violations;
    if (!validate_decomposition(g, d).ok) ++violations;
    if (d.width() != w) ++violations;
  };
  expect(build_graph(6, std::vector<EdgeSpec>{{0, 1, 1}, {1, 2, 1}, {1, 3, 1}, {3, 4, 1}, {3, 5, 1}}), 1);
  expect(build_graph(4, std::vector<EdgeSpec>{{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}}), 2);
  expect(build_graph(6, std::vector<EdgeSpec>{{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {4, 5, 1}, {5, 0, 1}}), 2);
  expect(complete_graph(4), 3);
  expect(figure1_graph(), 3);
  Outcome o;
  o.pass = violations == 0;
  std::ostringstream d;
  d << "tree/cycles/K4/figure1 widths and decompositions, " << violations << " violations";
  o.detail = d.str();
  return o;
}

Outcome criterion9_tw_solver() {
  long graphs = 0, solved = 0, invalid = 0, divergences = 0, oracle_disagreements = 0;
  for (int trial = 0; trial < 100; ++trial) {
    int n = 6 + trial % 7;  // 6..12
    auto g = random_partial_3_tree(n, 550000 + trial);
    ++graphs;
    for (VertexId s = 0; s < g.vertex_count(); ++s)
      for (VertexId t = s + 1; t < g.vertex_count(); ++t) {
        auto profile = connectivity_profile(g, s, t);
        for (auto [k, l] : profile.pairs) {
          if (l < 1) continue;
          ++solved;
          auto res = bh_tw_solve(g, s, t, k, l, TwOptions{true});
          if (!verify_path_system(g, s, t, res.system).ok) ++invalid;
          divergences += res.divergences;
          if (!exhaustive_path_system(g, s, t, k, l).has_value()) ++oracle_disagreements;
        }
      }
  }
  Outcome o;
  o.pass = graphs >= 100 && solved > 0 && invalid == 0 && divergences == 0 &&
           oracle_disagreements == 0;
  std::ostringstream d;
  d << graphs << " partial 3-trees, " << solved << " pairs, " << invalid << " invalid, "
    << divergences << " divergences, " << oracle_disagreements << " oracle disagreements";
  o.detail = d.str();
  return o;
}

Outcome criterion10_hunt() {
  HuntSummary total;
  // exhaustive slice: everything on up to 5 vertices, plus the 6-vertex
  // graphs with at most 6 edges (multiplicity <= 2 throughout)
  for (int n = 1; n <= 5; ++n) {
    CorpusSpec corpus;
    corpus.kind = CorpusSpec::Kind::Enumerate;
    corpus.n = n;
    corpus.m = 8;
    corpus.max_mult = 2;
    auto r = hunt(corpus, TerminalPolicy{}, 0);
    total.graphs += r.summary.graphs;
    total.pairs_checked += r.summary.pairs_checked;
    total.systems_found += r.summary.systems_found;
    total.counterexamples += r.summary.counterexamples;
  }
  {
    CorpusSpec corpus;
    corpus.kind = CorpusSpec::Kind::Enumerate;
    corpus.n = 6;
    corpus.m = 6;
    corpus.max_mult = 2;
    auto r = hunt(corpus, TerminalPolicy{}, 0);
    total.graphs += r.summary.graphs;
    total.pairs_checked += r.summary.pairs_checked;
    total.systems_found += r.summary.systems_found;
    total.counterexamples += r.summary.counterexamples;
  }
  {
    CorpusSpec corpus;
    corpus.kind = CorpusSpec::Kind::Random;
    corpus.n = 8;
    corpus.m = 12;
    corpus.max_mult = 2;
    corpus.count = 1000;
    corpus.seed = 424242;
    auto r = hunt(corpus, TerminalPolicy{}, 0);
    total.graphs += r.summary.graphs;
    total.pairs_checked += r.summary.pairs_checked;
    total.systems_found += r.summary.systems_found;
    total.counterexamples += r.summary.counterexamples;
  }

  // self-test: a deliberately falsified finder must surface as a
  // counterexample, proving the harness can report one
  CorpusSpec tiny;
  tiny.kind = CorpusSpec::Kind::Enumerate;
  tiny.n = 3;
  tiny.m = 3;
  tiny.max_mult = 1;
  CheckOptions lying;
  lying.finder_override = [](const MultiGraph&, VertexId, VertexId, int, int) {
    return std::optional<PathSystem>{};
  };
  auto injected = hunt(tiny, TerminalPolicy{}, 1, lying);

  Outcome o;
  o.pass = total.counterexamples == 0 && total.pairs_checked > 0 &&
           injected.summary.counterexamples > 0 && !injected.counterexamples.empty();
  std::ostringstream d;
  d << total.graphs << " graphs, " << total.pairs_checked << " pairs, "
    << total.counterexamples << " counterexamples; injected self-test flagged "
    << injected.summary.counterexamples;
  o.detail = d.str();
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance_gate <path-to-cli> [--only N]\n";
    return 2;
  }
  cli_path = argv[1];
  int only = 0;
  if (argc >= 4 && std::string(argv[2]) == "--only") only = std::atoi(argv[3]);

  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria = {
      {1, "figure1 demo fixture (CLI)", criterion1_figure1_demo},
      {2, "mixed Menger equals brute-force separator minimum", criterion2_mixed_menger},
      {3, "profile monotonicity and per-order uniqueness", criterion3_profile_uniqueness},
      {4, "constructive l=2 solver on every corpus (k,2) pair", criterion4_l2_solver},
      {5, "terminal-edge normalization biconditional", criterion5_normalization},
      {6, "PVC <-> separation reduction round trip", criterion6_reduction_roundtrip},
      {7, "Konig cover size equals matching size", criterion7_konig},
      {8, "treewidth fixtures", criterion8_treewidth_fixtures},
      {9, "treewidth <= 3 solver sweep with oracle agreement", criterion9_tw_solver},
      {10, "counterexample hunt plus injected self-test", criterion10_hunt},
  };

  bool all_pass = true;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    std::printf("[%2d] %s  %s (%lld ms) %s\n", c.id, o.pass ? "PASS" : "FAIL", c.name,
                static_cast<long long>(ms), o.detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && o.pass;
  }
  return all_pass ? 0 : 1;
}
