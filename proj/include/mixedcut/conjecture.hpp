#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "mixedcut/codec.hpp"
#include "mixedcut/generate.hpp"
#include "mixedcut/mixed_connectivity.hpp"
#include "mixedcut/path_system.hpp"

namespace mixedcut {

struct PairOutcome {
  int k = 0;
  int l = 0;
  bool found = false;
  std::string method;
  std::optional<PathSystem> system;
};

// What conjecture_check records for one terminal pair: the connectivity
// pairs and, for each with l >= 1, whether a witness system exists.
struct PairRecord {
  VertexId s = 0;
  VertexId t = 0;
  std::vector<std::pair<int, int>> pairs;
  std::vector<PairOutcome> outcomes;
  bool counterexample = false;
  std::vector<std::string> diagnostics;
};

struct ConjectureReport {
  std::string digest;
  long index = -1;
  int n = 0;
  int m = 0;
  std::vector<PairRecord> records;
  bool counterexample = false;
};

using SystemFinder =
    std::function<std::optional<PathSystem>(const MultiGraph&, VertexId, VertexId, int, int)>;

struct CheckOptions {
  bool checked = false;
  // Test hook replacing every solver; lets the harness prove it can
  // surface a counterexample when the finder is wrong.
  SystemFinder finder_override;
};

// Computes the connectivity pairs of (s, t) and hunts a path system for
// each one with l >= 1: flow for l = 1, the constructive solver for
// l = 2, the exhaustive finder otherwise. An absence from a specialized
// solver is re-confirmed exhaustively before the counterexample flag is
// raised.
inline PairRecord conjecture_check(const MultiGraph& g, VertexId s, VertexId t,
                                   const CheckOptions& opts = {}) {
  PairRecord rec;
  rec.s = s;
  rec.t = t;
  auto profile = connectivity_profile(g, s, t);
  rec.pairs = profile.pairs;
  for (auto [k, l] : profile.pairs) {
    if (l < 1) continue;
    PairOutcome out;
    out.k = k;
    out.l = l;
    if (opts.finder_override) {
      out.method = "override";
      out.system = opts.finder_override(g, s, t, k, l);
    } else if (l == 1) {
      out.method = "flow";
      auto paths = max_internally_disjoint_paths(g, s, t);
      if (static_cast<int>(paths.size()) >= k + 1) {
        PathSystem sys;
        sys.k = k;
        sys.l = 1;
        paths.resize(k + 1);
        sys.paths = std::move(paths);
        for (int i = 0; i <= k; ++i) sys.designated.push_back(i);
        out.system = std::move(sys);
      }
    } else if (l == 2) {
      out.method = "l2";
      try {
        out.system = bh_l2_solve(g, s, t, k, L2Options{opts.checked});
      } catch (const ProofDivergence& e) {
        rec.diagnostics.push_back("l2 solver diverged for (" + std::to_string(k) + "," +
                                  std::to_string(l) + "): " + e.what());
      }
    } else {
      out.method = "exhaustive";
      out.system = exhaustive_path_system(g, s, t, k, l);
    }
    if (out.system) {
      auto check = verify_path_system(g, s, t, *out.system);
      if (!check.ok) {
        rec.diagnostics.push_back("invalid system from " + out.method + " for (" +
                                  std::to_string(k) + "," + std::to_string(l) +
                                  "): " + check.violations.front());
        out.system.reset();
      }
    }
    if (!out.system && !opts.finder_override && out.method != "exhaustive") {
      out.method += "+exhaustive";
      out.system = exhaustive_path_system(g, s, t, k, l);
      if (out.system) {
        auto check = verify_path_system(g, s, t, *out.system);
        if (!check.ok) out.system.reset();
      }
    }
    out.found = out.system.has_value();
    if (!out.found) rec.counterexample = true;
    rec.outcomes.push_back(std::move(out));
  }
  return rec;
}

inline ConjectureReport conjecture_check_graph(const MultiGraph& g, long index,
                                               const std::vector<std::pair<VertexId, VertexId>>& pairs,
                                               const CheckOptions& opts = {}) {
  ConjectureReport report;
  report.digest = graph_digest(g);
  report.index = index;
  report.n = g.vertex_count();
  report.m = g.edge_count();
  for (auto [s, t] : pairs) {
    report.records.push_back(conjecture_check(g, s, t, opts));
    if (report.records.back().counterexample) report.counterexample = true;
  }
  return report;
}

struct CorpusSpec {
  enum class Kind { Enumerate, Random } kind = Kind::Enumerate;
  int n = 4;
  int m = 5;
  int max_mult = 1;
  long count = 0;            // random only
  std::uint64_t seed = 1;    // random only
};

struct TerminalPolicy {
  enum class Kind { AllPairs, Sample } kind = Kind::AllPairs;
  int sample_count = 4;
  std::uint64_t seed = 1;
};

struct HuntSummary {
  long graphs = 0;
  long pairs_checked = 0;
  long systems_found = 0;
  long counterexamples = 0;
};

struct HuntResult {
  HuntSummary summary;
  std::vector<ConjectureReport> counterexamples;
};

namespace detail {

inline std::vector<std::pair<VertexId, VertexId>> pick_pairs(const MultiGraph& g, long index,
                                                             const TerminalPolicy& policy) {
  std::vector<std::pair<VertexId, VertexId>> all;
  for (VertexId s = 0; s < g.vertex_count(); ++s)
    for (VertexId t = s + 1; t < g.vertex_count(); ++t) all.emplace_back(s, t);
  if (policy.kind == TerminalPolicy::Kind::AllPairs ||
      static_cast<int>(all.size()) <= policy.sample_count)
    return all;
  Rng rng(policy.seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(index));
  std::vector<std::pair<VertexId, VertexId>> picked;
  std::vector<char> taken(all.size(), 0);
  while (static_cast<int>(picked.size()) < policy.sample_count) {
    std::size_t i = rng.below(all.size());
    if (taken[i]) continue;
    taken[i] = 1;
    picked.push_back(all[i]);
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

}  // namespace detail

// Sweeps the corpus, checking the conjecture on every graph. Graphs are
// processed by a small worker pool; the merged result only depends on the
// corpus and seed. An optional sink receives every report in corpus
// order (which forces single-threaded operation).
inline HuntResult hunt(const CorpusSpec& corpus, const TerminalPolicy& policy, int jobs = 0,
                       const CheckOptions& opts = {},
                       const std::function<void(const ConjectureReport&)>& sink = nullptr) {
  std::vector<MultiGraph> graphs;
  if (corpus.kind == CorpusSpec::Kind::Enumerate) {
    enumerate_multigraphs(corpus.n, corpus.m, corpus.max_mult, [&](const MultiGraph& g) {
      graphs.push_back(g);
      return true;
    });
  } else {
    for (long i = 0; i < corpus.count; ++i)
      graphs.push_back(random_multigraph(corpus.n, corpus.m, corpus.max_mult,
                                         corpus.seed + static_cast<std::uint64_t>(i)));
  }

  if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
  if (jobs <= 0) jobs = 1;
  if (sink) jobs = 1;

  HuntResult result;
  result.summary.graphs = static_cast<long>(graphs.size());

  auto process = [&](long index) {
    auto pairs = detail::pick_pairs(graphs[index], index, policy);
    return conjecture_check_graph(graphs[index], index, pairs, opts);
  };

  if (jobs == 1) {
    for (long i = 0; i < static_cast<long>(graphs.size()); ++i) {
      auto report = process(i);
      for (const auto& r : report.records) {
        result.summary.pairs_checked++;
        for (const auto& o : r.outcomes)
          if (o.found) result.summary.systems_found++;
      }
      if (report.counterexample) {
        result.summary.counterexamples++;
        result.counterexamples.push_back(report);
      }
      if (sink) sink(report);
    }
    return result;
  }

  std::atomic<long> cursor{0};
  std::vector<HuntSummary> partial(jobs);
  std::vector<std::vector<ConjectureReport>> partial_cx(jobs);
  std::vector<std::thread> workers;
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w]() {
      for (;;) {
        long i = cursor.fetch_add(1);
        if (i >= static_cast<long>(graphs.size())) return;
        auto report = process(i);
        for (const auto& r : report.records) {
          partial[w].pairs_checked++;
          for (const auto& o : r.outcomes)
            if (o.found) partial[w].systems_found++;
        }
        if (report.counterexample) {
          partial[w].counterexamples++;
          partial_cx[w].push_back(report);
        }
      }
    });
  }
  for (auto& th : workers) th.join();
  for (int w = 0; w < jobs; ++w) {
    result.summary.pairs_checked += partial[w].pairs_checked;
    result.summary.systems_found += partial[w].systems_found;
    result.summary.counterexamples += partial[w].counterexamples;
    for (auto& r : partial_cx[w]) result.counterexamples.push_back(std::move(r));
  }
  std::sort(result.counterexamples.begin(), result.counterexamples.end(),
            [](const ConjectureReport& a, const ConjectureReport& b) { return a.index < b.index; });
  return result;
}

}  // namespace mixedcut
