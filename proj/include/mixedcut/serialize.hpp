#pragma once

#include <json.hpp>

#include "mixedcut/complexity.hpp"
#include "mixedcut/conjecture.hpp"
#include "mixedcut/mixed_connectivity.hpp"
#include "mixedcut/path_system.hpp"
#include "mixedcut/treewidth.hpp"
#include "mixedcut/tw_solver.hpp"

namespace mixedcut {

using nlohmann::json;

inline json to_json(const Path& p) {
  return json{{"vertices", p.vertices}, {"edges", p.edges}};
}

inline json to_json(const PathSystem& sys) {
  json paths = json::array();
  json edge_ids = json::array();
  for (const Path& p : sys.paths) {
    paths.push_back(p.vertices);
    edge_ids.push_back(p.edges);
  }
  return json{{"k", sys.k},
              {"l", sys.l},
              {"designated", sys.designated},
              {"paths", paths},
              {"edge_ids", edge_ids}};
}

inline json to_json(const DisconnectingPair& pair) {
  return json{{"W", pair.vertices}, {"F", pair.edges}};
}

inline json to_json(const ConnectivityProfile& profile) {
  json entries = json::array();
  for (const auto& e : profile.entries)
    entries.push_back(json{{"k", e.k}, {"l", e.l}, {"witness", to_json(e.witness)}});
  json pairs = json::array();
  for (auto [k, l] : profile.pairs) pairs.push_back(json::array({k, l}));
  return json{{"s", profile.s},
              {"t", profile.t},
              {"st_multiplicity", profile.st_multiplicity},
              {"kappa_reduced", profile.kappa_reduced},
              {"entries", entries},
              {"pairs", pairs}};
}

inline json to_json(const TreeDecomposition& d) {
  json nodes = json::array();
  for (int i = 0; i < d.node_count(); ++i)
    nodes.push_back(json{{"id", i}, {"bag", d.bags[i]}});
  json edges = json::array();
  for (auto [i, j] : d.tree_edges) edges.push_back(json::array({i, j}));
  return json{{"width", d.width()}, {"nodes", nodes}, {"edges", edges}};
}

inline json to_json(const PairRecord& rec) {
  json pairs = json::array();
  for (auto [k, l] : rec.pairs) pairs.push_back(json::array({k, l}));
  json outcomes = json::array();
  for (const auto& o : rec.outcomes) {
    json entry{{"k", o.k}, {"l", o.l}, {"found", o.found}, {"method", o.method}};
    if (o.system) entry["system"] = to_json(*o.system);
    outcomes.push_back(entry);
  }
  return json{{"s", rec.s},
              {"t", rec.t},
              {"pairs", pairs},
              {"outcomes", outcomes},
              {"counterexample", rec.counterexample},
              {"diagnostics", rec.diagnostics}};
}

inline json to_json(const ConjectureReport& report) {
  json records = json::array();
  for (const auto& r : report.records) records.push_back(to_json(r));
  return json{{"graph", report.digest},
              {"index", report.index},
              {"n", report.n},
              {"m", report.m},
              {"records", records},
              {"counterexample", report.counterexample}};
}

inline json to_json(const HuntSummary& summary) {
  return json{{"graphs", summary.graphs},
              {"pairs_checked", summary.pairs_checked},
              {"systems_found", summary.systems_found},
              {"counterexamples", summary.counterexamples}};
}

inline json to_json(const RoundTripRecord& rec) {
  return json{{"pvc_yes", rec.pvc_yes},
              {"scp_yes", rec.scp_yes},
              {"trivial", rec.trivial},
              {"agree", rec.agree},
              {"witness_lifted", rec.witness_lifted}};
}

}  // namespace mixedcut
