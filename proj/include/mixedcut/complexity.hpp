#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "mixedcut/codec.hpp"
#include "mixedcut/generate.hpp"
#include "mixedcut/mixed_connectivity.hpp"
#include "mixedcut/multigraph.hpp"

namespace mixedcut {

// Bipartite partial-vertex-cover instance: vertices [0, nu) form the first
// part, [nu, nu+nv) the second; q edges must be covered by at most B
// vertices.
struct PvcInstance {
  MultiGraph graph;
  int nu = 0;
  int nv = 0;
  int q = 0;
  int budget = 0;

  bool in_first_part(VertexId v) const { return v < nu; }
};

inline void validate_bipartite(const PvcInstance& inst) {
  if (inst.nu + inst.nv != inst.graph.vertex_count())
    throw std::invalid_argument("part sizes do not match the vertex count");
  for (const auto& [u, v] : inst.graph.edge_list())
    if (inst.in_first_part(u) == inst.in_first_part(v))
      throw std::invalid_argument("edge does not cross the bipartition");
}

// Hopcroft-Karp. Returns one edge id per matched pair.
inline std::vector<EdgeId> max_matching_bipartite(const PvcInstance& inst) {
  validate_bipartite(inst);
  const MultiGraph& g = inst.graph;
  std::vector<int> match_u(inst.nu, -1), match_v(inst.nv, -1);
  std::vector<int> dist(inst.nu);
  const int INF = 1 << 29;

  auto bfs = [&]() {
    std::vector<int> queue;
    for (int u = 0; u < inst.nu; ++u) {
      dist[u] = match_u[u] == -1 ? 0 : INF;
      if (match_u[u] == -1) queue.push_back(u);
    }
    bool reachable_free = false;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      int u = queue[head];
      for (EdgeId e : g.incident(u)) {
        int v = g.other_endpoint(e, u) - inst.nu;
        int next = match_v[v];
        if (next == -1) {
          reachable_free = true;
        } else if (dist[next] == INF) {
          dist[next] = dist[u] + 1;
          queue.push_back(next);
        }
      }
    }
    return reachable_free;
  };
  std::function<bool(int)> dfs = [&](int u) {
    for (EdgeId e : g.incident(u)) {
      int v = g.other_endpoint(e, u) - inst.nu;
      int next = match_v[v];
      if (next == -1 || (dist[next] == dist[u] + 1 && dfs(next))) {
        match_u[u] = v;
        match_v[v] = u;
        return true;
      }
    }
    dist[u] = INF;
    return false;
  };
  while (bfs()) {
    for (int u = 0; u < inst.nu; ++u)
      if (match_u[u] == -1) dfs(u);
  }
  std::vector<EdgeId> matching;
  for (int u = 0; u < inst.nu; ++u) {
    if (match_u[u] == -1) continue;
    auto ids = g.edges_between(u, match_u[u] + inst.nu);
    matching.push_back(*std::min_element(ids.begin(), ids.end()));
  }
  return matching;
}

// Minimum vertex cover from a maximum matching: alternating reachability
// from the unmatched first-part vertices picks (U \ Z) plus (V and Z).
inline std::vector<VertexId> konig_min_vertex_cover(const PvcInstance& inst) {
  auto matching = max_matching_bipartite(inst);
  const MultiGraph& g = inst.graph;
  std::vector<int> match_u(inst.nu, -1), match_v(inst.nv, -1);
  for (EdgeId e : matching) {
    auto [a, b] = g.endpoints(e);
    VertexId u = std::min(a, b), v = std::max(a, b) - inst.nu;
    match_u[u] = v;
    match_v[v] = u;
  }
  std::vector<char> z_u(inst.nu, 0), z_v(inst.nv, 0);
  std::vector<int> queue;
  for (int u = 0; u < inst.nu; ++u)
    if (match_u[u] == -1) {
      z_u[u] = 1;
      queue.push_back(u);
    }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int u = queue[head];
    for (EdgeId e : g.incident(u)) {
      int v = g.other_endpoint(e, u) - inst.nu;
      if (z_v[v]) continue;
      if (match_u[u] == v) continue;  // only travel non-matching edges left-to-right
      z_v[v] = 1;
      int back = match_v[v];
      if (back != -1 && !z_u[back]) {
        z_u[back] = 1;
        queue.push_back(back);
      }
    }
  }
  std::vector<VertexId> cover;
  for (int u = 0; u < inst.nu; ++u)
    if (!z_u[u]) cover.push_back(u);
  for (int v = 0; v < inst.nv; ++v)
    if (z_v[v]) cover.push_back(v + inst.nu);
  return cover;
}

inline int edges_covered_by(const MultiGraph& g, const std::vector<char>& chosen) {
  int covered = 0;
  for (const auto& [u, v] : g.edge_list())
    if (chosen[u] || chosen[v]) ++covered;
  return covered;
}

// Smallest vertex set within the budget covering at least q edges, by
// subset enumeration in increasing size (colex within each size).
inline std::optional<std::vector<VertexId>> solve_pvc_brute(const PvcInstance& inst) {
  validate_bipartite(inst);
  int n = inst.graph.vertex_count();
  if (n > 24) throw std::invalid_argument("brute-force cover is capped at 24 vertices");
  for (int size = 0; size <= std::min(inst.budget, n); ++size) {
    std::optional<std::vector<VertexId>> hit;
    subsets_colex(n, size, [&](std::uint64_t mask) {
      std::vector<char> chosen(n, 0);
      std::vector<VertexId> picked;
      for (int v = 0; v < n; ++v)
        if (mask >> v & 1) {
          chosen[v] = 1;
          picked.push_back(v);
        }
      if (edges_covered_by(inst.graph, chosen) >= inst.q) {
        hit = std::move(picked);
        return true;
      }
      return false;
    });
    if (hit) return hit;
  }
  return std::nullopt;
}

// The reduced separation instance: does some l <= bound make (k, l) a
// connectivity pair for s and t?
struct ScpInstance {
  MultiGraph graph;
  VertexId s = 0;
  VertexId t = 0;
  int k = 0;
  int bound = 0;
};

struct TriviallyYes {
  std::vector<VertexId> cover;  // a full vertex cover within the budget
};

using ReductionResult = std::variant<TriviallyYes, ScpInstance>;

// Gadget: keep H's edges, then tie a fresh s to every first-part vertex
// and every second-part vertex to a fresh t with |E(H)| parallels each, so
// only H's own edges and vertices can participate in small separators.
// k := B and bound := |E(H)| - q. Preprocessing: when a full vertex cover
// fits the budget the instance is a trivial yes and the gadget's counting
// argument would not apply.
inline ReductionResult reduce_pvc_to_scp(const PvcInstance& inst) {
  validate_bipartite(inst);
  if (inst.q > inst.graph.edge_count())
    throw std::invalid_argument("coverage demand exceeds the edge count");
  auto cover = konig_min_vertex_cover(inst);
  if (static_cast<int>(cover.size()) <= inst.budget) return TriviallyYes{std::move(cover)};

  int m = inst.graph.edge_count();
  int n = inst.graph.vertex_count();
  VertexId s = n;
  VertexId t = n + 1;
  std::vector<std::pair<VertexId, VertexId>> endpoints = inst.graph.edge_list();
  for (int u = 0; u < inst.nu; ++u)
    for (int copy = 0; copy < m; ++copy) endpoints.emplace_back(s, u);
  for (int v = 0; v < inst.nv; ++v)
    for (int copy = 0; copy < m; ++copy) endpoints.emplace_back(v + inst.nu, t);
  ScpInstance out;
  out.graph = MultiGraph(n + 2, std::move(endpoints));
  out.s = s;
  out.t = t;
  out.k = inst.budget;
  out.bound = m - inst.q;
  return out;
}

// True iff some l <= bound makes (k, l) a connectivity pair; since the
// second coordinate is unique per order, only l_k needs inspection.
inline bool decide_scp(const ScpInstance& inst) {
  if (inst.k > inst.graph.vertex_count() - 2 || inst.k < 0)
    throw std::invalid_argument("order must satisfy 0 <= k <= n-2");
  auto r = min_size_at_order(inst.graph, inst.s, inst.t, inst.k);
  if (r.size > inst.bound) return false;
  return is_connectivity_pair(inst.graph, inst.s, inst.t, inst.k, r.size);
}

struct RoundTripRecord {
  bool pvc_yes = false;
  bool scp_yes = false;
  bool trivial = false;
  bool agree = false;
  bool witness_lifted = true;  // vacuous unless the reduced instance answers yes
};

// Solves both sides and, on a yes, lifts the separator witness back to a
// partial cover: F must stay inside H and W must cover at least q edges.
inline RoundTripRecord roundtrip_verify(const PvcInstance& inst) {
  RoundTripRecord rec;
  rec.pvc_yes = solve_pvc_brute(inst).has_value();
  auto reduced = reduce_pvc_to_scp(inst);
  if (std::holds_alternative<TriviallyYes>(reduced)) {
    rec.trivial = true;
    rec.scp_yes = true;
  } else {
    const auto& scp = std::get<ScpInstance>(reduced);
    rec.scp_yes = decide_scp(scp);
    if (rec.scp_yes) {
      auto witness = min_size_at_order(scp.graph, scp.s, scp.t, scp.k);
      rec.witness_lifted = witness.size <= scp.bound;
      std::vector<char> chosen(inst.graph.vertex_count(), 0);
      for (VertexId w : witness.witness.vertices) {
        if (w >= inst.graph.vertex_count()) rec.witness_lifted = false;
        else chosen[w] = 1;
      }
      for (EdgeId f : witness.witness.edges)
        if (f >= inst.graph.edge_count()) rec.witness_lifted = false;
      if (edges_covered_by(inst.graph, chosen) < inst.q) rec.witness_lifted = false;
    }
  }
  rec.agree = rec.pvc_yes == rec.scp_yes;
  return rec;
}

// Text format: `pvc <|U|> <|V|>` header, `e <u> <v>` lines with per-part
// indices, plus `q <int>` and `b <int>` lines.
inline PvcInstance parse_pvc(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool have_header = false;
  PvcInstance inst;
  std::vector<std::pair<VertexId, VertexId>> endpoints;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (!have_header) {
      if (tag != "pvc") throw ParseError(line_no, "expected 'pvc <|U|> <|V|>' header");
      if (!(ls >> inst.nu >> inst.nv) || inst.nu < 0 || inst.nv < 0)
        throw ParseError(line_no, "bad part sizes");
      have_header = true;
      continue;
    }
    if (tag == "e") {
      int u, v;
      if (!(ls >> u >> v)) throw ParseError(line_no, "expected 'e <u> <v>'");
      if (u < 0 || u >= inst.nu) throw ParseError(line_no, "first-part index out of range");
      if (v < 0 || v >= inst.nv) throw ParseError(line_no, "second-part index out of range");
      endpoints.emplace_back(u, v + inst.nu);
    } else if (tag == "q") {
      if (!(ls >> inst.q) || inst.q < 0) throw ParseError(line_no, "bad coverage demand");
    } else if (tag == "b") {
      if (!(ls >> inst.budget) || inst.budget < 0) throw ParseError(line_no, "bad budget");
    } else {
      throw ParseError(line_no, "unknown directive '" + tag + "'");
    }
  }
  if (!have_header) throw ParseError(line_no, "missing 'pvc' header");
  inst.graph = MultiGraph(inst.nu + inst.nv, std::move(endpoints));
  if (inst.q > inst.graph.edge_count())
    throw ParseError(line_no, "coverage demand exceeds the edge count");
  return inst;
}

inline std::string serialize_pvc(const PvcInstance& inst) {
  std::ostringstream out;
  out << "pvc " << inst.nu << " " << inst.nv << "\n";
  for (const auto& [u, v] : inst.graph.edge_list())
    out << "e " << std::min(u, v) << " " << std::max(u, v) - inst.nu << "\n";
  out << "q " << inst.q << "\n";
  out << "b " << inst.budget << "\n";
  return out.str();
}

// Deterministic bipartite instance generator for the round-trip sweeps.
inline PvcInstance random_pvc_instance(int nu, int nv, int edges, int q, int budget,
                                       std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::pair<VertexId, VertexId>> all;
  for (int u = 0; u < nu; ++u)
    for (int v = 0; v < nv; ++v) all.emplace_back(u, v + nu);
  if (edges > static_cast<int>(all.size())) throw std::invalid_argument("too many edges");
  std::vector<char> used(all.size(), 0);
  std::vector<std::pair<VertexId, VertexId>> picked;
  while (static_cast<int>(picked.size()) < edges) {
    std::size_t i = rng.below(all.size());
    if (used[i]) continue;
    used[i] = 1;
    picked.push_back(all[i]);
  }
  PvcInstance inst;
  inst.nu = nu;
  inst.nv = nv;
  inst.q = q;
  inst.budget = budget;
  inst.graph = MultiGraph(nu + nv, std::move(picked));
  return inst;
}

}  // namespace mixedcut
