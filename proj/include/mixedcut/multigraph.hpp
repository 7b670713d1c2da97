#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mixedcut {

using VertexId = int;
using EdgeId = int;

// Loop-free undirected multigraph. Parallel edges are distinct EdgeIds.
// Immutable after construction; derived graphs carry id mappings back to
// their parent.
class MultiGraph {
public:
  MultiGraph() = default;

  MultiGraph(int n, std::vector<std::pair<VertexId, VertexId>> endpoints)
      : n_(n), edges_(std::move(endpoints)) {
    if (n < 0) throw std::invalid_argument("vertex count must be non-negative");
    inc_.assign(n_, {});
    for (EdgeId e = 0; e < static_cast<EdgeId>(edges_.size()); ++e) {
      auto [u, v] = edges_[e];
      if (u < 0 || u >= n_ || v < 0 || v >= n_)
        throw std::invalid_argument("edge endpoint out of range");
      if (u == v) throw std::invalid_argument("loop edges are not allowed");
      inc_[u].push_back(e);
      inc_[v].push_back(e);
      pair_index_[pair_key(u, v)].push_back(e);
    }
  }

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  std::pair<VertexId, VertexId> endpoints(EdgeId e) const { return edges_.at(e); }

  VertexId other_endpoint(EdgeId e, VertexId v) const {
    auto [a, b] = edges_.at(e);
    if (v == a) return b;
    if (v == b) return a;
    throw std::invalid_argument("vertex is not an endpoint of the edge");
  }

  const std::vector<EdgeId>& incident(VertexId v) const { return inc_.at(v); }

  int degree(VertexId v) const { return static_cast<int>(inc_.at(v).size()); }

  // All parallel edges joining u and v.
  std::vector<EdgeId> edges_between(VertexId u, VertexId v) const {
    auto it = pair_index_.find(pair_key(u, v));
    if (it == pair_index_.end()) return {};
    return it->second;
  }

  int multiplicity(VertexId u, VertexId v) const {
    auto it = pair_index_.find(pair_key(u, v));
    return it == pair_index_.end() ? 0 : static_cast<int>(it->second.size());
  }

  bool adjacent(VertexId u, VertexId v) const { return multiplicity(u, v) > 0; }

  const std::vector<std::pair<VertexId, VertexId>>& edge_list() const { return edges_; }

  bool operator==(const MultiGraph& o) const {
    return n_ == o.n_ && edges_ == o.edges_;
  }

private:
  static std::uint64_t pair_key(VertexId u, VertexId v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
  }

  int n_ = 0;
  std::vector<std::pair<VertexId, VertexId>> edges_;
  std::vector<std::vector<EdgeId>> inc_;
  std::unordered_map<std::uint64_t, std::vector<EdgeId>> pair_index_;
};

struct EdgeSpec {
  VertexId u = 0;
  VertexId v = 0;
  int mult = 1;
};

inline MultiGraph build_graph(int n, const std::vector<EdgeSpec>& spec) {
  std::vector<std::pair<VertexId, VertexId>> endpoints;
  for (const auto& s : spec) {
    if (s.mult < 1) throw std::invalid_argument("edge multiplicity must be >= 1");
    for (int i = 0; i < s.mult; ++i) endpoints.emplace_back(s.u, s.v);
  }
  return MultiGraph(n, std::move(endpoints));
}

inline MultiGraph build_graph(int n, const std::vector<std::pair<VertexId, VertexId>>& pairs) {
  return MultiGraph(n, std::vector<std::pair<VertexId, VertexId>>(pairs));
}

inline MultiGraph complete_graph(int n) {
  std::vector<std::pair<VertexId, VertexId>> endpoints;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v) endpoints.emplace_back(u, v);
  return MultiGraph(n, std::move(endpoints));
}

// Two K4s sharing vertex 0, bridged by the edge between vertices 1 and 4.
// The standard fixture where every pair admits three edge-disjoint paths,
// two of them internally disjoint, yet one vertex plus one edge separate
// the graph. Vertices x1..x7 map to ids 0..6.
inline MultiGraph figure1_graph() {
  std::vector<EdgeSpec> spec;
  const std::vector<VertexId> left = {0, 1, 2, 3};
  const std::vector<VertexId> right = {0, 4, 5, 6};
  for (std::size_t i = 0; i < left.size(); ++i)
    for (std::size_t j = i + 1; j < left.size(); ++j)
      spec.push_back({left[i], left[j], 1});
  for (std::size_t i = 0; i < right.size(); ++i)
    for (std::size_t j = i + 1; j < right.size(); ++j)
      spec.push_back({right[i], right[j], 1});
  spec.push_back({1, 4, 1});
  return build_graph(7, spec);
}

// Masks select what remains: removed[v] / removed_edge[e] true = deleted.
// Empty masks mean nothing is removed.
struct Masks {
  std::vector<char> vertex;
  std::vector<char> edge;

  static Masks none(const MultiGraph& g) {
    Masks m;
    m.vertex.assign(g.vertex_count(), 0);
    m.edge.assign(g.edge_count(), 0);
    return m;
  }

  bool vertex_removed(VertexId v) const {
    return !vertex.empty() && vertex[static_cast<std::size_t>(v)];
  }
  bool edge_removed(EdgeId e) const {
    return !edge.empty() && edge[static_cast<std::size_t>(e)];
  }
};

// BFS reachability from the source set, honoring masks.
inline std::vector<char> reachable_from(const MultiGraph& g,
                                        const std::vector<VertexId>& sources,
                                        const Masks& masks) {
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<VertexId> queue;
  for (VertexId s : sources) {
    if (masks.vertex_removed(s) || seen[s]) continue;
    seen[s] = 1;
    queue.push_back(s);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    VertexId v = queue[head];
    for (EdgeId e : g.incident(v)) {
      if (masks.edge_removed(e)) continue;
      VertexId w = g.other_endpoint(e, v);
      if (masks.vertex_removed(w) || seen[w]) continue;
      seen[w] = 1;
      queue.push_back(w);
    }
  }
  return seen;
}

inline bool connected_pair(const MultiGraph& g, VertexId s, VertexId t, const Masks& masks) {
  if (masks.vertex_removed(s) || masks.vertex_removed(t)) return false;
  return reachable_from(g, {s}, masks)[t] != 0;
}

// Connected components of the graph with masks applied; returns a component
// id per vertex (-1 for removed vertices) and the component count.
inline std::pair<std::vector<int>, int> components(const MultiGraph& g, const Masks& masks) {
  std::vector<int> comp(g.vertex_count(), -1);
  int count = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (masks.vertex_removed(v) || comp[v] != -1) continue;
    std::vector<VertexId> queue = {v};
    comp[v] = count;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      VertexId x = queue[head];
      for (EdgeId e : g.incident(x)) {
        if (masks.edge_removed(e)) continue;
        VertexId w = g.other_endpoint(e, x);
        if (masks.vertex_removed(w) || comp[w] != -1) continue;
        comp[w] = count;
        queue.push_back(w);
      }
    }
    ++count;
  }
  return {std::move(comp), count};
}

// A graph derived from a parent by deletion or augmentation. Ids in the
// derived graph are dense; the *_to_parent maps translate back (-1 marks
// elements that do not exist in the parent, e.g. fresh augment edges).
struct DerivedGraph {
  MultiGraph graph;
  std::vector<VertexId> vertex_to_parent;
  std::vector<EdgeId> edge_to_parent;
  std::vector<VertexId> vertex_from_parent;  // -1 when the vertex was dropped
};

inline DerivedGraph remove_edges(const MultiGraph& g, const std::vector<char>& drop) {
  DerivedGraph d;
  std::vector<std::pair<VertexId, VertexId>> endpoints;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (e < static_cast<EdgeId>(drop.size()) && drop[e]) continue;
    endpoints.push_back(g.endpoints(e));
    d.edge_to_parent.push_back(e);
  }
  d.graph = MultiGraph(g.vertex_count(), std::move(endpoints));
  d.vertex_to_parent.resize(g.vertex_count());
  d.vertex_from_parent.resize(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    d.vertex_to_parent[v] = v;
    d.vertex_from_parent[v] = v;
  }
  return d;
}

inline DerivedGraph remove_edges(const MultiGraph& g, const std::vector<EdgeId>& drop) {
  std::vector<char> mask(g.edge_count(), 0);
  for (EdgeId e : drop) mask.at(e) = 1;
  return remove_edges(g, mask);
}

// Induced subgraph on `keep` (edges with both endpoints kept survive),
// optionally minus the edges in `drop_edges` (parent ids).
inline DerivedGraph induced_subgraph(const MultiGraph& g, const std::vector<char>& keep,
                                     const std::vector<char>& drop_edges = {}) {
  DerivedGraph d;
  d.vertex_from_parent.assign(g.vertex_count(), -1);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (!keep[v]) continue;
    d.vertex_from_parent[v] = static_cast<VertexId>(d.vertex_to_parent.size());
    d.vertex_to_parent.push_back(v);
  }
  std::vector<std::pair<VertexId, VertexId>> endpoints;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (e < static_cast<EdgeId>(drop_edges.size()) && drop_edges[e]) continue;
    auto [u, v] = g.endpoints(e);
    if (!keep[u] || !keep[v]) continue;
    endpoints.emplace_back(d.vertex_from_parent[u], d.vertex_from_parent[v]);
    d.edge_to_parent.push_back(e);
  }
  d.graph = MultiGraph(static_cast<int>(d.vertex_to_parent.size()), std::move(endpoints));
  return d;
}

// Appends `count` parallel edges between u and v; the fresh edges map to -1.
inline DerivedGraph add_parallel_edges(const MultiGraph& g, VertexId u, VertexId v, int count) {
  DerivedGraph d;
  std::vector<std::pair<VertexId, VertexId>> endpoints = g.edge_list();
  d.edge_to_parent.resize(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) d.edge_to_parent[e] = e;
  for (int i = 0; i < count; ++i) {
    endpoints.emplace_back(u, v);
    d.edge_to_parent.push_back(-1);
  }
  d.graph = MultiGraph(g.vertex_count(), std::move(endpoints));
  d.vertex_to_parent.resize(g.vertex_count());
  d.vertex_from_parent.resize(g.vertex_count());
  for (VertexId v2 = 0; v2 < g.vertex_count(); ++v2) {
    d.vertex_to_parent[v2] = v2;
    d.vertex_from_parent[v2] = v2;
  }
  return d;
}

}  // namespace mixedcut
