#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "mixedcut/multigraph.hpp"

namespace mixedcut {

// An open simple path: vertices v0..vk all distinct, edges[i] joins
// vertices[i] and vertices[i+1]. A single vertex with no edges is the
// degenerate zero-length path.
struct Path {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;

  VertexId front() const { return vertices.front(); }
  VertexId back() const { return vertices.back(); }
  int length() const { return static_cast<int>(edges.size()); }

  bool operator==(const Path& o) const {
    return vertices == o.vertices && edges == o.edges;
  }
  bool operator<(const Path& o) const {
    if (vertices != o.vertices) return vertices < o.vertices;
    return edges < o.edges;
  }
};

inline bool path_valid(const MultiGraph& g, const Path& p) {
  if (p.vertices.empty()) return false;
  if (p.vertices.size() != p.edges.size() + 1) return false;
  std::set<VertexId> seen;
  for (VertexId v : p.vertices) {
    if (v < 0 || v >= g.vertex_count()) return false;
    if (!seen.insert(v).second) return false;
  }
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    EdgeId e = p.edges[i];
    if (e < 0 || e >= g.edge_count()) return false;
    auto [a, b] = g.endpoints(e);
    VertexId x = p.vertices[i], y = p.vertices[i + 1];
    if (!((a == x && b == y) || (a == y && b == x))) return false;
  }
  return true;
}

// Subpath between vertex positions i..j (inclusive).
inline Path subpath(const Path& p, std::size_t i, std::size_t j) {
  if (i > j || j >= p.vertices.size()) throw std::invalid_argument("bad subpath range");
  Path out;
  out.vertices.assign(p.vertices.begin() + i, p.vertices.begin() + j + 1);
  out.edges.assign(p.edges.begin() + i, p.edges.begin() + j);
  return out;
}

inline std::optional<std::size_t> position_of(const Path& p, VertexId v) {
  auto it = std::find(p.vertices.begin(), p.vertices.end(), v);
  if (it == p.vertices.end()) return std::nullopt;
  return static_cast<std::size_t>(it - p.vertices.begin());
}

inline Path suffix_from(const Path& p, VertexId v) {
  auto pos = position_of(p, v);
  if (!pos) throw std::invalid_argument("vertex not on path");
  return subpath(p, *pos, p.vertices.size() - 1);
}

inline Path prefix_to(const Path& p, VertexId v) {
  auto pos = position_of(p, v);
  if (!pos) throw std::invalid_argument("vertex not on path");
  return subpath(p, 0, *pos);
}

inline Path concatenate(const Path& a, const Path& b) {
  if (a.back() != b.front()) throw std::invalid_argument("paths do not share a junction");
  Path out = a;
  out.vertices.insert(out.vertices.end(), b.vertices.begin() + 1, b.vertices.end());
  out.edges.insert(out.edges.end(), b.edges.begin(), b.edges.end());
  return out;
}

inline bool edge_disjoint(const Path& a, const Path& b) {
  std::set<EdgeId> ea(a.edges.begin(), a.edges.end());
  for (EdgeId e : b.edges)
    if (ea.count(e)) return false;
  return true;
}

// Internally disjoint s-t paths share only their common endpoints.
inline bool internally_disjoint(const Path& a, const Path& b) {
  std::set<VertexId> interior;
  for (std::size_t i = 1; i + 1 < a.vertices.size(); ++i) interior.insert(a.vertices[i]);
  for (std::size_t i = 1; i + 1 < b.vertices.size(); ++i)
    if (interior.count(b.vertices[i])) return false;
  return edge_disjoint(a, b);
}

// r internally disjoint s-t paths.
struct Skein {
  std::vector<Path> paths;
};

inline bool skein_valid(const MultiGraph& g, const Skein& sk, VertexId s, VertexId t) {
  for (const Path& p : sk.paths) {
    if (!path_valid(g, p)) return false;
    if (p.front() != s || p.back() != t) return false;
  }
  for (std::size_t i = 0; i < sk.paths.size(); ++i)
    for (std::size_t j = i + 1; j < sk.paths.size(); ++j)
      if (!internally_disjoint(sk.paths[i], sk.paths[j])) return false;
  return true;
}

// All simple s-t paths in lexicographic (vertex sequence, edge sequence)
// order. Guarded against explosion; this backs the desk-scale searches.
inline std::vector<Path> enumerate_paths(const MultiGraph& g, VertexId s, VertexId t,
                                         const Masks& masks = {},
                                         std::size_t cap = 2'000'000) {
  if (s == t) throw std::invalid_argument("terminals must be distinct");
  std::vector<std::vector<std::pair<VertexId, EdgeId>>> adj(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (masks.vertex_removed(v)) continue;
    for (EdgeId e : g.incident(v)) {
      if (masks.edge_removed(e)) continue;
      VertexId w = g.other_endpoint(e, v);
      if (masks.vertex_removed(w)) continue;
      adj[v].emplace_back(w, e);
    }
    std::sort(adj[v].begin(), adj[v].end());
  }
  std::vector<Path> out;
  std::vector<char> on_path(g.vertex_count(), 0);
  Path cur;
  cur.vertices.push_back(s);
  on_path[s] = 1;
  std::function<void(VertexId)> extend = [&](VertexId v) {
    if (v == t) {
      if (out.size() >= cap) throw std::runtime_error("path enumeration exceeded cap");
      out.push_back(cur);
      return;
    }
    for (auto [w, e] : adj[v]) {
      if (on_path[w]) continue;
      on_path[w] = 1;
      cur.vertices.push_back(w);
      cur.edges.push_back(e);
      extend(w);
      cur.vertices.pop_back();
      cur.edges.pop_back();
      on_path[w] = 0;
    }
  };
  if (!masks.vertex_removed(s) && !masks.vertex_removed(t)) extend(s);
  return out;
}

// Translates a path in a derived graph back into its parent's ids.
// Throws if the path uses an element without a parent counterpart.
inline Path path_to_parent(const DerivedGraph& d, const Path& p) {
  Path out;
  for (VertexId v : p.vertices) {
    VertexId pv = d.vertex_to_parent.at(v);
    if (pv < 0) throw std::logic_error("path uses a vertex absent from the parent graph");
    out.vertices.push_back(pv);
  }
  for (EdgeId e : p.edges) {
    EdgeId pe = d.edge_to_parent.at(e);
    if (pe < 0) throw std::logic_error("path uses an edge absent from the parent graph");
    out.edges.push_back(pe);
  }
  return out;
}

}  // namespace mixedcut
