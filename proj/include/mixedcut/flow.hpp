#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mixedcut/multigraph.hpp"
#include "mixedcut/path.hpp"

namespace mixedcut {
namespace detail {

// Unit-capacity Dinic. Undirected edges become a mutually-residual arc
// pair (one shared capacity unit); directed arcs get a zero-capacity
// reverse. Arc labels carry the originating EdgeId (-1 for auxiliary
// arcs) so flows decompose back into graph paths.
class UnitFlowNet {
public:
  struct Arc {
    int to;
    int cap;
    int init;
    int rev;
    EdgeId label;
  };

  explicit UnitFlowNet(int nodes) : adj_(nodes) {}

  int node_count() const { return static_cast<int>(adj_.size()); }

  void add_directed(int u, int v, int cap, EdgeId label) {
    adj_[u].push_back({v, cap, cap, static_cast<int>(adj_[v].size()), label});
    adj_[v].push_back({u, 0, 0, static_cast<int>(adj_[u].size()) - 1, -1});
  }

  void add_undirected_unit(int u, int v, EdgeId label) {
    adj_[u].push_back({v, 1, 1, static_cast<int>(adj_[v].size()), label});
    adj_[v].push_back({u, 1, 1, static_cast<int>(adj_[u].size()) - 1, label});
  }

  // Fully used directed arc with no residual undo; the unit it carries is
  // fixed for the rest of the computation.
  void add_saturated_locked(int u, int v, EdgeId label) {
    adj_[u].push_back({v, 0, 1, static_cast<int>(adj_[v].size()), label});
    adj_[v].push_back({u, 0, 0, static_cast<int>(adj_[u].size()) - 1, -1});
  }

  int max_flow(int s, int t, int limit = std::numeric_limits<int>::max()) {
    int total = 0;
    while (total < limit && bfs(s, t)) {
      iter_.assign(adj_.size(), 0);
      while (total < limit) {
        int pushed = dfs(s, t, 1);
        if (pushed == 0) break;
        total += pushed;
      }
    }
    return total;
  }

  // Positive net flow currently on each arc.
  std::vector<std::vector<int>> net_flows() const {
    std::vector<std::vector<int>> f(adj_.size());
    for (std::size_t v = 0; v < adj_.size(); ++v) {
      f[v].resize(adj_[v].size());
      for (std::size_t i = 0; i < adj_[v].size(); ++i)
        f[v][i] = std::max(0, adj_[v][i].init - adj_[v][i].cap);
    }
    return f;
  }

  // Nodes reachable from s through arcs with residual capacity.
  std::vector<char> residual_reachable(int s) const {
    std::vector<char> seen(adj_.size(), 0);
    std::vector<int> queue = {s};
    seen[s] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (const Arc& a : adj_[queue[head]]) {
        if (a.cap > 0 && !seen[a.to]) {
          seen[a.to] = 1;
          queue.push_back(a.to);
        }
      }
    }
    return seen;
  }

  // Decomposes `value` units of s-t flow into paths, cancelling any flow
  // cycles met along the way. At each node the arc with the smallest
  // label (splits first, then lowest EdgeId) is taken, which makes the
  // result independent of augmentation history.
  std::vector<std::vector<std::pair<EdgeId, int>>> decompose(int s, int t, int value) {
    auto flow = net_flows();
    std::vector<std::vector<std::pair<EdgeId, int>>> out;
    for (int unit = 0; unit < value; ++unit) {
      std::vector<int> nodes = {s};
      std::vector<std::pair<int, int>> arcs;  // (node, arc index)
      while (nodes.back() != t) {
        int v = nodes.back();
        int best = -1;
        for (std::size_t i = 0; i < adj_[v].size(); ++i) {
          if (flow[v][i] <= 0) continue;
          if (best == -1 || adj_[v][i].label < adj_[v][best].label) best = static_cast<int>(i);
        }
        if (best == -1) throw std::logic_error("flow decomposition ran out of arcs");
        int w = adj_[v][best].to;
        auto pos = std::find(nodes.begin(), nodes.end(), w);
        if (pos != nodes.end()) {
          // cancel the cycle w .. v -> w
          std::size_t p = static_cast<std::size_t>(pos - nodes.begin());
          for (std::size_t j = p; j < arcs.size(); ++j) flow[arcs[j].first][arcs[j].second]--;
          flow[v][best]--;
          nodes.resize(p + 1);
          arcs.resize(p);
          continue;
        }
        arcs.emplace_back(v, best);
        nodes.push_back(w);
      }
      std::vector<std::pair<EdgeId, int>> steps;
      for (auto [v, i] : arcs) {
        flow[v][i]--;
        steps.emplace_back(adj_[v][i].label, adj_[v][i].to);
      }
      out.push_back(std::move(steps));
    }
    return out;
  }

private:
  bool bfs(int s, int t) {
    level_.assign(adj_.size(), -1);
    std::vector<int> queue = {s};
    level_[s] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      int v = queue[head];
      for (const Arc& a : adj_[v]) {
        if (a.cap > 0 && level_[a.to] == -1) {
          level_[a.to] = level_[v] + 1;
          queue.push_back(a.to);
        }
      }
    }
    return level_[t] != -1;
  }

  int dfs(int v, int t, int f) {
    if (v == t) return f;
    for (int& i = iter_[v]; i < static_cast<int>(adj_[v].size()); ++i) {
      Arc& a = adj_[v][i];
      if (a.cap <= 0 || level_[a.to] != level_[v] + 1) continue;
      int d = dfs(a.to, t, std::min(f, a.cap));
      if (d > 0) {
        a.cap -= d;
        adj_[a.to][a.rev].cap += d;
        return d;
      }
    }
    return 0;
  }

  std::vector<std::vector<Arc>> adj_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

// Flat network on the graph's vertices; realizes edge-disjointness.
inline UnitFlowNet edge_network(const MultiGraph& g, const Masks& masks) {
  UnitFlowNet net(g.vertex_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (masks.edge_removed(e)) continue;
    auto [u, v] = g.endpoints(e);
    if (masks.vertex_removed(u) || masks.vertex_removed(v)) continue;
    net.add_undirected_unit(u, v, e);
  }
  return net;
}

// Node-split network: in(v) = 2v, out(v) = 2v+1, internal vertices get a
// unit split arc. Source is out(s), sink is in(t); s and t carry no split
// arc, so their copies never constrain the flow.
inline UnitFlowNet split_network(const MultiGraph& g, VertexId s, VertexId t,
                                 const Masks& masks) {
  UnitFlowNet net(2 * g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (v == s || v == t || masks.vertex_removed(v)) continue;
    net.add_directed(2 * v, 2 * v + 1, 1, -1);
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (masks.edge_removed(e)) continue;
    auto [u, v] = g.endpoints(e);
    if (masks.vertex_removed(u) || masks.vertex_removed(v)) continue;
    net.add_directed(2 * u + 1, 2 * v, 1, e);
    net.add_directed(2 * v + 1, 2 * u, 1, e);
  }
  return net;
}

inline std::vector<Path> steps_to_paths(
    const std::vector<std::vector<std::pair<EdgeId, int>>>& units, VertexId start,
    const std::function<VertexId(int)>& vertex_of) {
  std::vector<Path> paths;
  for (const auto& steps : units) {
    Path p;
    p.vertices.push_back(start);
    for (auto [label, node] : steps) {
      if (label < 0) continue;
      p.edges.push_back(label);
      p.vertices.push_back(vertex_of(node));
    }
    paths.push_back(std::move(p));
  }
  std::sort(paths.begin(), paths.end());
  return paths;
}

}  // namespace detail

inline int lambda_value(const MultiGraph& g, VertexId s, VertexId t,
                        const Masks& masks = {}) {
  if (s == t) throw std::invalid_argument("terminals must be distinct");
  auto net = detail::edge_network(g, masks);
  return net.max_flow(s, t);
}

// Maximum set of pairwise edge-disjoint s-t paths; its size is the
// minimum edge separator by Menger.
inline std::vector<Path> max_edge_disjoint_paths(const MultiGraph& g, VertexId s, VertexId t,
                                                 const Masks& masks = {}) {
  if (s == t) throw std::invalid_argument("terminals must be distinct");
  auto net = detail::edge_network(g, masks);
  int value = net.max_flow(s, t);
  auto units = net.decompose(s, t, value);
  return detail::steps_to_paths(units, s, [](int node) { return node; });
}

// A minimum s-t edge cut: the alive edges leaving the residual-reachable
// side after a maximum flow.
inline std::vector<EdgeId> min_edge_cut(const MultiGraph& g, VertexId s, VertexId t,
                                        const Masks& masks = {}) {
  if (s == t) throw std::invalid_argument("terminals must be distinct");
  auto net = detail::edge_network(g, masks);
  net.max_flow(s, t);
  auto side = net.residual_reachable(s);
  std::vector<EdgeId> cut;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (masks.edge_removed(e)) continue;
    auto [u, v] = g.endpoints(e);
    if (masks.vertex_removed(u) || masks.vertex_removed(v)) continue;
    if (side[u] != side[v]) cut.push_back(e);
  }
  return cut;
}

// Maximum set of internally disjoint s-t paths (vertex capacities via node
// splitting; parallel s-t edges each count once). Its size equals the
// minimum s-t disconnecting-pair cardinality.
inline std::vector<Path> max_internally_disjoint_paths(const MultiGraph& g, VertexId s,
                                                       VertexId t, const Masks& masks = {}) {
  if (s == t) throw std::invalid_argument("terminals must be distinct");
  auto net = detail::split_network(g, s, t, masks);
  int value = net.max_flow(2 * s + 1, 2 * t);
  auto units = net.decompose(2 * s + 1, 2 * t, value);
  return detail::steps_to_paths(units, s, [](int node) { return node / 2; });
}

inline int kappa_value(const MultiGraph& g, VertexId s, VertexId t, const Masks& masks = {}) {
  if (s == t) throw std::invalid_argument("terminals must be distinct");
  auto net = detail::split_network(g, s, t, masks);
  return net.max_flow(2 * s + 1, 2 * t);
}

// r internally disjoint s-t paths, one of them through `forced` when
// requested.
//
// A unit is pre-saturated through the forced vertex's split arc with no
// residual undo and the flow pushed to r on top of it. That relaxation is
// sound in both directions as a bound, but the forced unit can come to
// rest on a flow cycle through the forced vertex (two parallel edges
// suffice), in which case the decomposition misses it and the flow value
// alone cannot tell whether a forced skein exists. That residue case is
// settled exactly by enumerating the candidate paths through the vertex.
inline std::optional<std::vector<Path>> find_skein(const MultiGraph& g, VertexId s, VertexId t,
                                                   int r, VertexId forced = -1,
                                                   const Masks& masks = {}) {
  if (s == t) throw std::invalid_argument("terminals must be distinct");
  if (r < 1) throw std::invalid_argument("skein size must be at least 1");
  if (forced == s || forced == t)
    throw std::invalid_argument("forced vertex must differ from the terminals");
  if (forced >= 0 && masks.vertex_removed(forced)) return std::nullopt;

  detail::UnitFlowNet net(2 * g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (v == s || v == t || masks.vertex_removed(v)) continue;
    if (v == forced)
      net.add_saturated_locked(2 * v, 2 * v + 1, -1);
    else
      net.add_directed(2 * v, 2 * v + 1, 1, -1);
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (masks.edge_removed(e)) continue;
    auto [u, v] = g.endpoints(e);
    if (masks.vertex_removed(u) || masks.vertex_removed(v)) continue;
    net.add_directed(2 * u + 1, 2 * v, 1, e);
    net.add_directed(2 * v + 1, 2 * u, 1, e);
  }

  int value = 0;
  if (forced >= 0) {
    if (net.max_flow(2 * s + 1, 2 * forced, 1) < 1) return std::nullopt;
    if (net.max_flow(2 * forced + 1, 2 * t, 1) < 1) return std::nullopt;
    value = 1;
  }
  if (value < r) value += net.max_flow(2 * s + 1, 2 * t, r - value);
  if (value < r) return std::nullopt;

  auto units = net.decompose(2 * s + 1, 2 * t, value);
  auto paths = detail::steps_to_paths(units, s, [](int node) { return node / 2; });
  if (forced < 0) return paths;
  for (const Path& p : paths)
    if (position_of(p, forced)) return paths;

  // the forced unit circulated: decide exactly
  for (const Path& host : enumerate_paths(g, s, t, masks)) {
    if (!position_of(host, forced)) continue;
    Masks rest = masks;
    if (rest.vertex.empty()) rest.vertex.assign(g.vertex_count(), 0);
    for (std::size_t i = 1; i + 1 < host.vertices.size(); ++i) rest.vertex[host.vertices[i]] = 1;
    if (r == 1) return std::vector<Path>{host};
    auto others = find_skein(g, s, t, r - 1, -1, rest);
    if (!others) continue;
    others->push_back(host);
    std::sort(others->begin(), others->end());
    return others;
  }
  return std::nullopt;
}

}  // namespace mixedcut
