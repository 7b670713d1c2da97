#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mixedcut/mixed_connectivity.hpp"
#include "mixedcut/multigraph.hpp"
#include "mixedcut/path_system.hpp"

namespace mixedcut {

struct TreeDecomposition {
  std::vector<std::vector<VertexId>> bags;      // sorted vertex sets, one per node
  std::vector<std::pair<int, int>> tree_edges;  // undirected node pairs

  int node_count() const { return static_cast<int>(bags.size()); }

  int width() const {
    std::size_t biggest = 0;
    for (const auto& b : bags) biggest = std::max(biggest, b.size());
    return static_cast<int>(biggest) - 1;
  }
};

inline Verification validate_decomposition(const MultiGraph& g, const TreeDecomposition& d) {
  Verification v;
  int nodes = d.node_count();
  if (nodes == 0) {
    v.fail("decomposition has no nodes");
    return v;
  }
  for (auto [i, j] : d.tree_edges)
    if (i < 0 || j < 0 || i >= nodes || j >= nodes || i == j)
      v.fail("bad tree edge (" + std::to_string(i) + "," + std::to_string(j) + ")");
  if (!v.ok) return v;
  if (static_cast<int>(d.tree_edges.size()) != nodes - 1)
    v.fail("tree must have exactly node_count-1 edges");
  std::vector<std::vector<int>> adj(nodes);
  for (auto [i, j] : d.tree_edges) {
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  {
    std::vector<char> seen(nodes, 0);
    std::vector<int> queue = {0};
    seen[0] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (int w : adj[queue[head]])
        if (!seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
    for (int i = 0; i < nodes; ++i)
      if (!seen[i]) v.fail("tree is disconnected at node " + std::to_string(i));
  }
  std::vector<char> covered(g.vertex_count(), 0);
  for (const auto& bag : d.bags)
    for (VertexId x : bag) {
      if (x < 0 || x >= g.vertex_count()) {
        v.fail("bag vertex out of range");
        return v;
      }
      covered[x] = 1;
    }
  for (VertexId x = 0; x < g.vertex_count(); ++x)
    if (!covered[x]) v.fail("vertex " + std::to_string(x) + " is in no bag");
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto [a, b] = g.endpoints(e);
    bool housed = false;
    for (const auto& bag : d.bags)
      if (std::binary_search(bag.begin(), bag.end(), a) &&
          std::binary_search(bag.begin(), bag.end(), b))
        housed = true;
    if (!housed)
      v.fail("edge " + std::to_string(a) + "-" + std::to_string(b) + " not covered by any bag");
  }
  // the nodes holding each vertex must induce a connected subtree
  for (VertexId x = 0; x < g.vertex_count(); ++x) {
    std::vector<int> holders;
    for (int i = 0; i < nodes; ++i)
      if (std::binary_search(d.bags[i].begin(), d.bags[i].end(), x)) holders.push_back(i);
    if (holders.empty()) continue;
    std::set<int> holder_set(holders.begin(), holders.end());
    std::vector<int> queue = {holders.front()};
    std::set<int> seen = {holders.front()};
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (int w : adj[queue[head]])
        if (holder_set.count(w) && !seen.count(w)) {
          seen.insert(w);
          queue.push_back(w);
        }
    if (seen.size() != holder_set.size())
      v.fail("vertex " + std::to_string(x) + " does not induce a subtree");
  }
  return v;
}

// Contracts tree edges whose one bag contains the other until no bag is a
// subset of a neighboring bag. Width never increases.
inline TreeDecomposition make_small(const TreeDecomposition& d) {
  int nodes = d.node_count();
  std::vector<std::vector<VertexId>> bags = d.bags;
  std::vector<std::set<int>> adj(nodes);
  for (auto [i, j] : d.tree_edges) {
    adj[i].insert(j);
    adj[j].insert(i);
  }
  std::vector<char> alive(nodes, 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < nodes && !changed; ++i) {
      if (!alive[i]) continue;
      for (int j : adj[i]) {
        if (std::includes(bags[j].begin(), bags[j].end(), bags[i].begin(), bags[i].end())) {
          // fold i into j
          for (int w : adj[i]) {
            if (w == j) continue;
            adj[w].erase(i);
            adj[w].insert(j);
            adj[j].insert(w);
          }
          adj[j].erase(i);
          alive[i] = 0;
          adj[i].clear();
          changed = true;
          break;
        }
      }
    }
  }
  TreeDecomposition out;
  std::vector<int> relabel(nodes, -1);
  for (int i = 0; i < nodes; ++i) {
    if (!alive[i]) continue;
    relabel[i] = out.node_count();
    out.bags.push_back(bags[i]);
  }
  for (int i = 0; i < nodes; ++i) {
    if (!alive[i]) continue;
    for (int j : adj[i])
      if (relabel[i] < relabel[j]) out.tree_edges.emplace_back(relabel[i], relabel[j]);
  }
  return out;
}

namespace detail {

// Neighborhood of v reachable through the eliminated set S, and nothing
// else; the fill degree v would have if eliminated right after S.
inline std::uint32_t elimination_front(const std::vector<std::uint32_t>& adj, int v,
                                       std::uint32_t eliminated) {
  std::uint32_t reach = std::uint32_t{1} << v;
  std::uint32_t frontier = reach;
  std::uint32_t touched = 0;
  while (frontier) {
    std::uint32_t next = 0;
    std::uint32_t f = frontier;
    while (f) {
      int u = std::countr_zero(f);
      f &= f - 1;
      touched |= adj[u];
      next |= adj[u] & eliminated & ~reach;
    }
    reach |= next;
    frontier = next;
  }
  return touched & ~eliminated & ~(std::uint32_t{1} << v);
}

}  // namespace detail

// Exact treewidth on the underlying simple graph via dynamic programming
// over elimination prefixes, with the decomposition rebuilt from the
// recovered ordering. Desk scale: n <= 20.
inline std::pair<int, TreeDecomposition> treewidth_exact(const MultiGraph& g) {
  int n = g.vertex_count();
  if (n < 1) throw std::invalid_argument("graph must have at least one vertex");
  if (n > 20) throw std::invalid_argument("exact treewidth is capped at 20 vertices");

  std::vector<std::uint32_t> adj(n, 0);
  for (const auto& [u, v] : g.edge_list()) {
    adj[u] |= std::uint32_t{1} << v;
    adj[v] |= std::uint32_t{1} << u;
  }

  std::uint32_t full = (std::uint32_t{1} << n) - 1;
  std::vector<std::int8_t> tw(std::size_t{1} << n, 0);
  tw[0] = -1;
  for (std::uint32_t S = 1; S <= full; ++S) {
    int best = n + 1;
    std::uint32_t bits = S;
    while (bits) {
      int v = std::countr_zero(bits);
      bits &= bits - 1;
      std::uint32_t rest = S & ~(std::uint32_t{1} << v);
      int q = std::popcount(detail::elimination_front(adj, v, rest));
      int cand = std::max<int>(tw[rest], q);
      best = std::min(best, cand);
    }
    tw[S] = static_cast<std::int8_t>(best);
  }

  // recover an ordering, smallest vertex id among the minimizers
  std::vector<int> order;
  std::uint32_t S = full;
  while (S) {
    int chosen = -1;
    std::uint32_t bits = S;
    while (bits) {
      int v = std::countr_zero(bits);
      bits &= bits - 1;
      std::uint32_t rest = S & ~(std::uint32_t{1} << v);
      int q = std::popcount(detail::elimination_front(adj, v, rest));
      if (std::max<int>(tw[rest], q) == tw[S]) {
        chosen = v;
        break;
      }
    }
    order.push_back(chosen);
    S &= ~(std::uint32_t{1} << chosen);
  }
  std::reverse(order.begin(), order.end());  // elimination order, first first

  // replay the elimination to build the clique tree
  std::vector<std::uint32_t> fill = adj;
  std::vector<std::uint32_t> cliques(n);
  for (int i = 0; i < n; ++i) {
    int v = order[i];
    cliques[i] = fill[v];
    std::uint32_t c = fill[v];
    while (c) {
      int u = std::countr_zero(c);
      c &= c - 1;
      fill[u] |= fill[v] & ~(std::uint32_t{1} << u);
      fill[u] &= ~(std::uint32_t{1} << v);
    }
    fill[v] = 0;
  }

  TreeDecomposition d;
  std::vector<int> position(n);
  for (int i = 0; i < n; ++i) position[order[i]] = i;
  for (int i = 0; i < n; ++i) {
    std::vector<VertexId> bag = {order[i]};
    std::uint32_t c = cliques[i];
    while (c) {
      bag.push_back(std::countr_zero(c));
      c &= c - 1;
    }
    std::sort(bag.begin(), bag.end());
    d.bags.push_back(std::move(bag));
  }
  for (int i = 0; i < n; ++i) {
    if (cliques[i]) {
      int parent = n;
      std::uint32_t c = cliques[i];
      while (c) {
        int u = std::countr_zero(c);
        c &= c - 1;
        parent = std::min(parent, position[u]);
      }
      d.tree_edges.emplace_back(i, parent);
    } else if (i + 1 < n) {
      d.tree_edges.emplace_back(i, i + 1);
    }
  }
  return {tw[full], d};
}

// Either a width-<=3 decomposition in which no bag holds both terminals,
// or a separator B with s, t in B, |B| <= 3, and G - B disconnected.
struct SeparatorOrDecomposition {
  std::optional<TreeDecomposition> decomposition;
  std::vector<VertexId> separator;
};

inline SeparatorOrDecomposition decompose_or_shared_separator(const MultiGraph& g, VertexId s,
                                                              VertexId t) {
  if (g.adjacent(s, t)) throw std::invalid_argument("terminals must be non-adjacent");
  auto [width, raw] = treewidth_exact(g);
  if (width > 3) throw std::invalid_argument("graph treewidth exceeds 3");
  TreeDecomposition d = make_small(raw);

  for (int round = 0; round < 2; ++round) {
    std::vector<int> shared;
    for (int i = 0; i < d.node_count(); ++i)
      if (std::binary_search(d.bags[i].begin(), d.bags[i].end(), s) &&
          std::binary_search(d.bags[i].begin(), d.bags[i].end(), t))
        shared.push_back(i);
    if (shared.empty()) return {d, {}};
    if (shared.size() == 1) {
      // split the lone shared node into an s-copy and a t-copy
      int i = shared.front();
      std::vector<VertexId> bag_s, bag_t;
      for (VertexId x : d.bags[i]) {
        if (x != t) bag_s.push_back(x);
        if (x != s) bag_t.push_back(x);
      }
      int is = d.node_count();
      int it = is + 1;
      d.bags.push_back(bag_s);
      d.bags.push_back(bag_t);
      std::vector<std::pair<int, int>> edges;
      for (auto [x, y] : d.tree_edges) {
        if (x != i && y != i) {
          edges.emplace_back(x, y);
          continue;
        }
        int other = x == i ? y : x;
        bool wants_s = std::binary_search(d.bags[other].begin(), d.bags[other].end(), s);
        edges.emplace_back(other, wants_s ? is : it);
      }
      edges.emplace_back(is, it);
      // drop node i, compact ids
      TreeDecomposition next;
      std::vector<int> relabel(d.node_count(), -1);
      for (int x = 0; x < d.node_count(); ++x) {
        if (x == i) continue;
        relabel[x] = next.node_count();
        next.bags.push_back(d.bags[x]);
      }
      for (auto [x, y] : edges) next.tree_edges.emplace_back(relabel[x], relabel[y]);
      d = std::move(next);
      continue;
    }
    // at least two shared bags: they induce a subtree, take an edge inside
    std::set<int> shared_set(shared.begin(), shared.end());
    for (auto [i, j] : d.tree_edges) {
      if (!shared_set.count(i) || !shared_set.count(j)) continue;
      std::vector<VertexId> b;
      std::set_intersection(d.bags[i].begin(), d.bags[i].end(), d.bags[j].begin(),
                            d.bags[j].end(), std::back_inserter(b));
      if (static_cast<int>(b.size()) > 3) continue;  // small decomposition forbids this
      Masks masks = Masks::none(g);
      for (VertexId x : b) masks.vertex[x] = 1;
      if (components(g, masks).second >= 2) return {std::nullopt, b};
    }
    throw std::logic_error("shared bags yielded no usable separator");
  }
  throw std::logic_error("node splitting failed to settle");
}

}  // namespace mixedcut
