#pragma once

// Brute-force reference computations for the test suite. These stay
// independent of the flow kernel: reachability is a fixpoint loop over the
// edge list and everything else is subset or tuple enumeration.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mixedcut/multigraph.hpp"

namespace oracle {

using mixedcut::EdgeId;
using mixedcut::MultiGraph;
using mixedcut::VertexId;

inline std::uint64_t next_same_popcount(std::uint64_t x) {
  std::uint64_t lo = x & (~x + 1);
  std::uint64_t lz = x + lo;
  if (lz == 0) return 0;
  return lz | (((x ^ lz) / lo) >> 2);
}

struct Tiny {
  int n;
  int m;
  std::vector<std::pair<int, int>> edges;

  explicit Tiny(const MultiGraph& g)
      : n(g.vertex_count()), m(g.edge_count()), edges(g.edge_list()) {
    if (n > 30 || m > 30) throw std::invalid_argument("oracle graphs are capped at 30/30");
  }

  bool separated(int s, int t, std::uint32_t wmask, std::uint32_t fmask) const {
    std::uint32_t reach = 1u << s;
    bool grew = true;
    while (grew) {
      grew = false;
      for (int e = 0; e < m; ++e) {
        if (fmask >> e & 1) continue;
        auto [u, v] = edges[e];
        if (wmask >> u & 1 || wmask >> v & 1) continue;
        bool bu = reach >> u & 1, bv = reach >> v & 1;
        if (bu != bv) {
          reach |= (1u << u) | (1u << v);
          grew = true;
        }
      }
    }
    return !(reach >> t & 1);
  }
};

// Enumerates subsets of `items` of the given size, calling fn with each
// mask over item indices. fn returning true stops the sweep.
inline bool for_each_subset(int universe, int size, const std::function<bool(std::uint64_t)>& fn) {
  if (size == 0) return fn(0);
  if (size > universe) return false;
  std::uint64_t mask = (std::uint64_t{1} << size) - 1;
  std::uint64_t limit = std::uint64_t{1} << universe;
  while (mask < limit && mask != 0) {
    if (fn(mask)) return true;
    mask = next_same_popcount(mask);
  }
  return false;
}

// Minimum |W| + |F| over all disconnecting pairs, by direct enumeration in
// increasing cardinality.
inline int min_disconnecting_cardinality(const MultiGraph& g, VertexId s, VertexId t) {
  Tiny tiny(g);
  std::vector<int> candidates;
  for (int v = 0; v < tiny.n; ++v)
    if (v != s && v != t) candidates.push_back(v);
  int cv = static_cast<int>(candidates.size());
  for (int c = 0;; ++c) {
    for (int j = 0; j <= std::min(c, cv); ++j) {
      bool hit = for_each_subset(cv, j, [&](std::uint64_t wsub) {
        std::uint32_t wmask = 0;
        for (int i = 0; i < cv; ++i)
          if (wsub >> i & 1) wmask |= 1u << candidates[i];
        return for_each_subset(tiny.m, c - j, [&](std::uint64_t fmask) {
          return tiny.separated(s, t, wmask, static_cast<std::uint32_t>(fmask));
        });
      });
      if (hit) return c;
    }
    if (c > tiny.n + tiny.m) throw std::logic_error("no disconnecting pair found");
  }
}

// Minimum |F| over pairs with |W| = k exactly.
inline int min_size_at_order_brute(const MultiGraph& g, VertexId s, VertexId t, int k) {
  Tiny tiny(g);
  std::vector<int> candidates;
  for (int v = 0; v < tiny.n; ++v)
    if (v != s && v != t) candidates.push_back(v);
  int cv = static_cast<int>(candidates.size());
  if (k > cv) throw std::invalid_argument("order exceeds available vertices");
  int best = tiny.m + 1;
  for_each_subset(cv, k, [&](std::uint64_t wsub) {
    std::uint32_t wmask = 0;
    for (int i = 0; i < cv; ++i)
      if (wsub >> i & 1) wmask |= 1u << candidates[i];
    for (int c = 0; c < best; ++c) {
      bool hit = for_each_subset(tiny.m, c, [&](std::uint64_t fmask) {
        return tiny.separated(s, t, wmask, static_cast<std::uint32_t>(fmask));
      });
      if (hit) {
        best = c;
        break;
      }
    }
    return false;
  });
  return best;
}

// Minimum |F| with W = emptyset; the edge side of the classic theorem.
inline int min_edge_separator_brute(const MultiGraph& g, VertexId s, VertexId t) {
  return min_size_at_order_brute(g, s, t, 0);
}

// Existence of k+l edge-disjoint s-t paths of which k+1 (k when l = 0)
// are internally disjoint; plain enumeration over edge-disjoint families
// with no skein-first structure.
inline bool path_system_exists_brute(const MultiGraph& g, VertexId s, VertexId t, int k, int l) {
  if (g.vertex_count() > 30 || g.edge_count() > 30)
    throw std::invalid_argument("oracle graphs are capped at 30/30");
  struct Enumerated {
    std::vector<std::uint32_t> interior;
    std::vector<std::uint32_t> edge;
  } all;
  {
    std::vector<std::vector<std::pair<int, int>>> adj(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v)
      for (EdgeId e : g.incident(v)) adj[v].emplace_back(g.other_endpoint(e, v), e);
    std::vector<char> used(g.vertex_count(), 0);
    std::function<void(int, std::uint32_t, std::uint32_t)> dfs =
        [&](int v, std::uint32_t interior, std::uint32_t edges) {
          if (v == t) {
            all.interior.push_back(interior & ~((1u << s) | (1u << t)));
            all.edge.push_back(edges);
            return;
          }
          for (auto [w, e] : adj[v]) {
            if (used[w]) continue;
            used[w] = 1;
            dfs(w, interior | (1u << w), edges | (1u << e));
            used[w] = 0;
          }
        };
    used[s] = 1;
    dfs(s, 0, 0);
  }
  int need = k + l;
  int need_disjoint = l == 0 ? k : k + 1;
  std::vector<int> chosen;
  std::function<bool(std::size_t, std::uint32_t)> pick = [&](std::size_t from,
                                                             std::uint32_t used_edges) {
    if (static_cast<int>(chosen.size()) == need) {
      // some subset of need_disjoint internally disjoint members?
      int cnt = static_cast<int>(chosen.size());
      std::vector<int> sub;
      std::function<bool(int, int)> sub_pick = [&](int start, int remaining) {
        if (remaining == 0) return true;
        for (int i = start; i < cnt; ++i) {
          bool ok = true;
          for (int j : sub)
            if (all.interior[chosen[i]] & all.interior[chosen[j]]) ok = false;
          if (!ok) continue;
          sub.push_back(i);
          if (sub_pick(i + 1, remaining - 1)) return true;
          sub.pop_back();
        }
        return false;
      };
      return sub_pick(0, need_disjoint);
    }
    for (std::size_t i = from; i < all.edge.size(); ++i) {
      if (all.edge[i] & used_edges) continue;
      chosen.push_back(static_cast<int>(i));
      if (pick(i + 1, used_edges | all.edge[i])) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (need == 0) return true;
  return pick(0, 0);
}

}  // namespace oracle
