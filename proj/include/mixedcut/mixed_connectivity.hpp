#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mixedcut/flow.hpp"
#include "mixedcut/multigraph.hpp"

namespace mixedcut {

// A witness (W, F): removing the vertices W and edges F leaves no path
// between the terminal sets. order = |W|, size = |F|.
struct DisconnectingPair {
  std::vector<VertexId> vertices;  // W, sorted
  std::vector<EdgeId> edges;       // F, sorted

  int order() const { return static_cast<int>(vertices.size()); }
  int size() const { return static_cast<int>(edges.size()); }
  int cardinality() const { return order() + size(); }
};

inline bool is_disconnecting(const MultiGraph& g, const std::vector<VertexId>& S,
                             const std::vector<VertexId>& T, const std::vector<VertexId>& W,
                             const std::vector<EdgeId>& F) {
  if (S.empty() || T.empty()) throw std::invalid_argument("terminal sets must be non-empty");
  for (VertexId s : S)
    for (VertexId t : T)
      if (s == t) throw std::invalid_argument("terminal sets must be disjoint");
  for (VertexId w : W) {
    if (w < 0 || w >= g.vertex_count()) throw std::invalid_argument("W vertex out of range");
    for (VertexId s : S)
      if (w == s) throw std::invalid_argument("W must avoid the terminals");
    for (VertexId t : T)
      if (w == t) throw std::invalid_argument("W must avoid the terminals");
  }
  Masks masks = Masks::none(g);
  for (VertexId w : W) masks.vertex[w] = 1;
  for (EdgeId f : F) masks.edge.at(f) = 1;
  auto reach = reachable_from(g, S, masks);
  for (VertexId t : T)
    if (reach[t]) return false;
  return true;
}

struct MinSizeResult {
  int size = 0;  // minimum |F| over all W of the requested order
  DisconnectingPair witness;
};

namespace detail {

// Minimum separating edge count at vertex budget k, with W drawn from the
// vertices outside `forbidden`. Subsets are enumerated in colex order
// (Gosper over the candidate indices); ties prefer the lexicographically
// smallest W, then the smallest F. Returns nullopt when fewer than k
// candidate vertices exist.
inline std::optional<MinSizeResult> min_size_at_order_impl(const MultiGraph& g, VertexId s,
                                                           VertexId t, int k,
                                                           const std::vector<char>& forbidden,
                                                           const Masks& base = {}) {
  std::vector<VertexId> candidates;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (forbidden[v] || base.vertex_removed(v)) continue;
    candidates.push_back(v);
  }
  int c = static_cast<int>(candidates.size());
  if (k > c) return std::nullopt;
  if (c > 62) throw std::invalid_argument("vertex budget enumeration limited to 62 candidates");

  std::optional<MinSizeResult> best;
  Masks masks = base;
  if (masks.vertex.empty()) masks.vertex.assign(g.vertex_count(), 0);
  auto consider = [&](std::uint64_t subset) {
    std::vector<VertexId> w;
    for (int i = 0; i < c; ++i)
      if (subset >> i & 1) w.push_back(candidates[i]);
    for (VertexId v : w) masks.vertex[v] = 1;
    int l = lambda_value(g, s, t, masks);
    if (!best || l < best->size || (l == best->size && w < best->witness.vertices)) {
      std::vector<EdgeId> cut = min_edge_cut(g, s, t, masks);
      std::sort(cut.begin(), cut.end());
      best = MinSizeResult{l, DisconnectingPair{std::move(w), std::move(cut)}};
      for (VertexId v : best->witness.vertices) masks.vertex[v] = 0;
      return;
    }
    for (VertexId v : w) masks.vertex[v] = 0;
  };

  if (k == 0) {
    consider(0);
  } else {
    std::uint64_t subset = (std::uint64_t{1} << k) - 1;
    std::uint64_t limit = std::uint64_t{1} << c;
    while (subset < limit) {
      consider(subset);
      std::uint64_t lo = subset & (~subset + 1);
      std::uint64_t lz = subset + lo;
      if (lz == 0) break;
      subset = lz | (((subset ^ lz) / lo) >> 2);
    }
  }
  return best;
}

}  // namespace detail

// l = min over all W (|W| = k, W avoiding {s, t}) of the edge connectivity
// of s and t in G - W. Exponential in k by design.
inline MinSizeResult min_size_at_order(const MultiGraph& g, VertexId s, VertexId t, int k) {
  if (s == t) throw std::invalid_argument("terminals must be distinct");
  if (k < 0 || k > g.vertex_count() - 2)
    throw std::invalid_argument("vertex budget must satisfy 0 <= k <= n-2");
  std::vector<char> forbidden(g.vertex_count(), 0);
  forbidden[s] = forbidden[t] = 1;
  auto res = detail::min_size_at_order_impl(g, s, t, k, forbidden);
  if (!res) throw std::logic_error("subset enumeration failed unexpectedly");
  return *res;
}

struct ProfileEntry {
  int k = 0;
  int l = 0;
  DisconnectingPair witness;
};

struct ConnectivityProfile {
  VertexId s = 0;
  VertexId t = 0;
  int st_multiplicity = 0;
  int kappa_reduced = 0;  // vertex connectivity of s,t once E(s,t) is removed
  std::vector<ProfileEntry> entries;
  std::vector<std::pair<int, int>> pairs;  // the connectivity pairs (k, l_k)

  const ProfileEntry& at_order(int k) const { return entries.at(static_cast<std::size_t>(k)); }
};

inline int kappa_reduced_value(const MultiGraph& g, VertexId s, VertexId t) {
  Masks masks = Masks::none(g);
  for (EdgeId e : g.edges_between(s, t)) masks.edge[e] = 1;
  return kappa_value(g, s, t, masks);
}

// Profile entries for k = 0..k_max (default: up to kappa_reduced) plus the
// derived connectivity pairs: (k, l_k) qualifies while the sizes still
// strictly decrease.
inline ConnectivityProfile connectivity_profile(const MultiGraph& g, VertexId s, VertexId t,
                                                int k_max = -1) {
  if (s == t) throw std::invalid_argument("terminals must be distinct");
  ConnectivityProfile profile;
  profile.s = s;
  profile.t = t;
  profile.st_multiplicity = g.multiplicity(s, t);
  profile.kappa_reduced = kappa_reduced_value(g, s, t);
  if (k_max < 0) k_max = profile.kappa_reduced;
  if (k_max > g.vertex_count() - 2)
    throw std::invalid_argument("k_max must not exceed n-2");
  for (int k = 0; k <= k_max; ++k) {
    auto r = min_size_at_order(g, s, t, k);
    profile.entries.push_back({k, r.size, std::move(r.witness)});
  }
  for (int k = 0; k <= std::min(k_max, profile.kappa_reduced); ++k) {
    if (k > 0 && profile.entries[k - 1].l <= profile.entries[k].l) continue;
    profile.pairs.emplace_back(k, profile.entries[k].l);
  }
  return profile;
}

// (k, l) is a connectivity pair iff a pair of order k and size l exists
// but none of order k and size l-1 nor order k-1 and size l.
inline bool is_connectivity_pair(const MultiGraph& g, VertexId s, VertexId t, int k, int l) {
  if (s == t) throw std::invalid_argument("terminals must be distinct");
  if (k < 0 || l < 0) throw std::invalid_argument("order and size must be non-negative");
  if (k > g.vertex_count() - 2)
    throw std::invalid_argument("order must satisfy k <= n-2");
  int lk = min_size_at_order(g, s, t, k).size;
  if (lk != l) return false;
  if (k == 0) return true;
  return min_size_at_order(g, s, t, k - 1).size > l;
}

// Every disconnecting pair contains all s-t edges, so they can be stripped
// up front; callers shift sizes by the count removed.
inline std::pair<MultiGraph, int> normalize_st_edges(const MultiGraph& g, VertexId s,
                                                     VertexId t) {
  if (s == t) throw std::invalid_argument("terminals must be distinct");
  auto ids = g.edges_between(s, t);
  auto derived = remove_edges(g, ids);
  return {std::move(derived.graph), static_cast<int>(ids.size())};
}

// No {s1, s2}-t disconnecting pair of cardinality k+1 with order at most k.
// Realized with a super-source joined to s1 and s2 by k+2 parallels each,
// too many for any candidate edge set to sever; W may not touch s1, s2.
inline bool property3_holds(const MultiGraph& g, VertexId s1, VertexId s2, VertexId t, int k,
                            const Masks& masks = {}) {
  if (s1 == t) throw std::invalid_argument("s1 must differ from t");
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  if (s2 == t) return true;  // the trivial path t keeps {s1,s2} and t joined

  VertexId super = g.vertex_count();
  std::vector<std::pair<VertexId, VertexId>> endpoints = g.edge_list();
  std::vector<char> edge_mask(masks.edge);
  for (int i = 0; i < k + 2; ++i) {
    endpoints.emplace_back(super, s1);
    endpoints.emplace_back(super, s2);
  }
  edge_mask.resize(endpoints.size(), 0);
  MultiGraph aug(g.vertex_count() + 1, std::move(endpoints));
  Masks aug_masks;
  aug_masks.vertex = masks.vertex;
  aug_masks.vertex.resize(aug.vertex_count(), 0);
  aug_masks.edge = std::move(edge_mask);

  std::vector<char> forbidden(aug.vertex_count(), 0);
  forbidden[super] = forbidden[t] = 1;
  forbidden[s1] = forbidden[s2] = 1;
  for (int j = 0; j <= k; ++j) {
    auto res = detail::min_size_at_order_impl(aug, super, t, j, forbidden, aug_masks);
    if (!res) continue;  // no W of that order exists, nothing to separate with
    if (res->size <= k + 1 - j) return false;
  }
  return true;
}

}  // namespace mixedcut
