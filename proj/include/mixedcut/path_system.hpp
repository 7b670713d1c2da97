#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mixedcut/codec.hpp"
#include "mixedcut/flow.hpp"
#include "mixedcut/generate.hpp"
#include "mixedcut/mixed_connectivity.hpp"
#include "mixedcut/multigraph.hpp"
#include "mixedcut/path.hpp"

namespace mixedcut {

// k+l pairwise edge-disjoint s-t paths with a designated internally
// disjoint subset of k+1 (k when l = 0).
struct PathSystem {
  std::vector<Path> paths;
  std::vector<int> designated;
  int k = 0;
  int l = 0;
};

struct Verification {
  bool ok = true;
  std::vector<std::string> violations;

  void fail(std::string what) {
    ok = false;
    violations.push_back(std::move(what));
  }
};

inline Verification verify_path_system(const MultiGraph& g, VertexId s, VertexId t,
                                       const PathSystem& sys) {
  Verification v;
  if (static_cast<int>(sys.paths.size()) != sys.k + sys.l)
    v.fail("path count mismatch: expected " + std::to_string(sys.k + sys.l) + ", got " +
           std::to_string(sys.paths.size()));
  int want_designated = sys.l == 0 ? sys.k : sys.k + 1;
  if (static_cast<int>(sys.designated.size()) != want_designated)
    v.fail("designated count mismatch: expected " + std::to_string(want_designated) +
           ", got " + std::to_string(sys.designated.size()));
  std::set<int> desig(sys.designated.begin(), sys.designated.end());
  if (desig.size() != sys.designated.size()) v.fail("designated indices repeat");
  for (int i : sys.designated)
    if (i < 0 || i >= static_cast<int>(sys.paths.size()))
      v.fail("designated index out of range: " + std::to_string(i));
  for (std::size_t i = 0; i < sys.paths.size(); ++i) {
    const Path& p = sys.paths[i];
    if (!path_valid(g, p)) {
      v.fail("path " + std::to_string(i) + " is not a valid path of the graph");
      continue;
    }
    if (p.front() != s || p.back() != t)
      v.fail("path " + std::to_string(i) + " has wrong endpoints");
  }
  if (!v.ok) return v;
  std::set<EdgeId> used;
  for (std::size_t i = 0; i < sys.paths.size(); ++i)
    for (EdgeId e : sys.paths[i].edges)
      if (!used.insert(e).second)
        v.fail("shared edge " + std::to_string(e) + " in path " + std::to_string(i));
  for (std::size_t a = 0; a < sys.designated.size(); ++a)
    for (std::size_t b = a + 1; b < sys.designated.size(); ++b) {
      const Path& pa = sys.paths[sys.designated[a]];
      const Path& pb = sys.paths[sys.designated[b]];
      for (std::size_t i = 1; i + 1 < pa.vertices.size(); ++i)
        for (std::size_t j = 1; j + 1 < pb.vertices.size(); ++j)
          if (pa.vertices[i] == pb.vertices[j])
            v.fail("shared internal vertex " + std::to_string(pa.vertices[i]) +
                   " between designated paths " + std::to_string(sys.designated[a]) + " and " +
                   std::to_string(sys.designated[b]));
    }
  return v;
}

// Exhaustive exact finder: backtracks over internally disjoint path tuples
// in lexicographic order for the designated skein, then asks the residual
// graph for the remaining l-1 edge-disjoint paths via max flow. Complete
// at desk scale.
inline std::optional<PathSystem> exhaustive_path_system(const MultiGraph& g, VertexId s,
                                                        VertexId t, int k, int l,
                                                        const Masks& masks = {}) {
  if (k < 0 || l < 0 || k + l < 1) throw std::invalid_argument("need k, l >= 0 and k + l >= 1");
  if (s == t) throw std::invalid_argument("terminals must be distinct");
  if (l == 0) {
    auto skein = find_skein(g, s, t, k, -1, masks);
    if (!skein) return std::nullopt;
    PathSystem sys;
    sys.paths = std::move(*skein);
    sys.k = k;
    sys.l = 0;
    for (int i = 0; i < k; ++i) sys.designated.push_back(i);
    return sys;
  }

  auto paths = enumerate_paths(g, s, t, masks);
  int want = k + 1;
  bool prune = paths.size() > 64;

  std::vector<char> interior(g.vertex_count(), 0);
  Masks residual = Masks::none(g);
  residual.vertex = masks.vertex.empty() ? std::vector<char>(g.vertex_count(), 0) : masks.vertex;
  residual.edge = masks.edge.empty() ? std::vector<char>(g.edge_count(), 0) : masks.edge;

  std::vector<int> chosen;
  std::optional<PathSystem> found;

  std::function<bool(std::size_t)> search = [&](std::size_t from) {
    if (static_cast<int>(chosen.size()) == want) {
      // the remaining l-1 paths only need to dodge used edges
      Masks after;
      after.vertex = masks.vertex;
      after.edge = residual.edge;
      if (lambda_value(g, s, t, after) < l - 1) return false;
      auto extras = max_edge_disjoint_paths(g, s, t, after);
      PathSystem sys;
      for (int idx : chosen) sys.paths.push_back(paths[idx]);
      for (int i = 0; i < want; ++i) sys.designated.push_back(i);
      for (int i = 0; i < l - 1; ++i) sys.paths.push_back(extras[i]);
      sys.k = k;
      sys.l = l;
      found = std::move(sys);
      return true;
    }
    if (prune) {
      if (kappa_value(g, s, t, residual) < want - static_cast<int>(chosen.size())) return false;
      Masks edge_res;
      edge_res.vertex = masks.vertex;
      edge_res.edge = residual.edge;
      if (lambda_value(g, s, t, edge_res) <
          want - static_cast<int>(chosen.size()) + l - 1)
        return false;
    }
    for (std::size_t i = from; i < paths.size(); ++i) {
      const Path& p = paths[i];
      bool compatible = true;
      for (std::size_t j = 1; j + 1 < p.vertices.size() && compatible; ++j)
        if (interior[p.vertices[j]]) compatible = false;
      for (std::size_t j = 0; j < p.edges.size() && compatible; ++j)
        if (residual.edge[p.edges[j]]) compatible = false;
      if (!compatible) continue;
      for (std::size_t j = 1; j + 1 < p.vertices.size(); ++j) {
        interior[p.vertices[j]] = 1;
        residual.vertex[p.vertices[j]] = 1;
      }
      for (EdgeId e : p.edges) residual.edge[e] = 1;
      chosen.push_back(static_cast<int>(i));
      if (search(i + 1)) return true;
      chosen.pop_back();
      for (std::size_t j = 1; j + 1 < p.vertices.size(); ++j) {
        interior[p.vertices[j]] = 0;
        residual.vertex[p.vertices[j]] = 0;
      }
      for (EdgeId e : p.edges) residual.edge[e] = 0;
    }
    return false;
  };
  search(0);
  return found;
}

// Raised when a step the underlying argument promises to succeed fails;
// carries the recursion trace for diagnosis.
struct ProofDivergence : std::runtime_error {
  std::vector<std::string> trace;
  explicit ProofDivergence(const std::string& what, std::vector<std::string> tr = {})
      : std::runtime_error(what), trace(std::move(tr)) {}
};

struct L2Options {
  bool checked = true;
};

// k+1 internally disjoint s1-t paths plus one s2-t path, edge-disjoint
// from them. The extra path may be the zero-length path when s2 = t.
// depth counts the edge-deleting recursion steps, so it is bounded by
// the edge count.
struct L2Result {
  std::vector<Path> skein;
  Path extra;
  int depth = 0;
};

namespace detail {

struct L2Context {
  const MultiGraph& g;
  VertexId s1;
  VertexId t;
  int k;
  L2Options opts;
  std::vector<std::string> trace;
};

inline void l2_check_properties(L2Context& ctx, const Masks& masks, VertexId s2, bool root) {
  auto reject = [&](const std::string& prop) {
    if (root) throw std::invalid_argument("precondition violated: " + prop);
    throw ProofDivergence("invariant lost in recursion: " + prop, ctx.trace);
  };
  if (!connected_pair(ctx.g, s2, ctx.t, masks) && s2 != ctx.t)
    reject("property 1 (an s2-t path exists)");
  if (!find_skein(ctx.g, ctx.s1, ctx.t, ctx.k + 1, -1, masks))
    reject("property 2 (a (k+1)-skein from s1 exists)");
  if (!property3_holds(ctx.g, ctx.s1, s2, ctx.t, ctx.k, masks))
    reject("property 3 (no small mixed separator for {s1,s2} and t)");
}

inline bool on_some_skein(L2Context& ctx, const Masks& masks, VertexId v) {
  if (v == ctx.s1 || v == ctx.t) return true;
  return find_skein(ctx.g, ctx.s1, ctx.t, ctx.k + 1, v, masks).has_value();
}

inline L2Result l2_recurse(L2Context& ctx, Masks masks, VertexId s2, bool root, int depth) {
  if (ctx.opts.checked) l2_check_properties(ctx, masks, s2, root);

  if (s2 == ctx.t) {
    auto skein = find_skein(ctx.g, ctx.s1, ctx.t, ctx.k + 1, -1, masks);
    if (!skein) throw ProofDivergence("promised skein missing at the s2 = t base", ctx.trace);
    L2Result res;
    res.skein = std::move(*skein);
    res.extra = Path{{ctx.t}, {}};
    res.depth = depth;
    return res;
  }

  auto forced = s2 == ctx.s1 ? find_skein(ctx.g, ctx.s1, ctx.t, ctx.k + 1, -1, masks)
                             : find_skein(ctx.g, ctx.s1, ctx.t, ctx.k + 1, s2, masks);
  if (forced) {
    // Case 1: s2 lies on a skein; delete the edge to its successor and
    // recurse, then stitch the deleted edge back in if needed.
    int host = 0;
    if (s2 != ctx.s1) {
      for (std::size_t i = 0; i < forced->size(); ++i)
        if (position_of((*forced)[i], s2)) {
          host = static_cast<int>(i);
          break;
        }
    }
    const Path& hp = (*forced)[host];
    auto pos = position_of(hp, s2);
    if (!pos || *pos + 1 >= hp.vertices.size())
      throw ProofDivergence("skein path lacks a successor for s2", ctx.trace);
    VertexId succ = hp.vertices[*pos + 1];
    EdgeId via = hp.edges[*pos];
    {
      std::ostringstream note;
      note << "case1 depth=" << depth << " s2=" << s2 << " drop edge " << via << " to " << succ;
      ctx.trace.push_back(note.str());
    }
    Masks next = masks;
    if (next.edge.empty()) next.edge.assign(ctx.g.edge_count(), 0);
    next.edge[via] = 1;
    L2Result rec = l2_recurse(ctx, std::move(next), succ, false, depth + 1);
    if (position_of(rec.extra, s2)) {
      rec.extra = suffix_from(rec.extra, s2);
    } else {
      Path step;
      step.vertices = {s2, succ};
      step.edges = {via};
      rec.extra = concatenate(step, rec.extra);
    }
    return rec;
  }

  // Case 2: walk toward the nearest vertex lying on some skein (BFS hops,
  // ties by smallest id), solve from there, and splice the approach path.
  std::vector<int> dist(ctx.g.vertex_count(), -1);
  std::vector<std::pair<VertexId, EdgeId>> parent(ctx.g.vertex_count(), {-1, -1});
  std::vector<VertexId> queue = {s2};
  dist[s2] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    VertexId v = queue[head];
    for (EdgeId e : ctx.g.incident(v)) {
      if (masks.edge_removed(e)) continue;
      VertexId w = ctx.g.other_endpoint(e, v);
      if (masks.vertex_removed(w) || dist[w] != -1) continue;
      dist[w] = dist[v] + 1;
      parent[w] = {v, e};
      queue.push_back(w);
    }
  }
  std::vector<VertexId> order(queue.begin(), queue.end());
  std::stable_sort(order.begin(), order.end(),
                   [&](VertexId a, VertexId b) {
                     return dist[a] != dist[b] ? dist[a] < dist[b] : a < b;
                   });
  VertexId s2p = -1;
  for (VertexId v : order) {
    if (v == s2) continue;
    if (on_some_skein(ctx, masks, v)) {
      s2p = v;
      break;
    }
  }
  if (s2p == -1) throw ProofDivergence("no skein vertex reachable from s2", ctx.trace);
  {
    std::ostringstream note;
    note << "case2 depth=" << depth << " s2=" << s2 << " nearest skein vertex " << s2p;
    ctx.trace.push_back(note.str());
  }
  Path approach;
  approach.vertices = {s2p};
  for (VertexId v = s2p; v != s2;) {
    auto [pv, pe] = parent[v];
    approach.vertices.push_back(pv);
    approach.edges.push_back(pe);
    v = pv;
  }
  std::reverse(approach.vertices.begin(), approach.vertices.end());
  std::reverse(approach.edges.begin(), approach.edges.end());

  L2Result rec = l2_recurse(ctx, masks, s2p, false, depth);
  std::size_t splice = 0;
  while (splice < approach.vertices.size() &&
         !position_of(rec.extra, approach.vertices[splice]))
    ++splice;
  if (splice == approach.vertices.size())
    throw ProofDivergence("approach path never meets the extra path", ctx.trace);
  rec.extra = concatenate(subpath(approach, 0, splice),
                          suffix_from(rec.extra, approach.vertices[splice]));
  return rec;
}

}  // namespace detail

// Constructive engine: given the three entry properties, produces k+1
// internally disjoint s1-t paths plus an edge-disjoint s2-t path by
// induction on the edge count.
inline L2Result l2_constructive(const MultiGraph& g, VertexId s1, VertexId s2, VertexId t,
                                int k, const L2Options& opts = {}) {
  if (s1 == t) throw std::invalid_argument("s1 must differ from t");
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  detail::L2Context ctx{g, s1, t, k, opts, {}};
  Masks masks;
  if (!opts.checked) {
    // entry properties are still validated once; only the per-level
    // re-checks are skipped
    detail::l2_check_properties(ctx, masks, s2, true);
  }
  return detail::l2_recurse(ctx, masks, s2, true, 0);
}

// Solves the l = 2 instance: k+2 edge-disjoint s-t paths, k+1 internally
// disjoint, whenever (k, 2) is a connectivity pair.
inline PathSystem bh_l2_solve(const MultiGraph& g, VertexId s, VertexId t, int k,
                              const L2Options& opts = {}) {
  if (!is_connectivity_pair(g, s, t, k, 2))
    throw std::invalid_argument("(k,2) is not a connectivity pair for these terminals");
  auto st_edges = g.edges_between(s, t);
  int mu = static_cast<int>(st_edges.size());
  Masks masks = Masks::none(g);
  for (EdgeId e : st_edges) masks.edge[e] = 1;

  PathSystem sys;
  sys.k = k;
  sys.l = 2;
  if (mu >= 2) {
    // (k, 0) remains: k internally disjoint paths plus both direct edges
    auto paths = max_internally_disjoint_paths(g, s, t, masks);
    if (static_cast<int>(paths.size()) < k)
      throw ProofDivergence("vertex connectivity below k after normalization");
    paths.resize(k);
    sys.paths = std::move(paths);
    for (int i = 0; i < k; ++i) sys.designated.push_back(i);
    sys.designated.push_back(k);
    for (int i = 0; i < 2; ++i)
      sys.paths.push_back(Path{{s, t}, {st_edges[static_cast<std::size_t>(i)]}});
  } else if (mu == 1) {
    // (k, 1) remains: k+1 internally disjoint paths plus the direct edge
    auto paths = max_internally_disjoint_paths(g, s, t, masks);
    if (static_cast<int>(paths.size()) < k + 1)
      throw ProofDivergence("vertex connectivity below k+1 after normalization");
    paths.resize(k + 1);
    sys.paths = std::move(paths);
    for (int i = 0; i <= k; ++i) sys.designated.push_back(i);
    sys.paths.push_back(Path{{s, t}, {st_edges[0]}});
  } else {
    auto res = l2_constructive(g, s, s, t, k, opts);
    sys.paths = std::move(res.skein);
    for (int i = 0; i <= k; ++i) sys.designated.push_back(i);
    sys.paths.push_back(std::move(res.extra));
  }
  auto check = verify_path_system(g, s, t, sys);
  if (!check.ok)
    throw ProofDivergence("constructed system failed verification: " + check.violations.front());
  return sys;
}

}  // namespace mixedcut
