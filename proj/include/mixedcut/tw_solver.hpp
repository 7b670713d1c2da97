#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mixedcut/mixed_connectivity.hpp"
#include "mixedcut/multigraph.hpp"
#include "mixedcut/path_system.hpp"
#include "mixedcut/treewidth.hpp"

namespace mixedcut {

struct TwOptions {
  bool checked = true;
};

// Trace of one separator split: the side parameters, how the WLOG
// branches were resolved, and the augment/glue bookkeeping.
struct SplitRecursionState {
  std::vector<VertexId> separator;  // B, in the ids of the graph being split
  int case_id = 0;                  // 0: {s,t} split; 1/2: the {s,t,a} cases
  int k = 0, l = 0;                 // the pair being split at this level
  int k1 = 0, l1 = 0, k2 = 0, l2 = 0;
  int q = 0, q1 = 0, q2 = 0;
  std::vector<EdgeId> augment_side1;  // fresh parallels in H1 (local ids)
  std::vector<EdgeId> augment_side2;  // fresh parallels in H2 (local ids)
  int r1 = 0, r2 = 0, r = 0;          // glue counts
  bool sides_swapped = false;         // side-role WLOG resolved by swapping
  bool mirrored = false;              // terminal orientation WLOG resolved by swapping
};

struct TwSolveResult {
  PathSystem system;
  int divergences = 0;  // proof-mirroring steps that fell back to the exhaustive finder
  std::vector<std::string> notes;
  std::vector<SplitRecursionState> splits;
};

namespace detail {

struct TwContext {
  TwOptions opts;
  int divergences = 0;
  std::vector<std::string> notes;
  std::vector<SplitRecursionState> splits;
};

inline void tw_require(bool cond, const std::string& what) {
  if (!cond) throw ProofDivergence(what);
}

// Minimum size at order k with one vertex deleted outright.
inline std::optional<MinSizeResult> min_size_at_order_without(const MultiGraph& g, VertexId s,
                                                              VertexId t, int k,
                                                              VertexId dropped) {
  Masks base = Masks::none(g);
  base.vertex[dropped] = 1;
  std::vector<char> forbidden(g.vertex_count(), 0);
  forbidden[s] = forbidden[t] = forbidden[dropped] = 1;
  return min_size_at_order_impl(g, s, t, k, forbidden, base);
}

inline PathSystem map_system_to_parent(const DerivedGraph& d, PathSystem sys) {
  for (Path& p : sys.paths) p = path_to_parent(d, p);
  return sys;
}

struct FlaggedPath {
  Path path;
  bool designated = false;
};

// Trims the designated flags to exactly k+1 and assembles a k+l system.
// When k+2 paths are flagged, at most two of them may share the junction
// vertex `a`; one of those is the one to unflag.
inline PathSystem assemble(std::vector<FlaggedPath> items, int k, int l, VertexId a) {
  int flagged = 0;
  for (const auto& it : items) flagged += it.designated;
  tw_require(flagged == k + 1 || flagged == k + 2, "designated pool has unexpected size");
  if (flagged == k + 2) {
    std::vector<int> with_a;
    for (int i = 0; i < static_cast<int>(items.size()); ++i) {
      if (!items[i].designated || a < 0) continue;
      if (position_of(items[i].path, a)) with_a.push_back(i);
    }
    int drop = -1;
    if (with_a.size() >= 2) {
      drop = with_a.back();
    } else {
      for (int i = static_cast<int>(items.size()) - 1; i >= 0; --i)
        if (items[i].designated) {
          drop = i;
          break;
        }
    }
    items[drop].designated = false;
  }
  PathSystem sys;
  sys.k = k;
  sys.l = l;
  for (auto& it : items)
    if (it.designated) {
      sys.designated.push_back(static_cast<int>(sys.paths.size()));
      sys.paths.push_back(std::move(it.path));
    }
  for (auto& it : items) {
    if (it.designated) continue;
    if (static_cast<int>(sys.paths.size()) == k + l) break;
    sys.paths.push_back(std::move(it.path));
  }
  tw_require(static_cast<int>(sys.paths.size()) == k + l, "not enough paths to assemble");
  return sys;
}

// One side's contribution to the glue step: augment-stripped parts plus
// the paths that pass through untouched (already in parent ids).
struct GluePile {
  std::vector<Path> parts;  // stripped augment users; index 0 designated iff flag set
  bool first_designated = false;
  bool parts_touch_s = false;  // parts run s..a (the augment edge sat at t)
  std::vector<FlaggedPath> pass;
};

inline GluePile classify_h_system(const PathSystem& sys, const DerivedGraph& h,
                                  const DerivedGraph& side) {
  GluePile pile;
  std::set<int> desig(sys.designated.begin(), sys.designated.end());
  std::vector<std::pair<Path, bool>> users;
  for (int i = 0; i < static_cast<int>(sys.paths.size()); ++i) {
    const Path& p = sys.paths[i];
    int aug_count = 0;
    for (EdgeId e : p.edges)
      if (h.edge_to_parent[e] < 0) ++aug_count;
    if (aug_count == 0) {
      Path mapped = path_to_parent(side, path_to_parent(h, p));
      pile.pass.push_back({std::move(mapped), desig.count(i) > 0});
      continue;
    }
    tw_require(aug_count == 1, "a path uses more than one augment edge");
    users.emplace_back(p, desig.count(i) > 0);
  }
  std::stable_partition(users.begin(), users.end(), [](const auto& u) { return u.second; });
  int designated_users = 0;
  for (const auto& [p, d] : users) designated_users += d;
  tw_require(designated_users <= 1, "two designated paths use augment edges");
  pile.first_designated = !users.empty() && users.front().second;
  bool first = true;
  for (auto& [p, d] : users) {
    Path part;
    bool touches_s;
    if (h.edge_to_parent[p.edges.front()] < 0) {
      part = subpath(p, 1, p.vertices.size() - 1);  // a..t remains
      touches_s = false;
    } else if (h.edge_to_parent[p.edges.back()] < 0) {
      part = subpath(p, 0, p.vertices.size() - 2);  // s..a remains
      touches_s = true;
    } else {
      throw ProofDivergence("augment edge is interior to a path");
    }
    if (first) {
      pile.parts_touch_s = touches_s;
      first = false;
    }
    tw_require(pile.parts_touch_s == touches_s, "augment ends disagree within one side");
    pile.parts.push_back(path_to_parent(side, path_to_parent(h, part)));
  }
  return pile;
}

// Pairs off augment users at the junction vertex and merges both sides
// into one flagged-path list ready for assemble().
inline std::vector<FlaggedPath> glue_piles(GluePile p_pile, GluePile q_pile) {
  int r = static_cast<int>(std::min(p_pile.parts.size(), q_pile.parts.size()));
  if (r > 0)
    tw_require(p_pile.parts_touch_s != q_pile.parts_touch_s,
               "both sides provide the same half of the glued paths");
  GluePile& s_pile = (r > 0 && q_pile.parts_touch_s) ? q_pile : p_pile;
  GluePile& t_pile = (&s_pile == &p_pile) ? q_pile : p_pile;
  bool both_designated = r > 0 && p_pile.first_designated && q_pile.first_designated;

  std::vector<FlaggedPath> items;
  for (int j = 0; j < r; ++j) {
    Path glued = concatenate(s_pile.parts[j], t_pile.parts[j]);
    std::set<VertexId> distinct(glued.vertices.begin(), glued.vertices.end());
    tw_require(distinct.size() == glued.vertices.size(), "glued path revisits a vertex");
    items.push_back({std::move(glued), both_designated && j == 0});
  }
  for (auto& fp : p_pile.pass) items.push_back(std::move(fp));
  for (auto& fp : q_pile.pass) items.push_back(std::move(fp));
  return items;
}

inline PathSystem tw_solve_rec(const MultiGraph& g, VertexId s, VertexId t, int k, int l,
                               TwContext& ctx);

// Resolves one side of a split by flow when its size budget is exhausted
// (l = 0) or by recursion otherwise; returns flagged paths in parent ids.
inline std::vector<FlaggedPath> solve_side(const DerivedGraph& side, VertexId s_local,
                                           VertexId t_local, int k_side, int l_side,
                                           TwContext& ctx) {
  std::vector<FlaggedPath> items;
  if (l_side == 0) {
    auto paths = max_internally_disjoint_paths(side.graph, s_local, t_local);
    tw_require(static_cast<int>(paths.size()) >= k_side, "side lost its promised skein");
    paths.resize(k_side);
    for (Path& p : paths) items.push_back({path_to_parent(side, std::move(p)), true});
    return items;
  }
  PathSystem sub = tw_solve_rec(side.graph, s_local, t_local, k_side, l_side, ctx);
  std::set<int> desig(sub.designated.begin(), sub.designated.end());
  for (int i = 0; i < static_cast<int>(sub.paths.size()); ++i)
    items.push_back({path_to_parent(side, sub.paths[i]), desig.count(i) > 0});
  return items;
}

// The {s,t} separator split: paths of the two sides combine freely.
inline PathSystem two_way_split(const MultiGraph& g, VertexId s, VertexId t, int k, int l,
                                const std::vector<char>& component, TwContext& ctx) {
  std::vector<char> keep_one(g.vertex_count(), 0);
  std::vector<char> keep_two(g.vertex_count(), 0);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (component[v])
      keep_one[v] = 1;
    else
      keep_two[v] = 1;
  }
  keep_one[s] = keep_one[t] = 1;
  auto witness = min_size_at_order(g, s, t, k);
  tw_require(witness.size == l, "the witness at order k no longer has size l");

  DerivedGraph one = induced_subgraph(g, keep_one);
  DerivedGraph two = induced_subgraph(g, keep_two);
  tw_require(one.graph.vertex_count() < g.vertex_count() &&
                 two.graph.vertex_count() < g.vertex_count(),
             "split failed to shrink both sides");
  std::vector<char> edge_in_one(g.edge_count(), 0);
  for (EdgeId e : one.edge_to_parent) edge_in_one[e] = 1;

  int k1 = 0, k2 = 0, l1 = 0, l2 = 0;
  for (VertexId w : witness.witness.vertices) (component[w] ? k1 : k2)++;
  for (EdgeId f : witness.witness.edges) (edge_in_one[f] ? l1 : l2)++;
  tw_require(k1 + k2 == k && l1 + l2 == l, "split witness does not partition");

  SplitRecursionState state;
  state.separator = {s, t};
  state.case_id = 0;
  state.k = k;
  state.l = l;
  if (l2 == 0) {
    std::swap(one, two);
    std::swap(k1, k2);
    std::swap(l1, l2);
    state.sides_swapped = true;
  }
  state.k1 = k1;
  state.l1 = l1;
  state.k2 = k2;
  state.l2 = l2;
  ctx.splits.push_back(state);
  if (ctx.opts.checked) {
    tw_require(is_connectivity_pair(one.graph, one.vertex_from_parent[s],
                                    one.vertex_from_parent[t], k1, l1),
               "side one lost its connectivity pair");
    tw_require(is_connectivity_pair(two.graph, two.vertex_from_parent[s],
                                    two.vertex_from_parent[t], k2, l2),
               "side two lost its connectivity pair");
  }
  auto items = solve_side(one, one.vertex_from_parent[s], one.vertex_from_parent[t], k1, l1, ctx);
  auto more = solve_side(two, two.vertex_from_parent[s], two.vertex_from_parent[t], k2, l2, ctx);
  for (auto& fp : more) items.push_back(std::move(fp));
  return assemble(std::move(items), k, l, -1);
}

// The {s,t,a} separator split, mirroring the two augmentation cases.
inline PathSystem three_way_split(const MultiGraph& g, VertexId s, VertexId t, VertexId a,
                                  int k, int l, const std::vector<char>& component,
                                  TwContext& ctx) {
  std::vector<char> keep_c(g.vertex_count(), 0);
  std::vector<char> keep_rest(g.vertex_count(), 0);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (component[v])
      keep_c[v] = 1;
    else
      keep_rest[v] = 1;
  }
  keep_c[s] = keep_c[t] = keep_c[a] = 1;
  keep_rest[s] = keep_rest[t] = keep_rest[a] = 1;
  std::vector<char> sa_at_edges(g.edge_count(), 0);
  for (EdgeId e : g.edges_between(s, a)) sa_at_edges[e] = 1;
  for (EdgeId e : g.edges_between(a, t)) sa_at_edges[e] = 1;

  std::optional<MinSizeResult> lower;
  if (k >= 1) lower = min_size_at_order_without(g, s, t, k - 1, a);
  bool a_in_optimal_pair = lower && lower->size <= l;

  if (a_in_optimal_pair) {
    // Case 1: a joins an optimal pair. The side owning the terminal-a
    // edges must carry at least one witness edge; try the component side
    // first and fall back to its complement.
    tw_require(lower->size == l, "order k-1 minimum without a undercuts l");
    std::vector<VertexId> w_rest = lower->witness.vertices;
    std::vector<EdgeId> f_rest = lower->witness.edges;

    for (int attempt = 0; attempt < 2; ++attempt) {
      bool use_c_side = attempt == 0;
      DerivedGraph one = induced_subgraph(g, use_c_side ? keep_c : keep_rest);
      DerivedGraph two = induced_subgraph(g, use_c_side ? keep_rest : keep_c, sa_at_edges);
      tw_require(one.graph.vertex_count() < g.vertex_count() &&
                     two.graph.vertex_count() < g.vertex_count(),
                 "split failed to shrink both sides");
      std::vector<char> edge_in_one(g.edge_count(), 0);
      for (EdgeId e : one.edge_to_parent) edge_in_one[e] = 1;

      int k1 = 0, k2 = 0, l1 = 0, l2 = 0;
      for (VertexId w : w_rest) (one.vertex_from_parent[w] >= 0 ? k1 : k2)++;
      for (EdgeId f : f_rest) (edge_in_one[f] ? l1 : l2)++;
      tw_require(k1 + k2 == k - 1 && l1 + l2 == l, "case-1 witness does not partition");
      if (l1 == 0 && attempt == 0) continue;
      tw_require(l1 >= 1, "no split gives the augmented side a witness edge");

      VertexId s1 = one.vertex_from_parent[s], t1 = one.vertex_from_parent[t],
               a1 = one.vertex_from_parent[a];
      VertexId s2 = two.vertex_from_parent[s], t2 = two.vertex_from_parent[t],
               a2 = two.vertex_from_parent[a];

      // (k2, l2) a connectivity pair in side two? If not, its true pair
      // (k2, l2+p) still recurses; side one proceeds without a.
      int true_l2 = min_size_at_order(two.graph, s2, t2, k2).size;
      if (true_l2 != l2 ||
          (k2 >= 1 && min_size_at_order(two.graph, s2, t2, k2 - 1).size <= l2)) {
        int p = true_l2 - l2;
        tw_require(p >= 1, "side two claims a smaller pair than the witness");
        std::vector<char> keep_no_a(one.graph.vertex_count(), 1);
        keep_no_a[a1] = 0;
        DerivedGraph one_no_a = induced_subgraph(one.graph, keep_no_a);
        if (ctx.opts.checked)
          tw_require(is_connectivity_pair(one_no_a.graph, one_no_a.vertex_from_parent[s1],
                                          one_no_a.vertex_from_parent[t1], k1, l1),
                     "case-1 side one minus a lost its pair");
        auto items = solve_side(one_no_a, one_no_a.vertex_from_parent[s1],
                                one_no_a.vertex_from_parent[t1], k1, l1, ctx);
        for (auto& fp : items) fp.path = path_to_parent(one, std::move(fp.path));
        auto more = solve_side(two, s2, t2, k2, l2 + p, ctx);
        for (auto& fp : more) items.push_back(std::move(fp));
        return assemble(std::move(items), k, l, a);
      }

      // orientation: in side two minus its optimal witness, a must miss
      // one terminal; the augment ends follow from which one
      auto w2 = min_size_at_order(two.graph, s2, t2, k2);
      Masks blocked = Masks::none(two.graph);
      for (VertexId w : w2.witness.vertices) {
        tw_require(w != a2, "optimal side-two pair touches a unexpectedly");
        blocked.vertex[w] = 1;
      }
      for (EdgeId f : w2.witness.edges) blocked.edge[f] = 1;
      bool a_sees_t = connected_pair(two.graph, a2, t2, blocked);
      bool a_sees_s = connected_pair(two.graph, a2, s2, blocked);
      tw_require(!(a_sees_s && a_sees_t), "witness fails to separate a from a terminal");
      VertexId near1 = a_sees_t ? t1 : s1;  // H1's augment keeps a tied to this terminal
      VertexId far2 = a_sees_t ? s2 : t2;

      int lstar =
          min_size_at_order(one.graph, s1, t1, k1 + 1).size;
      int q = l1 - lstar;
      tw_require(q >= 0, "augment count went negative");
      if (ctx.opts.checked)
        tw_require(is_connectivity_pair(one.graph, s1, t1, k1 + 1, lstar),
                   "side one has no pair at order k1+1");

      DerivedGraph h1 = add_parallel_edges(one.graph, a1, near1, q);
      DerivedGraph h2 = add_parallel_edges(two.graph, a2, far2, q);
      if (ctx.opts.checked) {
        tw_require(is_connectivity_pair(h1.graph, s1, t1, k1 + 1, l1),
                   "H1 lost the augmented pair");
        tw_require(is_connectivity_pair(h2.graph, s2, t2, k2, l2 + q),
                   "H2 lost the augmented pair");
      }

      SplitRecursionState state;
      state.separator = {s, t, a};
      state.case_id = 1;
      state.k = k;
      state.l = l;
      state.sides_swapped = !use_c_side;
      state.mirrored = a_sees_t;
      state.k1 = k1;
      state.l1 = l1;
      state.k2 = k2;
      state.l2 = l2;
      state.q = q;
      for (int i = 0; i < q; ++i) {
        state.augment_side1.push_back(one.graph.edge_count() + i);
        state.augment_side2.push_back(two.graph.edge_count() + i);
      }

      PathSystem p_sys = tw_solve_rec(h1.graph, s1, t1, k1 + 1, l1, ctx);
      if (q == 0 && l2 == 0) {
        ctx.splits.push_back(std::move(state));
        std::vector<FlaggedPath> items;
        std::set<int> desig(p_sys.designated.begin(), p_sys.designated.end());
        for (int i = 0; i < static_cast<int>(p_sys.paths.size()); ++i)
          items.push_back({path_to_parent(one, path_to_parent(h1, p_sys.paths[i])),
                           desig.count(i) > 0});
        std::vector<char> keep_no_a(two.graph.vertex_count(), 1);
        keep_no_a[a2] = 0;
        DerivedGraph two_no_a = induced_subgraph(two.graph, keep_no_a);
        auto flow = max_internally_disjoint_paths(two_no_a.graph,
                                                  two_no_a.vertex_from_parent[s2],
                                                  two_no_a.vertex_from_parent[t2]);
        tw_require(static_cast<int>(flow.size()) >= k2, "side two minus a lost its skein");
        flow.resize(k2);
        for (Path& p : flow)
          items.push_back({path_to_parent(two, path_to_parent(two_no_a, std::move(p))), true});
        return assemble(std::move(items), k, l, a);
      }
      PathSystem q_sys = tw_solve_rec(h2.graph, s2, t2, k2, l2 + q, ctx);
      auto p_pile = classify_h_system(p_sys, h1, one);
      auto q_pile = classify_h_system(q_sys, h2, two);
      state.r1 = static_cast<int>(p_pile.parts.size());
      state.r2 = static_cast<int>(q_pile.parts.size());
      state.r = std::min(state.r1, state.r2);
      ctx.splits.push_back(std::move(state));
      auto items = glue_piles(std::move(p_pile), std::move(q_pile));
      return assemble(std::move(items), k, l, a);
    }
    throw ProofDivergence("case-1 split selection fell through");
  }

  // Case 2: a sits outside every optimal pair.
  auto witness = min_size_at_order(g, s, t, k);
  tw_require(witness.size == l, "the witness at order k no longer has size l");
  for (VertexId w : witness.witness.vertices)
    tw_require(w != a, "optimal pair contains a in the excluded case");

  DerivedGraph one = induced_subgraph(g, keep_c);
  DerivedGraph two = induced_subgraph(g, keep_rest, sa_at_edges);
  tw_require(one.graph.vertex_count() < g.vertex_count() &&
                 two.graph.vertex_count() < g.vertex_count(),
             "split failed to shrink both sides");
  std::vector<char> edge_in_one(g.edge_count(), 0);
  for (EdgeId e : one.edge_to_parent) edge_in_one[e] = 1;

  int k1 = 0, k2 = 0, l1 = 0, l2 = 0;
  for (VertexId w : witness.witness.vertices) (one.vertex_from_parent[w] >= 0 ? k1 : k2)++;
  for (EdgeId f : witness.witness.edges) (edge_in_one[f] ? l1 : l2)++;
  tw_require(k1 + k2 == k && l1 + l2 == l, "case-2 witness does not partition");

  // orientation: a cannot reach both terminals once the witness is removed
  Masks blocked = Masks::none(g);
  for (VertexId w : witness.witness.vertices) blocked.vertex[w] = 1;
  for (EdgeId f : witness.witness.edges) blocked.edge[f] = 1;
  bool a_sees_s = connected_pair(g, a, s, blocked);
  bool a_sees_t = connected_pair(g, a, t, blocked);
  tw_require(!(a_sees_s && a_sees_t), "witness fails to separate a from a terminal");
  // normal orientation: no s-a path; mirrored: swap the augment ends
  bool mirrored = a_sees_s;

  struct SideState {
    DerivedGraph d;
    VertexId s, t, a;
    int k, l, q;
  };
  auto make_side = [&](DerivedGraph d, int kk, int ll) {
    SideState st{std::move(d), 0, 0, 0, kk, ll, 0};
    st.s = st.d.vertex_from_parent[s];
    st.t = st.d.vertex_from_parent[t];
    st.a = st.d.vertex_from_parent[a];
    int truth = min_size_at_order(st.d.graph, st.s, st.t, st.k).size;
    st.q = st.l - truth;
    tw_require(st.q >= 0, "side pair smaller than its induced witness");
    if (ctx.opts.checked)
      tw_require(is_connectivity_pair(st.d.graph, st.s, st.t, st.k, st.l - st.q),
                 "side lost the pair defining q");
    return st;
  };
  SideState first = make_side(std::move(one), k1, l1);
  SideState second = make_side(std::move(two), k2, l2);
  SplitRecursionState state;
  state.separator = {s, t, a};
  state.case_id = 2;
  state.k = k;
  state.l = l;
  state.mirrored = mirrored;
  state.q1 = first.q;
  state.q2 = second.q;
  if (second.q > first.q) {
    std::swap(first, second);
    state.sides_swapped = true;
  }
  int q = first.q;
  state.q = q;
  state.k1 = first.k;
  state.l1 = first.l;
  state.k2 = second.k;
  state.l2 = second.l;

  int l1p = first.l;
  int l2p = second.l + q;
  if (l1p == 0 || l2p == 0) {
    ctx.splits.push_back(std::move(state));
    tw_require(q == 0, "a zero side with pending augments");
    SideState& zero = l1p == 0 ? first : second;
    SideState& live = l1p == 0 ? second : first;
    std::vector<char> keep_no_a(zero.d.graph.vertex_count(), 1);
    keep_no_a[zero.a] = 0;
    DerivedGraph no_a = induced_subgraph(zero.d.graph, keep_no_a);
    if (ctx.opts.checked)
      tw_require(is_connectivity_pair(no_a.graph, no_a.vertex_from_parent[zero.s],
                                      no_a.vertex_from_parent[zero.t], zero.k, 0),
                 "zero side minus a lost its pair");
    std::vector<FlaggedPath> items;
    auto flow = max_internally_disjoint_paths(no_a.graph, no_a.vertex_from_parent[zero.s],
                                              no_a.vertex_from_parent[zero.t]);
    tw_require(static_cast<int>(flow.size()) >= zero.k, "zero side lost its skein");
    flow.resize(zero.k);
    for (Path& p : flow)
      items.push_back({path_to_parent(zero.d, path_to_parent(no_a, std::move(p))), true});
    auto more = solve_side(live.d, live.s, live.t, live.k, &live == &first ? l1p : l2p, ctx);
    for (auto& fp : more) items.push_back(std::move(fp));
    return assemble(std::move(items), k, l, a);
  }

  VertexId h1_end = mirrored ? first.s : first.t;
  VertexId h2_end = mirrored ? second.t : second.s;
  DerivedGraph h1 = add_parallel_edges(first.d.graph, first.a, h1_end, q);
  DerivedGraph h2 = add_parallel_edges(second.d.graph, second.a, h2_end, q);
  for (int i = 0; i < q; ++i) {
    state.augment_side1.push_back(first.d.graph.edge_count() + i);
    state.augment_side2.push_back(second.d.graph.edge_count() + i);
  }
  if (ctx.opts.checked) {
    tw_require(is_connectivity_pair(h1.graph, first.s, first.t, first.k, l1p),
               "H1 lost the augmented pair");
    tw_require(is_connectivity_pair(h2.graph, second.s, second.t, second.k, l2p),
               "H2 lost the augmented pair");
  }
  PathSystem p_sys = tw_solve_rec(h1.graph, first.s, first.t, first.k, l1p, ctx);
  PathSystem q_sys = tw_solve_rec(h2.graph, second.s, second.t, second.k, l2p, ctx);
  auto p_pile = classify_h_system(p_sys, h1, first.d);
  auto q_pile = classify_h_system(q_sys, h2, second.d);
  state.r1 = static_cast<int>(p_pile.parts.size());
  state.r2 = static_cast<int>(q_pile.parts.size());
  state.r = std::min(state.r1, state.r2);
  ctx.splits.push_back(std::move(state));
  auto items = glue_piles(std::move(p_pile), std::move(q_pile));
  return assemble(std::move(items), k, l, a);
}

inline PathSystem tw_solve_impl(const MultiGraph& g, VertexId s, VertexId t, int k, int l,
                                TwContext& ctx) {
  if (ctx.opts.checked)
    tw_require(is_connectivity_pair(g, s, t, k, l), "recursion lost the connectivity pair");

  auto st_edges = g.edges_between(s, t);
  if (!st_edges.empty()) {
    int mu = static_cast<int>(st_edges.size());
    tw_require(mu <= l, "terminal multiplicity exceeds the pair size");
    DerivedGraph reduced = remove_edges(g, st_edges);
    std::vector<FlaggedPath> items;
    if (l - mu == 0) {
      auto flow = max_internally_disjoint_paths(reduced.graph, s, t);
      tw_require(static_cast<int>(flow.size()) >= k, "normalized graph lost its skein");
      flow.resize(k);
      for (Path& p : flow) items.push_back({path_to_parent(reduced, std::move(p)), true});
      for (int i = 0; i < mu; ++i)
        items.push_back({Path{{s, t}, {st_edges[i]}}, i == 0});
    } else {
      PathSystem sub = tw_solve_rec(reduced.graph, s, t, k, l - mu, ctx);
      std::set<int> desig(sub.designated.begin(), sub.designated.end());
      for (int i = 0; i < static_cast<int>(sub.paths.size()); ++i)
        items.push_back({path_to_parent(reduced, sub.paths[i]), desig.count(i) > 0});
      for (int i = 0; i < mu; ++i) items.push_back({Path{{s, t}, {st_edges[i]}}, false});
    }
    return assemble(std::move(items), k, l, -1);
  }

  auto outcome = decompose_or_shared_separator(g, s, t);
  if (outcome.decomposition) {
    if (ctx.opts.checked) tw_require(k <= 2, "no-shared-bag dispatch saw order above 2");
    if (l == 1) {
      auto paths = max_internally_disjoint_paths(g, s, t);
      tw_require(static_cast<int>(paths.size()) >= k + 1, "l=1 dispatch lost its skein");
      paths.resize(k + 1);
      PathSystem sys;
      sys.k = k;
      sys.l = 1;
      sys.paths = std::move(paths);
      for (int i = 0; i <= k; ++i) sys.designated.push_back(i);
      return sys;
    }
    if (l == 2) return bh_l2_solve(g, s, t, k, L2Options{ctx.opts.checked});
    if (k == 0) {
      auto paths = max_edge_disjoint_paths(g, s, t);
      tw_require(static_cast<int>(paths.size()) >= l, "k=0 dispatch lost its edge flow");
      paths.resize(l);
      PathSystem sys;
      sys.k = 0;
      sys.l = l;
      sys.paths = std::move(paths);
      sys.designated.push_back(0);
      return sys;
    }
    auto sys = exhaustive_path_system(g, s, t, k, l);
    tw_require(sys.has_value(), "the k<=2 dispatch promised a system");
    return *sys;
  }

  const auto& sep = outcome.separator;
  Masks sep_mask = Masks::none(g);
  for (VertexId v : sep) sep_mask.vertex[v] = 1;
  auto [comp_of, comp_count] = components(g, sep_mask);
  tw_require(comp_count >= 2, "separator does not disconnect");
  int chosen = -1;
  for (VertexId v = 0; v < g.vertex_count() && chosen == -1; ++v)
    if (comp_of[v] != -1) chosen = comp_of[v];
  std::vector<char> component(g.vertex_count(), 0);
  for (VertexId v = 0; v < g.vertex_count(); ++v) component[v] = comp_of[v] == chosen;

  if (sep.size() == 2) return two_way_split(g, s, t, k, l, component, ctx);
  VertexId a = -1;
  for (VertexId v : sep)
    if (v != s && v != t) a = v;
  tw_require(a >= 0, "separator of size three lacks a third vertex");
  return three_way_split(g, s, t, a, k, l, component, ctx);
}

inline PathSystem tw_solve_rec(const MultiGraph& g, VertexId s, VertexId t, int k, int l,
                               TwContext& ctx) {
  auto fall_back = [&](const std::string& why) {
    ctx.divergences++;
    std::ostringstream note;
    note << "fallback at n=" << g.vertex_count() << " m=" << g.edge_count() << " k=" << k
         << " l=" << l << ": " << why;
    ctx.notes.push_back(note.str());
    auto sys = exhaustive_path_system(g, s, t, k, l);
    if (!sys) throw std::logic_error("exhaustive fallback found no system for a valid pair");
    return *sys;
  };
  try {
    PathSystem sys = tw_solve_impl(g, s, t, k, l, ctx);
    auto check = verify_path_system(g, s, t, sys);
    tw_require(check.ok, check.ok ? "" : "assembled system invalid: " + check.violations.front());
    return sys;
  } catch (const ProofDivergence& e) {
    return fall_back(e.what());
  } catch (const std::invalid_argument& e) {
    return fall_back(e.what());
  }
}

}  // namespace detail

// Witness systems for connectivity pairs on graphs of treewidth at most 3,
// by structural recursion: strip terminal edges, split at a small
// separator containing the terminals, augment with parallel edges where a
// third separator vertex interferes, recurse, and glue at that vertex.
// A proof-mirroring step that fails is retried exhaustively and counted.
inline TwSolveResult bh_tw_solve(const MultiGraph& g, VertexId s, VertexId t, int k, int l,
                                 const TwOptions& opts = {}) {
  if (l < 1) throw std::invalid_argument("the size coordinate must be at least 1");
  if (treewidth_exact(g).first > 3) throw std::invalid_argument("graph treewidth exceeds 3");
  if (!is_connectivity_pair(g, s, t, k, l))
    throw std::invalid_argument("(k,l) is not a connectivity pair for these terminals");
  detail::TwContext ctx;
  ctx.opts = opts;
  TwSolveResult result;
  result.system = detail::tw_solve_rec(g, s, t, k, l, ctx);
  result.divergences = ctx.divergences;
  result.notes = std::move(ctx.notes);
  result.splits = std::move(ctx.splits);
  auto check = verify_path_system(g, s, t, result.system);
  if (!check.ok) throw std::logic_error("solver emitted an invalid system");
  return result;
}

}  // namespace mixedcut
