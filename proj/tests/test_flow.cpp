#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "mixedcut/codec.hpp"
#include "mixedcut/flow.hpp"
#include "mixedcut/generate.hpp"
#include "mixedcut/multigraph.hpp"
#include "oracles.hpp"

using namespace mixedcut;

namespace {

void require_edge_disjoint(const std::vector<Path>& paths) {
  std::set<EdgeId> used;
  for (const Path& p : paths)
    for (EdgeId e : p.edges) REQUIRE(used.insert(e).second);
}

void require_internally_disjoint(const std::vector<Path>& paths) {
  for (std::size_t i = 0; i < paths.size(); ++i)
    for (std::size_t j = i + 1; j < paths.size(); ++j)
      REQUIRE(internally_disjoint(paths[i], paths[j]));
}

}  // namespace

TEST_CASE("edge-disjoint path counts match the minimum edge separators") {
  auto fig = figure1_graph();
  auto paths = max_edge_disjoint_paths(fig, 1, 5);
  REQUIRE(paths.size() == 3);
  for (const Path& p : paths) REQUIRE(path_valid(fig, p));
  require_edge_disjoint(paths);

  auto chain = build_graph(3, std::vector<EdgeSpec>{{0, 1, 1}, {1, 2, 1}});
  REQUIRE(max_edge_disjoint_paths(chain, 0, 2).size() == 1);

  auto twin = build_graph(2, std::vector<EdgeSpec>{{0, 1, 2}});
  auto twin_paths = max_edge_disjoint_paths(twin, 0, 1);
  REQUIRE(twin_paths.size() == 2);
  REQUIRE(twin_paths[0].edges != twin_paths[1].edges);

  REQUIRE_THROWS_AS(max_edge_disjoint_paths(twin, 1, 1), std::invalid_argument);
}

TEST_CASE("internally disjoint path counts match disconnecting-pair cardinality") {
  auto fig = figure1_graph();
  auto paths = max_internally_disjoint_paths(fig, 1, 5);
  REQUIRE(paths.size() == 2);
  require_internally_disjoint(paths);

  auto tri = build_graph(3, std::vector<EdgeSpec>{{0, 1, 2}, {0, 2, 1}, {1, 2, 1}});
  REQUIRE(max_internally_disjoint_paths(tri, 0, 1).size() == 3);

  auto k4 = complete_graph(4);
  REQUIRE(max_internally_disjoint_paths(k4, 0, 1).size() == 3);
}

TEST_CASE("min_edge_cut certifies the flow value") {
  auto fig = figure1_graph();
  auto cut = min_edge_cut(fig, 1, 5);
  REQUIRE(cut.size() == 3);
  Masks masks = Masks::none(fig);
  for (EdgeId e : cut) masks.edge[e] = 1;
  REQUIRE_FALSE(connected_pair(fig, 1, 5, masks));
}

TEST_CASE("skeins are found exactly up to the vertex connectivity") {
  auto fig = figure1_graph();
  auto sk2 = find_skein(fig, 1, 5, 2);
  REQUIRE(sk2.has_value());
  require_internally_disjoint(*sk2);
  REQUIRE(skein_valid(fig, Skein{*sk2}, 1, 5));
  REQUIRE_FALSE(find_skein(fig, 1, 5, 3).has_value());
}

TEST_CASE("forced skeins are decided exactly when the flow is ambiguous") {
  // the forced unit can only circulate f-y-f here; no s-t path crosses f
  auto g = build_graph(4, std::vector<EdgeSpec>{{0, 1, 2}, {0, 2, 1}, {2, 3, 2}});
  REQUIRE(find_skein(g, 0, 1, 2, 2) == std::nullopt);
  REQUIRE(find_skein(g, 0, 1, 2).has_value());

  // same shape but with an escape from f to t: now the skein exists
  auto h = build_graph(4, std::vector<EdgeSpec>{{0, 1, 2}, {0, 2, 1}, {2, 3, 2}, {2, 1, 1}});
  auto sk = find_skein(h, 0, 1, 2, 2);
  REQUIRE(sk.has_value());
  bool through = false;
  for (const Path& p : *sk)
    if (position_of(p, 2)) through = true;
  REQUIRE(through);
  REQUIRE(skein_valid(h, Skein{*sk}, 0, 1));
}

TEST_CASE("forced skeins route one path through the requested vertex") {
  // two internally disjoint double-lane corridors: s=0, t=1 via a=2 or b=3
  auto d = build_graph(4, std::vector<EdgeSpec>{{0, 2, 2}, {2, 1, 2}, {0, 3, 2}, {3, 1, 2}});
  auto sk = find_skein(d, 0, 1, 2, 2);
  REQUIRE(sk.has_value());
  require_internally_disjoint(*sk);
  bool through = false;
  for (const Path& p : *sk)
    if (position_of(p, 2)) through = true;
  REQUIRE(through);

  auto fig = figure1_graph();
  // x4 (id 3) only appears on the left clique; it cannot join a 2-skein
  // from x2 to x6 and back, but x1 (id 0) can
  REQUIRE(find_skein(fig, 1, 5, 2, 0).has_value());
  REQUIRE(find_skein(fig, 1, 5, 3, 0) == std::nullopt);
  REQUIRE_THROWS_AS(find_skein(fig, 1, 5, 2, 1), std::invalid_argument);
}

TEST_CASE("flow counts agree with brute-force separator minima on a corpus") {
  enumerate_multigraphs(4, 5, 2, [&](const MultiGraph& g) {
    for (VertexId s = 0; s < 4; ++s)
      for (VertexId t = s + 1; t < 4; ++t) {
        INFO(serialize_graph(g) << " s=" << s << " t=" << t);
        REQUIRE(static_cast<int>(max_edge_disjoint_paths(g, s, t).size()) ==
                oracle::min_edge_separator_brute(g, s, t));
        REQUIRE(static_cast<int>(max_internally_disjoint_paths(g, s, t).size()) ==
                oracle::min_disconnecting_cardinality(g, s, t));
      }
    return true;
  });
}

TEST_CASE("flow results are invariant under edge-list permutation") {
  Rng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    auto g = random_multigraph(6, 9, 2, 1000 + trial);
    auto edges = g.edge_list();
    for (std::size_t i = edges.size(); i > 1; --i)
      std::swap(edges[i - 1], edges[rng.below(i)]);
    MultiGraph shuffled(6, edges);
    for (VertexId t = 1; t < 6; ++t) {
      REQUIRE(max_edge_disjoint_paths(g, 0, t).size() ==
              max_edge_disjoint_paths(shuffled, 0, t).size());
      REQUIRE(max_internally_disjoint_paths(g, 0, t).size() ==
              max_internally_disjoint_paths(shuffled, 0, t).size());
    }
  }
}

TEST_CASE("returned path sets verify their disjointness structurally") {
  for (int trial = 0; trial < 25; ++trial) {
    auto g = random_multigraph(7, 12, 2, 500 + trial);
    auto ed = max_edge_disjoint_paths(g, 0, 6);
    for (const Path& p : ed) {
      REQUIRE(path_valid(g, p));
      REQUIRE(p.front() == 0);
      REQUIRE(p.back() == 6);
    }
    require_edge_disjoint(ed);
    auto id = max_internally_disjoint_paths(g, 0, 6);
    for (const Path& p : id) REQUIRE(path_valid(g, p));
    require_internally_disjoint(id);
  }
}
