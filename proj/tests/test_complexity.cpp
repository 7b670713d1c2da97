#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "mixedcut/complexity.hpp"
#include "mixedcut/flow.hpp"

using namespace mixedcut;

namespace {

PvcInstance make_instance(int nu, int nv, std::vector<std::pair<int, int>> edges, int q, int b) {
  PvcInstance inst;
  inst.nu = nu;
  inst.nv = nv;
  inst.q = q;
  inst.budget = b;
  std::vector<std::pair<VertexId, VertexId>> endpoints;
  for (auto [u, v] : edges) endpoints.emplace_back(u, v + nu);
  inst.graph = MultiGraph(nu + nv, std::move(endpoints));
  return inst;
}

// largest vertex-disjoint edge set by direct enumeration
int brute_matching_size(const MultiGraph& g) {
  int best = 0;
  int m = g.edge_count();
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::set<VertexId> used;
    bool ok = true;
    int size = 0;
    for (int e = 0; e < m && ok; ++e) {
      if (!(mask >> e & 1)) continue;
      auto [u, v] = g.endpoints(e);
      if (!used.insert(u).second || !used.insert(v).second) ok = false;
      ++size;
    }
    if (ok) best = std::max(best, size);
  }
  return best;
}

bool is_vertex_cover(const MultiGraph& g, const std::vector<VertexId>& cover) {
  std::set<VertexId> c(cover.begin(), cover.end());
  for (const auto& [u, v] : g.edge_list())
    if (!c.count(u) && !c.count(v)) return false;
  return true;
}

}  // namespace

TEST_CASE("maximum matching on fixtures") {
  auto k22 = make_instance(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}, 0, 0);
  REQUIRE(max_matching_bipartite(k22).size() == 2);

  auto path = make_instance(2, 1, {{0, 0}, {1, 0}}, 0, 0);
  REQUIRE(max_matching_bipartite(path).size() == 1);

  auto c6 = make_instance(3, 3, {{0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, 2}, {0, 2}}, 0, 0);
  REQUIRE(max_matching_bipartite(c6).size() == 3);
  REQUIRE(brute_matching_size(c6.graph) == 3);

  PvcInstance broken;
  broken.nu = 2;
  broken.nv = 1;
  broken.graph = MultiGraph(3, {{0, 1}});
  REQUIRE_THROWS_AS(max_matching_bipartite(broken), std::invalid_argument);
}

TEST_CASE("Konig covers match the matching size and cover every edge") {
  auto k22 = make_instance(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}, 0, 0);
  auto cover = konig_min_vertex_cover(k22);
  REQUIRE(cover.size() == 2);
  REQUIRE(is_vertex_cover(k22.graph, cover));

  auto path = make_instance(2, 1, {{0, 0}, {1, 0}}, 0, 0);
  auto pc = konig_min_vertex_cover(path);
  REQUIRE(pc == std::vector<VertexId>{2});

  auto star = make_instance(1, 3, {{0, 0}, {0, 1}, {0, 2}}, 0, 0);
  auto sc = konig_min_vertex_cover(star);
  REQUIRE(sc == std::vector<VertexId>{0});
}

TEST_CASE("Konig equality holds on random bipartite instances") {
  for (int trial = 0; trial < 100; ++trial) {
    auto inst = random_pvc_instance(3 + trial % 2, 3 + (trial / 2) % 2,
                                    3 + trial % 8, 0, 0, 2000 + trial);
    auto matching = max_matching_bipartite(inst);
    auto cover = konig_min_vertex_cover(inst);
    INFO(serialize_pvc(inst));
    REQUIRE(matching.size() == cover.size());
    REQUIRE(is_vertex_cover(inst.graph, cover));
    REQUIRE(static_cast<int>(matching.size()) == brute_matching_size(inst.graph));
  }
}

TEST_CASE("brute-force partial cover matches the examples") {
  auto c4 = make_instance(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}, 4, 1);
  REQUIRE_FALSE(solve_pvc_brute(c4).has_value());
  c4.budget = 2;
  auto cover = solve_pvc_brute(c4);
  REQUIRE(cover.has_value());
  REQUIRE(cover->size() <= 2);

  auto empty = make_instance(2, 2, {{0, 0}}, 0, 0);
  auto trivial = solve_pvc_brute(empty);
  REQUIRE(trivial.has_value());
  REQUIRE(trivial->empty());
}

TEST_CASE("the reduction emits the documented gadget") {
  auto c4 = make_instance(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}, 4, 1);
  auto out = reduce_pvc_to_scp(c4);
  REQUIRE(std::holds_alternative<ScpInstance>(out));
  const auto& scp = std::get<ScpInstance>(out);
  REQUIRE(scp.graph.edge_count() == 20);
  REQUIRE(scp.graph.vertex_count() == 6);
  REQUIRE(scp.s == 4);
  REQUIRE(scp.t == 5);
  REQUIRE(scp.k == 1);
  REQUIRE(scp.bound == 0);
  REQUIRE(scp.graph.multiplicity(scp.s, 0) == 4);
  REQUIRE(scp.graph.multiplicity(3, scp.t) == 4);
  REQUIRE_FALSE(decide_scp(scp));

  auto star = make_instance(1, 3, {{0, 0}, {0, 1}, {0, 2}}, 2, 1);
  auto star_out = reduce_pvc_to_scp(star);
  REQUIRE(std::holds_alternative<TriviallyYes>(star_out));
  REQUIRE(std::get<TriviallyYes>(star_out).cover.size() <= 1);

  auto single = make_instance(1, 1, {{0, 0}}, 1, 0);
  auto single_out = reduce_pvc_to_scp(single);
  REQUIRE(std::holds_alternative<ScpInstance>(single_out));
  REQUIRE(std::get<ScpInstance>(single_out).k == 0);
  REQUIRE(std::get<ScpInstance>(single_out).bound == 0);

  auto bad = make_instance(1, 1, {{0, 0}}, 5, 0);
  REQUIRE_THROWS_AS(reduce_pvc_to_scp(bad), std::invalid_argument);
}

TEST_CASE("decide_scp answers the fixture queries") {
  ScpInstance q1{figure1_graph(), 1, 5, 1, 1};
  REQUIRE(decide_scp(q1));
  ScpInstance q0{figure1_graph(), 1, 5, 1, 0};
  REQUIRE_FALSE(decide_scp(q0));
  ScpInstance malformed{figure1_graph(), 1, 5, 9, 0};
  REQUIRE_THROWS_AS(decide_scp(malformed), std::invalid_argument);
}

TEST_CASE("decide_scp is monotone in the bound") {
  for (int trial = 0; trial < 10; ++trial) {
    auto inst = random_pvc_instance(3, 3, 6, 4, 1, 500 + trial);
    auto out = reduce_pvc_to_scp(inst);
    if (!std::holds_alternative<ScpInstance>(out)) continue;
    auto scp = std::get<ScpInstance>(out);
    bool seen_yes = false;
    for (int bound = 0; bound <= scp.graph.edge_count(); ++bound) {
      scp.bound = bound;
      bool yes = decide_scp(scp);
      if (seen_yes) REQUIRE(yes);
      seen_yes = seen_yes || yes;
    }
  }
}

TEST_CASE("round trips agree on the worked examples") {
  auto c4_no = make_instance(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}, 4, 1);
  auto r1 = roundtrip_verify(c4_no);
  REQUIRE(r1.agree);
  REQUIRE_FALSE(r1.pvc_yes);

  auto c4_yes = make_instance(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}, 4, 2);
  auto r2 = roundtrip_verify(c4_yes);
  REQUIRE(r2.agree);
  REQUIRE(r2.pvc_yes);
  REQUIRE(r2.witness_lifted);

  auto star = make_instance(1, 3, {{0, 0}, {0, 1}, {0, 2}}, 2, 1);
  auto r3 = roundtrip_verify(star);
  REQUIRE(r3.agree);
  REQUIRE(r3.trivial);
}

TEST_CASE("round trips agree across a randomized sweep") {
  for (int trial = 0; trial < 15; ++trial) {
    auto base = random_pvc_instance(3, 3, 5 + trial % 4, 0, 0, 900 + trial);
    for (int q = 0; q <= base.graph.edge_count(); ++q)
      for (int b = 0; b <= 4; ++b) {
        PvcInstance inst = base;
        inst.q = q;
        inst.budget = b;
        auto rec = roundtrip_verify(inst);
        INFO(serialize_pvc(inst));
        REQUIRE(rec.agree);
        REQUIRE(rec.witness_lifted);
      }
  }
}

TEST_CASE("the pvc codec round-trips and reports errors") {
  auto inst = make_instance(2, 3, {{0, 0}, {0, 2}, {1, 1}}, 2, 1);
  auto back = parse_pvc(serialize_pvc(inst));
  REQUIRE(back.nu == 2);
  REQUIRE(back.nv == 3);
  REQUIRE(back.q == 2);
  REQUIRE(back.budget == 1);
  REQUIRE(back.graph.edge_count() == 3);

  REQUIRE_THROWS_AS(parse_pvc("pvc 1 1\ne 0 5\n"), ParseError);
  REQUIRE_THROWS_AS(parse_pvc("e 0 0\n"), ParseError);
  REQUIRE_THROWS_AS(parse_pvc("pvc 1 1\ne 0 0\nq 9\n"), ParseError);
}
