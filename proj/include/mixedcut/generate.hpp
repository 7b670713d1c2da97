#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "mixedcut/multigraph.hpp"

namespace mixedcut {

// splitmix64; self-contained so that seeded draws never depend on the
// standard library's distribution implementations.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, bound)
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t threshold = (~bound + 1) % bound;
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
  std::uint64_t state_;
};

// m endpoint pairs drawn uniformly among pairs below the multiplicity cap.
inline MultiGraph random_multigraph(int n, int m, int max_mult, std::uint64_t seed) {
  if (n < 2 && m > 0) throw std::invalid_argument("need at least two vertices for edges");
  std::vector<std::pair<VertexId, VertexId>> all_pairs;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v) all_pairs.emplace_back(u, v);
  std::int64_t capacity = static_cast<std::int64_t>(all_pairs.size()) * max_mult;
  if (m > capacity) throw std::invalid_argument("edge count exceeds multiplicity capacity");
  Rng rng(seed);
  std::vector<int> used(all_pairs.size(), 0);
  std::vector<std::pair<VertexId, VertexId>> endpoints;
  while (static_cast<int>(endpoints.size()) < m) {
    std::size_t i = rng.below(all_pairs.size());
    if (used[i] >= max_mult) continue;
    used[i]++;
    endpoints.push_back(all_pairs[i]);
  }
  return MultiGraph(n, std::move(endpoints));
}

// Streams every labeled loop-free multigraph on exactly n vertices with at
// most m_max edges and per-pair multiplicity at most max_mult, as an
// odometer over the multiplicity vector. Return false from the callback to
// stop early.
inline void enumerate_multigraphs(int n, int m_max, int max_mult,
                                  const std::function<bool(const MultiGraph&)>& fn) {
  if (n < 0 || m_max < 0 || max_mult < 0) throw std::invalid_argument("bad enumeration bounds");
  std::vector<std::pair<VertexId, VertexId>> all_pairs;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v) all_pairs.emplace_back(u, v);
  std::vector<int> mult(all_pairs.size(), 0);
  int total = 0;
  for (;;) {
    std::vector<std::pair<VertexId, VertexId>> endpoints;
    for (std::size_t i = 0; i < all_pairs.size(); ++i)
      for (int c = 0; c < mult[i]; ++c) endpoints.push_back(all_pairs[i]);
    if (!fn(MultiGraph(n, std::move(endpoints)))) return;
    // advance the odometer, skipping states over the edge budget
    std::size_t pos = 0;
    for (;;) {
      if (pos == mult.size()) return;
      if (mult[pos] < max_mult && total + 1 <= m_max) {
        mult[pos]++;
        total++;
        break;
      }
      total -= mult[pos];
      mult[pos] = 0;
      pos++;
    }
  }
}

inline std::int64_t count_multigraphs(int n, int m_max, int max_mult) {
  std::int64_t count = 0;
  enumerate_multigraphs(n, m_max, max_mult, [&](const MultiGraph&) {
    ++count;
    return true;
  });
  return count;
}

// Labeled enumeration with isomorphic duplicates dropped; off the hot
// path, for corpus thinning only.
inline void enumerate_multigraphs_up_to_iso(int n, int m_max, int max_mult,
                                            const std::function<bool(const MultiGraph&)>& fn);

// Size-`size` subsets of [0, universe) as bitmasks in colex order; stops
// early when fn returns true. Returns whether a call returned true.
inline bool subsets_colex(int universe, int size,
                          const std::function<bool(std::uint64_t)>& fn) {
  if (size < 0 || size > universe) return false;
  if (size == 0) return fn(0);
  std::uint64_t mask = (std::uint64_t{1} << size) - 1;
  std::uint64_t limit = std::uint64_t{1} << universe;
  while (mask < limit && mask != 0) {
    if (fn(mask)) return true;
    std::uint64_t lo = mask & (~mask + 1);
    std::uint64_t lz = mask + lo;
    if (lz == 0) break;
    mask = lz | (((mask ^ lz) / lo) >> 2);
  }
  return false;
}

// Permutation-minimal signature of the multiplicity matrix; usable for
// isomorph rejection on small n.
inline std::vector<int> canonical_signature(const MultiGraph& g) {
  int n = g.vertex_count();
  if (n > 8) throw std::invalid_argument("canonical signature limited to n <= 8");
  std::vector<int> mat(n * n, 0);
  for (const auto& [u, v] : g.edge_list()) {
    mat[u * n + v]++;
    mat[v * n + u]++;
  }
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best;
  do {
    std::vector<int> cur;
    cur.reserve(n * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) cur.push_back(mat[perm[i] * n + perm[j]]);
    if (best.empty() || cur < best) best = std::move(cur);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline void enumerate_multigraphs_up_to_iso(int n, int m_max, int max_mult,
                                            const std::function<bool(const MultiGraph&)>& fn) {
  std::set<std::vector<int>> seen;
  enumerate_multigraphs(n, m_max, max_mult, [&](const MultiGraph& g) {
    if (!seen.insert(canonical_signature(g)).second) return true;
    return fn(g);
  });
}

struct PartialThreeTreeOptions {
  double delete_prob = 0.25;
  double duplicate_prob = 0.25;
};

// Grows a 3-tree by attaching each new vertex to a random triangle, then
// deletes and duplicates edges at random. Treewidth stays at most 3.
inline MultiGraph random_partial_3_tree(int n, std::uint64_t seed,
                                        PartialThreeTreeOptions opts = {}) {
  if (n < 4) throw std::invalid_argument("need at least 4 vertices");
  Rng rng(seed);
  std::vector<std::pair<VertexId, VertexId>> base;
  std::vector<std::array<VertexId, 3>> triangles;
  for (VertexId u = 0; u < 4; ++u)
    for (VertexId v = u + 1; v < 4; ++v) base.emplace_back(u, v);
  triangles.push_back({0, 1, 2});
  triangles.push_back({0, 1, 3});
  triangles.push_back({0, 2, 3});
  triangles.push_back({1, 2, 3});
  for (VertexId v = 4; v < n; ++v) {
    auto tri = triangles[rng.below(triangles.size())];
    for (VertexId w : tri) base.emplace_back(w, v);
    triangles.push_back({tri[0], tri[1], v});
    triangles.push_back({tri[0], tri[2], v});
    triangles.push_back({tri[1], tri[2], v});
  }
  std::vector<std::pair<VertexId, VertexId>> endpoints;
  for (const auto& e : base) {
    if (rng.unit() < opts.delete_prob) continue;
    endpoints.push_back(e);
    if (rng.unit() < opts.duplicate_prob) endpoints.push_back(e);
  }
  return MultiGraph(n, std::move(endpoints));
}

}  // namespace mixedcut
