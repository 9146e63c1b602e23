#pragma once

// Shared test fixtures: small named graphs, a deterministic RNG, a random
// graph generator, and brute-force oracles kept independent of the library's
// search code.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "nbt/graph.hpp"

namespace nbt_test {

struct TestRng {
  std::uint64_t s;
  explicit TestRng(std::uint64_t seed) : s(seed) {}
  std::uint64_t next() {
    s += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t n) { return next() % n; }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

inline nbt::Graph cycle_graph(int m) {
  nbt::GraphBuilder b;
  for (int i = 0; i < m; ++i) b.vertex("v" + std::to_string(i));
  for (int i = 0; i < m; ++i)
    b.edge("e" + std::to_string(i), "v" + std::to_string(i), "v" + std::to_string((i + 1) % m));
  return b.build();
}

inline nbt::Graph bouquet(int whole_loops) {
  nbt::GraphBuilder b;
  b.vertex("v");
  for (int i = 0; i < whole_loops; ++i) b.edge("l" + std::to_string(i), "v", "v");
  return b.build();
}

inline nbt::Graph half_loop_bouquet(int half_loops, int whole_loops = 0) {
  nbt::GraphBuilder b;
  b.vertex("v");
  for (int i = 0; i < half_loops; ++i) b.half_loop("h" + std::to_string(i), "v");
  for (int i = 0; i < whole_loops; ++i) b.edge("l" + std::to_string(i), "v", "v");
  return b.build();
}

inline nbt::Graph figure_eight() { return bouquet(2); }

inline nbt::Graph complete4() {
  nbt::GraphBuilder b;
  for (int i = 0; i < 4; ++i) b.vertex("v" + std::to_string(i));
  int e = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      b.edge("e" + std::to_string(e++), "v" + std::to_string(i), "v" + std::to_string(j));
  return b.build();
}

inline nbt::Graph path_graph(int edges) {
  nbt::GraphBuilder b;
  for (int i = 0; i <= edges; ++i) b.vertex("v" + std::to_string(i));
  for (int i = 0; i < edges; ++i)
    b.edge("e" + std::to_string(i), "v" + std::to_string(i), "v" + std::to_string(i + 1));
  return b.build();
}

inline nbt::Graph theta_graph(int a, int b, int c) {
  nbt::GraphBuilder g;
  g.vertex("u").vertex("w");
  int vid = 0, eid = 0;
  for (int len : {a, b, c}) {
    std::string prev = "u";
    for (int j = 0; j + 1 < len; ++j) {
      std::string mid = "m" + std::to_string(vid++);
      g.vertex(mid);
      g.edge("e" + std::to_string(eid++), prev, mid);
      prev = mid;
    }
    g.edge("e" + std::to_string(eid++), prev, "w");
  }
  return g.build();
}

inline nbt::Graph barbell_graph(int a, int b, int c) {
  // loop of length a at u, loop of length b at w, bridge of length c.
  nbt::GraphBuilder g;
  g.vertex("u").vertex("w");
  int vid = 0, eid = 0;
  auto path = [&](const std::string& from, const std::string& to, int len) {
    std::string prev = from;
    for (int j = 0; j + 1 < len; ++j) {
      std::string mid = "m" + std::to_string(vid++);
      g.vertex(mid);
      g.edge("e" + std::to_string(eid++), prev, mid);
      prev = mid;
    }
    g.edge("e" + std::to_string(eid++), prev, to);
  };
  path("u", "u", a);
  path("w", "w", b);
  path("u", "w", c);
  return g.build();
}

// Random graph: may be disconnected, unpruned, with multi-edges and both loop
// kinds.  Always a valid graph.
inline nbt::Graph random_graph(TestRng& rng, int max_vertices, int max_edges,
                               bool allow_half_loops = true) {
  int nv = 1 + static_cast<int>(rng.below(max_vertices));
  int ne = 1 + static_cast<int>(rng.below(max_edges));
  nbt::GraphBuilder b;
  for (int i = 0; i < nv; ++i) b.vertex("v" + std::to_string(i));
  for (int i = 0; i < ne; ++i) {
    int kind = static_cast<int>(rng.below(6));
    std::string u = "v" + std::to_string(rng.below(nv));
    std::string w = "v" + std::to_string(rng.below(nv));
    if (kind == 0 && allow_half_loops)
      b.half_loop("e" + std::to_string(i), u);
    else if (kind == 1)
      b.edge("e" + std::to_string(i), u, u);
    else
      b.edge("e" + std::to_string(i), u, w);
  }
  return b.build();
}

// Rebuild with every id prefixed (a relabeling that scrambles sorted order).
inline nbt::Graph relabel(const nbt::Graph& g, const std::string& prefix) {
  std::vector<std::string> vids;
  for (const auto& v : g.vertex_ids()) vids.push_back(prefix + v);
  std::vector<nbt::DedgeSpec> specs;
  for (int e = 0; e < static_cast<int>(g.num_dedges()); ++e)
    specs.push_back({prefix + g.dedge_ids()[e], prefix + g.vertex_ids()[g.tail(e)],
                     prefix + g.vertex_ids()[g.head(e)], prefix + g.dedge_ids()[g.inv(e)]});
  return nbt::Graph::build(vids, specs);
}

// Identity-style B-graph: base == graph, maps the identity.
inline nbt::BGraph identity_bgraph(const nbt::Graph& g) {
  std::map<std::string, std::string> vm, em;
  for (const auto& v : g.vertex_ids()) vm[v] = v;
  for (const auto& e : g.dedge_ids()) em[e] = e;
  return nbt::BGraph::build(g, g, vm, em);
}

// Every dedge to the one half-loop of a 1-half-loop bouquet; always valid.
inline nbt::BGraph over_half_loop_point(const nbt::Graph& g) {
  nbt::Graph base = half_loop_bouquet(1);
  std::map<std::string, std::string> vm, em;
  for (const auto& v : g.vertex_ids()) vm[v] = "v";
  for (const auto& e : g.dedge_ids()) em[e] = "h0";
  return nbt::BGraph::build(g, base, vm, em);
}

// --- brute-force oracles ---

// Plain-graph isomorphism by trying every vertex bijection and comparing
// edge multiplicities (half-loop counts, whole-loop pair counts, link counts).
inline bool bf_isomorphic(const nbt::Graph& a, const nbt::Graph& b) {
  if (a.num_vertices() != b.num_vertices() || a.num_dedges() != b.num_dedges()) return false;
  const int n = static_cast<int>(a.num_vertices());
  auto stats = [n](const nbt::Graph& g, const std::vector<int>& perm) {
    // perm maps g vertex index -> canonical slot
    std::map<std::pair<int, int>, int> links;
    std::map<int, std::pair<int, int>> loops;  // vertex -> (half, whole pairs)
    for (int e = 0; e < static_cast<int>(g.num_dedges()); ++e) {
      if (g.orbit_rep(e) != e) continue;
      int p = perm[g.tail(e)], q = perm[g.head(e)];
      if (g.is_half_loop(e))
        ++loops[p].first;
      else if (p == q)
        ++loops[p].second;
      else
        ++links[{std::min(p, q), std::max(p, q)}];
    }
    return std::make_pair(links, loops);
  };
  std::vector<int> ident(n);
  std::iota(ident.begin(), ident.end(), 0);
  auto target = stats(a, ident);
  std::vector<int> perm(ident);
  do {
    if (stats(b, perm) == target) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return n == 0;
}

// B-graph isomorphism oracle over a shared base, same scheme but with label
// multisets per vertex pair.
inline bool bf_b_isomorphic(const nbt::BGraph& a, const nbt::BGraph& b) {
  if (!a.same_base(b)) return false;
  if (a.graph().num_vertices() != b.graph().num_vertices() ||
      a.graph().num_dedges() != b.graph().num_dedges())
    return false;
  const int n = static_cast<int>(a.graph().num_vertices());
  auto stats = [n](const nbt::BGraph& bg, const std::vector<int>& perm) {
    const nbt::Graph& g = bg.graph();
    std::map<int, int> vcolor;
    for (int v = 0; v < static_cast<int>(g.num_vertices()); ++v) vcolor[perm[v]] = bg.vmap(v);
    std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> edges;
    std::map<int, std::vector<int>> half;
    for (int e = 0; e < static_cast<int>(g.num_dedges()); ++e) {
      if (g.orbit_rep(e) != e) continue;
      int p = perm[g.tail(e)], q = perm[g.head(e)];
      int le = bg.emap(e), lf = bg.emap(g.inv(e));
      if (g.is_half_loop(e)) {
        half[p].push_back(le);
      } else {
        if (p > q || (p == q && le > lf)) {
          std::swap(p, q);
          std::swap(le, lf);
        }
        edges[{p, q}].push_back({le, lf});
      }
    }
    for (auto& [k, v] : edges) std::sort(v.begin(), v.end());
    for (auto& [k, v] : half) std::sort(v.begin(), v.end());
    return std::make_tuple(vcolor, edges, half);
  };
  std::vector<int> ident(n);
  std::iota(ident.begin(), ident.end(), 0);
  auto target = stats(a, ident);
  std::vector<int> perm(ident);
  do {
    if (stats(b, perm) == target) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return n == 0;
}

}  // namespace nbt_test
