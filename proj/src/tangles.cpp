#include "nbt/tangles.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "nbt/spectral.hpp"
#include "nbt/walks.hpp"

namespace nbt {
namespace {

constexpr double kVerifyMargin = 1e-6;

// Tangle membership keeps the boundary (mu1 == nu is a tangle); near misses
// are settled exactly through the rational determinant comparison.
bool tangle_member(const LengthedType& lt, double mu_float, double nu) {
  if (std::abs(mu_float - nu) >= kVerifyMargin) return mu_float > nu;
  return compare_mu1_shannon(lt, nu) >= 0;
}

struct Slot {
  int kind;  // 0 link, 1 whole-loop, 2 half-loop
  int a, b;
};

void emit_candidate(int nv, const std::vector<Slot>& slots, const std::vector<int>& count, int r,
                    std::set<std::string>& seen, std::vector<Graph>& out) {
  int total = 0;
  for (int c : count) total += c;
  long long ord = total - nv;
  if (ord < 1 || ord >= r) return;
  std::vector<int> deg(nv, 0);
  std::vector<char> self_loop(nv, 0);
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!count[i]) continue;
    if (slots[i].kind == 0) {
      deg[slots[i].a] += count[i];
      deg[slots[i].b] += count[i];
    } else if (slots[i].kind == 1) {
      deg[slots[i].a] += 2 * count[i];
      self_loop[slots[i].a] = 1;
    } else {
      deg[slots[i].a] += count[i];
      self_loop[slots[i].a] = 1;
    }
  }
  for (int v = 0; v < nv; ++v) {
    if (deg[v] < 2) return;
    if (deg[v] == 2 && !self_loop[v]) return;  // bead
  }
  GraphBuilder b;
  for (int v = 0; v < nv; ++v) b.vertex("v" + std::to_string(v));
  int eid = 0;
  for (std::size_t i = 0; i < slots.size(); ++i)
    for (int c = 0; c < count[i]; ++c) {
      std::string id = "e" + std::to_string(eid++);
      if (slots[i].kind == 2)
        b.half_loop(id, "v" + std::to_string(slots[i].a));
      else
        b.edge(id, "v" + std::to_string(slots[i].a), "v" + std::to_string(slots[i].b));
    }
  Graph g = b.build();
  if (!g.connected()) return;
  std::string label = canonical_label(g);
  if (seen.insert(label).second) out.push_back(std::move(g));
}

// One component of a pruned sub-VLG: type-edge orbit reps with their lengths.
using OrbitLens = std::vector<std::pair<int, int>>;

// Tangle test for the sub-VLG spanned by the orbits, via the determinant
// method on the sub-type (no explicit subdivision needed).
bool sub_vlg_is_tangle(const Graph& type, const OrbitLens& orbit_lens, double nu) {
  std::vector<int> dedges;
  for (const auto& [e, len] : orbit_lens) {
    dedges.push_back(e);
    if (type.inv(e) != e) dedges.push_back(type.inv(e));
  }
  Graph sub = type.subgraph(dedges);
  OrderedGraph od = default_ordering(sub);
  std::vector<int> lens;
  for (int e : od.edge_order()) {
    int len = -1;
    for (const auto& [te, l] : orbit_lens) {
      if (type.dedge_ids()[te] == sub.dedge_ids()[e] ||
          type.dedge_ids()[type.inv(te)] == sub.dedge_ids()[e])
        len = l;
    }
    lens.push_back(sub.is_half_loop(e) ? 1 : len);
  }
  LengthedType lt = LengthedType::build(od, lens);
  return tangle_member(lt, shannon_mu1(lt), nu);
}

// Scans every pruned subset of the type's edges, splitting into connected
// components; fn(orbit_lens, ord) returning true stops the scan.
struct SubVlgScan {
  const Graph& type;
  const std::vector<int>& edge_order;  // oriented dedges, one per orbit
  const std::vector<int>& lengths;

  template <class F>
  bool scan(bool proper_only, const F& fn) const {
    const int m = static_cast<int>(edge_order.size());
    require(m <= 18, Errc::too_large, "suppressed type has too many edges for subset scan");
    const int limit = 1 << m;
    for (int mask = 1; mask < limit; ++mask) {
      if (proper_only && mask == limit - 1) continue;
      // The sub-VLG is pruned iff every incident type vertex keeps degree >= 2.
      std::vector<int> deg(type.num_vertices(), 0);
      std::vector<char> touched(type.num_vertices(), 0);
      for (int i = 0; i < m; ++i) {
        if (!(mask & (1 << i))) continue;
        int e = edge_order[i];
        deg[type.head(e)] += 1;
        touched[type.head(e)] = 1;
        touched[type.tail(e)] = 1;
        if (type.inv(e) != e) deg[type.head(type.inv(e))] += 1;
      }
      bool pruned = true;
      for (int v = 0; v < static_cast<int>(type.num_vertices()) && pruned; ++v)
        if (touched[v] && deg[v] < 2) pruned = false;
      if (!pruned) continue;
      // connected components of the chosen edge set
      std::vector<int> comp(type.num_vertices(), -1);
      for (int v = 0; v < static_cast<int>(type.num_vertices()); ++v)
        if (touched[v]) comp[v] = v;
      bool changed = true;
      while (changed) {
        changed = false;
        for (int i = 0; i < m; ++i) {
          if (!(mask & (1 << i))) continue;
          int e = edge_order[i];
          int a = comp[type.tail(e)], b = comp[type.head(e)];
          if (a != b) {
            int lo = std::min(a, b);
            int hi = std::max(a, b);
            for (int v = 0; v < static_cast<int>(type.num_vertices()); ++v)
              if (comp[v] == hi) comp[v] = lo;
            changed = true;
          }
        }
      }
      std::set<int> roots;
      for (int v = 0; v < static_cast<int>(type.num_vertices()); ++v)
        if (touched[v]) roots.insert(comp[v]);
      for (int root : roots) {
        OrbitLens orbit_lens;
        long long verts = 0;
        for (int i = 0; i < m; ++i) {
          if (!(mask & (1 << i))) continue;
          int e = edge_order[i];
          if (comp[type.tail(e)] != root) continue;
          orbit_lens.emplace_back(e, lengths[i]);
        }
        for (int v = 0; v < static_cast<int>(type.num_vertices()); ++v)
          if (touched[v] && comp[v] == root) ++verts;
        long long ord = static_cast<long long>(orbit_lens.size()) - verts;
        if (fn(orbit_lens, ord)) return true;
      }
    }
    return false;
  }
};

}  // namespace

std::vector<Graph> tangle_candidate_types(int r) {
  require(r >= 1, Errc::validation, "r must be >= 1");
  require(r <= 4, Errc::too_large, "type enumeration supported for r <= 4");
  std::vector<Graph> out;
  std::set<std::string> seen;
  const int max_edges = 3 * (r - 1);
  for (int nv = 1; nv <= 2 * (r - 1); ++nv) {
    std::vector<Slot> slots;
    for (int i = 0; i < nv; ++i)
      for (int j = i + 1; j < nv; ++j) slots.push_back({0, i, j});
    for (int i = 0; i < nv; ++i) {
      slots.push_back({1, i, i});
      slots.push_back({2, i, i});
    }
    std::vector<int> count(slots.size(), 0);
    auto rec = [&](auto&& self, std::size_t idx, int budget) -> void {
      if (idx == slots.size()) {
        emit_candidate(nv, slots, count, r, seen, out);
        return;
      }
      for (int c = 0; c <= budget; ++c) {
        count[idx] = c;
        self(self, idx + 1, budget - c);
      }
      count[idx] = 0;
    };
    rec(rec, 0, max_edges);
  }
  return out;
}

TangleSpec minimal_tangles(double nu, int r, int cap) {
  require(nu > 1.0, Errc::validation, "nu must exceed 1");
  require(cap >= 1, Errc::validation, "cap must be >= 1");
  TangleSpec spec;
  spec.nu = nu;
  spec.r = r;
  spec.cap = cap;
  spec.verified = true;
  if (r <= 1) return spec;  // tangles have order >= 1, so none fit below r = 1

  std::set<std::string> seen;
  for (const Graph& type : tangle_candidate_types(r)) {
    OrderedGraph ot = default_ordering(type);
    const int m = static_cast<int>(ot.edge_order().size());
    std::vector<char> half;
    for (int e : ot.edge_order()) half.push_back(type.is_half_loop(e) ? 1 : 0);

    std::map<std::vector<int>, double> memo;
    auto mu_at = [&](const std::vector<int>& lens) {
      auto it = memo.find(lens);
      if (it != memo.end()) return it->second;
      double v = shannon_mu1(LengthedType::build(ot, lens));
      memo.emplace(lens, v);
      return v;
    };

    // Box-frontier completeness.  A minimal tangle beyond the cap would have
    // an escape set S of coordinates > cap and an in-box rest k'.  Its mu1 is
    // at most the wall value mu(k', cap on S), so the wall must reach nu; and
    // none of its sub-VLGs over E\S (which do not depend on the escape
    // lengths) may already be a tangle, or it would not be minimal.  Columns
    // with a reaching wall but no such sub-tangle leave the enumeration
    // unverified.
    for (int mask = 1; mask < (1 << m) && spec.verified; ++mask) {
      bool touches_half = false;
      for (int i = 0; i < m; ++i)
        if ((mask & (1 << i)) && half[i]) touches_half = true;
      if (touches_half) continue;  // half-loop coordinates never grow
      std::vector<int> rest_pos;
      for (int i = 0; i < m; ++i)
        if (!(mask & (1 << i))) rest_pos.push_back(i);
      // Walk the lower set of k' whose wall still reaches nu.
      auto wall_reaches = [&](const std::vector<int>& kp) {
        std::vector<int> wall(m, cap);
        for (std::size_t j = 0; j < rest_pos.size(); ++j) wall[rest_pos[j]] = kp[j];
        for (int i = 0; i < m; ++i)
          if (half[i]) wall[i] = 1;
        return mu_at(wall) >= nu - kVerifyMargin;
      };
      auto sub_tangle_in_rest = [&](const std::vector<int>& kp) {
        std::vector<int> rest_dedges;
        std::vector<int> rest_lens;
        for (std::size_t j = 0; j < rest_pos.size(); ++j) {
          rest_dedges.push_back(ot.edge_order()[rest_pos[j]]);
          rest_lens.push_back(half[rest_pos[j]] ? 1 : kp[j]);
        }
        SubVlgScan rest_scan{type, rest_dedges, rest_lens};
        return rest_scan.scan(false, [&](const OrbitLens& orbit_lens, long long ord) {
          if (ord < 1 || ord >= r) return false;
          return sub_vlg_is_tangle(type, orbit_lens, nu);
        });
      };
      std::vector<int> kp0(rest_pos.size(), 1);
      if (!wall_reaches(kp0)) continue;
      std::set<std::vector<int>> reach{kp0};
      std::vector<std::vector<int>> kq{kp0};
      bool ok = true;
      while (!kq.empty() && ok) {
        std::vector<int> kp = kq.back();
        kq.pop_back();
        if (!sub_tangle_in_rest(kp)) ok = false;
        for (std::size_t j = 0; j < rest_pos.size() && ok; ++j) {
          if (half[rest_pos[j]] || kp[j] >= cap) continue;
          std::vector<int> up = kp;
          ++up[j];
          if (reach.count(up)) continue;
          if (wall_reaches(up)) {
            reach.insert(up);
            kq.push_back(up);
          }
        }
      }
      if (!ok) spec.verified = false;
    }

    auto is_tangle_at = [&](const std::vector<int>& lens) {
      return tangle_member(LengthedType::build(ot, lens), mu_at(lens), nu);
    };

    // Lower set of tangle lengths, walked from the bottom.
    std::vector<int> bottom(m, 1);
    if (!is_tangle_at(bottom)) continue;
    std::set<std::vector<int>> members{bottom};
    std::vector<std::vector<int>> queue{bottom};
    while (!queue.empty()) {
      std::vector<int> d = queue.back();
      queue.pop_back();
      for (int i = 0; i < m; ++i) {
        if (half[i] || d[i] >= cap) continue;
        std::vector<int> up = d;
        ++up[i];
        if (members.count(up)) continue;
        if (is_tangle_at(up)) {
          members.insert(up);
          queue.push_back(up);
        }
      }
    }

    for (const auto& lens : members) {
      SubVlgScan sub{type, ot.edge_order(), lens};
      bool has_proper_tangle =
          sub.scan(true, [&](const OrbitLens& orbit_lens, long long ord) {
            if (ord < 1 || ord >= r) return false;
            return sub_vlg_is_tangle(type, orbit_lens, nu);
          });
      if (has_proper_tangle) continue;
      Graph tangle = build_vlg(LengthedType::build(ot, lens));
      std::string label = canonical_label(tangle);
      if (seen.insert(label).second) spec.generators.push_back(std::move(tangle));
    }
  }
  return spec;
}

bool has_tangle(const Graph& g, const TangleSpec& spec) {
  for (const Graph& gen : spec.generators)
    if (exists_injection(gen, g)) return true;
  return false;
}

bool has_tangle_bruteforce(const Graph& g, double nu, int r) {
  require(g.num_edges() <= 40, Errc::too_large, "brute-force oracle limited to 40 edges");
  if (r <= 1) return false;
  Graph p = g.pruned();
  if (p.empty()) return false;
  // suppress beads to the homotopy type, keeping one vertex per bead cycle
  std::vector<char> self_loop(p.num_vertices(), 0);
  for (int e = 0; e < static_cast<int>(p.num_dedges()); ++e)
    if (p.tail(e) == p.head(e)) self_loop[p.tail(e)] = 1;
  auto comp = p.components();
  std::set<int> covered;
  std::vector<std::string> keep;
  for (int v = 0; v < static_cast<int>(p.num_vertices()); ++v)
    if (p.degree(v) != 2 || self_loop[v]) {
      keep.push_back(p.vertex_ids()[v]);
      covered.insert(comp[v]);
    }
  for (int v = 0; v < static_cast<int>(p.num_vertices()); ++v)
    if (!covered.count(comp[v])) {
      keep.push_back(p.vertex_ids()[v]);
      covered.insert(comp[v]);
    }
  auto [red, lengths] = bead_suppress(default_ordering(p), keep);
  SubVlgScan scan{red.graph(), red.edge_order(), lengths};
  return scan.scan(false, [&](const OrbitLens& orbit_lens, long long ord) {
    if (ord < 1 || ord >= r) return false;
    return sub_vlg_is_tangle(red.graph(), orbit_lens, nu);
  });
}

}  // namespace nbt
