#include "nbt/certificates.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "nbt/spectral.hpp"

namespace nbt {
namespace {

constexpr double kAmbiguousBand = 1e-9;
constexpr double kFallbackBand = 1e-6;

// mu1(VLG(type, lengths)) comparisons, memoized per call site.  Values that
// land within the fallback band of nu are settled exactly by the rational
// determinant comparison, so boundary cases like nu = mu1 resolve correctly.
struct MuCache {
  const OrderedGraph& type;
  double nu;
  std::map<std::vector<int>, double> memo;
  std::map<std::vector<int>, int> cmp_memo;

  double mu(const std::vector<int>& lengths) {
    auto it = memo.find(lengths);
    if (it != memo.end()) return it->second;
    double m = shannon_mu1(LengthedType::build(type, lengths));
    memo.emplace(lengths, m);
    return m;
  }

  // sign of mu1 - nu
  int compare(const std::vector<int>& lengths) {
    double m = mu(lengths);
    if (std::abs(m - nu) >= kFallbackBand) return m < nu ? -1 : 1;
    auto it = cmp_memo.find(lengths);
    if (it != cmp_memo.end()) return it->second;
    int c = compare_mu1_shannon(LengthedType::build(type, lengths), nu);
    cmp_memo.emplace(lengths, c);
    return c;
  }

  bool member(const std::vector<int>& lengths, bool strict) {
    int c = compare(lengths);
    return strict ? c < 0 : c <= 0;
  }
};

std::vector<char> half_loop_mask(const OrderedGraph& type) {
  std::vector<char> mask;
  for (int e : type.edge_order()) mask.push_back(type.graph().is_half_loop(e) ? 1 : 0);
  return mask;
}

}  // namespace

bool in_upper_set(const LengthedType& t, double nu, bool strict) {
  MuCache cache{t.otype, nu, {}};
  return cache.member(t.lengths, strict);
}

CertificateSet minimal_certificates(const OrderedGraph& type, double nu, bool strict, int cap) {
  require(cap >= 1, Errc::validation, "cap must be >= 1");
  const int m = static_cast<int>(type.edge_order().size());
  require(m >= 1, Errc::validation, "type has no edges");

  CertificateSet out;
  out.type = type;
  out.type_label = type.label();
  out.nu = nu;
  out.strict = strict;
  out.cap_used = cap;

  MuCache cache{type, nu, {}};
  const std::vector<char> half = half_loop_mask(type);
  std::vector<int> bottom(m, 1);

  if (cache.member(bottom, strict)) {
    out.minima = {bottom};
  } else {
    // Walk the lower set of non-members upward from the bottom; U's minima
    // within the box are exactly the members all of whose decrements are
    // non-members.
    std::set<std::vector<int>> lower{bottom}, candidates;
    std::vector<std::vector<int>> queue{bottom};
    while (!queue.empty()) {
      std::vector<int> d = queue.back();
      queue.pop_back();
      for (int i = 0; i < m; ++i) {
        if (half[i] || d[i] >= cap) continue;
        std::vector<int> up = d;
        ++up[i];
        if (cache.member(up, strict)) {
          candidates.insert(up);
        } else if (lower.insert(up).second) {
          queue.push_back(up);
        }
      }
    }
    for (const auto& c : candidates) {
      bool minimal = true;
      for (int i = 0; i < m && minimal; ++i) {
        if (c[i] < 2) continue;
        std::vector<int> down = c;
        --down[i];
        if (cache.member(down, strict)) minimal = false;
      }
      if (minimal) out.minima.push_back(c);
    }
  }

  // Box-frontier verification.  For each nonempty coordinate subset S either
  // the column never enters U (the edge-deleted graph alone already forces
  // mu1 >= nu through the subgraph bound) or the wall point is a member,
  // making everything beyond it dominate a member.
  out.verified = true;
  const Graph& tg = type.graph();
  std::vector<int> whole_positions;
  for (int i = 0; i < m; ++i)
    if (!half[i]) whole_positions.push_back(i);
  const int w = static_cast<int>(whole_positions.size());
  for (int mask = 1; mask < (1 << w) && out.verified; ++mask) {
    std::vector<char> in_s(m, 0);
    for (int b = 0; b < w; ++b)
      if (mask & (1 << b)) in_s[whole_positions[b]] = 1;
    // Fast path: the wall with bottom elsewhere is the hardest membership
    // case, mu1 being decreasing in every coordinate.
    std::vector<int> wall(m, 1);
    for (int i = 0; i < m; ++i)
      if (in_s[i]) wall[i] = cap;
    if (cache.member(wall, strict)) continue;
    // Slow path: per remaining-length vector k', require the deleted-edge
    // limit to exceed nu or the wall point over k' to be a member.
    std::vector<int> kept_positions;
    std::vector<int> kept_dedges;
    for (int i = 0; i < m; ++i) {
      if (in_s[i]) continue;
      kept_positions.push_back(i);
      int e = type.edge_order()[i];
      kept_dedges.push_back(e);
      if (tg.inv(e) != e) kept_dedges.push_back(tg.inv(e));
    }
    Graph deleted = tg.subgraph(kept_dedges);
    OrderedGraph od;
    std::vector<int> pos_of_deleted_edge;  // deleted edge-order position -> kept_positions index
    if (deleted.num_dedges() > 0) {
      std::vector<int> orient, vorder;
      for (int e = 0; e < static_cast<int>(deleted.num_dedges()); ++e)
        if (deleted.orbit_rep(e) == e) orient.push_back(e);
      for (int v = 0; v < static_cast<int>(deleted.num_vertices()); ++v) vorder.push_back(v);
      od = OrderedGraph::build(deleted, orient, vorder, orient);
      for (int e : orient) {
        int pos = -1;
        for (std::size_t j = 0; j < kept_positions.size(); ++j) {
          int te = type.edge_order()[kept_positions[j]];
          if (tg.dedge_ids()[te] == deleted.dedge_ids()[e] ||
              tg.dedge_ids()[tg.inv(te)] == deleted.dedge_ids()[e])
            pos = static_cast<int>(j);
        }
        pos_of_deleted_edge.push_back(pos);
      }
    }
    std::vector<int> kprime(kept_positions.size(), 1);
    bool ok = true;
    while (true) {
      double limit = 0.0;
      if (deleted.num_dedges() > 0) {
        std::vector<int> lens;
        for (std::size_t j = 0; j < od.edge_order().size(); ++j) {
          int e = od.edge_order()[j];
          lens.push_back(deleted.is_half_loop(e) ? 1 : kprime[pos_of_deleted_edge[j]]);
        }
        limit = shannon_mu1(LengthedType::build(od, lens));
      }
      if (std::abs(limit - nu) < kFallbackBand) {
        ok = false;  // the column's limit grazes nu: do not guess
        break;
      }
      if (limit < nu) {
        std::vector<int> point(m, cap);
        for (std::size_t j = 0; j < kept_positions.size(); ++j)
          point[kept_positions[j]] = kprime[j];
        for (int i = 0; i < m; ++i)
          if (half[i]) point[i] = 1;
        if (!cache.member(point, strict)) {
          ok = false;
          break;
        }
      }
      int j = static_cast<int>(kprime.size()) - 1;
      while (j >= 0) {
        if (!half[kept_positions[j]] && kprime[j] < cap) {
          ++kprime[j];
          break;
        }
        kprime[j] = 1;
        --j;
      }
      if (j < 0) break;
    }
    if (!ok) out.verified = false;
  }
  return out;
}

namespace {

// Certified-walk predicate per visited subgraph, memoized on the subgraph's
// dedge-orbit set inside the host.
struct VisuCache {
  const Graph& g;
  double nu;
  int r;
  bool strict;
  std::map<std::vector<int>, bool> memo;

  bool certified(const std::vector<int>& orbit_set, const std::vector<int>& dedges) {
    auto it = memo.find(orbit_set);
    if (it != memo.end()) return it->second;
    Graph sub = g.subgraph(dedges);
    bool ok = sub.order() < r;
    if (ok) {
      double m = mu1(sub);
      require(std::abs(m - nu) >= kAmbiguousBand, Errc::tolerance_ambiguous,
              "mu1 within 1e-9 of nu; choose nu away from the spectrum");
      ok = strict ? m < nu : m <= nu;
    }
    memo.emplace(orbit_set, ok);
    return ok;
  }
};

}  // namespace

long long cert_trace_direct(const Graph& g, double nu, int r, int k, bool strict) {
  require(k >= 1 && r >= 1 && nu > 1.0, Errc::validation,
          "cert_trace requires k >= 1, r >= 1, nu > 1");
  VisuCache cache{g, nu, r, strict, {}};
  long long total = 0;
  for_each_snbc(g, k, [&](const Walk& w) {
    std::set<int> orbits;
    std::vector<int> dedges;
    for (int e : w.dedges) {
      orbits.insert(g.orbit_rep(e));
      dedges.push_back(e);
      dedges.push_back(g.inv(e));
    }
    std::vector<int> key(orbits.begin(), orbits.end());
    if (cache.certified(key, dedges)) ++total;
  });
  return total;
}

long long cert_trace_incl_excl(const Graph& g, double nu, int r, int k, bool strict) {
  require(k >= 1 && r >= 1 && nu > 1.0, Errc::validation,
          "cert_trace requires k >= 1, r >= 1, nu > 1");
  // Classify walks by ordered homotopy type and lengths.
  struct TypeData {
    OrderedGraph rep;
    std::map<std::vector<int>, long long> counts;
  };
  std::map<std::string, TypeData> types;
  for_each_snbc(g, k, [&](const Walk& w) {
    HomotopyClass hc = homotopy_class_and_lengths(w);
    auto [it, fresh] = types.try_emplace(hc.type_label);
    if (fresh) it->second.rep = hc.type;
    ++it->second.counts[hc.lengths];
  });

  long long total = 0;
  for (auto& [label, data] : types) {
    if (data.rep.graph().order() >= r) continue;
    CertificateSet certs = minimal_certificates(data.rep, nu, strict, k);
    const auto& xi = certs.minima;
    const int s = static_cast<int>(xi.size());
    require(s <= 24, Errc::too_large, "too many certificates for inclusion-exclusion");
    const int m = static_cast<int>(data.rep.edge_order().size());
    for (int mask = 1; mask < (1 << s); ++mask) {
      std::vector<int> xi_max(m, 1);
      int bits = 0;
      for (int b = 0; b < s; ++b)
        if (mask & (1 << b)) {
          ++bits;
          for (int i = 0; i < m; ++i) xi_max[i] = std::max(xi_max[i], xi[b][i]);
        }
      long long count = 0;
      for (const auto& [lengths, n] : data.counts) {
        bool ge = true;
        for (int i = 0; i < m && ge; ++i) ge = lengths[i] >= xi_max[i];
        if (ge) count += n;
      }
      total += (bits % 2 == 1 ? count : -count);
    }
  }
  return total;
}

}  // namespace nbt
