#include "nbt/covers.hpp"

#include <algorithm>
#include <map>

namespace nbt {

CoverModel CoverModel::parse(const std::string& name) {
  if (name == "permutation") return {CoverKind::permutation};
  if (name == "cyclic") return {CoverKind::cyclic};
  if (name == "permutation-involution-even") return {CoverKind::permutation_involution_even};
  if (name == "permutation-involution-odd") return {CoverKind::permutation_involution_odd};
  if (name == "cyclic-involution-even") return {CoverKind::cyclic_involution_even};
  if (name == "cyclic-involution-odd") return {CoverKind::cyclic_involution_odd};
  fail(Errc::parse_error, "unknown cover model '" + name + "'");
}

std::string CoverModel::name() const {
  switch (kind) {
    case CoverKind::permutation: return "permutation";
    case CoverKind::cyclic: return "cyclic";
    case CoverKind::permutation_involution_even: return "permutation-involution-even";
    case CoverKind::permutation_involution_odd: return "permutation-involution-odd";
    case CoverKind::cyclic_involution_even: return "cyclic-involution-even";
    case CoverKind::cyclic_involution_odd: return "cyclic-involution-odd";
  }
  fail(Errc::validation, "bad cover kind");
}

bool CoverModel::involution_kind() const {
  return kind != CoverKind::permutation && kind != CoverKind::cyclic;
}

bool CoverModel::cyclic_loops() const {
  return kind == CoverKind::cyclic || kind == CoverKind::cyclic_involution_even ||
         kind == CoverKind::cyclic_involution_odd;
}

int CoverModel::parity() const {
  switch (kind) {
    case CoverKind::permutation_involution_even:
    case CoverKind::cyclic_involution_even: return 0;
    case CoverKind::permutation_involution_odd:
    case CoverKind::cyclic_involution_odd: return 1;
    default: return -1;
  }
}

CoverSample sample_cover(const Graph& base, int n, const CoverModel& model, std::uint64_t seed) {
  require(base.is_pruned() && base.connected() && !base.empty(), Errc::validation,
          "cover models need a pruned connected base");
  require(model.admits(n), Errc::parity_mismatch,
          "degree " + std::to_string(n) + " is not admissible for model " + model.name());
  bool base_has_half_loop = false;
  for (int e = 0; e < static_cast<int>(base.num_dedges()); ++e)
    if (base.is_half_loop(e)) base_has_half_loop = true;
  if (base_has_half_loop)
    require(model.involution_kind(), Errc::half_loop_unsupported,
            "base has half-loops; use an involution model kind");

  CoverSample s;
  s.base = base;
  s.n = n;
  s.sigma.assign(base.num_dedges(), {});
  for (int e = 0; e < static_cast<int>(base.num_dedges()); ++e) {
    if (base.orbit_rep(e) != e || !s.sigma[e].empty()) continue;
    CounterRng rng = CounterRng::stream(seed, static_cast<std::uint64_t>(e));
    if (base.is_half_loop(e)) {
      s.sigma[e] = random_matching(n, rng);
      continue;
    }
    bool whole_loop = base.tail(e) == base.head(e);
    std::vector<int> perm =
        whole_loop && model.cyclic_loops() ? random_n_cycle(n, rng) : random_permutation(n, rng);
    std::vector<int> inverse(n);
    for (int i = 0; i < n; ++i) inverse[perm[i]] = i;
    s.sigma[e] = std::move(perm);
    s.sigma[base.inv(e)] = std::move(inverse);
  }
  return s;
}

BGraph realize(const CoverSample& c) {
  const Graph& b = c.base;
  require(c.n >= 1 && c.sigma.size() == b.num_dedges(), Errc::validation, "bad cover sample");
  std::vector<std::string> vertices;
  std::vector<DedgeSpec> dedges;
  std::map<std::string, std::string> vmap, emap;
  auto vid = [&](int v, int i) { return b.vertex_ids()[v] + "@" + std::to_string(i + 1); };
  auto eid = [&](int e, int i) { return b.dedge_ids()[e] + "@" + std::to_string(i + 1); };
  for (int v = 0; v < static_cast<int>(b.num_vertices()); ++v)
    for (int i = 0; i < c.n; ++i) {
      vertices.push_back(vid(v, i));
      vmap[vid(v, i)] = b.vertex_ids()[v];
    }
  for (int e = 0; e < static_cast<int>(b.num_dedges()); ++e) {
    const auto& perm = c.sigma[e];
    require(static_cast<int>(perm.size()) == c.n, Errc::validation, "sigma size mismatch");
    for (int i = 0; i < c.n; ++i) {
      // t(e,i) = (t e, i); h(e,i) = (h e, sigma(e) i); inv(e,i) = (inv e, sigma(e) i)
      dedges.push_back(
          {eid(e, i), vid(b.tail(e), i), vid(b.head(e), perm[i]), eid(b.inv(e), perm[i])});
      emap[eid(e, i)] = b.dedge_ids()[e];
    }
  }
  return BGraph::build(Graph::build(std::move(vertices), std::move(dedges)), b, vmap, emap);
}

bool validate_cover(const BGraph& g) {
  const Graph& gr = g.graph();
  const Graph& b = g.base();
  if (b.empty() || gr.empty()) return false;
  auto fe = g.fibre_edge_counts();
  auto fv = g.fibre_vertex_counts();
  int n = fv.empty() ? 0 : fv[0];
  if (n < 1) return false;
  for (int c : fv)
    if (c != n) return false;
  for (int c : fe)
    if (c != n) return false;
  // Local bijectivity of tail-incident dedges at every vertex; the head side
  // follows because emap commutes with the involutions, but check it anyway.
  std::vector<int> seen(b.num_dedges(), -1);
  for (int v = 0; v < static_cast<int>(gr.num_vertices()); ++v) {
    auto out = gr.out_dedges(v);
    if (out.size() != b.out_dedges(g.vmap(v)).size()) return false;
    for (int e : out) {
      if (seen[g.emap(e)] == v) return false;  // two dedges over one base dedge
      seen[g.emap(e)] = v;
      if (g.emap(gr.inv(e)) != b.inv(g.emap(e))) return false;
    }
  }
  return true;
}

}  // namespace nbt
