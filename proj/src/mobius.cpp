#include "nbt/mobius.hpp"

#include <algorithm>
#include <set>

namespace nbt {
namespace {

struct ClassKey {
  long long size;  // #V + #Edir, the induction measure
  std::string label;
  bool operator<(const ClassKey& o) const {
    return size != o.size ? size < o.size : label < o.label;
  }
};

ClassKey key_of(const BGraph& b, const std::string& label) {
  return {static_cast<long long>(b.graph().num_vertices() + b.graph().num_dedges()), label};
}

// Rebuild host + (copy minus overlap) as one B-graph with fresh ids.
// overlap_vmap/overlap_emap send copy indices to host indices, -1 = fresh.
BGraph glue(const BGraph& host, const BGraph& copy, const std::vector<int>& overlap_vmap,
            const std::vector<int>& overlap_emap) {
  const Graph& hg = host.graph();
  const Graph& cg = copy.graph();
  std::vector<std::string> vertices;
  std::vector<DedgeSpec> dedges;
  std::map<std::string, std::string> vmap, emap;

  auto host_vid = [&](int v) { return "h." + hg.vertex_ids()[v]; };
  auto copy_vid = [&](int v) {
    return overlap_vmap[v] >= 0 ? host_vid(overlap_vmap[v]) : "c." + cg.vertex_ids()[v];
  };
  auto host_eid = [&](int e) { return "h." + hg.dedge_ids()[e]; };
  auto copy_eid = [&](int e) {
    return overlap_emap[e] >= 0 ? host_eid(overlap_emap[e]) : "c." + cg.dedge_ids()[e];
  };

  for (int v = 0; v < static_cast<int>(hg.num_vertices()); ++v) {
    vertices.push_back(host_vid(v));
    vmap[host_vid(v)] = host.base().vertex_ids()[host.vmap(v)];
  }
  for (int v = 0; v < static_cast<int>(cg.num_vertices()); ++v) {
    if (overlap_vmap[v] >= 0) continue;
    vertices.push_back(copy_vid(v));
    vmap[copy_vid(v)] = copy.base().vertex_ids()[copy.vmap(v)];
  }
  for (int e = 0; e < static_cast<int>(hg.num_dedges()); ++e) {
    dedges.push_back(
        {host_eid(e), host_vid(hg.tail(e)), host_vid(hg.head(e)), host_eid(hg.inv(e))});
    emap[host_eid(e)] = host.base().dedge_ids()[host.emap(e)];
  }
  for (int e = 0; e < static_cast<int>(cg.num_dedges()); ++e) {
    if (overlap_emap[e] >= 0) continue;
    dedges.push_back(
        {copy_eid(e), copy_vid(cg.tail(e)), copy_vid(cg.head(e)), copy_eid(cg.inv(e))});
    emap[copy_eid(e)] = copy.base().dedge_ids()[copy.emap(e)];
  }
  return BGraph::build(Graph::build(std::move(vertices), std::move(dedges)), host.base(), vmap,
                       emap);
}

}  // namespace

const IsoClassTable::Entry* IsoClassTable::find(const std::string& label) const {
  for (const auto& e : classes)
    if (e.label == label) return &e;
  return nullptr;
}

void mobius_function(IsoClassTable& table) {
  std::sort(table.classes.begin(), table.classes.end(), [](const auto& a, const auto& b) {
    return key_of(a.rep, a.label) < key_of(b.rep, b.label);
  });
  for (std::size_t t = 0; t < table.classes.size(); ++t) {
    auto& entry = table.classes[t];
    Rational acc = 0;
    for (std::size_t s = 0; s < t; ++s) {
      const auto& smaller = table.classes[s];
      long long n = count_injections(smaller.rep, entry.rep);
      if (n == 0) continue;
      // antisymmetry: an equal-size distinct class cannot inject
      require(key_of(smaller.rep, smaller.label).size < key_of(entry.rep, entry.label).size,
              Errc::validation, "injection order is not antisymmetric");
      acc += Rational(n) * smaller.mobius;
    }
    long long aut = count_injections(entry.rep, entry.rep);
    entry.mobius = (Rational(1) - acc) / Rational(aut);
  }
  // the defining identity, exactly
  for (std::size_t t = 0; t < table.classes.size(); ++t) {
    Rational sum = 0;
    for (std::size_t s = 0; s <= t; ++s) {
      long long n = count_injections(table.classes[s].rep, table.classes[t].rep);
      if (n > 0) sum += Rational(n) * table.classes[s].mobius;
    }
    require(sum == 1, Errc::validation, "Mobius identity failed on a constructed table");
  }
}

IsoClassTable derived_classes(const std::vector<BGraph>& psi, int r) {
  require(!psi.empty(), Errc::validation, "empty generator set");
  for (const auto& g : psi) {
    require(g.graph().is_positive(), Errc::generator_not_positive,
            "derived classes need positive generators");
    require(g.same_base(psi.front()), Errc::validation, "generators must share the base");
  }

  IsoClassTable table;
  std::set<std::string> seen;
  std::vector<BGraph> queue;
  for (const auto& g : psi) {
    if (g.graph().order() >= r) continue;
    std::string label = canonical_label(g);
    if (seen.insert(label).second) {
      table.classes.push_back({label, g, g.graph().order(), 0});
      queue.push_back(g);
    }
  }

  while (!queue.empty()) {
    BGraph host = queue.back();
    queue.pop_back();
    for (const auto& gen : psi) {
      const Graph& cg = gen.graph();
      // An overlap is any sub-B-graph of the generator: an involution-closed
      // edge subset plus extra isolated vertices, glued along any injection
      // into the host.
      std::vector<int> orbit_reps;
      for (int e = 0; e < static_cast<int>(cg.num_dedges()); ++e)
        if (cg.orbit_rep(e) == e) orbit_reps.push_back(e);
      const int ne = static_cast<int>(orbit_reps.size());
      for (int emask = 0; emask < (1 << ne); ++emask) {
        std::vector<int> sel_dedges;
        std::vector<char> covered(cg.num_vertices(), 0);
        for (int b = 0; b < ne; ++b)
          if (emask & (1 << b)) {
            int e = orbit_reps[b];
            sel_dedges.push_back(e);
            if (cg.inv(e) != e) sel_dedges.push_back(cg.inv(e));
            covered[cg.tail(e)] = 1;
            covered[cg.head(e)] = 1;
          }
        std::vector<int> free_vertices;
        for (int v = 0; v < static_cast<int>(cg.num_vertices()); ++v)
          if (!covered[v]) free_vertices.push_back(v);
        const int nf = static_cast<int>(free_vertices.size());
        for (int vmask = 0; vmask < (1 << nf); ++vmask) {
          std::vector<int> extra;
          for (int b = 0; b < nf; ++b)
            if (vmask & (1 << b)) extra.push_back(free_vertices[b]);
          BGraph overlap = gen.subgraph(sel_dedges, extra);
          for_each_injection(
              overlap, host, [&](const std::vector<int>& vm, const std::vector<int>& em) {
                std::vector<int> ov(cg.num_vertices(), -1), oe(cg.num_dedges(), -1);
                for (std::size_t i = 0; i < vm.size(); ++i)
                  ov[cg.vertex_index(overlap.graph().vertex_ids()[i])] = vm[i];
                for (std::size_t i = 0; i < em.size(); ++i)
                  oe[cg.dedge_index(overlap.graph().dedge_ids()[i])] = em[i];
                BGraph unioned = glue(host, gen, ov, oe);
                if (unioned.graph().order() < r) {
                  std::string label = canonical_label(unioned);
                  if (seen.insert(label).second) {
                    table.classes.push_back({label, unioned, unioned.graph().order(), 0});
                    queue.push_back(unioned);
                  }
                }
                return true;
              });
        }
      }
    }
  }
  mobius_function(table);
  return table;
}

std::pair<BGraph, long long> psi_image(const BGraph& g, const std::vector<BGraph>& psi) {
  std::set<int> vkeep, ekeep;
  for (const auto& gen : psi) {
    for_each_injection(gen, g, [&](const std::vector<int>& vm, const std::vector<int>& em) {
      vkeep.insert(vm.begin(), vm.end());
      ekeep.insert(em.begin(), em.end());
      return true;
    });
  }
  BGraph image = g.subgraph(std::vector<int>(ekeep.begin(), ekeep.end()),
                            std::vector<int>(vkeep.begin(), vkeep.end()));
  return {image, image.graph().order()};
}

Rational truncated_indicator(const BGraph& g, const IsoClassTable& table) {
  Rational sum = 0;
  for (const auto& entry : table.classes) {
    long long n = count_injections(entry.rep, g);
    if (n > 0) sum += Rational(n) * entry.mobius;
  }
  return sum;
}

Rational truncated_indicator(const BGraph& g, const std::vector<BGraph>& psi, int r) {
  return truncated_indicator(g, derived_classes(psi, r));
}

}  // namespace nbt
