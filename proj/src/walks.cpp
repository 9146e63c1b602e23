#include "nbt/walks.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace nbt {

bool Walk::closed() const {
  return !dedges.empty() && host->head(dedges.back()) == start;
}

bool Walk::non_backtracking() const {
  for (std::size_t i = 0; i + 1 < dedges.size(); ++i)
    if (host->inv(dedges[i]) == dedges[i + 1]) return false;
  return true;
}

bool Walk::snbc() const {
  return closed() && non_backtracking() && host->inv(dedges.back()) != dedges.front();
}

void Walk::validate() const {
  require(host != nullptr && !dedges.empty(), Errc::validation, "walk needs a host and edges");
  require(host->tail(dedges.front()) == start, Errc::validation, "walk start mismatch");
  for (std::size_t i = 0; i + 1 < dedges.size(); ++i)
    require(host->head(dedges[i]) == host->tail(dedges[i + 1]), Errc::validation,
            "walk incidence breaks at step " + std::to_string(i + 1));
}

LengthedType LengthedType::build(OrderedGraph otype, std::vector<int> lengths) {
  require(lengths.size() == otype.edge_order().size(), Errc::validation,
          "one length per type edge required");
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    require(lengths[i] >= 1, Errc::validation, "edge lengths must be >= 1");
    if (otype.graph().is_half_loop(otype.edge_order()[i]))
      require(lengths[i] == 1, Errc::validation, "half-loop edges always have length 1");
  }
  return {std::move(otype), std::move(lengths)};
}

namespace {

// Shared SNBC depth-first enumeration.  `on_close(depth)` fires whenever the
// current prefix is an SNBC walk; `track` maintains visited counts so ord of
// the visited subgraph is available incrementally.
struct SnbcDfs {
  const Graph& g;
  int k;
  std::vector<int> walk;
  std::vector<int> v_count, e_count;  // visit multiplicity per vertex / edge orbit
  long long visited_vertices = 0, visited_edges = 0;

  explicit SnbcDfs(const Graph& graph, int depth)
      : g(graph), k(depth), v_count(graph.num_vertices(), 0), e_count(graph.num_dedges(), 0) {}

  template <class F>
  void run(const F& on_close) {
    for (int e0 = 0; e0 < static_cast<int>(g.num_dedges()); ++e0) {
      push_vertex(g.tail(e0));
      extend(e0, 1, on_close);
      pop_vertex(g.tail(e0));
    }
  }

  void push_vertex(int v) {
    if (v_count[v]++ == 0) ++visited_vertices;
  }
  void pop_vertex(int v) {
    if (--v_count[v] == 0) --visited_vertices;
  }

  template <class F>
  void extend(int e, int depth, const F& on_close) {
    walk.push_back(e);
    int rep = g.orbit_rep(e);
    if (e_count[rep]++ == 0) ++visited_edges;
    int h = g.head(e);
    push_vertex(h);

    if (h == g.tail(walk.front()) && g.inv(e) != walk.front()) on_close(depth);
    if (depth < k) {
      for (int f : g.out_dedges(h))
        if (g.inv(e) != f) extend(f, depth + 1, on_close);
    }

    pop_vertex(h);
    if (--e_count[rep] == 0) --visited_edges;
    walk.pop_back();
  }

  long long visu_order() const { return visited_edges - visited_vertices; }
};

}  // namespace

long long count_snbc(const Graph& g, int k) {
  require(k >= 1, Errc::validation, "count_snbc requires k >= 1");
  long long total = 0;
  SnbcDfs dfs(g, k);
  dfs.run([&](int depth) {
    if (depth == k) ++total;
  });
  return total;
}

OrderSplit count_snbc_order_split(const Graph& g, int k, int r) {
  require(k >= 1, Errc::validation, "count_snbc_order_split requires k >= 1");
  OrderSplit split;
  SnbcDfs dfs(g, k);
  dfs.run([&](int depth) {
    if (depth != k) return;
    if (dfs.visu_order() < r)
      ++split.below;
    else
      ++split.at_or_above;
  });
  return split;
}

void for_each_snbc(const Graph& g, int k, const std::function<void(const Walk&)>& fn) {
  require(k >= 1, Errc::validation, "for_each_snbc requires k >= 1");
  SnbcDfs dfs(g, k);
  dfs.run([&](int depth) {
    if (depth != k) return;
    Walk w{&g, g.tail(dfs.walk.front()), dfs.walk};
    fn(w);
  });
}

OrderedGraph visited_subgraph(const Walk& w) {
  w.validate();
  const Graph& g = *w.host;
  std::vector<int> vertex_first;  // host vertex indices by first visit
  std::vector<int> edge_first;    // host dedge index as first traversed, per orbit
  std::set<int> vseen;
  std::set<int> eseen;
  auto see_vertex = [&](int v) {
    if (vseen.insert(v).second) vertex_first.push_back(v);
  };
  see_vertex(w.start);
  for (int e : w.dedges) {
    if (eseen.insert(g.orbit_rep(e)).second) edge_first.push_back(e);
    see_vertex(g.head(e));
  }
  std::vector<int> closure;
  for (int e : w.dedges) {
    closure.push_back(e);
    closure.push_back(g.inv(e));
  }
  Graph sub = g.subgraph(closure);
  // Translate host indices to subgraph indices.
  std::vector<int> vorder, eorder;
  for (int v : vertex_first) vorder.push_back(sub.vertex_index(g.vertex_ids()[v]));
  for (int e : edge_first) eorder.push_back(sub.dedge_index(g.dedge_ids()[e]));
  return OrderedGraph::build(std::move(sub), eorder, vorder, eorder);
}

std::pair<OrderedGraph, BGraph> visited_subgraph(const Walk& w, const BGraph& host) {
  require(w.host == &host.graph() || w.host->same_structure(host.graph()), Errc::validation,
          "walk host does not match the B-graph");
  OrderedGraph visu = visited_subgraph(w);
  std::vector<int> dedges;
  dedges.reserve(visu.graph().num_dedges());
  for (const auto& id : visu.graph().dedge_ids()) dedges.push_back(host.graph().dedge_index(id));
  return {visu, host.subgraph(dedges)};
}

std::pair<OrderedGraph, std::vector<int>> bead_suppress(
    const OrderedGraph& s, const std::vector<std::string>& keep_vertex_ids) {
  const Graph& g = s.graph();
  std::vector<char> keep(g.num_vertices(), 0);
  for (const auto& id : keep_vertex_ids) {
    int v = g.vertex_index(id);
    require(v >= 0, Errc::dangling_reference, "keep set references missing vertex '" + id + "'");
    keep[v] = 1;
  }
  std::vector<char> has_self_loop(g.num_vertices(), 0);
  for (int e = 0; e < static_cast<int>(g.num_dedges()); ++e)
    if (g.tail(e) == g.head(e)) has_self_loop[g.tail(e)] = 1;
  for (int v = 0; v < static_cast<int>(g.num_vertices()); ++v)
    if (!keep[v])
      require(g.degree(v) == 2 && !has_self_loop[v], Errc::not_a_bead,
              "suppressed vertex '" + g.vertex_ids()[v] + "' is not a bead");
  {
    auto comp = g.components();
    std::set<int> comps_with_keep;
    std::set<int> comps;
    for (int v = 0; v < static_cast<int>(g.num_vertices()); ++v) {
      comps.insert(comp[v]);
      if (keep[v]) comps_with_keep.insert(comp[v]);
    }
    require(comps == comps_with_keep, Errc::component_swallowed,
            "a component consists only of suppressed beads");
  }

  // Edge-order position per orbit, for deterministic path ordering.
  std::vector<int> orbit_pos(g.num_dedges(), -1);
  for (std::size_t i = 0; i < s.edge_order().size(); ++i) {
    int e = s.edge_order()[i];
    orbit_pos[g.orbit_rep(e)] = static_cast<int>(i);
  }

  struct Path {
    std::vector<int> dedges;  // forward traversal
    int key;                  // min orbit position
    bool half_loop;
  };
  std::vector<Path> paths;
  std::vector<char> claimed(g.num_dedges(), 0);
  for (int v = 0; v < static_cast<int>(g.num_vertices()); ++v) {
    if (!keep[v]) continue;
    for (int e0 : g.out_dedges(v)) {
      if (claimed[e0]) continue;
      std::vector<int> chain{e0};
      int cur = e0;
      while (!keep[g.head(cur)]) {
        int next = -1;
        for (int f : g.out_dedges(g.head(cur)))
          if (f != g.inv(cur)) next = f;
        chain.push_back(next);
        cur = next;
      }
      claimed[e0] = 1;
      claimed[g.inv(chain.back())] = 1;
      int key = orbit_pos[g.orbit_rep(chain.front())];
      for (int e : chain) key = std::min(key, orbit_pos[g.orbit_rep(e)]);
      bool half = chain.size() == 1 && g.is_half_loop(chain.front());
      paths.push_back({std::move(chain), key, half});
    }
  }
  std::sort(paths.begin(), paths.end(), [](const Path& a, const Path& b) { return a.key < b.key; });

  // Orient each path so its first-ordered edge is crossed in its oriented
  // direction (the direction a first traversal took, for walk orderings).
  for (auto& p : paths) {
    if (p.half_loop) continue;
    int arg = 0;
    for (std::size_t i = 0; i < p.dedges.size(); ++i)
      if (orbit_pos[g.orbit_rep(p.dedges[i])] < orbit_pos[g.orbit_rep(p.dedges[arg])])
        arg = static_cast<int>(i);
    if (!s.oriented(p.dedges[arg])) {
      std::vector<int> rev;
      for (auto it = p.dedges.rbegin(); it != p.dedges.rend(); ++it) rev.push_back(g.inv(*it));
      p.dedges = std::move(rev);
    }
  }

  GraphBuilder builder;
  std::vector<std::pair<int, std::string>> kept_order;  // (order position, id)
  {
    std::vector<int> vpos(g.num_vertices());
    for (std::size_t i = 0; i < s.vertex_order().size(); ++i)
      vpos[s.vertex_order()[i]] = static_cast<int>(i);
    for (int v = 0; v < static_cast<int>(g.num_vertices()); ++v)
      if (keep[v]) kept_order.emplace_back(vpos[v], g.vertex_ids()[v]);
    std::sort(kept_order.begin(), kept_order.end());
    for (const auto& [pos, id] : kept_order) builder.vertex(id);
  }
  std::vector<int> lengths;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const Path& p = paths[i];
    const std::string id = "p" + std::to_string(i);
    const std::string tail_id = g.vertex_ids()[g.tail(p.dedges.front())];
    const std::string head_id = g.vertex_ids()[g.head(p.dedges.back())];
    if (p.half_loop)
      builder.half_loop(id, tail_id);
    else
      builder.edge(id, tail_id, head_id);
    lengths.push_back(static_cast<int>(p.dedges.size()));
  }
  Graph red = builder.build();
  std::vector<int> vorder, eorder;
  for (const auto& [pos, id] : kept_order) vorder.push_back(red.vertex_index(id));
  for (std::size_t i = 0; i < paths.size(); ++i)
    eorder.push_back(red.dedge_index("p" + std::to_string(i)));
  return {OrderedGraph::build(std::move(red), eorder, vorder, eorder), lengths};
}

Graph build_vlg(const LengthedType& t) {
  const Graph& g = t.otype.graph();
  GraphBuilder builder;
  for (const auto& id : g.vertex_ids()) builder.vertex(id);
  for (std::size_t i = 0; i < t.otype.edge_order().size(); ++i) {
    int e = t.otype.edge_order()[i];
    int len = t.lengths[i];
    const std::string eid = g.dedge_ids()[e];
    if (g.is_half_loop(e)) {
      builder.half_loop(eid, g.vertex_ids()[g.tail(e)]);
      continue;
    }
    std::string prev = g.vertex_ids()[g.tail(e)];
    for (int j = 0; j + 1 < len; ++j) {
      std::string mid = eid + "#" + std::to_string(j + 1);
      builder.vertex(mid);
      builder.edge(eid + "#s" + std::to_string(j), prev, mid);
      prev = mid;
    }
    builder.edge(eid + "#s" + std::to_string(len - 1), prev, g.vertex_ids()[g.head(e)]);
  }
  return builder.build();
}

HomotopyClass homotopy_class_and_lengths(const Walk& w) {
  require(w.non_backtracking(), Errc::validation, "homotopy type needs a non-backtracking walk");
  OrderedGraph visu = visited_subgraph(w);
  const Graph& sg = visu.graph();
  std::vector<char> has_self_loop(sg.num_vertices(), 0);
  for (int e = 0; e < static_cast<int>(sg.num_dedges()); ++e)
    if (sg.tail(e) == sg.head(e)) has_self_loop[sg.tail(e)] = 1;
  std::vector<std::string> keep;
  const Graph& host = *w.host;
  const std::string& start_id = host.vertex_ids()[w.start];
  const std::string& end_id = host.vertex_ids()[host.head(w.dedges.back())];
  for (int v = 0; v < static_cast<int>(sg.num_vertices()); ++v) {
    const std::string& id = sg.vertex_ids()[v];
    bool bead = sg.degree(v) == 2 && !has_self_loop[v];
    if (!bead || id == start_id || id == end_id) keep.push_back(id);
  }
  auto [red, lengths] = bead_suppress(visu, keep);
  return {red.label(), red, lengths};
}

long long count_snbc_by_type(const Graph& g, int k_total, const std::string& type_label,
                             const std::vector<int>& floor) {
  long long total = 0;
  for_each_snbc(g, k_total, [&](const Walk& w) {
    HomotopyClass hc = homotopy_class_and_lengths(w);
    if (hc.type_label != type_label) return;
    if (hc.lengths.size() != floor.size()) return;
    for (std::size_t i = 0; i < floor.size(); ++i)
      if (hc.lengths[i] < floor[i]) return;
    ++total;
  });
  return total;
}

}  // namespace nbt
