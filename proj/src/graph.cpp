#include "nbt/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace nbt {

Graph Graph::build(std::vector<std::string> vertices, std::vector<DedgeSpec> dedges) {
  std::sort(vertices.begin(), vertices.end());
  require(std::adjacent_find(vertices.begin(), vertices.end()) == vertices.end(),
          Errc::validation, "duplicate vertex id");
  std::sort(dedges.begin(), dedges.end(),
            [](const DedgeSpec& a, const DedgeSpec& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < dedges.size(); ++i)
    require(dedges[i - 1].id != dedges[i].id, Errc::validation,
            "duplicate dedge id '" + dedges[i].id + "'");

  Graph g;
  g.vertex_ids_ = std::move(vertices);
  for (std::size_t i = 0; i < g.vertex_ids_.size(); ++i)
    g.vertex_lookup_[g.vertex_ids_[i]] = static_cast<int>(i);

  g.dedge_ids_.reserve(dedges.size());
  for (const auto& d : dedges) g.dedge_ids_.push_back(d.id);
  for (std::size_t i = 0; i < g.dedge_ids_.size(); ++i)
    g.dedge_lookup_[g.dedge_ids_[i]] = static_cast<int>(i);

  const auto vat = [&](const std::string& id, const std::string& role) {
    auto it = g.vertex_lookup_.find(id);
    require(it != g.vertex_lookup_.end(), Errc::dangling_reference,
            role + " references missing vertex '" + id + "'");
    return it->second;
  };

  g.tails_.resize(dedges.size());
  g.heads_.resize(dedges.size());
  g.invs_.resize(dedges.size());
  for (std::size_t i = 0; i < dedges.size(); ++i) {
    g.tails_[i] = vat(dedges[i].tail, "dedge '" + dedges[i].id + "'");
    g.heads_[i] = vat(dedges[i].head, "dedge '" + dedges[i].id + "'");
    auto it = g.dedge_lookup_.find(dedges[i].inv);
    require(it != g.dedge_lookup_.end(), Errc::dangling_reference,
            "dedge '" + dedges[i].id + "' references missing inv '" + dedges[i].inv + "'");
    g.invs_[i] = it->second;
  }
  for (std::size_t i = 0; i < dedges.size(); ++i) {
    int e = static_cast<int>(i);
    int f = g.invs_[e];
    require(g.invs_[f] == e, Errc::invalid_involution,
            "inv is not an involution at dedge '" + g.dedge_ids_[e] + "'");
    require(g.tails_[f] == g.heads_[e], Errc::invalid_involution,
            "tail(inv e) != head(e) at dedge '" + g.dedge_ids_[e] + "'");
  }
  g.finish();
  return g;
}

void Graph::finish() {
  const int nv = static_cast<int>(vertex_ids_.size());
  const int nd = static_cast<int>(dedge_ids_.size());
  orbit_rep_.resize(nd);
  num_edges_ = 0;
  for (int e = 0; e < nd; ++e) {
    orbit_rep_[e] = std::min(e, invs_[e]);
    if (orbit_rep_[e] == e) ++num_edges_;
  }
  degree_.assign(nv, 0);
  for (int e = 0; e < nd; ++e) ++degree_[heads_[e]];
  out_start_.assign(nv + 1, 0);
  for (int e = 0; e < nd; ++e) ++out_start_[tails_[e] + 1];
  for (int v = 0; v < nv; ++v) out_start_[v + 1] += out_start_[v];
  out_list_.resize(nd);
  std::vector<int> cursor(out_start_.begin(), out_start_.end() - 1);
  for (int e = 0; e < nd; ++e) out_list_[cursor[tails_[e]]++] = e;
}

int Graph::vertex_index(const std::string& id) const {
  auto it = vertex_lookup_.find(id);
  return it == vertex_lookup_.end() ? -1 : it->second;
}

int Graph::dedge_index(const std::string& id) const {
  auto it = dedge_lookup_.find(id);
  return it == dedge_lookup_.end() ? -1 : it->second;
}

std::span<const int> Graph::out_dedges(int v) const {
  return {out_list_.data() + out_start_[v],
          static_cast<std::size_t>(out_start_[v + 1] - out_start_[v])};
}

Rational Graph::euler_char() const {
  return Rational(num_vertices()) - Rational(num_dedges()) / 2;
}

std::vector<int> Graph::components() const {
  const int nv = static_cast<int>(num_vertices());
  std::vector<int> comp(nv, -1);
  std::vector<int> stack;
  for (int root = 0; root < nv; ++root) {
    if (comp[root] >= 0) continue;
    comp[root] = root;
    stack.push_back(root);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int e : out_dedges(v)) {
        int w = heads_[e];
        if (comp[w] < 0) {
          comp[w] = root;
          stack.push_back(w);
        }
      }
    }
  }
  return comp;
}

bool Graph::connected() const {
  auto comp = components();
  for (int c : comp)
    if (c != 0) return false;
  return true;
}

Graph Graph::subgraph(const std::vector<int>& dedges, const std::vector<int>& extra_vertices) const {
  std::set<int> eset(dedges.begin(), dedges.end());
  std::set<int> vset(extra_vertices.begin(), extra_vertices.end());
  for (int e : eset) {
    require(eset.count(invs_[e]) > 0, Errc::validation, "subgraph dedge set not closed under inv");
    vset.insert(tails_[e]);
    vset.insert(heads_[e]);
  }
  std::vector<std::string> vids;
  vids.reserve(vset.size());
  for (int v : vset) vids.push_back(vertex_ids_[v]);
  std::vector<DedgeSpec> specs;
  specs.reserve(eset.size());
  for (int e : eset)
    specs.push_back({dedge_ids_[e], vertex_ids_[tails_[e]], vertex_ids_[heads_[e]],
                     dedge_ids_[invs_[e]]});
  return Graph::build(std::move(vids), std::move(specs));
}

Graph Graph::pruned() const {
  std::vector<char> v_alive(num_vertices(), 1);
  std::vector<char> e_alive(num_dedges(), 1);
  std::vector<int> deg(degree_);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < static_cast<int>(num_vertices()); ++v) {
      if (!v_alive[v] || deg[v] >= 2) continue;
      v_alive[v] = 0;
      changed = true;
      for (int e : out_dedges(v)) {
        if (!e_alive[e]) continue;
        e_alive[e] = 0;
        e_alive[invs_[e]] = 0;
        --deg[heads_[e]];
        if (invs_[e] != e) --deg[heads_[invs_[e]]];
      }
    }
  }
  std::vector<int> keep;
  for (int e = 0; e < static_cast<int>(num_dedges()); ++e)
    if (e_alive[e]) keep.push_back(e);
  // Degree-zero survivors do not exist: deg >= 2 keeps incident edges alive.
  return subgraph(keep);
}

bool Graph::is_pruned() const {
  for (int v = 0; v < static_cast<int>(num_vertices()); ++v)
    if (degree_[v] < 2) return false;
  return true;
}

bool Graph::is_positive() const {
  if (!is_pruned()) return false;
  auto comp = components();
  std::map<int, long long> verts, edges;
  for (std::size_t v = 0; v < num_vertices(); ++v) ++verts[comp[v]];
  for (int e = 0; e < static_cast<int>(num_dedges()); ++e)
    if (orbit_rep_[e] == e) ++edges[comp[tails_[e]]];
  for (const auto& [c, nv] : verts)
    if (edges[c] - nv < 1) return false;
  return !vertex_ids_.empty();
}

bool Graph::same_structure(const Graph& other) const {
  return vertex_ids_ == other.vertex_ids_ && dedge_ids_ == other.dedge_ids_ &&
         tails_ == other.tails_ && heads_ == other.heads_ && invs_ == other.invs_;
}

// --- GraphBuilder ---

GraphBuilder& GraphBuilder::vertex(const std::string& id) {
  vertices_.push_back(id);
  return *this;
}

GraphBuilder& GraphBuilder::edge(const std::string& id, const std::string& tail,
                                 const std::string& head) {
  return edge(id, id + "~", tail, head);
}

GraphBuilder& GraphBuilder::edge(const std::string& id, const std::string& rev_id,
                                 const std::string& tail, const std::string& head) {
  dedges_.push_back({id, tail, head, rev_id});
  dedges_.push_back({rev_id, head, tail, id});
  return *this;
}

GraphBuilder& GraphBuilder::half_loop(const std::string& id, const std::string& at) {
  dedges_.push_back({id, at, at, id});
  return *this;
}

Graph GraphBuilder::build() const { return Graph::build(vertices_, dedges_); }

// --- BGraph ---

BGraph BGraph::build(Graph graph, Graph base, const std::map<std::string, std::string>& vmap,
                     const std::map<std::string, std::string>& emap) {
  BGraph b;
  b.graph_ = std::move(graph);
  b.base_ = std::move(base);
  b.vmap_.assign(b.graph_.num_vertices(), -1);
  b.emap_.assign(b.graph_.num_dedges(), -1);
  for (std::size_t v = 0; v < b.graph_.num_vertices(); ++v) {
    auto it = vmap.find(b.graph_.vertex_ids()[v]);
    require(it != vmap.end(), Errc::validation,
            "vmap missing vertex '" + b.graph_.vertex_ids()[v] + "'");
    int bv = b.base_.vertex_index(it->second);
    require(bv >= 0, Errc::dangling_reference, "vmap targets missing base vertex '" + it->second + "'");
    b.vmap_[v] = bv;
  }
  for (std::size_t e = 0; e < b.graph_.num_dedges(); ++e) {
    auto it = emap.find(b.graph_.dedge_ids()[e]);
    require(it != emap.end(), Errc::validation,
            "emap missing dedge '" + b.graph_.dedge_ids()[e] + "'");
    int be = b.base_.dedge_index(it->second);
    require(be >= 0, Errc::dangling_reference, "emap targets missing base dedge '" + it->second + "'");
    b.emap_[e] = be;
  }
  for (int e = 0; e < static_cast<int>(b.graph_.num_dedges()); ++e) {
    int be = b.emap_[e];
    require(b.vmap_[b.graph_.tail(e)] == b.base_.tail(be), Errc::validation,
            "structure map breaks tails at '" + b.graph_.dedge_ids()[e] + "'");
    require(b.vmap_[b.graph_.head(e)] == b.base_.head(be), Errc::validation,
            "structure map breaks heads at '" + b.graph_.dedge_ids()[e] + "'");
    require(b.emap_[b.graph_.inv(e)] == b.base_.inv(be), Errc::validation,
            "structure map breaks involution at '" + b.graph_.dedge_ids()[e] + "'");
  }
  return b;
}

BGraph BGraph::subgraph(const std::vector<int>& dedges, const std::vector<int>& extra_vertices) const {
  Graph sub = graph_.subgraph(dedges, extra_vertices);
  BGraph b;
  b.base_ = base_;
  b.vmap_.resize(sub.num_vertices());
  b.emap_.resize(sub.num_dedges());
  for (std::size_t v = 0; v < sub.num_vertices(); ++v)
    b.vmap_[v] = vmap_[graph_.vertex_index(sub.vertex_ids()[v])];
  for (std::size_t e = 0; e < sub.num_dedges(); ++e)
    b.emap_[e] = emap_[graph_.dedge_index(sub.dedge_ids()[e])];
  b.graph_ = std::move(sub);
  return b;
}

BGraph BGraph::pruned() const {
  Graph p = graph_.pruned();
  std::vector<int> dedges;
  for (const auto& id : p.dedge_ids()) dedges.push_back(graph_.dedge_index(id));
  return subgraph(dedges);
}

std::vector<int> BGraph::fibre_edge_counts() const {
  std::vector<int> a(base_.num_dedges(), 0);
  for (int be : emap_) ++a[be];
  return a;
}

std::vector<int> BGraph::fibre_vertex_counts() const {
  std::vector<int> b(base_.num_vertices(), 0);
  for (int bv : vmap_) ++b[bv];
  return b;
}

// --- OrderedGraph ---

OrderedGraph OrderedGraph::build(Graph graph, std::vector<int> orientation,
                                 std::vector<int> vertex_order, std::vector<int> edge_order) {
  OrderedGraph o;
  o.oriented_.assign(graph.num_dedges(), 0);
  require(orientation.size() == graph.num_edges(), Errc::validation,
          "orientation must pick one dedge per edge");
  for (int e : orientation) {
    require(e >= 0 && e < static_cast<int>(graph.num_dedges()), Errc::dangling_reference,
            "orientation references missing dedge");
    o.oriented_[e] = 1;
  }
  for (std::size_t e = 0; e < graph.num_dedges(); ++e) {
    int cnt = o.oriented_[e] + (graph.inv(static_cast<int>(e)) == static_cast<int>(e)
                                    ? 0
                                    : o.oriented_[graph.inv(static_cast<int>(e))]);
    if (graph.is_half_loop(static_cast<int>(e)))
      require(o.oriented_[e], Errc::validation, "orientation must contain every half-loop");
    else
      require(cnt == 1, Errc::validation, "orientation must pick exactly one of {e, inv e}");
  }
  require(vertex_order.size() == graph.num_vertices(), Errc::validation, "vertex order size");
  require(edge_order.size() == graph.num_edges(), Errc::validation, "edge order size");
  {
    std::vector<char> seen(graph.num_vertices(), 0);
    for (int v : vertex_order) {
      require(v >= 0 && v < static_cast<int>(graph.num_vertices()) && !seen[v], Errc::validation,
              "vertex order is not a permutation");
      seen[v] = 1;
    }
  }
  for (int e : edge_order)
    require(o.oriented_[e], Errc::validation, "edge order must list oriented dedges");
  {
    std::set<int> uniq(edge_order.begin(), edge_order.end());
    require(uniq.size() == edge_order.size(), Errc::validation, "edge order repeats an edge");
  }
  o.graph_ = std::move(graph);
  o.orientation_ = edge_order;
  o.vertex_order_ = std::move(vertex_order);
  o.edge_order_ = std::move(edge_order);
  return o;
}

OrderedGraph default_ordering(const Graph& g) {
  std::vector<int> orient, vorder;
  for (int e = 0; e < static_cast<int>(g.num_dedges()); ++e)
    if (g.orbit_rep(e) == e) orient.push_back(e);
  for (int v = 0; v < static_cast<int>(g.num_vertices()); ++v) vorder.push_back(v);
  return OrderedGraph::build(g, orient, vorder, orient);
}

std::string OrderedGraph::label() const {
  // Relabel everything by position; the result determines the ordered graph
  // up to (unique) ordered isomorphism.
  std::vector<int> vpos(graph_.num_vertices());
  for (std::size_t i = 0; i < vertex_order_.size(); ++i) vpos[vertex_order_[i]] = static_cast<int>(i);
  std::string out = "V" + std::to_string(graph_.num_vertices()) + ";";
  for (std::size_t i = 0; i < edge_order_.size(); ++i) {
    int e = edge_order_[i];
    out += std::to_string(vpos[graph_.tail(e)]) + ">" + std::to_string(vpos[graph_.head(e)]);
    out += graph_.is_half_loop(e) ? "h;" : "w;";
  }
  return out;
}

}  // namespace nbt
