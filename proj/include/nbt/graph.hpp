#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "nbt/error.hpp"
#include "nbt/numeric.hpp"

namespace nbt {

// Input record for one directed edge.  `inv` names the partner under the
// edge involution; a half-loop is its own partner.
struct DedgeSpec {
  std::string id;
  std::string tail;
  std::string head;
  std::string inv;
};

/// A finite graph with an edge involution, in the half-loop/whole-loop
/// convention: directed edges come in involution orbits, an orbit of size one
/// is a half-loop, and the undirected edge set is the set of orbits.
///
/// Immutable after construction.  Vertex ids are sorted lexicographically and
/// dedges by id, so index-based accessors are deterministic functions of the
/// input ids.
class Graph {
 public:
  Graph() = default;  // the empty graph

  // Validates: referenced ids exist, inv is an involution, tail(inv e) = head(e).
  static Graph build(std::vector<std::string> vertices, std::vector<DedgeSpec> dedges);

  std::size_t num_vertices() const { return vertex_ids_.size(); }
  std::size_t num_dedges() const { return dedge_ids_.size(); }
  std::size_t num_edges() const { return num_edges_; }  // involution orbits
  bool empty() const { return vertex_ids_.empty() && dedge_ids_.empty(); }

  const std::vector<std::string>& vertex_ids() const { return vertex_ids_; }
  const std::vector<std::string>& dedge_ids() const { return dedge_ids_; }

  int vertex_index(const std::string& id) const;  // -1 if absent
  int dedge_index(const std::string& id) const;

  int tail(int e) const { return tails_[e]; }
  int head(int e) const { return heads_[e]; }
  int inv(int e) const { return invs_[e]; }
  bool is_half_loop(int e) const { return invs_[e] == e; }
  // The orbit representative: the lexicographically smaller dedge id.
  int orbit_rep(int e) const { return orbit_rep_[e]; }

  // Dedges with tail v, in dedge-id order.
  std::span<const int> out_dedges(int v) const;

  // Degree under the paper's convention: a whole-loop adds 2, a half-loop 1.
  // (Equals the number of dedges with head v.)
  int degree(int v) const { return degree_[v]; }

  // #E - #V, counting each orbit once.
  long long order() const {
    return static_cast<long long>(num_edges_) - static_cast<long long>(num_vertices());
  }
  // #V - #E^dir / 2, exact.
  Rational euler_char() const;

  // Component id per vertex, numbered by smallest member vertex index.
  std::vector<int> components() const;
  bool connected() const;  // empty graph counts as connected

  // Subgraph on the given ι-closed dedge set plus any extra isolated
  // vertices; ids are inherited from this graph.
  Graph subgraph(const std::vector<int>& dedges, const std::vector<int>& extra_vertices = {}) const;

  // Maximal subgraph of minimum degree >= 2 (repeatedly discard smaller-degree
  // vertices with their incident edges).  May be empty.  Idempotent.
  Graph pruned() const;
  bool is_pruned() const;

  // Pruned with every connected component of order >= 1.
  bool is_positive() const;

  // Structural equality (same ids, same incidences); not isomorphism.
  bool same_structure(const Graph& other) const;

 private:
  std::vector<std::string> vertex_ids_;
  std::vector<std::string> dedge_ids_;
  std::vector<int> tails_, heads_, invs_, orbit_rep_, degree_;
  std::size_t num_edges_ = 0;
  // CSR adjacency: out-dedges per vertex.
  std::vector<int> out_start_, out_list_;
  std::map<std::string, int> vertex_lookup_, dedge_lookup_;

  void finish();  // builds indices; assumes validated id arrays
  friend class GraphBuilder;
};

/// Convenience builder for graphs assembled in code (tests, VLG construction).
class GraphBuilder {
 public:
  GraphBuilder& vertex(const std::string& id);
  // A whole edge: two dedges `id` and `id + "~"` unless rev_id given.
  GraphBuilder& edge(const std::string& id, const std::string& tail, const std::string& head);
  GraphBuilder& edge(const std::string& id, const std::string& rev_id, const std::string& tail,
                     const std::string& head);
  GraphBuilder& half_loop(const std::string& id, const std::string& at);
  Graph build() const;

 private:
  std::vector<std::string> vertices_;
  std::vector<DedgeSpec> dedges_;
};

/// A graph together with a structure morphism to a base graph B.
class BGraph {
 public:
  BGraph() = default;

  // vmap/emap are id maps graph -> base; must intertwine heads, tails and
  // the involutions.
  static BGraph build(Graph graph, Graph base, const std::map<std::string, std::string>& vmap,
                      const std::map<std::string, std::string>& emap);

  const Graph& graph() const { return graph_; }
  const Graph& base() const { return base_; }
  int vmap(int v) const { return vmap_[v]; }
  int emap(int e) const { return emap_[e]; }
  const std::vector<int>& vmap() const { return vmap_; }
  const std::vector<int>& emap() const { return emap_; }

  // B-subgraph with inherited structure maps.
  BGraph subgraph(const std::vector<int>& dedges, const std::vector<int>& extra_vertices = {}) const;
  BGraph pruned() const;

  bool same_base(const BGraph& other) const { return base_.same_structure(other.base_); }

  // Fibre counting functions a: E^dir_B -> N and b: V_B -> N.
  std::vector<int> fibre_edge_counts() const;
  std::vector<int> fibre_vertex_counts() const;

 private:
  Graph graph_;
  Graph base_;
  std::vector<int> vmap_, emap_;
};

/// An ordering on a graph: an orientation plus total orders on vertices and
/// edges (orbits).  Isomorphisms of ordered graphs are unique, so the
/// canonical label needs no search.
class OrderedGraph {
 public:
  OrderedGraph() = default;

  // orientation: one dedge per orbit (all half-loops included);
  // vertex_order/edge_order: permutations listing vertex indices and oriented
  // dedge indices in order.
  static OrderedGraph build(Graph graph, std::vector<int> orientation,
                            std::vector<int> vertex_order, std::vector<int> edge_order);

  const Graph& graph() const { return graph_; }
  const std::vector<int>& orientation() const { return orientation_; }
  const std::vector<int>& vertex_order() const { return vertex_order_; }
  const std::vector<int>& edge_order() const { return edge_order_; }

  bool oriented(int e) const { return oriented_[e]; }

  // Label such that two ordered graphs are isomorphic (respecting orders and
  // orientation) iff the labels are equal.
  std::string label() const;

 private:
  Graph graph_;
  std::vector<int> orientation_;   // oriented dedge per orbit, in edge order
  std::vector<int> vertex_order_;  // vertex indices in order
  std::vector<int> edge_order_;    // same as orientation_ (alias for clarity)
  std::vector<char> oriented_;     // per dedge
};

// Vertices by index, edges by orbit-representative index.
OrderedGraph default_ordering(const Graph& g);

// --- canonical forms (canonical.cpp) ---

// Canonical label: equal labels iff isomorphic as graphs.
std::string canonical_label(const Graph& g);
// Respects the structure maps; bases must match for labels to be comparable.
std::string canonical_label(const BGraph& g);

// --- injective morphism counting (injections.cpp) ---

// Number of injective graph morphisms s -> g (injective on vertices and on
// directed edges, commuting with heads/tails/involutions).
long long count_injections(const Graph& s, const Graph& g);
// Injective B-morphisms; requires the two base graphs to be structurally equal.
long long count_injections(const BGraph& s, const BGraph& g);

// Enumeration variant: calls fn once per injection with (vertex_map, dedge_map)
// as index vectors s -> g; fn returns false to stop early.
void for_each_injection(const BGraph& s, const BGraph& g,
                        const std::function<bool(const std::vector<int>&, const std::vector<int>&)>& fn);

long long aut_count(const BGraph& s);
long long aut_count(const Graph& s);

}  // namespace nbt
