#pragma once

#include <map>
#include <string>
#include <vector>

#include "nbt/graph.hpp"

namespace nbt {

/// A walk (v0, e1, v1, ..., ek, vk) in a host graph, stored as the dedge
/// index sequence plus the start vertex.
struct Walk {
  const Graph* host = nullptr;
  int start = -1;
  std::vector<int> dedges;

  int length() const { return static_cast<int>(dedges.size()); }
  bool closed() const;
  bool non_backtracking() const;
  bool snbc() const;
  void validate() const;  // incidence + host checks
};

/// An ordered homotopy type plus edge lengths, the blueprint for VLG(T,k).
/// Lengths are indexed by the type's edge order.  Half-loop edges always
/// carry length 1: a walk's reduction never suppresses a vertex on a
/// self-loop, so half-loop edges of a type represent single dedges.
struct LengthedType {
  OrderedGraph otype;
  std::vector<int> lengths;

  static LengthedType build(OrderedGraph otype, std::vector<int> lengths);
};

// Number of strictly non-backtracking closed walks of length k; each starting
// dedge counts separately, so this equals Trace(H^k).
long long count_snbc(const Graph& g, int k);

// Partition of count_snbc by ord(ViSu(w)) < r versus >= r.
struct OrderSplit {
  long long below = 0;
  long long at_or_above = 0;
};
OrderSplit count_snbc_order_split(const Graph& g, int k, int r);

// Smallest subgraph containing the walk, with the first-encountered ordering
// (vertices by first visit, edges by first traversal, oriented as first
// traversed).
OrderedGraph visited_subgraph(const Walk& w);
// Same, carrying the host's B-structure onto the subgraph.
std::pair<OrderedGraph, BGraph> visited_subgraph(const Walk& w, const BGraph& host);

// Suppress the beads outside `keep_vertex_ids`; every suppressed vertex must
// be a bead and no component may be swallowed whole.  Returns the reduction
// plus the beaded-path lengths, indexed by the reduction's edge order.
std::pair<OrderedGraph, std::vector<int>> bead_suppress(const OrderedGraph& s,
                                                        const std::vector<std::string>& keep_vertex_ids);

// Glue in a path of length k(e) for each edge of the type.  Round-trips with
// bead_suppress up to isomorphism.
Graph build_vlg(const LengthedType& t);

// Canonical homotopy type of a non-backtracking walk: the ordered label of the
// reduction of ViSu(w) (walk endpoints kept), plus its edge lengths.
struct HomotopyClass {
  std::string type_label;   // OrderedGraph::label() of the reduction
  OrderedGraph type;        // a representative carrying that label
  std::vector<int> lengths; // by the reduction's edge order
};
HomotopyClass homotopy_class_and_lengths(const Walk& w);

// SNBC walks of length k_total whose homotopy type matches `type_label` and
// whose edge lengths dominate `floor` componentwise.
long long count_snbc_by_type(const Graph& g, int k_total, const std::string& type_label,
                             const std::vector<int>& floor);

// Enumeration hook: calls fn for every SNBC walk of length k.
void for_each_snbc(const Graph& g, int k, const std::function<void(const Walk&)>& fn);

}  // namespace nbt
