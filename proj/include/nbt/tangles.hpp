#pragma once

#include <string>
#include <vector>

#include "nbt/graph.hpp"
#include "nbt/match.hpp"

namespace nbt {

/// The generators of HasTangles(>=nu, <r): all minimal tangles up to
/// isomorphism found within the length cap, plus whether the box-frontier
/// tests prove the enumeration complete.
struct TangleSpec {
  double nu = 0;
  int r = 0;
  int cap = 0;
  bool verified = false;
  std::vector<Graph> generators;  // connected, pruned, 1 <= ord < r
};

// All pruned connected beadless graphs with 1 <= ord < r (the candidate
// homotopy types for minimal tangles), deduplicated by canonical label.
std::vector<Graph> tangle_candidate_types(int r);

// Enumerate minimal (>=nu,<r)-tangles whose type-edge lengths are <= cap.
// Comparisons treat mu1 within 1e-9 below nu as >= nu, so boundary tangles
// (e.g. mu1 exactly nu) are kept.
TangleSpec minimal_tangles(double nu, int r, int cap);

// True iff some subgraph of g is isomorphic to a generator.
bool has_tangle(const Graph& g, const TangleSpec& spec);

// Exhaustive oracle: scans every pruned subgraph (via subsets of the
// suppressed type's edges) for a connected piece with mu1 >= nu and order in
// [1, r).  Intended for small graphs; throws TooLarge beyond ~2^18 subsets.
bool has_tangle_bruteforce(const Graph& g, double nu, int r);

}  // namespace nbt
