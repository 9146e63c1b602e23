#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nbt/graph.hpp"
#include "nbt/rng.hpp"

namespace nbt {

enum class CoverKind {
  permutation,
  cyclic,
  permutation_involution_even,
  permutation_involution_odd,
  cyclic_involution_even,
  cyclic_involution_odd,
};

/// One of the basic random-cover models: sigma is drawn edge-independently,
/// uniform permutations on links, single n-cycles on whole-loops for the
/// cyclic kinds, and (near-)perfect matchings on half-loops for the
/// involution kinds.
struct CoverModel {
  CoverKind kind = CoverKind::permutation;

  static CoverModel parse(const std::string& name);
  std::string name() const;

  bool involution_kind() const;
  bool cyclic_loops() const;
  // -1: any degree; 0: even only; 1: odd only.
  int parity() const;
  bool admits(int n) const { return n >= 1 && (parity() < 0 || n % 2 == parity()); }
};

/// A coordinatized cover: the base, the degree, and one permutation of [n]
/// per base dedge with sigma(inv e) = sigma(e)^{-1}.
struct CoverSample {
  Graph base;
  int n = 0;
  std::vector<std::vector<int>> sigma;  // indexed by base dedge
};

// Draw sigma per orientation edge (lexicographically smallest dedge id of
// each orbit), each from its own RNG stream.  Deterministic in the seed.
CoverSample sample_cover(const Graph& base, int n, const CoverModel& model, std::uint64_t seed);

// The coordinatized B-graph on V_B x [n]: vertex ids "v@i", dedge ids "e@i",
// heads (h_B e, sigma(e) i), involution (inv_B e, sigma(e) i).
BGraph realize(const CoverSample& c);

// True iff the structure map is a degree-n covering: all fibres the same
// size and the head- and tail-incident dedges map bijectively at every vertex.
bool validate_cover(const BGraph& g);

}  // namespace nbt
