#pragma once

#include <map>
#include <string>
#include <vector>

#include "nbt/graph.hpp"
#include "nbt/numeric.hpp"

namespace nbt {

/// Isomorphism classes of derived B-graphs (unions of embedded generator
/// copies) of order < r, with the Mobius function of the injection order:
/// [S] <= [T] iff an injective B-morphism S -> T exists, and
/// sum_{[S] <= [T]} N(S,T) mu[S] = 1 for every class [T].
struct IsoClassTable {
  struct Entry {
    std::string label;
    BGraph rep;
    long long order = 0;
    Rational mobius = 0;
  };
  std::vector<Entry> classes;  // sorted by (#V + #Edir, label): induction order

  const Entry* find(const std::string& label) const;
};

// Closure of the generators under unions of embedded copies, truncated to
// order < r.  Generators must be positive (pruned, components of order >= 1).
IsoClassTable derived_classes(const std::vector<BGraph>& psi, int r);

// Recomputes the Mobius values on an existing table (also done by
// derived_classes); exposed for building tables over hand-picked classes.
void mobius_function(IsoClassTable& table);

// The largest subgraph of g that is a union of embedded generator copies,
// plus its order (0 for the empty graph).
std::pair<BGraph, long long> psi_image(const BGraph& g, const std::vector<BGraph>& psi);

// I_r(Psi, g) = sum over table classes of N(S,g) mu[S]; exactly the
// Meets(Psi) indicator whenever ord_Psi(g) < r.
Rational truncated_indicator(const BGraph& g, const IsoClassTable& table);
Rational truncated_indicator(const BGraph& g, const std::vector<BGraph>& psi, int r);

}  // namespace nbt
