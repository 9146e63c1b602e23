#pragma once

#include <string>
#include <vector>

#include "nbt/graph.hpp"
#include "nbt/numeric.hpp"
#include "nbt/walks.hpp"

namespace nbt {

/// Hashimoto (non-backtracking) matrix: rows/columns indexed by dedges in id
/// order, entry (e1,e2) = 1 iff head(e1) = tail(e2) and inv(e1) != e2.
struct HashimotoMatrix {
  std::vector<std::string> index;
  std::vector<std::vector<int>> entries;
};

HashimotoMatrix hashimoto_matrix(const Graph& g);

// Exact Trace(H^k) by repeated arbitrary-precision matrix multiplication.
Bigint trace_hashimoto_pow(const Graph& g, int k);

// Perron-Frobenius eigenvalue of H, by power iteration on H + I (the shift
// removes the periodicity of e.g. cycle Hashimoto matrices).  Absolute
// tolerance ~1e-9; returns 0 for graphs with no dedges or nilpotent H.
double mu1(const Graph& g);

// mu1(VLG(T,k)) via the determinant method: the reciprocal of the smallest
// positive root of det(I - M(z)), where M has entry z^{k(e)} wherever H_T has
// a 1.  Evaluated per connected component; chi >= 0 components are resolved
// structurally (mu1 is 1 or 0 there), chi < 0 components by sign scan plus
// bisection, with exact rational elimination to confirm ambiguous brackets.
double shannon_mu1(const LengthedType& t);

// Sign of mu1(VLG(T,k)) - nu: -1, 0 or +1.  Boundary cases are settled
// exactly by the sign of det(I - M(1/nu)) over the ambiguous component, so a
// nu that equals mu1 (e.g. nu = 3 on the figure-eight) is decided correctly.
int compare_mu1_shannon(const LengthedType& t, double nu);

}  // namespace nbt
