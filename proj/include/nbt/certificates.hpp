#pragma once

#include <string>
#include <vector>

#include "nbt/graph.hpp"
#include "nbt/walks.hpp"

namespace nbt {

/// The minimal length vectors of U = { k : mu1(VLG(T,k)) < nu } (or <= nu for
/// the weak variant): a walk of type T with lengths dominating any one of
/// them is certified.  Coordinates follow the type's edge order; half-loop
/// coordinates are pinned to 1.
struct CertificateSet {
  OrderedGraph type;
  std::string type_label;
  double nu = 0;
  bool strict = true;
  std::vector<std::vector<int>> minima;  // pairwise incomparable
  int cap_used = 0;
  bool verified = false;  // no minimal vector has a coordinate beyond the cap
};

// Membership of the length vector in the upper set, via shannon_mu1 with an
// explicit-VLG fallback within 1e-6 of nu.  Throws ToleranceAmbiguous when
// mu1 lands within 1e-9 of nu.
bool in_upper_set(const LengthedType& t, double nu, bool strict);

// All minimal members with coordinates <= cap.  `verified` is set when the
// box-frontier tests prove there are no minimal members beyond the cap: for
// every coordinate subset S, either the edge-deleted limit graph already has
// mu1 >= nu (the column never enters U), or the wall point (k', cap on S)
// lies in U (anything beyond dominates a member).
CertificateSet minimal_certificates(const OrderedGraph& type, double nu, bool strict, int cap);

// Count of SNBC k-walks whose visited subgraph S has mu1(S) < nu (or <= nu)
// and ord(S) < r; mu1 per subgraph by power iteration (the route independent
// of the certificates).
long long cert_trace_direct(const Graph& g, double nu, int r, int k, bool strict);

// The same count through the certificate inclusion-exclusion: per homotopy
// type, sum_(nonempty M) (-1)^{1+|M|} snbc(T, >= max_M xi; G, k).  Minima are
// enumerated with cap = k, which loses nothing: a certificate with any
// coordinate beyond k cannot dominate the lengths of a k-walk.
long long cert_trace_incl_excl(const Graph& g, double nu, int r, int k, bool strict);

}  // namespace nbt
