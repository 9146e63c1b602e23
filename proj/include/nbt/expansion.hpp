#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nbt/covers.hpp"
#include "nbt/graph.hpp"
#include "nbt/numeric.hpp"
#include "nbt/tangles.hpp"

namespace nbt {

enum class TraceKind {
  plain,                 // Trace(H^k)
  certified_strict,      // cert_{<nu,<r}(G,k)
  certified_weak,        // cert_{<=nu,<r}(G,k)
  tanglefree_plain,      // 1_TangleFree * Trace(H^k)
  hastangles_plain,      // 1_HasTangles * Trace(H^k)
  hastangles_certified,  // 1_HasTangles * cert_{<nu,<r}(G,k)
  tanglefree_prob,       // 1_TangleFree
  subgraph_presence,     // 1_{[S] cap G != empty}
};

TraceKind trace_kind_parse(const std::string& name);
std::string trace_kind_name(TraceKind k);

struct ExperimentConfig {
  Graph base;
  CoverModel model;
  double nu = 1.8;
  int r = 2;
  std::vector<int> k_list;
  std::vector<int> n_list;
  int samples_per_n = 1000;
  std::uint64_t seed = 0;
  TraceKind trace_kind = TraceKind::plain;
  double guard_c = 1.0;  // expansion validity window: k <= sqrt(n)/guard_c
  int tangle_cap = 8;
  int jobs = 1;
  std::optional<BGraph> subgraph;  // pattern for subgraph_presence
};

struct RawCell {
  double mean = 0;
  double std_error = 0;
  long long count = 0;
};

struct Coefficient {
  double estimate = 0;
  double std_error = 0;
};

struct ExpansionReport {
  std::vector<int> k_list;  // size 1 with k=0 for k-independent functionals
  std::vector<int> n_list;
  std::vector<std::vector<RawCell>> raw;             // [k][n]
  std::vector<std::vector<Coefficient>> coefficients;  // [k][i], filled by fit
  std::vector<Bigint> reference_c0;                  // per k (trace functionals)
  std::vector<std::vector<double>> fit_residuals;    // [k][n]
  std::vector<std::string> flags;
};

// Sample mean and standard error of the selected functional for each (k, n),
// over samples_per_n independent covers; deterministic in the seed and
// independent of the worker count.
ExpansionReport estimate_functional(const ExperimentConfig& cfg);

// c0(k) = sum over divisors k' of k of Trace(H_B^{k'}).
Bigint reference_c0(const Graph& base, int k);

// Per-k weighted least squares of mean(k,n) on {1, 1/n, ..., 1/n^{r-1}},
// weights 1/SE^2; fills report.coefficients and report.fit_residuals.
void fit_expansion(ExpansionReport& report, int r);

// Empirical Prob[[S] cap G != empty] per n.
ExpansionReport estimate_subgraph_prob(const Graph& base, const CoverModel& model, const BGraph& s,
                                       const std::vector<int>& n_list, int samples,
                                       std::uint64_t seed, int jobs = 1);

// Empirical E[snbc_{>=r}(G,k)] per n.
ExpansionReport estimate_high_order_snbc(const Graph& base, const CoverModel& model, int r, int k,
                                         const std::vector<int>& n_list, int samples,
                                         std::uint64_t seed, int jobs = 1);

}  // namespace nbt
