#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "nbt/certificates.hpp"
#include "nbt/expansion.hpp"
#include "nbt/spectral.hpp"

using namespace nbt;
using namespace nbt_test;

TEST_CASE("reference_c0 worked values") {
  Graph b2 = bouquet(2);
  CHECK(reference_c0(b2, 4) == 100);
  CHECK(reference_c0(b2, 1) == 4);
  CHECK(reference_c0(b2, 6) == 776);
  TestRng rng(301);
  for (int trial = 0; trial < 10; ++trial) {
    Graph g = random_graph(rng, 4, 5);
    CHECK(reference_c0(g, 1) == trace_hashimoto_pow(g, 1));
  }
}

TEST_CASE("c0 stays within the divisor-sum bound of the plain trace") {
  Graph b2 = bouquet(2);
  double mu = mu1(b2);
  for (int k = 1; k <= 10; ++k) {
    Bigint diff = reference_c0(b2, k) - trace_hashimoto_pow(b2, k);
    CHECK(diff >= 0);
    double bound = static_cast<double>(b2.num_dedges()) * k * std::pow(mu, k / 2.0);
    CHECK(diff.convert_to<double>() <= bound);
  }
}

TEST_CASE("degree-1 estimates reproduce the base exactly") {
  ExperimentConfig cfg;
  cfg.base = bouquet(2);
  cfg.model = CoverModel::parse("permutation");
  cfg.k_list = {1, 2, 3, 4};
  cfg.n_list = {1};
  cfg.samples_per_n = 50;
  cfg.seed = 7;
  cfg.trace_kind = TraceKind::plain;
  ExpansionReport rep = estimate_functional(cfg);
  for (std::size_t ki = 0; ki < rep.k_list.size(); ++ki) {
    Bigint expect = trace_hashimoto_pow(cfg.base, rep.k_list[ki]);
    CHECK(rep.raw[ki][0].mean == expect.convert_to<double>());
    CHECK(rep.raw[ki][0].std_error == 0.0);
  }
}

TEST_CASE("plain trace mean approaches c0 at moderate degree") {
  ExperimentConfig cfg;
  cfg.base = bouquet(2);
  cfg.model = CoverModel::parse("permutation");
  cfg.k_list = {4};
  cfg.n_list = {100};
  cfg.samples_per_n = 1500;
  cfg.seed = 20260809;
  cfg.trace_kind = TraceKind::plain;
  ExpansionReport rep = estimate_functional(cfg);
  // c0(4) = 100 with an O(1/n) correction
  CHECK(std::abs(rep.raw[0][0].mean - 100.0) <= 4.0);
  CHECK(rep.raw[0][0].std_error < 2.0);
}

TEST_CASE("estimates are deterministic and worker-count independent") {
  ExperimentConfig cfg;
  cfg.base = bouquet(2);
  cfg.model = CoverModel::parse("permutation");
  cfg.k_list = {2, 4};
  cfg.n_list = {16, 32};
  cfg.samples_per_n = 200;
  cfg.seed = 99;
  cfg.trace_kind = TraceKind::tanglefree_plain;
  ExpansionReport a = estimate_functional(cfg);
  ExpansionReport b = estimate_functional(cfg);
  cfg.jobs = 3;
  ExpansionReport c = estimate_functional(cfg);
  for (std::size_t ki = 0; ki < a.raw.size(); ++ki)
    for (std::size_t ni = 0; ni < a.raw[ki].size(); ++ni) {
      CHECK(a.raw[ki][ni].mean == b.raw[ki][ni].mean);
      CHECK(a.raw[ki][ni].mean == c.raw[ki][ni].mean);
      CHECK(a.raw[ki][ni].std_error == c.raw[ki][ni].std_error);
    }
}

TEST_CASE("indicator decomposition: tanglefree + hastangles = plain") {
  ExperimentConfig cfg;
  cfg.base = bouquet(2);
  cfg.model = CoverModel::parse("permutation");
  cfg.nu = 1.8;
  cfg.r = 2;
  cfg.k_list = {2, 3, 4};
  cfg.n_list = {12, 24};
  cfg.samples_per_n = 400;
  cfg.seed = 555;
  cfg.trace_kind = TraceKind::plain;
  ExpansionReport plain = estimate_functional(cfg);
  cfg.trace_kind = TraceKind::tanglefree_plain;
  ExpansionReport tf = estimate_functional(cfg);
  cfg.trace_kind = TraceKind::hastangles_plain;
  ExpansionReport ht = estimate_functional(cfg);
  for (std::size_t ki = 0; ki < plain.raw.size(); ++ki)
    for (std::size_t ni = 0; ni < plain.raw[ki].size(); ++ni) {
      double lhs = tf.raw[ki][ni].mean + ht.raw[ki][ni].mean;
      double rhs = plain.raw[ki][ni].mean;
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("certified trace on covers matches the per-graph routine") {
  // spot check the estimator's walk scanner against cert_trace on the
  // realized cover
  ExperimentConfig cfg;
  cfg.base = bouquet(2);
  cfg.model = CoverModel::parse("permutation");
  cfg.nu = 1.8;
  cfg.r = 2;
  cfg.k_list = {4};
  cfg.n_list = {6};
  cfg.samples_per_n = 1;
  cfg.trace_kind = TraceKind::certified_strict;
  for (std::uint64_t seed : {11ull, 22ull, 33ull, 44ull}) {
    cfg.seed = seed;
    ExpansionReport rep = estimate_functional(cfg);
    std::uint64_t sample_seed = CounterRng::stream(seed, 6, 0).next();
    BGraph cover = realize(sample_cover(cfg.base, 6, cfg.model, sample_seed));
    // the per-graph routine is an independent code path
    long long expect = cert_trace_direct(cover.graph(), cfg.nu, cfg.r, 4, true);
    CHECK(rep.raw[0][0].mean == static_cast<double>(expect));
  }
}

TEST_CASE("guard flag raised when k exceeds the validity window") {
  ExperimentConfig cfg;
  cfg.base = bouquet(2);
  cfg.model = CoverModel::parse("permutation");
  cfg.k_list = {5};
  cfg.n_list = {4};
  cfg.samples_per_n = 2;
  cfg.trace_kind = TraceKind::plain;
  ExpansionReport rep = estimate_functional(cfg);
  bool flagged = false;
  for (const auto& f : rep.flags)
    if (f.find("guard-violated") != std::string::npos) flagged = true;
  CHECK(flagged);
}

TEST_CASE("fit recovers exact linear models") {
  ExpansionReport rep;
  rep.k_list = {1};
  rep.n_list = {10, 20, 40, 80};
  rep.raw.assign(1, {});
  for (int n : rep.n_list) rep.raw[0].push_back({3.0 + 5.0 / n, 0.0, 100});
  fit_expansion(rep, 2);
  CHECK(std::abs(rep.coefficients[0][0].estimate - 3.0) <= 1e-10);
  CHECK(std::abs(rep.coefficients[0][1].estimate - 5.0) <= 1e-10);

  // constant data: higher coefficients vanish
  ExpansionReport c;
  c.k_list = {1};
  c.n_list = {8, 16, 32, 64};
  c.raw.assign(1, {});
  for (int n : c.n_list) {
    (void)n;
    c.raw[0].push_back({7.25, 0.0, 10});
  }
  fit_expansion(c, 2);
  CHECK(std::abs(c.coefficients[0][0].estimate - 7.25) <= 1e-10);
  CHECK(std::abs(c.coefficients[0][1].estimate) <= 1e-9);
}

TEST_CASE("fit rejects degenerate grids") {
  ExpansionReport rep;
  rep.k_list = {1};
  rep.n_list = {10, 10, 10, 10};
  rep.raw.assign(1, {});
  for (int i = 0; i < 4; ++i) rep.raw[0].push_back({1.0, 0.1, 10});
  CHECK_THROWS_AS(fit_expansion(rep, 2), Error);
  ExpansionReport small;
  small.k_list = {1};
  small.n_list = {10, 20};
  small.raw.assign(1, {{{1.0, 0.1, 10}, {1.0, 0.1, 10}}});
  CHECK_THROWS_AS(fit_expansion(small, 2), Error);
}

TEST_CASE("weighted fit covers the truth at the stated rate") {
  // simulation harness: y = c0 + c1/n + noise, known sigma
  TestRng rng(7777);
  const double c0 = 50.0, c1 = -30.0;
  std::vector<int> ns{16, 32, 64, 128};
  int covered0 = 0, covered1 = 0;
  const int reps = 200;
  for (int rep_i = 0; rep_i < reps; ++rep_i) {
    ExpansionReport rep;
    rep.k_list = {1};
    rep.n_list = ns;
    rep.raw.assign(1, {});
    for (int n : ns) {
      double sigma = 0.5 + 0.1 * (n % 7);
      // 12-sum uniform approximates a standard normal
      double z = -6.0;
      for (int t = 0; t < 12; ++t) z += rng.uniform();
      rep.raw[0].push_back({c0 + c1 / n + sigma * z, sigma, 1000});
    }
    fit_expansion(rep, 2);
    if (std::abs(rep.coefficients[0][0].estimate - c0) <= 3 * rep.coefficients[0][0].std_error)
      ++covered0;
    if (std::abs(rep.coefficients[0][1].estimate - c1) <= 3 * rep.coefficients[0][1].std_error)
      ++covered1;
  }
  CHECK(covered0 >= static_cast<int>(reps * 0.95));
  CHECK(covered1 >= static_cast<int>(reps * 0.95));
}

TEST_CASE("subgraph presence probabilities") {
  Graph b2 = bouquet(2);
  // s = B itself at n = 1: always present
  {
    auto rep = estimate_subgraph_prob(b2, CoverModel::parse("permutation"),
                                      identity_bgraph(b2), {1}, 20, 5);
    CHECK(rep.raw[0][0].mean == 1.0);
  }
  // a half-loop pattern never occurs in even-degree involution covers
  {
    Graph hb = half_loop_bouquet(1, 1);
    auto rep = estimate_subgraph_prob(hb, CoverModel::parse("permutation-involution-even"),
                                      identity_bgraph(hb), {2, 4}, 50, 5);
    CHECK(rep.raw[0][0].mean == 0.0);
    CHECK(rep.raw[0][1].mean == 0.0);
  }
  // eight(1,1) presence decays roughly like 1/n
  {
    std::map<std::string, std::string> vm{{"v", "v"}};
    std::map<std::string, std::string> em{
        {"l0", "l0"}, {"l0~", "l0~"}, {"l1", "l1"}, {"l1~", "l1~"}};
    BGraph eight = BGraph::build(figure_eight(), b2, vm, em);
    auto rep = estimate_subgraph_prob(b2, CoverModel::parse("permutation"), eight, {16, 64},
                                      4000, 31);
    double p16 = rep.raw[0][0].mean, p64 = rep.raw[0][1].mean;
    CHECK(p16 > p64);
    double slope = std::log(p64 / p16) / std::log(64.0 / 16.0);
    CHECK(slope > -1.5);
    CHECK(slope < -0.5);
  }
}

TEST_CASE("high-order walk counts") {
  Graph b2 = bouquet(2);
  // r > k: a k-walk's visited subgraph has order < k
  {
    auto rep = estimate_high_order_snbc(b2, CoverModel::parse("permutation"), 3, 2, {8, 16}, 40, 3);
    CHECK(rep.raw[0][0].mean == 0.0);
    CHECK(rep.raw[0][1].mean == 0.0);
  }
  // n = 1: deterministic value from the base
  {
    auto rep = estimate_high_order_snbc(b2, CoverModel::parse("permutation"), 1, 2, {1}, 10, 3);
    auto split = count_snbc_order_split(b2, 2, 1);
    CHECK(rep.raw[0][0].mean == static_cast<double>(split.at_or_above));
    CHECK(rep.raw[0][0].std_error == 0.0);
  }
  // E[snbc_{>=1}(G,2)] = 8/n exactly for the 2-loop bouquet permutation model
  {
    const int n = 32, samples = 4000;
    auto rep = estimate_high_order_snbc(b2, CoverModel::parse("permutation"), 1, 2, {n}, samples,
                                        271828);
    double expect = 8.0 / n;
    CHECK(std::abs(rep.raw[0][0].mean - expect) <= 3.5 * rep.raw[0][0].std_error + 1e-12);
  }
}
