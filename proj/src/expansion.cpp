#include "nbt/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <thread>

#include "nbt/match.hpp"
#include "nbt/rng.hpp"
#include "nbt/spectral.hpp"
#include "nbt/walks.hpp"

namespace nbt {

TraceKind trace_kind_parse(const std::string& name) {
  if (name == "plain") return TraceKind::plain;
  if (name == "certified_strict") return TraceKind::certified_strict;
  if (name == "certified_weak") return TraceKind::certified_weak;
  if (name == "tanglefree_plain") return TraceKind::tanglefree_plain;
  if (name == "hastangles_plain") return TraceKind::hastangles_plain;
  if (name == "hastangles_certified") return TraceKind::hastangles_certified;
  if (name == "tanglefree_prob") return TraceKind::tanglefree_prob;
  if (name == "subgraph_presence") return TraceKind::subgraph_presence;
  fail(Errc::parse_error, "unknown trace kind '" + name + "'");
}

std::string trace_kind_name(TraceKind k) {
  switch (k) {
    case TraceKind::plain: return "plain";
    case TraceKind::certified_strict: return "certified_strict";
    case TraceKind::certified_weak: return "certified_weak";
    case TraceKind::tanglefree_plain: return "tanglefree_plain";
    case TraceKind::hastangles_plain: return "hastangles_plain";
    case TraceKind::hastangles_certified: return "hastangles_certified";
    case TraceKind::tanglefree_prob: return "tanglefree_prob";
    case TraceKind::subgraph_presence: return "subgraph_presence";
  }
  fail(Errc::validation, "bad trace kind");
}

namespace {

// Coordinatized cover acting as a match.hpp host, without materializing ids:
// dedge be*n+i, vertex bv*n+i, heads through sigma.
struct ImplicitCover {
  const Graph* base;
  int n;
  const std::vector<std::vector<int>>* sigma;

  int v_count() const { return static_cast<int>(base->num_vertices()) * n; }
  long long d_count() const { return static_cast<long long>(base->num_dedges()) * n; }
  int tail(int d) const { return base->tail(d / n) * n + d % n; }
  int head(int d) const {
    int be = d / n, i = d % n;
    return base->head(be) * n + (*sigma)[be][i];
  }
  int inv(int d) const {
    int be = d / n, i = d % n;
    return base->inv(be) * n + (*sigma)[be][i];
  }
  int vcolor(int v) const { return v / n; }
  int ecolor(int d) const { return d / n; }
  template <class F>
  void for_out(int v, F&& f) const {
    int bv = v / n, i = v % n;
    for (int be : base->out_dedges(bv))
      if (!f(be * n + i)) return;
  }
};

// Per-sample SNBC statistics up to k_max.  Certified bookkeeping is only
// paid for walks whose visited subgraph has positive order; order-zero
// visited subgraphs are cycles with mu1 = 1 < nu.
struct WalkStats {
  std::vector<long long> snbc;      // [k]
  std::vector<long long> high;      // [k]: ord >= ord_split
  std::vector<long long> cert_rej;  // [k]: ord in [1,r) but mu1 outside the bound
  std::vector<long long> ord_ge_r;  // [k]: ord >= r
};

struct WalkScanner {
  const ImplicitCover& c;
  int k_max;
  int ord_split;  // threshold for `high`
  int r;          // certified order bound
  double nu;
  bool strict;
  bool want_cert;

  std::vector<int> walk;
  std::vector<int> vcount, ecount;  // visit multiplicities
  std::vector<int> estack;          // visited edge orbits, in visit order
  long long vseen = 0, eseen = 0;
  std::map<std::vector<int>, bool> cert_memo;
  WalkStats stats;

  WalkScanner(const ImplicitCover& cover, int kmax, int split, int rr, double nu_, bool strict_,
              bool cert)
      : c(cover), k_max(kmax), ord_split(split), r(rr), nu(nu_), strict(strict_), want_cert(cert) {
    vcount.assign(c.v_count(), 0);
    ecount.assign(static_cast<std::size_t>(c.d_count()), 0);
    stats.snbc.assign(k_max + 1, 0);
    stats.high.assign(k_max + 1, 0);
    stats.cert_rej.assign(k_max + 1, 0);
    stats.ord_ge_r.assign(k_max + 1, 0);
  }

  int orbit_rep(int d) const { return std::min(d, c.inv(d)); }

  void run() {
    const long long nd = c.d_count();
    for (long long e0 = 0; e0 < nd; ++e0) {
      int t = c.tail(static_cast<int>(e0));
      push_vertex(t);
      extend(static_cast<int>(e0), 1);
      pop_vertex(t);
    }
  }

  void push_vertex(int v) {
    if (vcount[v]++ == 0) ++vseen;
  }
  void pop_vertex(int v) {
    if (--vcount[v] == 0) --vseen;
  }

  void extend(int e, int depth) {
    walk.push_back(e);
    int rep = orbit_rep(e);
    if (ecount[rep]++ == 0) {
      ++eseen;
      estack.push_back(rep);
    }
    int h = c.head(e);
    push_vertex(h);

    if (h == c.tail(walk.front()) && c.inv(e) != walk.front()) {
      ++stats.snbc[depth];
      long long ord = eseen - vseen;
      if (ord >= ord_split) ++stats.high[depth];
      if (ord >= r) {
        ++stats.ord_ge_r[depth];
      } else if (want_cert && ord >= 1) {
        if (!visu_certified()) ++stats.cert_rej[depth];
      }
    }
    if (depth < k_max) {
      int bh = h / c.n, i = h % c.n;
      for (int be : c.base->out_dedges(bh)) {
        int f = be * c.n + i;
        if (c.inv(e) != f) extend(f, depth + 1);
      }
    }

    pop_vertex(h);
    if (--ecount[rep] == 0) {
      --eseen;
      estack.pop_back();
    }
    walk.pop_back();
  }

  bool visu_certified() {
    std::vector<int> key(estack.begin(), estack.end());
    std::sort(key.begin(), key.end());
    auto it = cert_memo.find(key);
    if (it != cert_memo.end()) return it->second;
    GraphBuilder b;
    std::set<int> vs;
    for (int rep : key) {
      vs.insert(c.tail(rep));
      vs.insert(c.head(rep));
    }
    for (int v : vs) b.vertex("v" + std::to_string(v));
    int eid = 0;
    for (int rep : key) {
      std::string id = "e" + std::to_string(eid++);
      if (c.inv(rep) == rep)
        b.half_loop(id, "v" + std::to_string(c.tail(rep)));
      else
        b.edge(id, "v" + std::to_string(c.tail(rep)), "v" + std::to_string(c.head(rep)));
    }
    double m = mu1(b.build());
    bool ok = strict ? m < nu : m <= nu;
    cert_memo.emplace(std::move(key), ok);
    return ok;
  }
};

struct EstimatorPlan {
  const ExperimentConfig& cfg;
  std::vector<Pattern> tangle_patterns;
  std::optional<Pattern> presence_pattern;
  bool need_walks = false;
  bool need_cert = false;
  bool need_tf = false;
  int k_max = 0;
  int high_split = 0;     // >0: report the high-order count instead
};

std::vector<double> evaluate_sample(const EstimatorPlan& plan, const ImplicitCover& cover) {
  const ExperimentConfig& cfg = plan.cfg;
  bool tf = true;
  if (plan.need_tf) {
    for (const Pattern& p : plan.tangle_patterns) {
      Matcher<ImplicitCover> m(cover, p);
      if (m.exists()) {
        tf = false;
        break;
      }
    }
  }
  switch (cfg.trace_kind) {
    case TraceKind::tanglefree_prob: return {tf ? 1.0 : 0.0};
    case TraceKind::subgraph_presence: {
      Matcher<ImplicitCover> m(cover, *plan.presence_pattern);
      return {m.exists() ? 1.0 : 0.0};
    }
    default: break;
  }
  WalkScanner scanner(cover, plan.k_max, plan.high_split > 0 ? plan.high_split : cfg.r, cfg.r,
                      cfg.nu, cfg.trace_kind != TraceKind::certified_weak, plan.need_cert);
  scanner.run();
  std::vector<double> out;
  out.reserve(cfg.k_list.size());
  for (int k : cfg.k_list) {
    double snbc = static_cast<double>(scanner.stats.snbc[k]);
    double cert = static_cast<double>(scanner.stats.snbc[k] - scanner.stats.ord_ge_r[k] -
                                      scanner.stats.cert_rej[k]);
    double value = 0;
    if (plan.high_split > 0) {
      value = static_cast<double>(scanner.stats.high[k]);
    } else {
      switch (cfg.trace_kind) {
        case TraceKind::plain: value = snbc; break;
        case TraceKind::tanglefree_plain: value = tf ? snbc : 0.0; break;
        case TraceKind::hastangles_plain: value = tf ? 0.0 : snbc; break;
        case TraceKind::certified_strict:
        case TraceKind::certified_weak: value = cert; break;
        case TraceKind::hastangles_certified: value = tf ? 0.0 : cert; break;
        default: break;
      }
    }
    out.push_back(value);
  }
  return out;
}

RawCell reduce(const std::vector<double>& values) {
  RawCell cell;
  cell.count = static_cast<long long>(values.size());
  double sum = 0;
  for (double v : values) sum += v;
  double mean = cell.count ? sum / cell.count : 0.0;
  double m2 = 0;
  for (double v : values) m2 += (v - mean) * (v - mean);
  cell.mean = mean;
  cell.std_error = cell.count > 1 ? std::sqrt(m2 / (cell.count - 1) / cell.count) : 0.0;
  return cell;
}

void run_samples(const EstimatorPlan& plan, ExpansionReport& report) {
  const ExperimentConfig& cfg = plan.cfg;
  const std::size_t nk = report.k_list.size();
  report.raw.assign(nk, std::vector<RawCell>(cfg.n_list.size()));
  for (std::size_t ni = 0; ni < cfg.n_list.size(); ++ni) {
    const int n = cfg.n_list[ni];
    std::vector<std::vector<double>> values(nk, std::vector<double>(cfg.samples_per_n));
    auto worker = [&](int from, int to) {
      for (int idx = from; idx < to; ++idx) {
        std::uint64_t sample_seed = CounterRng::stream(cfg.seed, static_cast<std::uint64_t>(n),
                                                       static_cast<std::uint64_t>(idx))
                                        .next();
        CoverSample s = sample_cover(cfg.base, n, cfg.model, sample_seed);
        ImplicitCover cover{&cfg.base, n, &s.sigma};
        std::vector<double> f = evaluate_sample(plan, cover);
        for (std::size_t ki = 0; ki < nk; ++ki) values[ki][idx] = f[ki];
      }
    };
    int jobs = std::max(1, cfg.jobs);
    if (jobs == 1) {
      worker(0, cfg.samples_per_n);
    } else {
      std::vector<std::thread> threads;
      int chunk = (cfg.samples_per_n + jobs - 1) / jobs;
      for (int j = 0; j < jobs; ++j) {
        int from = j * chunk, to = std::min(cfg.samples_per_n, (j + 1) * chunk);
        if (from < to) threads.emplace_back(worker, from, to);
      }
      for (auto& t : threads) t.join();
    }
    // index-order reduction: identical output for any worker count
    for (std::size_t ki = 0; ki < nk; ++ki) report.raw[ki][ni] = reduce(values[ki]);
  }
}

EstimatorPlan make_plan(const ExperimentConfig& cfg, ExpansionReport& report) {
  EstimatorPlan plan{cfg, {}, {}, false, false, false, 0, 0};
  for (int k : cfg.k_list) plan.k_max = std::max(plan.k_max, k);
  switch (cfg.trace_kind) {
    case TraceKind::plain: plan.need_walks = true; break;
    case TraceKind::certified_strict:
    case TraceKind::certified_weak: plan.need_walks = plan.need_cert = true; break;
    case TraceKind::tanglefree_plain:
    case TraceKind::hastangles_plain: plan.need_walks = plan.need_tf = true; break;
    case TraceKind::hastangles_certified:
      plan.need_walks = plan.need_cert = plan.need_tf = true;
      break;
    case TraceKind::tanglefree_prob: plan.need_tf = true; break;
    case TraceKind::subgraph_presence:
      require(cfg.subgraph.has_value(), Errc::validation, "subgraph_presence needs a pattern");
      require(cfg.subgraph->base().same_structure(cfg.base), Errc::validation,
              "pattern must live over the experiment base");
      plan.presence_pattern = Pattern::make(*cfg.subgraph);
      break;
  }
  if (plan.need_tf) {
    TangleSpec spec = minimal_tangles(cfg.nu, cfg.r, cfg.tangle_cap);
    if (!spec.verified) report.flags.push_back("tangle-spec-unverified");
    for (const Graph& gen : spec.generators) plan.tangle_patterns.push_back(Pattern::make(gen));
  }
  return plan;
}

}  // namespace

Bigint reference_c0(const Graph& base, int k) {
  require(k >= 1, Errc::validation, "c0 requires k >= 1");
  Bigint total = 0;
  for (int d = 1; d <= k; ++d)
    if (k % d == 0) total += trace_hashimoto_pow(base, d);
  return total;
}

ExpansionReport estimate_functional(const ExperimentConfig& cfg) {
  require(!cfg.n_list.empty() && cfg.samples_per_n >= 1, Errc::validation,
          "need degrees and a sample count");
  const bool k_indexed = cfg.trace_kind != TraceKind::tanglefree_prob &&
                         cfg.trace_kind != TraceKind::subgraph_presence;
  require(!k_indexed || !cfg.k_list.empty(), Errc::validation, "need a k list");

  ExpansionReport report;
  report.k_list = k_indexed ? cfg.k_list : std::vector<int>{0};
  report.n_list = cfg.n_list;
  EstimatorPlan plan = make_plan(cfg, report);

  if (k_indexed)
    for (int k : cfg.k_list)
      for (int n : cfg.n_list)
        if (static_cast<double>(k) > std::sqrt(static_cast<double>(n)) / cfg.guard_c) {
          report.flags.push_back("guard-violated: k=" + std::to_string(k) +
                                 " exceeds sqrt(n)/C at n=" + std::to_string(n));
        }

  run_samples(plan, report);

  if (k_indexed)
    for (int k : report.k_list) report.reference_c0.push_back(reference_c0(cfg.base, k));
  return report;
}

void fit_expansion(ExpansionReport& report, int r) {
  require(r >= 1, Errc::validation, "fit order must be >= 1");
  const int points = static_cast<int>(report.n_list.size());
  require(points >= r + 1, Errc::validation, "need at least r+1 degrees to fit r coefficients");
  report.coefficients.assign(report.k_list.size(), {});
  report.fit_residuals.assign(report.k_list.size(), {});
  for (std::size_t ki = 0; ki < report.k_list.size(); ++ki) {
    bool weighted = true;
    for (const auto& cell : report.raw[ki])
      if (!(cell.std_error > 0)) weighted = false;
    std::vector<double> w(points, 1.0);
    if (weighted)
      for (int i = 0; i < points; ++i)
        w[i] = 1.0 / (report.raw[ki][i].std_error * report.raw[ki][i].std_error);
    std::vector<std::vector<double>> x(points, std::vector<double>(r));
    for (int i = 0; i < points; ++i)
      for (int j = 0; j < r; ++j) x[i][j] = std::pow(1.0 / report.n_list[i], j);
    std::vector<std::vector<double>> ata(r, std::vector<double>(r, 0.0));
    std::vector<double> atb(r, 0.0);
    for (int i = 0; i < points; ++i)
      for (int a = 0; a < r; ++a) {
        for (int b = 0; b < r; ++b) ata[a][b] += w[i] * x[i][a] * x[i][b];
        atb[a] += w[i] * x[i][a] * report.raw[ki][i].mean;
      }
    // Gauss-Jordan with the inverse tracked for the covariance
    std::vector<std::vector<double>> inv(r, std::vector<double>(r, 0.0));
    for (int i = 0; i < r; ++i) inv[i][i] = 1.0;
    std::vector<std::vector<double>> m = ata;
    for (int c = 0; c < r; ++c) {
      int piv = c;
      for (int rr = c + 1; rr < r; ++rr)
        if (std::abs(m[rr][c]) > std::abs(m[piv][c])) piv = rr;
      require(std::abs(m[piv][c]) > 1e-12 * std::max(1.0, std::abs(ata[c][c])),
              Errc::ill_conditioned, "degenerate n grid for the requested fit order");
      std::swap(m[piv], m[c]);
      std::swap(inv[piv], inv[c]);
      double d = m[c][c];
      for (int j = 0; j < r; ++j) {
        m[c][j] /= d;
        inv[c][j] /= d;
      }
      for (int rr = 0; rr < r; ++rr) {
        if (rr == c) continue;
        double f = m[rr][c];
        if (f == 0.0) continue;
        for (int j = 0; j < r; ++j) {
          m[rr][j] -= f * m[c][j];
          inv[rr][j] -= f * inv[c][j];
        }
      }
    }
    std::vector<double> beta(r, 0.0);
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b) beta[a] += inv[a][b] * atb[b];
    std::vector<double> resid(points);
    double rss = 0;
    for (int i = 0; i < points; ++i) {
      double fit = 0;
      for (int j = 0; j < r; ++j) fit += x[i][j] * beta[j];
      resid[i] = report.raw[ki][i].mean - fit;
      rss += w[i] * resid[i] * resid[i];
    }
    double scale = 1.0;
    if (!weighted && points > r) scale = rss / (points - r);
    report.coefficients[ki].resize(r);
    for (int j = 0; j < r; ++j) {
      report.coefficients[ki][j].estimate = beta[j];
      report.coefficients[ki][j].std_error = std::sqrt(std::max(0.0, inv[j][j] * scale));
    }
    report.fit_residuals[ki] = std::move(resid);
  }
}

ExpansionReport estimate_subgraph_prob(const Graph& base, const CoverModel& model, const BGraph& s,
                                       const std::vector<int>& n_list, int samples,
                                       std::uint64_t seed, int jobs) {
  ExperimentConfig cfg;
  cfg.base = base;
  cfg.model = model;
  cfg.n_list = n_list;
  cfg.samples_per_n = samples;
  cfg.seed = seed;
  cfg.trace_kind = TraceKind::subgraph_presence;
  cfg.subgraph = s;
  cfg.jobs = jobs;
  return estimate_functional(cfg);
}

ExpansionReport estimate_high_order_snbc(const Graph& base, const CoverModel& model, int r, int k,
                                         const std::vector<int>& n_list, int samples,
                                         std::uint64_t seed, int jobs) {
  require(k >= 1 && r >= 0, Errc::validation, "need k >= 1 and r >= 0");
  ExperimentConfig cfg;
  cfg.base = base;
  cfg.model = model;
  cfg.n_list = n_list;
  cfg.samples_per_n = samples;
  cfg.seed = seed;
  cfg.trace_kind = TraceKind::plain;
  cfg.k_list = {k};
  cfg.jobs = jobs;

  ExpansionReport report;
  report.k_list = {k};
  report.n_list = n_list;
  EstimatorPlan plan{cfg, {}, {}, true, false, false, k, std::max(r, 1)};
  // r = 0 means every walk counts; keep the plain trace in that case
  if (r == 0) plan.high_split = 0;
  run_samples(plan, report);
  return report;
}

}  // namespace nbt
