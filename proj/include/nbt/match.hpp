#pragma once

#include <vector>

#include "nbt/graph.hpp"

namespace nbt {

/// A pattern prepared for subgraph matching: the pattern graph, optional
/// colours (B-structure constraints), and a connected search plan.  The plan
/// roots at a self-loop vertex when one exists, which lets host scans die
/// immediately on hosts without short cycles.
struct Pattern {
  Graph s;
  std::vector<int> vcolor, ecolor;  // ignored unless use_colors
  bool use_colors = false;

  struct Step {
    bool root;  // map a fresh vertex, else map dedge e whose tail is mapped
    int v = -1;
    int e = -1;
  };
  std::vector<Step> plan;

  static Pattern make(const Graph& s);
  static Pattern make(const BGraph& s);

 private:
  void build_plan();
};

inline Pattern Pattern::make(const Graph& s) {
  Pattern p;
  p.s = s;
  p.vcolor.assign(s.num_vertices(), 0);
  p.ecolor.assign(s.num_dedges(), 0);
  p.build_plan();
  return p;
}

inline Pattern Pattern::make(const BGraph& s) {
  Pattern p;
  p.s = s.graph();
  p.vcolor = s.vmap();
  p.ecolor = s.emap();
  p.use_colors = true;
  p.build_plan();
  return p;
}

inline void Pattern::build_plan() {
  const int nv = static_cast<int>(s.num_vertices());
  std::vector<char> has_loop(nv, 0);
  for (int e = 0; e < static_cast<int>(s.num_dedges()); ++e)
    if (s.tail(e) == s.head(e)) has_loop[s.tail(e)] = 1;
  std::vector<int> order(nv);
  for (int v = 0; v < nv; ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (has_loop[a] != has_loop[b]) return has_loop[a] > has_loop[b];
    if (s.degree(a) != s.degree(b)) return s.degree(a) > s.degree(b);
    return a < b;
  });
  std::vector<char> v_seen(nv, 0), e_seen(s.num_dedges(), 0);
  for (int v0 : order) {
    if (v_seen[v0]) continue;
    v_seen[v0] = 1;
    plan.push_back({true, v0, -1});
    std::vector<int> queue{v0};
    while (!queue.empty()) {
      int v = queue.back();
      queue.pop_back();
      for (int e : s.out_dedges(v)) {
        if (e_seen[e]) continue;
        e_seen[e] = 1;
        e_seen[s.inv(e)] = 1;
        plan.push_back({false, -1, e});
        int h = s.head(e);
        if (!v_seen[h]) {
          v_seen[h] = 1;
          queue.push_back(h);
        }
      }
    }
  }
}

/// Host concept:
///   int v_count() const; long long d_count() const;
///   int tail(d), head(d), inv(d); int vcolor(v), ecolor(d);
///   template <class F> void for_out(int v, F&& f);  // f(dedge) -> bool keep_going
/// Dedge ids may be any ints in [0, d_count()); vertices in [0, v_count()).
template <class Host>
class Matcher {
 public:
  Matcher(const Host& host, const Pattern& p)
      : h_(host), p_(p), vmap_(p.s.num_vertices(), -1), emap_(p.s.num_dedges(), -1) {}

  bool exists() {
    found_ = false;
    hv_used_.assign(h_.v_count(), 0);
    hd_used_.assign(h_.d_count(), 0);
    rec(0);
    return found_;
  }

 private:
  Host h_;  // hosts are cheap views; keep a copy so temporaries are safe
  const Pattern& p_;
  std::vector<int> vmap_, emap_;
  std::vector<char> hv_used_, hd_used_;
  bool found_ = false;

  bool color_v_ok(int sv, int hv) const { return !p_.use_colors || h_.vcolor(hv) == p_.vcolor[sv]; }
  bool color_e_ok(int se, int hd) const { return !p_.use_colors || h_.ecolor(hd) == p_.ecolor[se]; }

  void rec(std::size_t step) {
    if (found_) return;
    if (step == p_.plan.size()) {
      found_ = true;
      return;
    }
    const auto& st = p_.plan[step];
    if (st.root) {
      for (int hv = 0; hv < h_.v_count() && !found_; ++hv) {
        if (hv_used_[hv] || !color_v_ok(st.v, hv)) continue;
        hv_used_[hv] = 1;
        vmap_[st.v] = hv;
        rec(step + 1);
        hv_used_[hv] = 0;
        vmap_[st.v] = -1;
      }
      return;
    }
    const int e = st.e, ei = p_.s.inv(e);
    const int ht = vmap_[p_.s.tail(e)];
    const int sh = p_.s.head(e);
    h_.for_out(ht, [&](int f) {
      if (found_) return false;
      if (hd_used_[f] || !color_e_ok(e, f)) return true;
      const int fi = h_.inv(f);
      if ((e == ei) != (f == fi)) return true;
      if (!color_e_ok(ei, fi)) return true;
      const int hh = h_.head(f);
      bool fresh = false;
      if (vmap_[sh] >= 0) {
        if (vmap_[sh] != hh) return true;
      } else {
        if (hv_used_[hh] || !color_v_ok(sh, hh)) return true;
        fresh = true;
      }
      hd_used_[f] = 1;
      hd_used_[fi] = 1;
      emap_[e] = f;
      emap_[ei] = fi;
      if (fresh) {
        hv_used_[hh] = 1;
        vmap_[sh] = hh;
      }
      rec(step + 1);
      if (fresh) {
        hv_used_[hh] = 0;
        vmap_[sh] = -1;
      }
      hd_used_[f] = 0;
      hd_used_[fi] = 0;
      emap_[e] = -1;
      emap_[ei] = -1;
      return !found_;
    });
  }
};

/// Plain in-memory graph as a host (optionally with B-structure colours).
class GraphHost {
 public:
  explicit GraphHost(const Graph& g) : g_(g) {}
  GraphHost(const Graph& g, const std::vector<int>& vc, const std::vector<int>& ec)
      : g_(g), vc_(&vc), ec_(&ec) {}

  int v_count() const { return static_cast<int>(g_.num_vertices()); }
  long long d_count() const { return static_cast<long long>(g_.num_dedges()); }
  int tail(int d) const { return g_.tail(d); }
  int head(int d) const { return g_.head(d); }
  int inv(int d) const { return g_.inv(d); }
  int vcolor(int v) const { return vc_ ? (*vc_)[v] : 0; }
  int ecolor(int d) const { return ec_ ? (*ec_)[d] : 0; }
  template <class F>
  void for_out(int v, F&& f) const {
    for (int e : g_.out_dedges(v))
      if (!f(e)) return;
  }

 private:
  const Graph& g_;
  const std::vector<int>* vc_ = nullptr;
  const std::vector<int>* ec_ = nullptr;
};

inline bool exists_injection(const Graph& s, const Graph& g) {
  if (s.num_dedges() > g.num_dedges() || s.num_vertices() > g.num_vertices()) return false;
  Pattern p = Pattern::make(s);
  Matcher<GraphHost> m(GraphHost(g), p);
  return m.exists();
}

inline bool exists_injection(const BGraph& s, const BGraph& g) {
  require(s.same_base(g), Errc::validation, "exists_injection requires a shared base");
  if (s.graph().num_dedges() > g.graph().num_dedges()) return false;
  Pattern p = Pattern::make(s);
  Matcher<GraphHost> m(GraphHost(g.graph(), g.vmap(), g.emap()), p);
  return m.exists();
}

}  // namespace nbt
