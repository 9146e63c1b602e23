#include <algorithm>
#include <functional>
#include <vector>

#include "nbt/graph.hpp"

namespace nbt {
namespace {

// Backtracking search for injective morphisms s -> g.  Vertex and dedge
// colours carry the B-structure constraints; all-zero colours give plain
// graph morphisms.
struct InjSearch {
  const Graph& s;
  const Graph& g;
  const std::vector<int>& s_vc;
  const std::vector<int>& g_vc;
  const std::vector<int>& s_ec;
  const std::vector<int>& g_ec;

  struct Step {
    bool root;  // root: map a fresh vertex; else map dedge `e` (tail mapped)
    int v = -1;
    int e = -1;
  };
  std::vector<Step> plan;

  std::vector<int> vmap, emap;
  std::vector<char> gv_used, ge_used;
  long long count = 0;
  const std::function<bool(const std::vector<int>&, const std::vector<int>&)>* cb = nullptr;
  bool stopped = false;

  InjSearch(const Graph& s_, const Graph& g_, const std::vector<int>& svc,
            const std::vector<int>& gvc, const std::vector<int>& sec, const std::vector<int>& gec)
      : s(s_), g(g_), s_vc(svc), g_vc(gvc), s_ec(sec), g_ec(gec) {
    build_plan();
    vmap.assign(s.num_vertices(), -1);
    emap.assign(s.num_dedges(), -1);
    gv_used.assign(g.num_vertices(), 0);
    ge_used.assign(g.num_dedges(), 0);
  }

  void build_plan() {
    std::vector<char> v_seen(s.num_vertices(), 0), e_seen(s.num_dedges(), 0);
    for (int v0 = 0; v0 < static_cast<int>(s.num_vertices()); ++v0) {
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

  void emit() {
    ++count;
    if (cb && !(*cb)(vmap, emap)) stopped = true;
  }

  void rec(std::size_t step) {
    if (stopped) return;
    if (step == plan.size()) {
      emit();
      return;
    }
    const Step& st = plan[step];
    if (st.root) {
      for (int gv = 0; gv < static_cast<int>(g.num_vertices()); ++gv) {
        if (gv_used[gv] || g_vc[gv] != s_vc[st.v]) continue;
        gv_used[gv] = 1;
        vmap[st.v] = gv;
        rec(step + 1);
        gv_used[gv] = 0;
        vmap[st.v] = -1;
        if (stopped) return;
      }
      return;
    }
    const int e = st.e;
    const int ei = s.inv(e);
    const int gt = vmap[s.tail(e)];
    const int sh = s.head(e);
    for (int f : g.out_dedges(gt)) {
      if (ge_used[f] || g_ec[f] != s_ec[e]) continue;
      const int fi = g.inv(f);
      if ((e == ei) != (f == fi)) continue;  // half-loops map to half-loops
      if (g_ec[fi] != s_ec[ei]) continue;
      const int gh = g.head(f);
      bool fresh_head = false;
      if (vmap[sh] >= 0) {
        if (vmap[sh] != gh) continue;
      } else {
        if (gv_used[gh] || g_vc[gh] != s_vc[sh]) continue;
        fresh_head = true;
      }
      ge_used[f] = 1;
      ge_used[fi] = 1;
      emap[e] = f;
      emap[ei] = fi;
      if (fresh_head) {
        gv_used[gh] = 1;
        vmap[sh] = gh;
      }
      rec(step + 1);
      if (fresh_head) {
        gv_used[gh] = 0;
        vmap[sh] = -1;
      }
      ge_used[f] = 0;
      ge_used[fi] = 0;
      emap[e] = -1;
      emap[ei] = -1;
      if (stopped) return;
    }
  }

  long long run() {
    rec(0);
    return count;
  }
};

std::vector<int> zeros(std::size_t n) { return std::vector<int>(n, 0); }

}  // namespace

long long count_injections(const Graph& s, const Graph& g) {
  auto svc = zeros(s.num_vertices()), gvc = zeros(g.num_vertices());
  auto sec = zeros(s.num_dedges()), gec = zeros(g.num_dedges());
  InjSearch search(s, g, svc, gvc, sec, gec);
  return search.run();
}

long long count_injections(const BGraph& s, const BGraph& g) {
  require(s.same_base(g), Errc::validation, "count_injections requires a shared base graph");
  InjSearch search(s.graph(), g.graph(), s.vmap(), g.vmap(), s.emap(), g.emap());
  return search.run();
}

void for_each_injection(
    const BGraph& s, const BGraph& g,
    const std::function<bool(const std::vector<int>&, const std::vector<int>&)>& fn) {
  require(s.same_base(g), Errc::validation, "for_each_injection requires a shared base graph");
  InjSearch search(s.graph(), g.graph(), s.vmap(), g.vmap(), s.emap(), g.emap());
  search.cb = &fn;
  search.run();
}

long long aut_count(const BGraph& s) { return count_injections(s, s); }
long long aut_count(const Graph& s) { return count_injections(s, s); }

}  // namespace nbt
