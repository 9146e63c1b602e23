#include <algorithm>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "nbt/graph.hpp"

namespace nbt {
namespace {

// Canonical labeling by individualization-refinement over colour-degree
// partitions.  Instances are desk scale, so we enumerate all discrete leaves
// of the refinement tree and keep the lexicographically smallest certificate.
struct Canonicalizer {
  const Graph& g;
  std::vector<int> vcolor;  // initial vertex colours (B-graph: base vertex)
  std::vector<int> ecolor;  // per dedge (B-graph: base dedge, else 0)
  std::optional<std::string> best;

  using Cells = std::vector<std::vector<int>>;

  Canonicalizer(const Graph& graph, std::vector<int> vc, std::vector<int> ec)
      : g(graph), vcolor(std::move(vc)), ecolor(std::move(ec)) {}

  void refine(Cells& cells) const {
    const int nv = static_cast<int>(g.num_vertices());
    std::vector<int> cell_of(nv, 0);
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t c = 0; c < cells.size(); ++c)
        for (int v : cells[c]) cell_of[v] = static_cast<int>(c);
      Cells next;
      next.reserve(cells.size());
      for (auto& cell : cells) {
        if (cell.size() == 1) {
          next.push_back(cell);
          continue;
        }
        using Sig = std::vector<std::tuple<int, int, int, int>>;
        std::vector<std::pair<Sig, int>> keyed;
        keyed.reserve(cell.size());
        for (int v : cell) {
          Sig sig;
          for (int e : g.out_dedges(v))
            sig.emplace_back(cell_of[g.head(e)], ecolor[e], ecolor[g.inv(e)],
                             g.is_half_loop(e) ? 1 : 0);
          std::sort(sig.begin(), sig.end());
          keyed.emplace_back(std::move(sig), v);
        }
        std::sort(keyed.begin(), keyed.end());
        std::size_t i = 0;
        while (i < keyed.size()) {
          std::size_t j = i;
          std::vector<int> group;
          while (j < keyed.size() && keyed[j].first == keyed[i].first)
            group.push_back(keyed[j++].second);
          std::sort(group.begin(), group.end());
          next.push_back(std::move(group));
          i = j;
        }
      }
      changed = next.size() != cells.size();
      cells = std::move(next);
    }
  }

  void search(Cells cells) {
    refine(cells);
    int target = -1;
    for (std::size_t c = 0; c < cells.size(); ++c)
      if (cells[c].size() > 1 &&
          (target < 0 || cells[c].size() < cells[target].size())) {
        target = static_cast<int>(c);
      }
    if (target < 0) {
      consider_leaf(cells);
      return;
    }
    for (int v : cells[target]) {
      Cells branched;
      branched.reserve(cells.size() + 1);
      for (std::size_t c = 0; c < cells.size(); ++c) {
        if (static_cast<int>(c) == target) {
          branched.push_back({v});
          std::vector<int> rest;
          for (int w : cells[c])
            if (w != v) rest.push_back(w);
          branched.push_back(std::move(rest));
        } else {
          branched.push_back(cells[c]);
        }
      }
      search(std::move(branched));
    }
  }

  void consider_leaf(const Cells& cells) {
    std::vector<int> pos(g.num_vertices());
    {
      int i = 0;
      for (const auto& cell : cells) pos[cell[0]] = i++;
    }
    std::string cert = "V" + std::to_string(g.num_vertices());
    cert += "|C";
    for (const auto& cell : cells) cert += "," + std::to_string(vcolor[cell[0]]);
    // One entry per edge orbit, normalized by endpoint positions.
    std::vector<std::string> entries;
    for (int e = 0; e < static_cast<int>(g.num_dedges()); ++e) {
      if (g.orbit_rep(e) != e) continue;
      int f = g.inv(e);
      if (g.is_half_loop(e)) {
        entries.push_back("H" + std::to_string(pos[g.tail(e)]) + ":" + std::to_string(ecolor[e]));
        continue;
      }
      int p = pos[g.tail(e)], q = pos[g.head(e)];
      int le = ecolor[e], lf = ecolor[f];
      if (p > q || (p == q && le > lf)) {
        std::swap(p, q);
        std::swap(le, lf);
      }
      entries.push_back("W" + std::to_string(p) + ">" + std::to_string(q) + ":" +
                        std::to_string(le) + "/" + std::to_string(lf));
    }
    std::sort(entries.begin(), entries.end());
    cert += "|E";
    for (const auto& s : entries) cert += ";" + s;
    if (!best || cert < *best) best = cert;
  }

  std::string run() {
    if (g.num_vertices() == 0) return "V0|C|E";
    // Initial partition: group by colour.
    std::vector<std::pair<int, int>> by_color;
    for (int v = 0; v < static_cast<int>(g.num_vertices()); ++v)
      by_color.emplace_back(vcolor[v], v);
    std::sort(by_color.begin(), by_color.end());
    Cells cells;
    for (std::size_t i = 0; i < by_color.size();) {
      std::size_t j = i;
      std::vector<int> cell;
      while (j < by_color.size() && by_color[j].first == by_color[i].first)
        cell.push_back(by_color[j++].second);
      cells.push_back(std::move(cell));
      i = j;
    }
    search(std::move(cells));
    return *best;
  }
};

}  // namespace

std::string canonical_label(const Graph& g) {
  Canonicalizer c(g, std::vector<int>(g.num_vertices(), 0),
                  std::vector<int>(g.num_dedges(), 0));
  return "G|" + c.run();
}

std::string canonical_label(const BGraph& b) {
  // Only comparable between B-graphs over the same base: colours reference
  // base vertex/dedge indices.
  Canonicalizer c(b.graph(), b.vmap(), b.emap());
  return "B|" + c.run();
}

}  // namespace nbt
