#include "nbt/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace nbt {

HashimotoMatrix hashimoto_matrix(const Graph& g) {
  const int n = static_cast<int>(g.num_dedges());
  HashimotoMatrix m;
  m.index = g.dedge_ids();
  m.entries.assign(n, std::vector<int>(n, 0));
  for (int e = 0; e < n; ++e)
    for (int f : g.out_dedges(g.head(e)))
      if (g.inv(e) != f) m.entries[e][f] = 1;
  return m;
}

Bigint trace_hashimoto_pow(const Graph& g, int k) {
  require(k >= 1, Errc::validation, "trace requires k >= 1");
  const int n = static_cast<int>(g.num_dedges());
  if (n == 0) return 0;
  auto h = hashimoto_matrix(g);
  std::vector<std::vector<Bigint>> acc(n, std::vector<Bigint>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) acc[i][j] = h.entries[i][j];
  std::vector<std::vector<Bigint>> next(n, std::vector<Bigint>(n));
  for (int step = 1; step < k; ++step) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) next[i][j] = 0;
      for (int l = 0; l < n; ++l) {
        if (acc[i][l] == 0) continue;
        const Bigint& a = acc[i][l];
        for (int j : g.out_dedges(g.head(l)))
          if (g.inv(l) != j) next[i][j] += a;
      }
    }
    std::swap(acc, next);
  }
  Bigint tr = 0;
  for (int i = 0; i < n; ++i) tr += acc[i][i];
  return tr;
}

double mu1(const Graph& g) {
  // Closed non-backtracking walks live in the pruned part, and pruning
  // preserves the nonzero Hashimoto spectrum; it also removes the nilpotent
  // directions that stall power iteration.
  if (!g.is_pruned()) return mu1(g.pruned());
  const int n = static_cast<int>(g.num_dedges());
  if (n == 0) return 0.0;
  std::vector<double> x(n, 1.0), y(n);
  double lambda = 0.0;
  int stable = 0;
  const int max_iter = 100000;
  for (int it = 0; it < max_iter; ++it) {
    // y = (I + H) x
    for (int e = 0; e < n; ++e) {
      double s = x[e];
      for (int f : g.out_dedges(g.head(e)))
        if (g.inv(e) != f) s += x[f];
      y[e] = s;
    }
    double norm = 0.0;
    for (double v : y) norm = std::max(norm, v);
    if (norm == 0.0) return 0.0;
    for (int e = 0; e < n; ++e) x[e] = y[e] / norm;
    if (std::abs(norm - lambda) <= 1e-13 * std::max(1.0, norm)) {
      if (++stable >= 4) {
        lambda = norm;
        break;
      }
    } else {
      stable = 0;
    }
    lambda = norm;
  }
  return std::max(lambda - 1.0, 0.0);
}

namespace {

// det(I - M(z)) restricted to one dedge subset of the type; M carries
// z^{length(edge of e1)} wherever the type's Hashimoto matrix has a 1.
struct ShannonDet {
  const Graph& t;
  const std::vector<int>& length_of_dedge;
  const std::vector<int>& rows;

  double eval(double z) const {
    const int n = static_cast<int>(rows.size());
    std::vector<int> pos(t.num_dedges(), -1);
    for (int i = 0; i < n; ++i) pos[rows[i]] = i;
    std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
      int e = rows[i];
      double w = std::pow(z, length_of_dedge[e]);
      for (int f : t.out_dedges(t.head(e)))
        if (t.inv(e) != f && pos[f] >= 0) a[static_cast<std::size_t>(i) * n + pos[f]] -= w;
      a[static_cast<std::size_t>(i) * n + i] += 1.0;
    }
    double det = 1.0;
    for (int c = 0; c < n; ++c) {
      int piv = c;
      for (int r = c + 1; r < n; ++r)
        if (std::abs(a[static_cast<std::size_t>(r) * n + c]) >
            std::abs(a[static_cast<std::size_t>(piv) * n + c]))
          piv = r;
      if (a[static_cast<std::size_t>(piv) * n + c] == 0.0) return 0.0;
      if (piv != c) {
        for (int j = 0; j < n; ++j)
          std::swap(a[static_cast<std::size_t>(piv) * n + j], a[static_cast<std::size_t>(c) * n + j]);
        det = -det;
      }
      double d = a[static_cast<std::size_t>(c) * n + c];
      det *= d;
      for (int r = c + 1; r < n; ++r) {
        double m = a[static_cast<std::size_t>(r) * n + c] / d;
        if (m == 0.0) continue;
        for (int j = c; j < n; ++j)
          a[static_cast<std::size_t>(r) * n + j] -= m * a[static_cast<std::size_t>(c) * n + j];
      }
    }
    return det;
  }

  // Exact sign of det(I - M(z)) at a rational z.
  int exact_sign(const Rational& z) const {
    const int n = static_cast<int>(rows.size());
    std::vector<int> pos(t.num_dedges(), -1);
    for (int i = 0; i < n; ++i) pos[rows[i]] = i;
    std::vector<Rational> a(static_cast<std::size_t>(n) * n, Rational(0));
    for (int i = 0; i < n; ++i) {
      int e = rows[i];
      Rational w = 1;
      for (int rep = 0; rep < length_of_dedge[e]; ++rep) w *= z;
      for (int f : t.out_dedges(t.head(e)))
        if (t.inv(e) != f && pos[f] >= 0) a[static_cast<std::size_t>(i) * n + pos[f]] -= w;
      a[static_cast<std::size_t>(i) * n + i] += 1;
    }
    int sign = 1;
    for (int c = 0; c < n; ++c) {
      int piv = -1;
      for (int r = c; r < n; ++r)
        if (a[static_cast<std::size_t>(r) * n + c] != 0) {
          piv = r;
          break;
        }
      if (piv < 0) return 0;
      if (piv != c) {
        for (int j = 0; j < n; ++j)
          std::swap(a[static_cast<std::size_t>(piv) * n + j], a[static_cast<std::size_t>(c) * n + j]);
        sign = -sign;
      }
      const Rational d = a[static_cast<std::size_t>(c) * n + c];
      if (d < 0) sign = -sign;
      for (int r = c + 1; r < n; ++r) {
        Rational m = a[static_cast<std::size_t>(r) * n + c] / d;
        if (m == 0) continue;
        for (int j = c; j < n; ++j)
          a[static_cast<std::size_t>(r) * n + j] -= m * a[static_cast<std::size_t>(c) * n + j];
      }
    }
    return sign;
  }
};

// Per-dedge lengths plus the pruned connected components of the type.
struct TypePieces {
  const Graph& g;
  std::vector<int> len;
  struct Piece {
    std::vector<int> dedges;
    Rational chi;  // of the subdivided component (equals the type's)
  };
  std::vector<Piece> pieces;

  explicit TypePieces(const LengthedType& t) : g(t.otype.graph()) {
    len.assign(g.num_dedges(), 1);
    for (std::size_t i = 0; i < t.otype.edge_order().size(); ++i) {
      int e = t.otype.edge_order()[i];
      len[e] = t.lengths[i];
      len[g.inv(e)] = t.lengths[i];
    }
    auto comp = g.components();
    std::vector<int> roots;
    for (int v = 0; v < static_cast<int>(g.num_vertices()); ++v)
      if (comp[v] == v) roots.push_back(v);
    for (int root : roots) {
      std::vector<int> vs, es;
      for (int v = 0; v < static_cast<int>(g.num_vertices()); ++v)
        if (comp[v] == root) vs.push_back(v);
      for (int e = 0; e < static_cast<int>(g.num_dedges()); ++e)
        if (comp[g.tail(e)] == root) es.push_back(e);
      prune_in_place(vs, es);
      if (es.empty()) continue;
      Rational chi = Rational(vs.size()) - Rational(es.size()) / 2;
      pieces.push_back({std::move(es), chi});
    }
  }

  void prune_in_place(std::vector<int>& vertices, std::vector<int>& dedges) const {
    std::vector<char> v_in(g.num_vertices(), 0), e_in(g.num_dedges(), 0);
    for (int v : vertices) v_in[v] = 1;
    for (int e : dedges) e_in[e] = 1;
    std::vector<int> deg(g.num_vertices(), 0);
    for (int e : dedges) ++deg[g.head(e)];
    bool changed = true;
    while (changed) {
      changed = false;
      for (int v : vertices) {
        if (!v_in[v] || deg[v] >= 2) continue;
        v_in[v] = 0;
        changed = true;
        for (int e : g.out_dedges(v)) {
          if (!e_in[e]) continue;
          e_in[e] = 0;
          --deg[g.head(e)];
          if (g.inv(e) != e) {
            e_in[g.inv(e)] = 0;
            --deg[g.head(g.inv(e))];
          }
        }
      }
    }
    std::vector<int> nv, ne;
    for (int v : vertices)
      if (v_in[v]) nv.push_back(v);
    for (int e : dedges)
      if (e_in[e]) ne.push_back(e);
    vertices = std::move(nv);
    dedges = std::move(ne);
  }
};

// 1/z for the smallest positive root of the piece's determinant; requires
// chi < 0 (simple dominant root, strict sign change).
double piece_mu(const TypePieces& tp, const TypePieces::Piece& piece) {
  ShannonDet det{tp.g, tp.len, piece.dedges};
  const double step = 1e-3;
  double lo = 0.0, hi = -1.0;
  for (int i = 1; i <= 1000; ++i) {
    double z = i * step;
    double f = det.eval(z);
    if (f <= 0.0) {
      if (std::abs(f) < 1e-9) {
        int s = det.exact_sign(Rational(i, 1000));
        if (s > 0) {
          lo = z;
          continue;
        }
      }
      lo = z - step;
      hi = z;
      break;
    }
    lo = z;
  }
  if (hi < 0)
    fail(Errc::root_bracket_failure,
         "no sign change of det(I - M(z)) on (0,1] for a chi<0 component");
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    double mid = 0.5 * (lo + hi);
    if (det.eval(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 1.0 / (0.5 * (lo + hi));
}

}  // namespace

double shannon_mu1(const LengthedType& t) {
  if (t.otype.graph().num_dedges() == 0) return 0.0;
  TypePieces tp(t);
  double best = 0.0;
  for (const auto& piece : tp.pieces) {
    if (piece.chi == 0) {
      best = std::max(best, 1.0);
      continue;
    }
    if (piece.chi > 0) continue;
    best = std::max(best, piece_mu(tp, piece));
  }
  return best;
}

int compare_mu1_shannon(const LengthedType& t, double nu) {
  auto sign_of = [](double x) { return x < 0 ? -1 : (x > 0 ? 1 : 0); };
  if (t.otype.graph().num_dedges() == 0) return sign_of(0.0 - nu);
  TypePieces tp(t);
  int best = sign_of(0.0 - nu);
  for (const auto& piece : tp.pieces) {
    int cmp;
    if (piece.chi >= 0) {
      double m = piece.chi == 0 ? 1.0 : 0.0;
      cmp = sign_of(m - nu);
    } else {
      double m = piece_mu(tp, piece);
      if (std::abs(m - nu) >= 1e-8) {
        cmp = sign_of(m - nu);
      } else {
        // Settle the boundary exactly: f(1/nu) > 0 means 1/nu lies before
        // the first root, i.e. mu1 < nu.
        ShannonDet det{tp.g, tp.len, piece.dedges};
        Rational z = Rational(1) / Rational(nu);
        int s = det.exact_sign(z);
        cmp = s > 0 ? -1 : (s == 0 ? 0 : 1);
      }
    }
    best = std::max(best, cmp);
  }
  return best;
}

}  // namespace nbt
