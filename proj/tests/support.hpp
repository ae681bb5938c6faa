#pragma once

// Random instance generators and brute-force reference implementations shared by the tests.

#include <logcavity/exactmath.hpp>
#include <logcavity/matroid.hpp>
#include <logcavity/poly.hpp>
#include <logcavity/poset.hpp>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

namespace support {

using namespace logcavity;
using Rng = std::mt19937;

inline int uniform_int(Rng& g, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(g); }

inline QRat random_rat(Rng& g, int range = 5, int den = 4) {
  return make_rat(uniform_int(g, -range, range), uniform_int(g, 1, den));
}

inline QMatrix random_matrix(Rng& g, std::size_t r, std::size_t c, int range = 5, int den = 4) {
  QMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = random_rat(g, range, den);
  return m;
}

inline QMatrix random_symmetric(Rng& g, std::size_t n, int range = 4) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = random_rat(g, range, 3);
  return m;
}

// X X^T with X of the given column count; rank <= cols.
inline QMatrix random_psd(Rng& g, std::size_t n, std::size_t cols) {
  QMatrix x = random_matrix(g, n, cols, 3, 2);
  return x * x.transpose();
}

inline QMatrix random_pd(Rng& g, std::size_t n) { return random_psd(g, n, n) + QMatrix::identity(n); }

// Relations i < j kept with probability p, then relabelled by a random permutation.
inline Poset random_poset(Rng& g, int n, double p) {
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), g);
  std::vector<std::pair<int, int>> rel;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (u(g) < p) rel.push_back({perm[i], perm[j]});
  return Poset(Poset::default_labels(n), rel);
}

// Connected multigraph: random spanning tree plus extra edges, no loops.
inline Graph random_connected_multigraph(Rng& g, int vertices, int edges) {
  Graph gr{vertices, {}};
  for (int v = 1; v < vertices; ++v) gr.edges.push_back({uniform_int(g, 0, v - 1), v});
  while (static_cast<int>(gr.edges.size()) < edges) {
    int a = uniform_int(g, 0, vertices - 1), b = uniform_int(g, 0, vertices - 1);
    if (a != b) gr.edges.push_back({a, b});
  }
  std::shuffle(gr.edges.begin(), gr.edges.end(), g);
  return gr;
}

// Column matroid of a random small integer matrix of full row rank.
inline Matroid random_linear_matroid(Rng& g, int rows, int cols) {
  while (true) {
    QMatrix a(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) a(i, j) = uniform_int(g, -1, 1);
    if (static_cast<int>(rank(a)) == rows) return linear(a);
  }
}

inline std::vector<QRat> random_point(Rng& g, int n, bool strictly_positive) {
  std::vector<QRat> a(n);
  for (auto& v : a) v = make_rat(uniform_int(g, strictly_positive ? 1 : 0, 6), uniform_int(g, 1, 3));
  return a;
}

// Leibniz expansion.
inline QRat det_leibniz(const QMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> s(n);
  std::iota(s.begin(), s.end(), 0);
  QRat total = 0;
  do {
    int inv = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inv += s[i] > s[j];
    QRat t = inv % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) t *= m(i, s[i]);
    total += t;
  } while (std::next_permutation(s.begin(), s.end()));
  return total;
}

// Characteristic polynomial coefficients c_0..c_n of det(tI - m) by Faddeev-LeVerrier.
inline std::vector<QRat> charpoly(const QMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<QRat> c(n + 1);
  c[n] = 1;
  QMatrix mk = QMatrix(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = m * mk + c[n - k + 1] * QMatrix::identity(n);
    QMatrix am = m * mk;
    QRat tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    c[n - k] = -tr / QRat(static_cast<long>(k));
  }
  return c;
}

// Inertia from the characteristic polynomial by Descartes' rule (exact for real-rooted polynomials).
inline Inertia inertia_by_charpoly(const QMatrix& m) {
  std::vector<QRat> c = charpoly(m);
  Inertia in;
  std::size_t z = 0;
  while (z < c.size() && c[z] == 0) ++z;
  in.n_zero = z;
  auto changes = [&](bool flip) {
    std::size_t count = 0;
    int last = 0;
    for (std::size_t i = z; i < c.size(); ++i) {
      int s = sgn(c[i]) * (flip && (i % 2) ? -1 : 1);
      if (s == 0) continue;
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  };
  in.n_pos = changes(false);
  in.n_neg = changes(true);
  return in;
}

// Linear extensions by filtering all permutations.
inline std::vector<std::vector<int>> extensions_brute(const Poset& p) {
  const int n = p.size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = i + 1; j < n && ok; ++j)
        if (p.less(order[j], order[i])) ok = false;
    if (!ok) continue;
    std::vector<int> rank(n);
    for (int i = 0; i < n; ++i) rank[order[i]] = i + 1;
    out.push_back(rank);
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

// Independence as "contained in some basis".
inline bool independent_brute(const Matroid& m, Set s) {
  for (Set b : m.bases())
    if ((b & s) == s) return true;
  return false;
}

inline int rank_brute(const Matroid& m, Set s) {
  int best = 0;
  for (Set b : m.bases()) best = std::max(best, card(b & s));
  return best;
}

// Connectivity by depth-first search over an edge subset.
inline bool spans_connected(const Graph& g, Set edges) {
  std::vector<std::vector<int>> adj(g.vertices);
  for (int e : elements(edges)) {
    adj[g.edges[e].first].push_back(g.edges[e].second);
    adj[g.edges[e].second].push_back(g.edges[e].first);
  }
  std::vector<char> seen(g.vertices, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
  }
  return count == g.vertices;
}

inline long spanning_trees_brute(const Graph& g) {
  long count = 0;
  for_each_subset_of_size(static_cast<int>(g.edges.size()), g.vertices - 1, [&](Set s) {
    if (spans_connected(g, s)) ++count;
  });
  return count;
}

// Exact rank of a family of polynomials via their coefficient vectors.
inline std::size_t poly_span_rank(const std::vector<MPoly>& ps) {
  std::map<Exponent, std::size_t> col;
  for (const auto& p : ps)
    for (const auto& [e, c] : p.terms()) col.emplace(e, col.size());
  QMatrix m(ps.size(), col.size());
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (const auto& [e, c] : ps[i].terms()) m(i, col.at(e)) = c;
  return rank(m);
}

}  // namespace support
