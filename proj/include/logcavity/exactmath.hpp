#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace logcavity {

using QRat = mpq_class;
using ZInt = mpz_class;

// Input or precondition failure. kind() is a short machine-readable tag.
class error : public std::runtime_error {
 public:
  error(std::string kind, const std::string& msg)
      : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

// A checked mathematical property failed on a concrete instance.
class invariant_violation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline QRat make_rat(const ZInt& num, const ZInt& den) {
  if (den == 0) throw error("ZeroDenominator", "denominator is zero");
  QRat q(num, den);
  q.canonicalize();
  return q;
}

inline ZInt factorial(unsigned n) {
  ZInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline ZInt binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  ZInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

inline int sign(const QRat& q) { return sgn(q); }

class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  QMatrix(std::initializer_list<std::initializer_list<QRat>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    a_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw error("DimensionMismatch", "ragged matrix literal");
      a_.insert(a_.end(), row.begin(), row.end());
    }
  }

  static QMatrix identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static QMatrix diagonal(const std::vector<QRat>& d) {
    QMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  QRat& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const QRat& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  const std::vector<QRat>& entries() const { return a_; }

  bool symmetric() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  QMatrix transpose() const {
    QMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  QMatrix submatrix(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const {
    QMatrix s(rs.size(), cs.size());
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = 0; j < cs.size(); ++j) s(i, j) = (*this)(rs[i], cs[j]);
    return s;
  }

  // Principal submatrix with row and column k removed.
  QMatrix without(std::size_t k) const {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < rows_; ++i)
      if (i != k) idx.push_back(i);
    return submatrix(idx, idx);
  }

  std::vector<QRat> column(std::size_t j) const {
    std::vector<QRat> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  std::vector<QRat> row(std::size_t i) const {
    return std::vector<QRat>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
  }

  static QMatrix from_columns(const std::vector<std::vector<QRat>>& cols, std::size_t nrows) {
    QMatrix m(nrows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != nrows) throw error("DimensionMismatch", "column length differs");
      for (std::size_t i = 0; i < nrows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  friend bool operator==(const QMatrix& a, const QMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  friend QMatrix operator+(const QMatrix& a, const QMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw error("DimensionMismatch", "matrix sum");
    QMatrix c(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = a.a_[i] + b.a_[i];
    return c;
  }

  friend QMatrix operator-(const QMatrix& a, const QMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw error("DimensionMismatch", "matrix difference");
    QMatrix c(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = a.a_[i] - b.a_[i];
    return c;
  }

  friend QMatrix operator*(const QRat& s, const QMatrix& a) {
    QMatrix c(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = s * a.a_[i];
    return c;
  }

  friend QMatrix operator*(const QMatrix& a, const QMatrix& b) {
    if (a.cols_ != b.rows_) throw error("DimensionMismatch", "matrix product");
    QMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const QRat& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend std::vector<QRat> operator*(const QMatrix& a, const std::vector<QRat>& v) {
    if (a.cols_ != v.size()) throw error("DimensionMismatch", "matrix-vector product");
    std::vector<QRat> r(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) r[i] += a(i, j) * v[j];
    return r;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<QRat> a_;
};

inline QRat dot(const std::vector<QRat>& u, const std::vector<QRat>& v) {
  if (u.size() != v.size()) throw error("DimensionMismatch", "dot product");
  QRat s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

// Fraction-free (Bareiss) elimination after clearing row denominators.
inline QRat det(const QMatrix& m) {
  if (!m.square()) throw error("NonSquare", "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  std::vector<ZInt> a(n * n);
  ZInt scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    ZInt l = 1;
    for (std::size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    scale *= l;
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j).get_num() * (l / m(i, j).get_den());
  }
  int sgn_ = 1;
  ZInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k * n + k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p * n + k] == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
      sgn_ = -sgn_;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        ZInt t = a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j];
        mpz_divexact(a[i * n + j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i * n + k] = 0;
    }
    prev = a[k * n + k];
  }
  return make_rat(sgn_ * a[n * n - 1], scale);
}

struct Echelon {
  QMatrix r;                        // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

inline Echelon rref(const QMatrix& m) {
  Echelon e{m, {}};
  QMatrix& a = e.r;
  std::size_t row = 0;
  for (std::size_t c = 0; c < a.cols() && row < a.rows(); ++c) {
    std::size_t p = row;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(row, j));
    QRat inv = 1 / a(row, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(row, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, c) == 0) continue;
      QRat f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(row, j);
    }
    e.pivots.push_back(c);
    ++row;
  }
  return e;
}

inline std::size_t rank(const QMatrix& m) { return rref(m).pivots.size(); }

// Basis of {v : m v = 0}, one vector per free column.
inline std::vector<std::vector<QRat>> kernel(const QMatrix& m) {
  Echelon e = rref(m);
  std::vector<char> is_pivot(m.cols(), 0);
  for (auto p : e.pivots) is_pivot[p] = 1;
  std::vector<std::vector<QRat>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<QRat> v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.r(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::vector<std::vector<QRat>> left_kernel(const QMatrix& m) { return kernel(m.transpose()); }

// Unique solution of m x = b, or nullopt when m is singular.
inline std::optional<std::vector<QRat>> solve(const QMatrix& m, const std::vector<QRat>& b) {
  const std::size_t n = m.rows();
  if (!m.square() || b.size() != n) throw error("DimensionMismatch", "solve needs a square system");
  QMatrix aug(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n) = b[i];
  }
  Echelon e = rref(aug);
  if (e.pivots.size() != n || (n > 0 && e.pivots.back() != n - 1)) return std::nullopt;
  std::vector<QRat> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = e.r(i, n);
  return x;
}

// Lexicographically first set of rows spanning the row space.
inline std::vector<std::size_t> row_basis(const QMatrix& m) { return rref(m.transpose()).pivots; }

struct Inertia {
  std::size_t n_pos = 0, n_neg = 0, n_zero = 0;
  friend bool operator==(const Inertia&, const Inertia&) = default;
};

// Symmetric congruence diagonalization; Sylvester's law makes the counts exact.
inline Inertia inertia(const QMatrix& m) {
  if (!m.symmetric()) throw error("NotSymmetric", "inertia needs a symmetric matrix");
  QMatrix a = m;
  const std::size_t n = a.rows();
  Inertia in;
  auto swap_rc = [&](std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < n; ++k) std::swap(a(i, k), a(j, k));
    for (std::size_t k = 0; k < n; ++k) std::swap(a(k, i), a(k, j));
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (a(i, i) == 0) {
      std::size_t j = i + 1;
      while (j < n && a(j, j) == 0) ++j;
      if (j < n) {
        swap_rc(i, j);
      } else {
        j = i + 1;
        while (j < n && a(i, j) == 0) ++j;
        if (j == n) {
          ++in.n_zero;
          continue;
        }
        for (std::size_t k = 0; k < n; ++k) a(i, k) += a(j, k);
        for (std::size_t k = 0; k < n; ++k) a(k, i) += a(k, j);
      }
    }
    const QRat piv = a(i, i);
    (piv > 0 ? in.n_pos : in.n_neg)++;
    const std::vector<QRat> r = a.row(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (r[j] == 0) continue;
      QRat f = r[j] / piv;
      for (std::size_t k = i + 1; k < n; ++k) a(j, k) -= f * r[k];
    }
  }
  return in;
}

inline std::size_t count_eigs_below(const QMatrix& m, const QRat& t) {
  if (!m.symmetric()) throw error("NotSymmetric", "count_eigs_below needs a symmetric matrix");
  return inertia(m - t * QMatrix::identity(m.rows())).n_neg;
}

// Congruence restriction B^T m B to the span of the given columns.
inline QMatrix restrict_form(const QMatrix& m, const std::vector<std::vector<QRat>>& basis) {
  QMatrix b = QMatrix::from_columns(basis, m.rows());
  return b.transpose() * m * b;
}

struct Graph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;
};

inline void check_vertices(const Graph& g) {
  for (auto [u, v] : g.edges)
    if (u < 0 || v < 0 || u >= g.vertices || v >= g.vertices)
      throw error("BadVertex", "edge endpoint out of range");
}

// Signed incidence matrix: +1 at the first endpoint, -1 at the second.
inline QMatrix incidence(const Graph& g) {
  check_vertices(g);
  QMatrix b(g.vertices, g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    auto [u, v] = g.edges[e];
    if (u == v) throw error("LoopEdge", "loop at vertex " + std::to_string(u));
    b(u, e) = 1;
    b(v, e) = -1;
  }
  return b;
}

inline QMatrix laplacian(const Graph& g) {
  check_vertices(g);
  QMatrix l(g.vertices, g.vertices);
  for (auto [u, v] : g.edges) {
    if (u == v) throw error("LoopEdge", "loop at vertex " + std::to_string(u));
    l(u, u) += 1;
    l(v, v) += 1;
    l(u, v) -= 1;
    l(v, u) -= 1;
  }
  return l;
}

inline int component_count(const Graph& g) {
  std::vector<int> parent(g.vertices);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int comps = g.vertices;
  for (auto [u, v] : g.edges) {
    int a = find(u), b = find(v);
    if (a != b) {
      parent[a] = b;
      --comps;
    }
  }
  return comps;
}

inline ZInt spanning_tree_count(const Graph& g) {
  check_vertices(g);
  if (g.vertices == 0 || component_count(g) != 1) throw error("Disconnected", "graph is not connected");
  Graph h{g.vertices, {}};
  for (auto e : g.edges)
    if (e.first != e.second) h.edges.push_back(e);
  QRat d = det(laplacian(h).without(g.vertices - 1));
  return d.get_num();
}

}  // namespace logcavity
