#pragma once

#include "exactmath.hpp"
#include "poly.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

namespace logcavity {

inline void check_tuple(const std::vector<QMatrix>& mats) {
  const std::size_t n = mats.size();
  for (const auto& a : mats)
    if (a.rows() != n || a.cols() != n) throw error("DimensionMismatch", "need n matrices of size n x n");
}

// (1/n!) sum over sigma of det(column j taken from A_sigma(j)).
inline QRat mixed_discriminant_perm(const std::vector<QMatrix>& mats) {
  check_tuple(mats);
  const std::size_t n = mats.size();
  if (n == 0) return 1;
  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  QRat total = 0;
  QMatrix m(n, n);
  do {
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) m(i, j) = mats[sigma[j]](i, j);
    total += det(m);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return total / QRat(factorial(n));
}

// Expand each argument with a multiplicity: {A, 2} stands for A, A.
inline std::vector<QMatrix> repeat(const std::vector<std::pair<QMatrix, int>>& spec) {
  std::vector<QMatrix> out;
  for (const auto& [a, k] : spec)
    for (int i = 0; i < k; ++i) out.push_back(a);
  return out;
}

// A = sum_i w_i c_i c_i^T, with c_i the columns of cols.
struct WeightedColumns {
  QMatrix cols;
  std::vector<QRat> weights;

  static WeightedColumns plain(const QMatrix& x) { return {x, std::vector<QRat>(x.cols(), QRat(1))}; }

  QMatrix gram() const {
    QMatrix a(cols.rows(), cols.rows());
    for (std::size_t k = 0; k < cols.cols(); ++k)
      for (std::size_t i = 0; i < cols.rows(); ++i)
        for (std::size_t j = 0; j < cols.rows(); ++j) a(i, j) += weights[k] * cols(i, k) * cols(j, k);
    return a;
  }
};

// (1/n!) sum over column choices x_j of X_j of prod w * Det(x_1..x_n)^2.
inline QRat mixed_discriminant_gram(const std::vector<WeightedColumns>& factors) {
  const std::size_t n = factors.size();
  for (const auto& f : factors)
    if (f.cols.rows() != n || f.weights.size() != f.cols.cols())
      throw error("DimensionMismatch", "each factor needs n rows and one weight per column");
  if (n == 0) return 1;
  std::vector<std::size_t> choice(n, 0);
  QMatrix m(n, n);
  QRat total = 0;
  for (const auto& f : factors)
    if (f.cols.cols() == 0) return 0;
  while (true) {
    QRat w = 1;
    for (std::size_t j = 0; j < n; ++j) {
      w *= factors[j].weights[choice[j]];
      for (std::size_t i = 0; i < n; ++i) m(i, j) = factors[j].cols(i, choice[j]);
    }
    if (w != 0) {
      QRat d = det(m);
      total += w * d * d;
    }
    std::size_t j = 0;
    while (j < n && ++choice[j] == factors[j].cols.cols()) choice[j++] = 0;
    if (j == n) break;
  }
  return total / QRat(factorial(n));
}

inline QRat mixed_discriminant_gram(const std::vector<QMatrix>& xs) {
  std::vector<WeightedColumns> f;
  for (const auto& x : xs) f.push_back(WeightedColumns::plain(x));
  return mixed_discriminant_gram(f);
}

// det(sum_i lambda_i A_i) as a polynomial in the lambdas, by Leibniz expansion.
inline MPoly det_pencil(const std::vector<QMatrix>& mats) {
  if (mats.empty()) throw error("DimensionMismatch", "empty pencil");
  const std::size_t n = mats[0].rows();
  const int m = static_cast<int>(mats.size());
  for (const auto& a : mats)
    if (a.rows() != n || a.cols() != n) throw error("DimensionMismatch", "pencil matrices differ in size");
  std::vector<MPoly> entry(n * n, MPoly(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (int k = 0; k < m; ++k) entry[i * n + j] = entry[i * n + j] + mats[k](i, j) * MPoly::variable(m, k);
  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  MPoly total(m);
  do {
    int inversions = 0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (sigma[a] > sigma[b]) ++inversions;
    MPoly t = MPoly::constant(m, inversions % 2 ? -1 : 1);
    for (std::size_t i = 0; i < n; ++i) t = t * entry[i * n + sigma[i]];
    total = total + t;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return total;
}

// D(A_1..A_n) read off as [lambda_1..lambda_n] det(sum lambda_i A_i) / n!.
inline QRat mixed_discriminant_polar(const std::vector<QMatrix>& mats) {
  check_tuple(mats);
  const std::size_t n = mats.size();
  if (n == 0) return 1;
  return det_pencil(mats).coefficient(Exponent(n, 1)) / QRat(factorial(n));
}

inline bool is_positive_definite(const QMatrix& a) { return a.symmetric() && inertia(a).n_pos == a.rows(); }
inline bool is_psd(const QMatrix& a) { return a.symmetric() && inertia(a).n_neg == 0; }

inline std::optional<QRat> rational_sqrt(const QRat& q) {
  if (q < 0) return std::nullopt;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return std::nullopt;
  ZInt a, b;
  mpz_sqrt(a.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(b.get_mpz_t(), q.get_den_mpz_t());
  return make_rat(a, b);
}

struct PsdFactor {
  QMatrix l;             // unit lower triangular
  std::vector<QRat> d;   // a = l diag(d) l^T
  std::optional<QMatrix> x;  // l diag(sqrt d) when every d_i is a rational square

  WeightedColumns columns() const {
    if (x) return WeightedColumns::plain(*x);
    return {l, d};
  }
};

inline PsdFactor psd_decompose(const QMatrix& a) {
  if (!a.symmetric()) throw error("NotSymmetric", "psd_decompose needs a symmetric matrix");
  const std::size_t n = a.rows();
  PsdFactor f{QMatrix::identity(n), std::vector<QRat>(n), std::nullopt};
  for (std::size_t j = 0; j < n; ++j) {
    QRat dj = a(j, j);
    for (std::size_t k = 0; k < j; ++k) dj -= f.l(j, k) * f.l(j, k) * f.d[k];
    if (dj < 0) throw error("NotPSD", "negative pivot in LDL^T");
    f.d[j] = dj;
    for (std::size_t i = j + 1; i < n; ++i) {
      QRat s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= f.l(i, k) * f.l(j, k) * f.d[k];
      if (dj == 0) {
        if (s != 0) throw error("NotPSD", "zero pivot with nonzero column");
        f.l(i, j) = 0;
      } else {
        f.l(i, j) = s / dj;
      }
    }
  }
  std::vector<QRat> roots;
  for (const auto& v : f.d) {
    auto r = rational_sqrt(v);
    if (!r) return f;
    roots.push_back(*r);
  }
  f.x = f.l * QMatrix::diagonal(roots);
  return f;
}

struct AlexandrovReport {
  QRat lhs, rhs;
  bool holds = false;
  bool equal = false;
  bool pd_hypotheses = false;
  std::optional<QRat> lambda;
  bool equality_consistent = true;  // false when equality holds under PD hypotheses but Y != lambda X
};

inline AlexandrovReport alexandrov_check(const QMatrix& x, const QMatrix& y, const std::vector<QMatrix>& fixed) {
  const std::size_t n = x.rows();
  if (fixed.size() + 2 != n || y.rows() != n) throw error("DimensionMismatch", "need n-2 fixed matrices");
  auto D = [&](const QMatrix& a, const QMatrix& b) {
    std::vector<QMatrix> t{a, b};
    t.insert(t.end(), fixed.begin(), fixed.end());
    return mixed_discriminant_perm(t);
  };
  AlexandrovReport r;
  QRat mixed = D(x, y);
  r.lhs = mixed * mixed;
  r.rhs = D(x, x) * D(y, y);
  r.holds = r.lhs >= r.rhs;
  r.equal = r.lhs == r.rhs;
  r.pd_hypotheses = is_positive_definite(x) && is_psd(y);
  for (const auto& f : fixed) r.pd_hypotheses = r.pd_hypotheses && is_positive_definite(f);
  if (r.equal && r.pd_hypotheses) {
    QRat lam = 0;
    for (std::size_t i = 0; i < n * n; ++i)
      if (x.entries()[i] != 0) {
        lam = y.entries()[i] / x.entries()[i];
        break;
      }
    if (lam * x == y) r.lambda = lam;
    else r.equality_consistent = false;
  }
  return r;
}

// D_k = D(A[k], B[n-k]) for k = 0..n.
inline std::vector<QRat> mixed_discriminant_sequence(const QMatrix& a, const QMatrix& b) {
  const int n = static_cast<int>(a.rows());
  std::vector<QRat> out;
  for (int k = 0; k <= n; ++k) out.push_back(mixed_discriminant_perm(repeat({{a, k}, {b, n - k}})));
  return out;
}

inline bool hyperbolic_check(const QMatrix& m) {
  if (!m.symmetric()) throw error("NotSymmetric", "hyperbolic_check needs a symmetric matrix");
  return inertia(m).n_pos <= 1;
}

}  // namespace logcavity
