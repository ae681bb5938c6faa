#pragma once

#include "exactmath.hpp"
#include "matroid.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace logcavity {

using Exponent = std::vector<int>;

class MPoly {
 public:
  MPoly() = default;
  explicit MPoly(int nvars) : nvars_(nvars) {}

  static MPoly constant(int nvars, const QRat& c) {
    MPoly p(nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
  }

  static MPoly variable(int nvars, int i) {
    MPoly p(nvars);
    Exponent e(nvars, 0);
    e.at(i) = 1;
    p.add_term(e, 1);
    return p;
  }

  int nvars() const { return nvars_; }
  const std::map<Exponent, QRat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Exponent& e, const QRat& c) {
    if (static_cast<int>(e.size()) != nvars_) throw error("DimensionMismatch", "exponent length differs from nvars");
    for (int v : e)
      if (v < 0) throw error("BadExponent", "negative exponent");
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  QRat coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? QRat(0) : it->second;
  }

  // Total degree if homogeneous, -1 otherwise (and for the zero polynomial).
  int homogeneous_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int v : e) s += v;
      if (d == -1) d = s;
      else if (d != s) return -1;
    }
    return d;
  }

  int degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int v : e) s += v;
      d = std::max(d, s);
    }
    return d;
  }

  friend bool operator==(const MPoly& a, const MPoly& b) { return a.nvars_ == b.nvars_ && a.terms_ == b.terms_; }

  friend MPoly operator+(const MPoly& a, const MPoly& b) {
    check_same(a, b);
    MPoly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
  }

  friend MPoly operator-(const MPoly& a, const MPoly& b) {
    check_same(a, b);
    MPoly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
    return r;
  }

  friend MPoly operator*(const QRat& s, const MPoly& a) {
    MPoly r(a.nvars_);
    for (const auto& [e, c] : a.terms_) r.add_term(e, s * c);
    return r;
  }

  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    check_same(a, b);
    MPoly r(a.nvars_);
    Exponent e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }

 private:
  static void check_same(const MPoly& a, const MPoly& b) {
    if (a.nvars_ != b.nvars_) throw error("DimensionMismatch", "polynomials in different variable counts");
  }

  int nvars_ = 0;
  std::map<Exponent, QRat> terms_;
};

inline MPoly pow(const MPoly& p, int k) {
  MPoly r = MPoly::constant(p.nvars(), 1);
  for (int i = 0; i < k; ++i) r = r * p;
  return r;
}

inline Exponent indicator(Set s, int n) {
  Exponent e(n, 0);
  for (int i : elements(s)) e[i] = 1;
  return e;
}

inline MPoly basis_generating_poly(const Matroid& m) {
  MPoly f(m.size());
  for (Set b : m.bases()) f.add_term(indicator(b, m.size()), 1);
  return f;
}

// Re-index a polynomial on |keep| variables into n variables at the positions of keep.
inline MPoly embed(const MPoly& f, Set keep, int n) {
  std::vector<int> pos = elements(keep);
  if (static_cast<int>(pos.size()) != f.nvars()) throw error("DimensionMismatch", "embedding size");
  MPoly g(n);
  for (const auto& [e, c] : f.terms()) {
    Exponent x(n, 0);
    for (std::size_t i = 0; i < pos.size(); ++i) x[pos[i]] = e[i];
    g.add_term(x, c);
  }
  return g;
}

inline void check_index(const MPoly& f, int i) {
  if (i < 0 || i >= f.nvars()) throw error("IndexOutOfRange", "variable index out of range");
}

inline MPoly partial(const MPoly& f, int i) {
  check_index(f, i);
  MPoly r(f.nvars());
  for (const auto& [e, c] : f.terms()) {
    if (e[i] == 0) continue;
    Exponent d = e;
    --d[i];
    r.add_term(d, c * e[i]);
  }
  return r;
}

inline MPoly partial(const MPoly& f, const Exponent& alpha) {
  MPoly r = f;
  for (int i = 0; i < static_cast<int>(alpha.size()); ++i)
    for (int k = 0; k < alpha[i]; ++k) r = partial(r, i);
  return r;
}

inline QRat evaluate(const MPoly& f, const std::vector<QRat>& a) {
  if (static_cast<int>(a.size()) != f.nvars()) throw error("DimensionMismatch", "point length differs from nvars");
  QRat s = 0;
  for (const auto& [e, c] : f.terms()) {
    QRat t = c;
    for (int i = 0; i < f.nvars(); ++i)
      for (int k = 0; k < e[i]; ++k) t *= a[i];
    s += t;
  }
  return s;
}

inline std::vector<QRat> gradient_at(const MPoly& f, const std::vector<QRat>& a) {
  std::vector<QRat> g(f.nvars());
  for (int i = 0; i < f.nvars(); ++i) g[i] = evaluate(partial(f, i), a);
  return g;
}

inline QMatrix hessian_at(const MPoly& f, const std::vector<QRat>& a) {
  const int n = f.nvars();
  QMatrix h(n, n);
  for (int i = 0; i < n; ++i) {
    MPoly fi = partial(f, i);
    for (int j = i; j < n; ++j) h(i, j) = h(j, i) = evaluate(partial(fi, j), a);
  }
  return h;
}

// (f o A)(y) = f(A y) with A of shape nvars x m.
inline MPoly substitute_linear(const MPoly& f, const QMatrix& a) {
  if (static_cast<int>(a.rows()) != f.nvars()) throw error("DimensionMismatch", "substitution matrix needs nvars rows");
  const int m = static_cast<int>(a.cols());
  std::vector<MPoly> lin;
  for (int i = 0; i < f.nvars(); ++i) {
    MPoly l(m);
    for (int j = 0; j < m; ++j) {
      Exponent e(m, 0);
      e[j] = 1;
      l.add_term(e, a(i, j));
    }
    lin.push_back(l);
  }
  MPoly r(m);
  for (const auto& [e, c] : f.terms()) {
    MPoly t = MPoly::constant(m, c);
    for (int i = 0; i < f.nvars(); ++i)
      if (e[i]) t = t * pow(lin[i], e[i]);
    r = r + t;
  }
  return r;
}

inline MPoly directional(const MPoly& f, const std::vector<QRat>& v) {
  MPoly r(f.nvars());
  for (int i = 0; i < f.nvars(); ++i)
    if (v[i] != 0) r = r + v[i] * partial(f, i);
  return r;
}

// F_f(v_1..v_d) = (1/d!) D_{v_1} ... D_{v_d} f for f homogeneous of degree d.
inline QRat polarization(const MPoly& f, const std::vector<std::vector<QRat>>& vs) {
  const int d = f.homogeneous_degree();
  if (f.is_zero()) return 0;
  if (d < 0 || d != static_cast<int>(vs.size())) throw error("DegreeMismatch", "need one vector per degree of a homogeneous f");
  MPoly g = f;
  for (const auto& v : vs) {
    if (static_cast<int>(v.size()) != f.nvars()) throw error("DimensionMismatch", "vector length differs from nvars");
    g = directional(g, v);
  }
  return g.coefficient(Exponent(f.nvars(), 0)) / QRat(factorial(d));
}

inline std::vector<Exponent> support(const MPoly& f) {
  std::vector<Exponent> s;
  for (const auto& [e, c] : f.terms()) s.push_back(e);
  return s;
}

inline bool m_convex(const std::vector<Exponent>& sup) {
  if (sup.empty()) return true;
  auto total = [](const Exponent& e) {
    int s = 0;
    for (int v : e) s += v;
    return s;
  };
  const int d = total(sup[0]);
  for (const auto& e : sup)
    if (total(e) != d || e.size() != sup[0].size()) throw error("MixedDegrees", "support vectors differ in degree");
  std::map<Exponent, char> in;
  for (const auto& e : sup) in[e] = 1;
  const std::size_t n = sup[0].size();
  for (const auto& a : sup)
    for (const auto& b : sup)
      for (std::size_t i = 0; i < n; ++i) {
        if (a[i] <= b[i]) continue;
        bool ok = false;
        for (std::size_t j = 0; j < n && !ok; ++j) {
          if (a[j] >= b[j]) continue;
          Exponent c = a;
          --c[i];
          ++c[j];
          ok = in.count(c) > 0;
        }
        if (!ok) return false;
      }
  return true;
}

struct LorentzianReport {
  bool passes = false;
  bool m_convex_support = false;
  int derivatives_checked = 0;
  std::string failure;
};

// Deterministic sample points: all ones and coordinates 1 + i/10.
inline std::vector<std::vector<QRat>> default_sample_points(int n) {
  std::vector<QRat> ones(n, QRat(1)), pencil(n);
  for (int i = 0; i < n; ++i) pencil[i] = QRat(10 + i + 1, 10);
  return {ones, pencil};
}

template <class F>
void for_each_exponent_upto(int n, int maxdeg, F&& fn) {
  Exponent e(n, 0);
  std::function<void(int, int)> go = [&](int i, int left) {
    if (i == n) {
      fn(static_cast<const Exponent&>(e));
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[i] = k;
      go(i + 1, left - k);
    }
    e[i] = 0;
  };
  go(0, maxdeg);
}

inline LorentzianReport lorentzian_check(const MPoly& f, const std::vector<std::vector<QRat>>& points) {
  for (const auto& [e, c] : f.terms())
    if (c < 0) throw error("NegativeCoefficient", "Lorentzian check needs nonnegative coefficients");
  LorentzianReport rep;
  if (f.is_zero()) {
    rep.passes = rep.m_convex_support = true;
    return rep;
  }
  const int d = f.homogeneous_degree();
  if (d < 0) throw error("NotHomogeneous", "Lorentzian check needs a homogeneous polynomial");
  rep.m_convex_support = m_convex(support(f));
  if (!rep.m_convex_support) {
    rep.failure = "support is not M-convex";
    return rep;
  }
  rep.passes = true;
  if (d < 2) return rep;
  for_each_exponent_upto(f.nvars(), d - 2, [&](const Exponent& alpha) {
    if (!rep.passes) return;
    MPoly g = partial(f, alpha);
    if (g.is_zero()) return;
    ++rep.derivatives_checked;
    for (const auto& a : points) {
      Inertia in = inertia(hessian_at(g, a));
      if (in.n_pos != 1) {
        rep.passes = false;
        rep.failure = "Hessian of a derivative has " + std::to_string(in.n_pos) + " positive eigenvalues";
        return;
      }
    }
  });
  return rep;
}

inline QRat exponent_factorial(const Exponent& e) {
  ZInt r = 1;
  for (int v : e) r *= factorial(v);
  return QRat(r);
}

// c_alpha^2 >= c_{alpha+e_i-e_j} c_{alpha-e_i+e_j} with c_alpha = alpha! [x^alpha] f.
inline bool coefficient_logconcavity(const MPoly& f) {
  auto c = [&](const Exponent& e) { return exponent_factorial(e) * f.coefficient(e); };
  const int n = f.nvars();
  for (const auto& [beta, coef] : f.terms())
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j || beta[i] < 2) continue;
        Exponent alpha = beta, gamma = beta;
        --alpha[i];
        ++alpha[j];
        gamma[i] -= 2;
        gamma[j] += 2;
        QRat cb = c(beta), cg = c(gamma), ca = c(alpha);
        if (ca * ca < cb * cg) return false;
      }
  return true;
}

inline bool polarization_af_analog_check(const MPoly& f, const std::vector<std::vector<QRat>>& vs) {
  if (vs.size() < 2) throw error("DegreeMismatch", "need at least two vectors");
  auto with = [&](const std::vector<QRat>& a, const std::vector<QRat>& b) {
    auto w = vs;
    w[0] = a;
    w[1] = b;
    return polarization(f, w);
  };
  QRat mixed = with(vs[0], vs[1]);
  return mixed * mixed >= with(vs[0], vs[0]) * with(vs[1], vs[1]);
}

}  // namespace logcavity
