#pragma once

#include "exactmath.hpp"
#include "matroid.hpp"
#include "poly.hpp"

#include <future>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace logcavity {

inline constexpr int kMaxHodgeGround = 12;

// Degree-k piece of A(M): rows are all k-subsets X^S, columns the independent
// (r-k)-sets gamma, entry [S, gamma disjoint and S | gamma a basis].
struct GradedEvaluation {
  int k = 0;
  std::vector<Set> rows;
  std::vector<Set> cols;
  QMatrix matrix;
  std::vector<std::size_t> basis;  // rows spanning A^k

  std::size_t dim() const { return basis.size(); }
  std::vector<Set> basis_sets() const {
    std::vector<Set> out;
    for (auto i : basis) out.push_back(rows[i]);
    return out;
  }
};

inline GradedEvaluation build_evaluation(const Matroid& m, int k) {
  GradedEvaluation g;
  g.k = k;
  const int r = m.rank();
  g.rows = subsets_of_size(m.size(), k);
  for (Set s : subsets_of_size(m.size(), r - k))
    if (m.is_independent(s)) g.cols.push_back(s);
  g.matrix = QMatrix(g.rows.size(), g.cols.size());
  for (std::size_t i = 0; i < g.rows.size(); ++i)
    for (std::size_t j = 0; j < g.cols.size(); ++j)
      if (!(g.rows[i] & g.cols[j]) && m.is_basis(g.rows[i] | g.cols[j])) g.matrix(i, j) = 1;
  g.basis = row_basis(g.matrix);
  return g;
}

class GorensteinRing {
 public:
  explicit GorensteinRing(Matroid m, int jobs = 1) : m_(std::move(m)) {
    if (m_.size() > kMaxHodgeGround) throw error("TooLarge", "Hodge computations are capped at 12 elements");
    const int r = m_.rank();
    pieces_.resize(r + 1);
    if (jobs <= 1) {
      for (int k = 0; k <= r; ++k) pieces_[k] = build_evaluation(m_, k);
      return;
    }
    std::vector<std::future<GradedEvaluation>> fs;
    for (int k = 0; k <= r; ++k) fs.push_back(std::async(std::launch::async, build_evaluation, std::cref(m_), k));
    for (int k = 0; k <= r; ++k) pieces_[k] = fs[k].get();
  }

  const Matroid& matroid() const { return m_; }
  int degree() const { return m_.rank(); }
  const GradedEvaluation& piece(int k) const { return pieces_.at(k); }

  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> d;
    for (const auto& p : pieces_) d.push_back(p.dim());
    return d;
  }

 private:
  Matroid m_;
  std::vector<GradedEvaluation> pieces_;
};

inline std::vector<std::size_t> graded_dims(const Matroid& m, int jobs = 1) { return GorensteinRing(m, jobs).dims(); }

struct AnnihilatorBasis {
  std::vector<Set> coords;  // squarefree monomials X^S
  std::vector<std::vector<QRat>> vectors;
};

inline AnnihilatorBasis annihilator_kernel(const GorensteinRing& ring, int k) {
  const auto& p = ring.piece(k);
  return {p.rows, left_kernel(p.matrix)};
}

inline AnnihilatorBasis annihilator_kernel(const Matroid& m, int k) {
  if (m.size() > kMaxHodgeGround) throw error("TooLarge", "Hodge computations are capped at 12 elements");
  if (k < 0 || k > m.rank()) throw error("DegreeTooHigh", "degree outside 0..rank");
  GradedEvaluation p = build_evaluation(m, k);
  return {p.rows, left_kernel(p.matrix)};
}

// Does sum c_S X^S (S of size k) kill f_M?
inline bool annihilates(const Matroid& m, const std::map<Set, QRat>& xi) {
  if (xi.empty()) return true;
  const int k = card(xi.begin()->first);
  for (const auto& [s, c] : xi)
    if (card(s) != k) throw error("MixedDegrees", "operator is not homogeneous");
  if (k > m.rank()) return true;
  for (Set gamma : subsets_of_size(m.size(), m.rank() - k)) {
    QRat total = 0;
    for (const auto& [s, c] : xi)
      if (!(s & gamma) && m.is_basis(s | gamma)) total += c;
    if (total != 0) return false;
  }
  return true;
}

inline void check_point(const Matroid& m, const std::vector<QRat>& a) {
  if (static_cast<int>(a.size()) != m.size()) throw error("DimensionMismatch", "point length differs from ground set size");
  for (const auto& v : a)
    if (v < 0) throw error("NonpositiveValue", "point has a negative coordinate");
}

// (∂^U f_M)(a) = sum over bases B containing U of a^(B \ U).
inline QRat partial_value(const Matroid& m, Set u, const std::vector<QRat>& a) {
  QRat total = 0;
  for (Set b : m.bases()) {
    if ((b & u) != u) continue;
    QRat t = 1;
    for (int e : elements(b & ~u)) t *= a[e];
    total += t;
  }
  return total;
}

inline QRat f_value(const Matroid& m, const std::vector<QRat>& a) { return partial_value(m, 0, a); }

struct HRFormMatrix {
  int k = 0;
  std::vector<QRat> a;
  std::vector<Set> basis;
  QMatrix matrix;
};

inline void check_half_degree(const GorensteinRing& ring, int k) {
  if (k < 0 || 2 * k > ring.degree()) throw error("DegreeTooHigh", "need 0 <= 2k <= rank");
}

inline HRFormMatrix hr_form(const GorensteinRing& ring, int k, const std::vector<QRat>& a) {
  const Matroid& m = ring.matroid();
  check_point(m, a);
  check_half_degree(ring, k);
  HRFormMatrix h{k, a, ring.piece(k).basis_sets(), {}};
  const std::size_t n = h.basis.size();
  const QRat scale = QRat(factorial(ring.degree() - 2 * k)) * (k % 2 ? -1 : 1);
  h.matrix = QMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      if (h.basis[i] & h.basis[j]) continue;
      h.matrix(i, j) = h.matrix(j, i) = scale * partial_value(m, h.basis[i] | h.basis[j], a);
    }
  return h;
}

// Multiplication by l_a^j on A^k, written in the evaluation coordinates of A^(k+j).
inline QMatrix lefschetz_matrix(const GorensteinRing& ring, int k, int j, const std::vector<QRat>& a) {
  const Matroid& m = ring.matroid();
  const std::vector<Set> rows = ring.piece(k).basis_sets();
  const int target = ring.degree() - k - j;
  std::vector<Set> cols;
  if (target >= 0)
    for (Set u : subsets_of_size(m.size(), target))
      if (m.is_independent(u)) cols.push_back(u);
  QMatrix l(rows.size(), cols.size());
  const QRat jf = QRat(factorial(j));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t c = 0; c < cols.size(); ++c)
      if (!(rows[i] & cols[c])) l(i, c) = jf * partial_value(m, rows[i] | cols[c], a);
  return l;
}

inline bool hl_check(const GorensteinRing& ring, int k, const std::vector<QRat>& a) {
  check_point(ring.matroid(), a);
  check_half_degree(ring, k);
  return rank(lefschetz_matrix(ring, k, ring.degree() - 2 * k, a)) == ring.piece(k).dim();
}

// Coordinates (over the A^k basis) of a basis of ker(l^(d-2k+1)).
inline std::vector<std::vector<QRat>> primitive_subspace(const GorensteinRing& ring, int k, const std::vector<QRat>& a) {
  return left_kernel(lefschetz_matrix(ring, k, ring.degree() - 2 * k + 1, a));
}

struct HRRResult {
  bool holds = false;
  std::size_t primitive_dim = 0;
  Inertia restricted;
};

inline HRRResult hrr_detail(const GorensteinRing& ring, int k, const std::vector<QRat>& a) {
  HRFormMatrix q = hr_form(ring, k, a);
  auto prim = primitive_subspace(ring, k, a);
  HRRResult r;
  r.primitive_dim = prim.size();
  if (prim.empty()) {
    r.holds = true;
    return r;
  }
  r.restricted = inertia(restrict_form(q.matrix, prim));
  r.holds = r.restricted.n_pos == prim.size();
  return r;
}

inline bool hrr_check(const GorensteinRing& ring, int k, const std::vector<QRat>& a) { return hrr_detail(ring, k, a).holds; }

struct DegreeOneCriteria {
  bool hl = false;   // Q^1 non-degenerate
  bool hrr = false;  // additionally -Q^1 has signature (+, -, ..., -)
  Inertia minus_q;
};

inline DegreeOneCriteria degree_one_criteria(const GorensteinRing& ring, const std::vector<QRat>& a) {
  if (f_value(ring.matroid(), a) <= 0) throw error("NonpositiveValue", "criteria need f(a) > 0");
  HRFormMatrix q = hr_form(ring, 1, a);
  DegreeOneCriteria c;
  c.minus_q = inertia(QRat(-1) * q.matrix);
  c.hl = c.minus_q.n_zero == 0;
  c.hrr = c.hl && c.minus_q.n_pos == 1;
  return c;
}

struct SignatureCheck {
  bool hypotheses = false;  // HL_i and HRR_i for 1 <= i <= k
  long lhs = 0;             // signature of (-1)^k Q^k
  long rhs = 0;
  bool holds() const { return !hypotheses || lhs == rhs; }
};

inline SignatureCheck signature_formula_check(const GorensteinRing& ring, int k, const std::vector<QRat>& a) {
  SignatureCheck s;
  s.hypotheses = true;
  for (int i = 1; i <= k && s.hypotheses; ++i) s.hypotheses = hl_check(ring, i, a) && hrr_check(ring, i, a);
  HRFormMatrix q = hr_form(ring, k, a);
  Inertia in = inertia(k % 2 ? QRat(-1) * q.matrix : q.matrix);
  s.lhs = static_cast<long>(in.n_pos) - static_cast<long>(in.n_neg);
  auto dims = ring.dims();
  for (int i = 0; i <= k; ++i) {
    long diff = static_cast<long>(dims[i]) - (i > 0 ? static_cast<long>(dims[i - 1]) : 0);
    s.rhs += i % 2 ? -diff : diff;
  }
  return s;
}

inline std::vector<QRat> facet_point(int n, Set zero, bool perturbed) {
  std::vector<QRat> a(n);
  for (int i = 0; i < n; ++i) a[i] = contains(zero, i) ? QRat(0) : perturbed ? QRat(1) + make_rat(i + 1, 10) : QRat(1);
  return a;
}

struct FacetRecord {
  int element = 0;
  bool coloop = false;
  bool hrr_plain = false;
  bool hrr_perturbed = false;
  bool agrees = false;
  std::optional<QRat> inverse_hessian;  // ∇f_{M/e}^T Hess^{-1} f_{M\e} ∇f_{M/e} at the plain point
  bool inverse_hessian_consistent = true;
};

struct FacetScan {
  std::vector<FacetRecord> facets;
  std::size_t lower_checked = 0;
  std::vector<Set> lower_failures;
  // S whose complement does not span: f_M vanishes on H_S, recorded but not asserted
  std::size_t lower_degenerate = 0;
  std::vector<Set> lower_degenerate_failures;
  bool passes() const {
    for (const auto& f : facets)
      if (!f.agrees || !f.inverse_hessian_consistent) return false;
    return lower_failures.empty();
  }
};

inline std::optional<QRat> inverse_hessian_value(const Matroid& m, int e, const std::vector<QRat>& a) {
  const Set rest = m.ground() & ~bit(e);
  std::vector<QRat> b;
  for (int i : elements(rest)) b.push_back(a[i]);
  MPoly del = basis_generating_poly(delete_set(m, bit(e)));
  MPoly con = basis_generating_poly(contract(m, bit(e)));
  auto grad = gradient_at(con, b);
  auto z = solve(hessian_at(del, b), grad);
  if (!z) return std::nullopt;
  return dot(grad, *z);
}

inline FacetScan facet_theorem_scan(const GorensteinRing& ring) {
  const Matroid& m = ring.matroid();
  const int r = ring.degree(), n = m.size();
  if (r < 2) throw error("RankTooLow", "facet scan needs rank >= 2");
  const Set coloops = loops_and_coloops(m).second;
  const bool simple = is_simple(m);
  FacetScan scan;
  for (int e = 0; e < n; ++e) {
    FacetRecord rec;
    rec.element = e;
    rec.coloop = contains(coloops, e);
    auto a = facet_point(n, bit(e), false);
    rec.hrr_plain = hrr_check(ring, 1, a);
    rec.hrr_perturbed = hrr_check(ring, 1, facet_point(n, bit(e), true));
    rec.agrees = rec.hrr_plain == !rec.coloop && rec.hrr_perturbed == !rec.coloop;
    if (simple && !rec.coloop && f_value(m, a) > 0) {
      rec.inverse_hessian = inverse_hessian_value(m, e, a);
      if (rec.inverse_hessian) rec.inverse_hessian_consistent = (*rec.inverse_hessian != 0) == rec.hrr_plain;
    }
    scan.facets.push_back(rec);
  }
  for (Set s = 1; s < (Set{1} << n); ++s) {
    if (card(s) < 2 || (s & coloops) || m.rank_of(s) > r - 2) continue;
    const bool ok = hrr_check(ring, 1, facet_point(n, s, false)) && hrr_check(ring, 1, facet_point(n, s, true));
    if (m.rank_of(m.ground() & ~s) < r) {
      ++scan.lower_degenerate;
      if (!ok) scan.lower_degenerate_failures.push_back(s);
      continue;
    }
    ++scan.lower_checked;
    if (!ok) scan.lower_failures.push_back(s);
  }
  return scan;
}

// {xi in A^k : xi(∂_e f) = 0 for all e outside S} is zero.
inline bool socle_check(const GorensteinRing& ring, int k, Set s) {
  const Matroid& m = ring.matroid();
  m.check_subset(s);
  const int r = ring.degree();
  if (k < 0 || m.rank_of(s) > r - k - 1) throw error("RankBoundViolated", "need rank(S) <= rank(M) - k - 1");
  const std::vector<Set> rows = ring.piece(k).basis_sets();
  std::vector<Set> us;
  for (Set u : subsets_of_size(m.size(), r - k - 1))
    if (m.is_independent(u)) us.push_back(u);
  std::vector<std::pair<int, Set>> cols;
  for (int e : elements(m.ground() & ~s))
    for (Set u : us)
      if (!contains(u, e)) cols.push_back({e, u});
  QMatrix t(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const Set w = rows[i] | cols[c].second | bit(cols[c].first);
      if (!(rows[i] & (cols[c].second | bit(cols[c].first))) && m.is_basis(w)) t(i, c) = 1;
    }
  return rank(t) == rows.size();
}

struct SimplificationCheck {
  bool dims_equal = false;
  bool hrr_agree = true;
  std::size_t points_checked = 0;
  bool holds() const { return dims_equal && hrr_agree; }
};

inline SimplificationCheck simplification_isomorphism_check(const Matroid& m) {
  Simplification s = simplify(m);
  GorensteinRing a(m), b(s.simple);
  SimplificationCheck c;
  c.dims_equal = a.dims() == b.dims();
  if (m.rank() < 2) return c;
  const int n = m.size();
  std::vector<std::vector<QRat>> points{facet_point(n, 0, false), facet_point(n, 0, true)};
  for (int e = 0; e < n; ++e) points.push_back(facet_point(n, bit(e), true));
  for (const auto& p : points) {
    std::vector<QRat> phi(s.simple.size());
    for (int e = 0; e < n; ++e)
      if (s.fiber[e] >= 0) phi[s.fiber[e]] += p[e];
    ++c.points_checked;
    if (hrr_check(a, 1, p) != hrr_check(b, 1, phi)) c.hrr_agree = false;
  }
  return c;
}

struct MobiusPairing {
  std::vector<Set> flats;
  QMatrix matrix;
  Inertia inertia;
  bool formulations_agree = true;  // rank-sum rule vs union of bases
  std::size_t theta_rank = 0;      // rank of the image of y_F -> X^(I_F) in A^k
};

inline MobiusPairing mobius_pairing(const GorensteinRing& ring, int k) {
  const Matroid& m = ring.matroid();
  check_half_degree(ring, k);
  const int r = ring.degree();
  MobiusPairing p;
  p.flats = flats(m).by_rank.at(k);
  const std::size_t nf = p.flats.size();
  std::vector<Set> bases;
  for (Set f : p.flats) bases.push_back(basis_of(m, f));
  p.matrix = QMatrix(nf, nf);
  for (std::size_t i = 0; i < nf; ++i)
    for (std::size_t j = 0; j < nf; ++j) {
      const bool by_rank = 2 * k == r && m.rank_of(p.flats[i] | p.flats[j]) == r;
      const bool by_union = !(bases[i] & bases[j]) && m.is_basis(bases[i] | bases[j]);
      if (by_rank != by_union) p.formulations_agree = false;
      if (by_rank) p.matrix(i, j) = 1;
    }
  p.inertia = inertia(p.matrix);
  const auto& piece = ring.piece(k);
  std::map<Set, std::size_t> index;
  for (std::size_t i = 0; i < piece.rows.size(); ++i) index[piece.rows[i]] = i;
  QMatrix theta(nf, piece.cols.size());
  for (std::size_t i = 0; i < nf; ++i)
    for (std::size_t j = 0; j < piece.cols.size(); ++j) theta(i, j) = piece.matrix(index.at(bases[i]), j);
  p.theta_rank = rank(theta);
  return p;
}

// Every basis of a rank-k flat gives the same class X^I in A^k.
inline bool theta_consistency(const GorensteinRing& ring, int k) {
  const Matroid& m = ring.matroid();
  const auto& piece = ring.piece(k);
  std::map<Set, std::size_t> index;
  for (std::size_t i = 0; i < piece.rows.size(); ++i) index[piece.rows[i]] = i;
  const FlatLattice lattice = flats(m);
  for (Set f : lattice.by_rank.at(k)) {
    std::optional<std::size_t> first;
    for (Set s : subsets_of_size(m.size(), k)) {
      if ((s & f) != s || !m.is_independent(s)) continue;
      if (!first) {
        first = index.at(s);
        continue;
      }
      for (std::size_t j = 0; j < piece.cols.size(); ++j)
        if (piece.matrix(index.at(s), j) != piece.matrix(*first, j)) return false;
    }
  }
  return true;
}

struct ContainmentProbe {
  bool contained = true;
  std::optional<int> degree;
  std::map<Set, QRat> counterexample;  // over the elements other than e, relabelled in order
};

// Is Ann(f_{M\e}) inside Ann(f_{M/e})? Reported, never asserted.
inline ContainmentProbe annihilator_containment_probe(const Matroid& m, int e) {
  if (e < 0 || e >= m.size()) throw error("UnknownElement", "element outside the ground set");
  if (contains(loops_and_coloops(m).second, e)) throw error("ColoopElement", "the probe is posed for non-coloops");
  Matroid del = delete_set(m, bit(e)), con = contract(m, bit(e));
  ContainmentProbe probe;
  for (int k = 0; k <= del.rank(); ++k) {
    AnnihilatorBasis ann = annihilator_kernel(del, k);
    for (const auto& v : ann.vectors) {
      std::map<Set, QRat> xi;
      for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) xi[ann.coords[i]] = v[i];
      if (!annihilates(con, xi)) {
        probe.contained = false;
        probe.degree = k;
        probe.counterexample = xi;
        return probe;
      }
    }
  }
  return probe;
}

}  // namespace logcavity
