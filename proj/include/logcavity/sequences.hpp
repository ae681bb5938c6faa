#pragma once

#include "exactmath.hpp"
#include "matroid.hpp"
#include "poly.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace logcavity {

// (T_i, a_i): subset T_i used a_i times.
using CountSpec = std::vector<std::pair<Set, int>>;

// Number of ordered tuples (y_1..y_r), y in T_1^a_1 x ... , whose underlying set is a basis.
inline ZInt B_count(const Matroid& m, const CountSpec& spec) {
  std::vector<Set> slots;
  for (const auto& [t, a] : spec) {
    m.check_subset(t);
    if (a < 0) throw error("BadMultiplicities", "negative multiplicity");
    for (int i = 0; i < a; ++i) slots.push_back(t);
  }
  const int r = m.rank();
  if (static_cast<int>(slots.size()) != r) throw error("BadMultiplicities", "multiplicities must sum to the rank");
  ZInt total = 0;
  std::vector<ZInt> ways(std::size_t{1} << r);
  for (Set b : m.bases()) {
    // permanent of the element-by-slot 0/1 matrix, by DP over used elements
    std::vector<int> es = elements(b);
    std::fill(ways.begin(), ways.end(), 0);
    ways[0] = 1;
    for (Set used = 0; used < (Set{1} << r); ++used) {
      if (ways[used] == 0) continue;
      const int slot = card(used);
      if (slot == r) continue;
      for (int i = 0; i < r; ++i)
        if (!contains(used, i) && contains(slots[slot], es[i])) ways[used | bit(i)] += ways[used];
    }
    total += ways[(Set{1} << r) - 1];
  }
  return total;
}

struct StanleySequence {
  std::vector<ZInt> N;           // N_k, k = 0..r
  std::vector<QRat> normalized;  // N_k / C(r, k)
};

inline StanleySequence stanley_matroid_sequence(const Matroid& m, Set r_set) {
  m.check_subset(r_set);
  const int r = m.rank();
  StanleySequence s;
  s.N.assign(r + 1, 0);
  for (Set b : m.bases()) s.N[card(b & r_set)] += 1;
  for (int k = 0; k <= r; ++k) s.normalized.push_back(QRat(s.N[k]) / QRat(binomial(r, k)));
  return s;
}

inline bool log_concave(const std::vector<QRat>& s) {
  for (std::size_t k = 1; k + 1 < s.size(); ++k)
    if (s[k] * s[k] < s[k - 1] * s[k + 1]) return false;
  return true;
}

inline bool log_equality_at(const std::vector<QRat>& s, std::size_t k) {
  return s[k] * s[k] == s[k - 1] * s[k + 1];
}

struct RatioVerdict {
  bool holds = false;
  std::optional<QRat> ratio;  // |class ∩ R| / |class ∩ Q|, which equals q/r
  bool sequence_matches = true;
};

inline RatioVerdict ratio_condition_check(const Matroid& m, Set r_set) {
  m.check_subset(r_set);
  ParallelData pd = parallel_data(m);
  if (pd.loops) throw error("LoopPresent", "ratio condition needs a loopless matroid");
  const Set q_set = m.ground() & ~r_set;
  RatioVerdict v;
  std::optional<QRat> ratio;
  bool ok = true;
  for (Set cls : pd.classes) {
    int nr = card(cls & r_set), nq = card(cls & q_set);
    if (nr == 0 || nq == 0) {
      ok = false;
      break;
    }
    QRat here = make_rat(nr, nq);
    if (ratio && *ratio != here) {
      ok = false;
      break;
    }
    ratio = here;
  }
  v.holds = ok && ratio.has_value();
  if (!v.holds) return v;
  v.ratio = ratio;
  StanleySequence s = stanley_matroid_sequence(m, r_set);
  for (std::size_t k = 1; k < s.normalized.size(); ++k)
    if (s.normalized[k] != *ratio * s.normalized[k - 1]) v.sequence_matches = false;
  return v;
}

struct GraphicEqualityVerdict {
  bool a_holds = false;  // equality at some k
  bool b_holds = false;  // equality at every k
  bool c_holds = false;  // e_R / e_Q constant over adjacent vertex pairs
  bool consistent() const { return a_holds == b_holds && b_holds == c_holds; }
};

inline GraphicEqualityVerdict graphic_equality_check(const Graph& g, Set r_set) {
  Matroid m = graphic(g);
  m.check_subset(r_set);
  const Set q_set = m.ground() & ~r_set;
  if (m.rank_of(r_set) != m.rank() || m.rank_of(q_set) != m.rank())
    throw error("RankDeficient", "R and its complement must each contain a spanning tree");
  GraphicEqualityVerdict v;
  StanleySequence s = stanley_matroid_sequence(m, r_set);
  const std::size_t r = m.rank();
  v.b_holds = r >= 2;
  for (std::size_t k = 1; k + 1 <= r; ++k) {
    bool eq = log_equality_at(s.normalized, k);
    v.a_holds = v.a_holds || eq;
    v.b_holds = v.b_holds && eq;
  }
  std::vector<std::pair<int, int>> counts(g.vertices * g.vertices, {0, 0});
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    auto [a, b] = g.edges[e];
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    auto& c = counts[a * g.vertices + b];
    (contains(r_set, static_cast<int>(e)) ? c.first : c.second)++;
  }
  v.c_holds = true;
  std::optional<std::pair<int, int>> first;
  for (auto c : counts) {
    if (c.first == 0 && c.second == 0) continue;
    if (!first) first = c;
    else if (ZInt(c.first) * first->second != ZInt(first->first) * c.second) v.c_holds = false;
  }
  return v;
}

inline void check_dimension(const std::vector<std::vector<QRat>>& vs, std::size_t n) {
  for (const auto& v : vs)
    if (v.size() != n) throw error("DimensionMismatch", "vector length differs from the ambient dimension");
}

// Vol_n(Z(v_1..v_l)) = sum over n-subsets of |Det|.
inline QRat zonotope_volume(const std::vector<std::vector<QRat>>& vs, std::size_t n) {
  check_dimension(vs, n);
  if (vs.size() > static_cast<std::size_t>(kMaxGround)) throw error("TooLarge", "too many generators");
  QRat total = 0;
  for_each_subset_of_size(static_cast<int>(vs.size()), static_cast<int>(n), [&](Set s) {
    std::vector<std::vector<QRat>> cols;
    for (int i : elements(s)) cols.push_back(vs[i]);
    total += abs(det(QMatrix::from_columns(cols, n)));
  });
  return total;
}

// V_r(Z(T_1)..Z(T_r)) by inclusion-exclusion over Minkowski sub-sums. Repeated
// arguments are grouped: c copies of Z(T) sum to the zonotope of the vectors c*t.
inline QRat mixed_volume_zonotopes(const std::vector<std::vector<std::vector<QRat>>>& lists) {
  const std::size_t r = lists.size();
  for (const auto& l : lists) check_dimension(l, r);
  std::vector<std::vector<std::vector<QRat>>> groups;
  std::vector<int> mult;
  for (const auto& l : lists) {
    auto it = std::find(groups.begin(), groups.end(), l);
    if (it == groups.end()) {
      groups.push_back(l);
      mult.push_back(1);
    } else {
      ++mult[it - groups.begin()];
    }
  }
  QRat total = 0;
  std::vector<int> c(groups.size(), 0);
  while (true) {
    std::vector<std::vector<QRat>> gens;
    ZInt weight = 1;
    std::size_t chosen = 0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      weight *= binomial(mult[g], c[g]);
      chosen += c[g];
      if (c[g] == 0) continue;
      for (auto v : groups[g]) {
        for (auto& x : v) x *= c[g];
        gens.push_back(std::move(v));
      }
    }
    QRat vol = QRat(weight) * zonotope_volume(gens, r);
    if ((r - chosen) % 2) total -= vol;
    else total += vol;
    std::size_t g = 0;
    while (g < groups.size() && ++c[g] > mult[g]) c[g++] = 0;
    if (g == groups.size()) break;
  }
  return total / QRat(factorial(r));
}

// T^n(B_n ⊕ M): direct sum with the boolean matroid, truncated down to rank n.
inline Matroid mason_construction(const Matroid& m) {
  const int n = m.size();
  Matroid t = direct_sum(uniform(n, n), m);
  while (t.rank() > n) t = truncate(t);
  return t;
}

struct MasonReport {
  std::vector<ZInt> I;  // independent sets by size
  std::vector<ZInt> f;  // bases of the construction by |J ∩ M|
  bool identity_holds = false;
  bool log_concave = false;
};

inline MasonReport mason_sequence(const Matroid& m) {
  const int n = m.size();
  if (2 * n > 16) throw error("TooLarge", "Mason construction is capped at 8 elements");
  MasonReport rep;
  rep.I = independent_counts(m);
  Matroid t = mason_construction(m);
  rep.f.assign(m.rank() + 1, 0);
  const Set m_part = full_set(n) << n;
  for (Set b : t.bases()) rep.f.at(card(b & m_part)) += 1;
  rep.identity_holds = true;
  for (int k = 0; k <= m.rank(); ++k)
    if (rep.f[k] != rep.I[k] * binomial(n, n - k)) rep.identity_holds = false;
  rep.log_concave = true;
  for (std::size_t k = 1; k + 1 < rep.I.size(); ++k)
    if (rep.I[k] * rep.I[k] < rep.I[k - 1] * rep.I[k + 1]) rep.log_concave = false;
  return rep;
}

struct MinkowskiRoute {
  bool endpoint_equality = false;  // Ñ_1^r = Ñ_0^{r-1} Ñ_r
  bool some_k = false;
  bool all_k = false;
  bool consistent() const { return endpoint_equality == some_k && some_k == all_k; }
};

inline MinkowskiRoute minkowski_route_check(const Matroid& m, Set r_set) {
  StanleySequence s = stanley_matroid_sequence(m, r_set);
  const int r = m.rank();
  const auto& t = s.normalized;
  if (t.front() == 0 || t.back() == 0) throw error("DegenerateEnds", "need Ñ_0 > 0 and Ñ_r > 0");
  MinkowskiRoute v;
  QRat lhs = 1, rhs = t.back();
  for (int i = 0; i < r; ++i) lhs *= t[1];
  for (int i = 0; i + 1 < r; ++i) rhs *= t[0];
  v.endpoint_equality = lhs == rhs;
  v.all_k = r >= 2;
  for (int k = 1; k + 1 <= r; ++k) {
    bool eq = log_equality_at(t, k);
    v.some_k = v.some_k || eq;
    v.all_k = v.all_k && eq;
  }
  return v;
}

// Equality at some k without the ratio condition would answer the open reverse direction.
// Only instances with a loopless M and R, Q both of full rank qualify.
struct ConjectureProbe {
  bool hypotheses = false;
  bool equality_somewhere = false;
  bool ratio_condition = false;
  bool witness() const { return hypotheses && equality_somewhere && !ratio_condition; }
};

inline ConjectureProbe conjecture_probe(const Matroid& m, Set r_set) {
  m.check_subset(r_set);
  ConjectureProbe p;
  const Set q_set = m.ground() & ~r_set;
  p.hypotheses = parallel_data(m).loops == 0 && m.rank_of(r_set) == m.rank() && m.rank_of(q_set) == m.rank();
  StanleySequence s = stanley_matroid_sequence(m, r_set);
  for (std::size_t k = 1; k + 1 < s.normalized.size(); ++k)
    if (s.normalized[k] != 0 && log_equality_at(s.normalized, k)) p.equality_somewhere = true;
  if (parallel_data(m).loops == 0) p.ratio_condition = ratio_condition_check(m, r_set).holds;
  return p;
}

// g_M^T: substitute x_e = sum over i with e in T_i of y_i.
inline MPoly g_polynomial(const Matroid& m, const std::vector<Set>& ts) {
  QMatrix a(m.size(), ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i)
    for (int e : elements(ts[i])) a(e, i) = 1;
  return substitute_linear(basis_generating_poly(m), a);
}

}  // namespace logcavity
