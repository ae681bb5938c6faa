#pragma once

#include "exactmath.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace logcavity {

// Subsets of a ground set {0..n-1} as bitmasks.
using Set = std::uint32_t;

constexpr int kMaxGround = 24;

inline int card(Set s) { return std::popcount(s); }
inline bool contains(Set s, int e) { return (s >> e) & 1u; }
inline Set bit(int e) { return Set{1} << e; }
inline Set full_set(int n) { return n >= 32 ? ~Set{0} : (Set{1} << n) - 1; }

inline std::vector<int> elements(Set s) {
  std::vector<int> out;
  for (int e = 0; s; ++e, s >>= 1)
    if (s & 1u) out.push_back(e);
  return out;
}

inline Set make_set(const std::vector<int>& es) {
  Set s = 0;
  for (int e : es) s |= bit(e);
  return s;
}

// Lexicographic order on sorted element lists: 123 < 125 < 134.
inline bool lex_less(Set a, Set b) { return elements(a) < elements(b); }

template <class F>
void for_each_subset_of_size(int n, int k, F&& fn) {
  if (k < 0 || k > n) return;
  if (k == 0) {
    fn(Set{0});
    return;
  }
  Set s = full_set(k);
  const Set limit = Set{1} << n;
  while (s < limit) {
    fn(s);
    Set c = s & (~s + 1);
    Set r = s + c;
    s = (((r ^ s) >> 2) / c) | r;
  }
}

inline std::vector<Set> subsets_of_size(int n, int k) {
  std::vector<Set> out;
  for_each_subset_of_size(n, k, [&](Set s) { out.push_back(s); });
  return out;
}

class Matroid {
 public:
  Matroid() = default;

  Matroid(int n, std::vector<Set> bases) : n_(n), bases_(std::move(bases)) {
    if (n < 0 || n > kMaxGround) throw error("TooLarge", "ground set larger than " + std::to_string(kMaxGround));
    if (bases_.empty()) throw error("EmptyBases", "a matroid needs at least one basis");
    for (Set b : bases_)
      if (b & ~full_set(n)) throw error("UnknownElement", "basis uses an element outside the ground set");
    std::sort(bases_.begin(), bases_.end(), lex_less);
    bases_.erase(std::unique(bases_.begin(), bases_.end()), bases_.end());
    rank_ = card(bases_[0]);
    for (Set b : bases_)
      if (card(b) != rank_) throw error("UnequalSizes", "bases have different sizes");
    sorted_ = bases_;
    std::sort(sorted_.begin(), sorted_.end());
    if (n <= 20) {
      std::vector<std::uint8_t> table = build_rank_table();
      check_local_submodularity(table);
      if (n <= 16) rank_table_ = std::move(table);
    } else {
      check_exchange();
    }
  }

  static Matroid from_bases(int n, const std::vector<std::vector<int>>& bases) {
    std::vector<Set> bs;
    for (const auto& b : bases) {
      for (int e : b)
        if (e < 0 || e >= n) throw error("UnknownElement", "basis element out of range");
      Set s = make_set(b);
      if (card(s) != static_cast<int>(b.size())) throw error("UnequalSizes", "repeated element in basis");
      bs.push_back(s);
    }
    return Matroid(n, std::move(bs));
  }

  int size() const { return n_; }
  int rank() const { return rank_; }
  Set ground() const { return full_set(n_); }
  const std::vector<Set>& bases() const { return bases_; }

  bool is_basis(Set s) const { return std::binary_search(sorted_.begin(), sorted_.end(), s); }

  bool is_independent(Set s) const { return rank_of(s) == card(s); }

  int rank_of(Set s) const {
    check_subset(s);
    if (!rank_table_.empty()) return rank_table_[s];
    int r = 0;
    for (Set b : bases_) {
      r = std::max(r, card(b & s));
      if (r == card(s)) break;
    }
    return r;
  }

  Set closure_of(Set s) const {
    const int r = rank_of(s);
    Set c = s;
    for (int e = 0; e < n_; ++e)
      if (!contains(s, e) && rank_of(s | bit(e)) == r) c |= bit(e);
    return c;
  }

  void check_subset(Set s) const {
    if (s & ~ground()) throw error("UnknownElement", "subset has elements outside the ground set");
  }

  friend bool operator==(const Matroid& a, const Matroid& b) { return a.n_ == b.n_ && a.bases_ == b.bases_; }

 private:
  // rank[S] for every subset, from the down-closure of the bases.
  std::vector<std::uint8_t> build_rank_table() const {
    const std::size_t size = std::size_t{1} << n_;
    std::vector<std::uint8_t> indep(size, 0), rank(size, 0);
    for (Set b : bases_) {
      Set s = b;
      while (true) {
        indep[s] = 1;
        if (s == 0) break;
        s = (s - 1) & b;
      }
    }
    for (std::size_t s = 1; s < size; ++s) {
      if (indep[s]) {
        rank[s] = static_cast<std::uint8_t>(card(static_cast<Set>(s)));
        continue;
      }
      std::uint8_t r = 0;
      for (Set t = static_cast<Set>(s); t; t &= t - 1) r = std::max(r, rank[s & ~(t & (~t + 1))]);
      rank[s] = r;
    }
    return rank;
  }

  // Unit-increase rank with local submodularity is a matroid rank function; its
  // maximal independent sets are then exactly the given bases.
  void check_local_submodularity(const std::vector<std::uint8_t>& rank) const {
    const Set all = full_set(n_);
    for (Set s = 0;; ++s) {
      const Set out = all & ~s;
      for (Set a = out; a; a &= a - 1) {
        const Set e = a & (~a + 1);
        for (Set b = a & (a - 1); b; b &= b - 1) {
          const Set f = b & (~b + 1);
          if (rank[s | e] + rank[s | f] < rank[s | e | f] + rank[s])
            throw error("ExchangeViolation", "basis exchange fails");
        }
      }
      if (s == all) break;
    }
  }

  void check_exchange() const {
    for (Set b1 : bases_)
      for (Set b2 : bases_) {
        for (int x : elements(b1 & ~b2)) {
          bool ok = false;
          for (int y : elements(b2 & ~b1))
            if (is_basis((b1 & ~bit(x)) | bit(y))) {
              ok = true;
              break;
            }
          if (!ok) throw error("ExchangeViolation", "basis exchange fails");
        }
      }
  }

  int n_ = 0;
  int rank_ = 0;
  std::vector<Set> bases_;
  std::vector<Set> sorted_;  // by mask value, for lookups
  std::vector<std::uint8_t> rank_table_;
};

inline Matroid uniform(int k, int n) {
  if (k < 0 || k > n) throw error("BadParameters", "uniform matroid needs 0 <= k <= n");
  return Matroid(n, subsets_of_size(n, k));
}

inline int forest_rank(const Graph& g, Set edges) {
  std::vector<int> parent(g.vertices);
  for (int i = 0; i < g.vertices; ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int r = 0;
  for (int e : elements(edges)) {
    int a = find(g.edges[e].first), b = find(g.edges[e].second);
    if (a != b) {
      parent[a] = b;
      ++r;
    }
  }
  return r;
}

// Cycle matroid: bases are the spanning forests. Loop edges become matroid loops.
inline Matroid graphic(const Graph& g) {
  check_vertices(g);
  const int m = static_cast<int>(g.edges.size());
  if (m > kMaxGround) throw error("TooLarge", "too many edges");
  const int r = forest_rank(g, full_set(m));
  std::vector<Set> bases;
  for_each_subset_of_size(m, r, [&](Set s) {
    if (forest_rank(g, s) == r) bases.push_back(s);
  });
  return Matroid(m, std::move(bases));
}

// Column matroid of a rational matrix.
inline Matroid linear(const QMatrix& a) {
  const int m = static_cast<int>(a.cols());
  if (m > kMaxGround) throw error("TooLarge", "too many columns");
  const int r = static_cast<int>(rank(a));
  std::vector<std::size_t> all_rows(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) all_rows[i] = i;
  std::vector<Set> bases;
  for_each_subset_of_size(m, r, [&](Set s) {
    std::vector<std::size_t> cols;
    for (int e : elements(s)) cols.push_back(e);
    if (static_cast<int>(rank(a.submatrix(all_rows, cols))) == r) bases.push_back(s);
  });
  return Matroid(m, std::move(bases));
}

// Squeeze the elements of keep into 0..|keep|-1, preserving order.
inline Set compress(Set s, Set keep) {
  Set out = 0;
  int j = 0;
  for (int e : elements(keep)) {
    if (contains(s, e)) out |= bit(j);
    ++j;
  }
  return out;
}

inline Matroid restrict_to(const Matroid& m, Set s) {
  m.check_subset(s);
  const int r = m.rank_of(s);
  std::vector<Set> bases;
  for (Set b : m.bases())
    if (card(b & s) == r) bases.push_back(compress(b & s, s));
  return Matroid(card(s), std::move(bases));
}

inline Matroid delete_set(const Matroid& m, Set t) {
  m.check_subset(t);
  return restrict_to(m, m.ground() & ~t);
}

// A basis of M|T: the greedy lexicographically first maximal independent subset.
inline Set basis_of(const Matroid& m, Set t) {
  Set b = 0;
  for (int e : elements(t))
    if (m.is_independent(b | bit(e))) b |= bit(e);
  return b;
}

// M/T built from a chosen basis bt of M|T.
inline Matroid contract(const Matroid& m, Set t, Set bt) {
  m.check_subset(t);
  if ((bt & ~t) || !m.is_independent(bt) || card(bt) != m.rank_of(t))
    throw error("BadParameters", "bt must be a basis of the restriction to T");
  const Set rest = m.ground() & ~t;
  std::vector<Set> bases;
  for (Set b : m.bases())
    if ((b & t) == bt) bases.push_back(compress(b & rest, rest));
  return Matroid(card(rest), std::move(bases));
}

inline Matroid contract(const Matroid& m, Set t) { return contract(m, t, basis_of(m, t)); }

inline Matroid truncate(const Matroid& m) {
  if (m.rank() == 0) return m;
  std::vector<Set> bases;
  for (Set b : m.bases())
    for (int e : elements(b)) bases.push_back(b & ~bit(e));
  return Matroid(m.size(), std::move(bases));
}

inline Matroid direct_sum(const Matroid& a, const Matroid& b) {
  std::vector<Set> bases;
  for (Set x : a.bases())
    for (Set y : b.bases()) bases.push_back(x | (y << a.size()));
  return Matroid(a.size() + b.size(), std::move(bases));
}

// Element e becomes copies[e] parallel elements, numbered consecutively.
inline Matroid parallel_replicate(const Matroid& m, const std::vector<int>& copies) {
  if (static_cast<int>(copies.size()) != m.size()) throw error("DimensionMismatch", "one copy count per element");
  std::vector<int> first(m.size() + 1, 0);
  for (int e = 0; e < m.size(); ++e) {
    if (copies[e] < 1) throw error("BadMultiplicities", "copy counts must be positive");
    first[e + 1] = first[e] + copies[e];
  }
  if (first.back() > kMaxGround) throw error("TooLarge", "replicated ground set too large");
  std::vector<Set> bases;
  for (Set b : m.bases()) {
    std::vector<Set> partial{0};
    for (int e : elements(b)) {
      std::vector<Set> next;
      for (Set p : partial)
        for (int c = 0; c < copies[e]; ++c) next.push_back(p | bit(first[e] + c));
      partial = std::move(next);
    }
    bases.insert(bases.end(), partial.begin(), partial.end());
  }
  return Matroid(first.back(), std::move(bases));
}

inline std::pair<Set, Set> loops_and_coloops(const Matroid& m) {
  Set in_some = 0, in_all = m.ground();
  for (Set b : m.bases()) {
    in_some |= b;
    in_all &= b;
  }
  return {m.ground() & ~in_some, in_all};
}

struct FlatLattice {
  std::vector<std::vector<Set>> by_rank;

  std::size_t count() const {
    std::size_t c = 0;
    for (const auto& r : by_rank) c += r.size();
    return c;
  }
};

inline FlatLattice flats(const Matroid& m) {
  if (m.size() > 16) throw error("TooLarge", "flat enumeration is capped at 16 elements");
  FlatLattice fl;
  fl.by_rank.resize(m.rank() + 1);
  const Set limit = full_set(m.size());
  for (Set s = 0;; ++s) {
    if (m.closure_of(s) == s) fl.by_rank[m.rank_of(s)].push_back(s);
    if (s == limit) break;
  }
  for (auto& r : fl.by_rank) std::sort(r.begin(), r.end(), lex_less);
  return fl;
}

inline Set flat_join(const Matroid& m, Set a, Set b) { return m.closure_of(a | b); }
inline Set flat_meet(Set a, Set b) { return a & b; }

struct ParallelData {
  Set loops = 0;
  std::vector<Set> classes;  // ordered by smallest element
};

inline ParallelData parallel_data(const Matroid& m) {
  ParallelData pd;
  pd.loops = loops_and_coloops(m).first;
  Set seen = pd.loops;
  for (int e = 0; e < m.size(); ++e) {
    if (contains(seen, e)) continue;
    Set cls = bit(e);
    for (int f = e + 1; f < m.size(); ++f)
      if (!contains(seen, f) && m.rank_of(bit(e) | bit(f)) == 1) cls |= bit(f);
    seen |= cls;
    pd.classes.push_back(cls);
  }
  return pd;
}

inline bool is_simple(const Matroid& m) {
  ParallelData pd = parallel_data(m);
  return pd.loops == 0 && static_cast<int>(pd.classes.size()) == m.size();
}

struct Simplification {
  Matroid simple;
  std::vector<int> fiber;  // fiber[e] = parallel class of e, or -1 for loops
};

inline Simplification simplify(const Matroid& m) {
  ParallelData pd = parallel_data(m);
  Simplification s;
  s.fiber.assign(m.size(), -1);
  std::vector<int> rep;
  for (std::size_t c = 0; c < pd.classes.size(); ++c) {
    for (int e : elements(pd.classes[c])) s.fiber[e] = static_cast<int>(c);
    rep.push_back(elements(pd.classes[c]).front());
  }
  Set reps = make_set(rep);
  s.simple = restrict_to(m, reps);
  return s;
}

inline bool totally_unimodular(const QMatrix& a) {
  const int r = static_cast<int>(a.rows()), c = static_cast<int>(a.cols());
  if (r > kMaxGround || c > kMaxGround) throw error("TooLarge", "matrix too large for minor scan");
  for (int k = 1; k <= std::min(r, c); ++k) {
    bool ok = true;
    for_each_subset_of_size(r, k, [&](Set rs) {
      if (!ok) return;
      std::vector<std::size_t> ri;
      for (int i : elements(rs)) ri.push_back(i);
      for_each_subset_of_size(c, k, [&](Set cs) {
        if (!ok) return;
        std::vector<std::size_t> ci;
        for (int j : elements(cs)) ci.push_back(j);
        QRat d = det(a.submatrix(ri, ci));
        if (d != 0 && d != 1 && d != -1) ok = false;
      });
    });
    if (!ok) return false;
  }
  return true;
}

inline bool unimodular_coordinatization_check(const Matroid& m, const QMatrix& a) {
  if (static_cast<int>(a.cols()) != m.size() || static_cast<int>(a.rows()) != m.rank())
    throw error("DimensionMismatch", "need a rank x |E| matrix");
  return totally_unimodular(a) && linear(a).bases() == m.bases();
}

// Incidence matrix of a connected graph with the last vertex row removed.
inline QMatrix reduced_incidence(const Graph& g) {
  QMatrix b = incidence(g);
  std::vector<std::size_t> rows, cols;
  for (int i = 0; i + 1 < g.vertices; ++i) rows.push_back(i);
  for (std::size_t j = 0; j < b.cols(); ++j) cols.push_back(j);
  return b.submatrix(rows, cols);
}

// Number of independent sets of each size 0..rank.
inline std::vector<ZInt> independent_counts(const Matroid& m) {
  std::vector<char> mark(std::size_t{1} << m.size(), 0);
  std::vector<ZInt> counts(m.rank() + 1, 0);
  for (Set b : m.bases()) {
    Set s = b;
    while (true) {
      if (!mark[s]) {
        mark[s] = 1;
        counts[card(s)] += 1;
      }
      if (s == 0) break;
      s = (s - 1) & b;
    }
  }
  return counts;
}

}  // namespace logcavity
