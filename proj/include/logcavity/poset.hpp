#pragma once

#include "exactmath.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace logcavity {

constexpr std::uint64_t kDefaultExtensionCap = 3628800;  // 10!
constexpr int kMaxPosetElements = 62;

class Poset {
 public:
  Poset() = default;

  // Relations are pairs (a, b) meaning a <= b; the transitive closure is taken.
  Poset(std::vector<std::string> labels, const std::vector<std::pair<int, int>>& relations)
      : labels_(std::move(labels)) {
    const int n = size();
    if (n > kMaxPosetElements) throw error("TooLarge", "poset has more than 62 elements");
    leq_.assign(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i) leq_[i][i] = 1;
    for (auto [a, b] : relations) {
      if (a < 0 || b < 0 || a >= n || b >= n) throw error("UnknownElement", "relation endpoint out of range");
      leq_[a][b] = 1;
    }
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        if (leq_[i][k])
          for (int j = 0; j < n; ++j)
            if (leq_[k][j]) leq_[i][j] = 1;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (leq_[i][j] && leq_[j][i])
          throw error("NotAntisymmetric", "relations force " + labels_[i] + " = " + labels_[j]);
    build_masks();
  }

  static Poset chain(int n) {
    std::vector<std::pair<int, int>> rel;
    for (int i = 0; i + 1 < n; ++i) rel.push_back({i, i + 1});
    return Poset(default_labels(n), rel);
  }

  static Poset antichain(int n) { return Poset(default_labels(n), {}); }

  static std::vector<std::string> default_labels(int n) {
    std::vector<std::string> l;
    for (int i = 0; i < n; ++i) l.push_back(std::to_string(i));
    return l;
  }

  int size() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int i) const { return labels_.at(i); }

  int index_of(const std::string& label) const {
    for (int i = 0; i < size(); ++i)
      if (labels_[i] == label) return i;
    throw error("UnknownElement", "no element labelled '" + label + "'");
  }

  bool leq(int a, int b) const { return leq_[a][b]; }
  bool less(int a, int b) const { return a != b && leq_[a][b]; }
  bool comparable(int a, int b) const { return leq_[a][b] || leq_[b][a]; }

  // Bitmask of elements strictly below a.
  std::uint64_t below_mask(int a) const { return below_[a]; }
  std::uint64_t above_mask(int a) const { return above_[a]; }

  int count_below(int a) const { return __builtin_popcountll(below_[a]); }
  int count_above(int a) const { return __builtin_popcountll(above_[a]); }
  // |{z : a < z < b}|
  int count_between(int a, int b) const { return __builtin_popcountll(above_[a] & below_[b]); }

  std::vector<std::pair<int, int>> relations() const {
    std::vector<std::pair<int, int>> r;
    for (int i = 0; i < size(); ++i)
      for (int j = 0; j < size(); ++j)
        if (less(i, j)) r.push_back({i, j});
    return r;
  }

  std::vector<std::pair<int, int>> covers() const {
    std::vector<std::pair<int, int>> c;
    for (int i = 0; i < size(); ++i)
      for (int j = 0; j < size(); ++j)
        if (less(i, j) && (above_[i] & below_[j]) == 0) c.push_back({i, j});
    return c;
  }

  std::optional<int> minimum() const {
    for (int i = 0; i < size(); ++i)
      if (count_above(i) == size() - 1) return i;
    return std::nullopt;
  }

  std::optional<int> maximum() const {
    for (int i = 0; i < size(); ++i)
      if (count_below(i) == size() - 1) return i;
    return std::nullopt;
  }

  friend bool operator==(const Poset& a, const Poset& b) { return a.labels_ == b.labels_ && a.leq_ == b.leq_; }

 private:
  void build_masks() {
    const int n = size();
    below_.assign(n, 0);
    above_.assign(n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (less(i, j)) {
          below_[j] |= std::uint64_t{1} << i;
          above_[i] |= std::uint64_t{1} << j;
        }
  }

  std::vector<std::string> labels_;
  std::vector<std::vector<char>> leq_;
  std::vector<std::uint64_t> below_, above_;
};

struct MarkedPoset {
  Poset poset;
  int x = 0;
  int y = 0;
};

// Number of linear extensions by dynamic programming over down-sets.
inline ZInt count_extensions(const Poset& p) {
  const int n = p.size();
  std::unordered_map<std::uint64_t, ZInt> memo;
  const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  std::function<ZInt(std::uint64_t)> go = [&](std::uint64_t placed) -> ZInt {
    if (placed == full) return 1;
    auto it = memo.find(placed);
    if (it != memo.end()) return it->second;
    ZInt total = 0;
    for (int e = 0; e < n; ++e) {
      std::uint64_t bit = std::uint64_t{1} << e;
      if (!(placed & bit) && (p.below_mask(e) & ~placed) == 0) total += go(placed | bit);
    }
    memo.emplace(placed, total);
    return total;
  };
  return go(0);
}

// Calls fn(rank) for every linear extension, rank[e] in 1..n. Minimal elements are
// tried in increasing index order, so the sequence of extensions is deterministic.
template <class F>
void for_each_extension(const Poset& p, F&& fn, std::uint64_t cap = kDefaultExtensionCap) {
  if (count_extensions(p) > cap) throw error("TooLarge", "linear extension count exceeds cap");
  const int n = p.size();
  std::vector<int> rank(n, 0);
  std::uint64_t placed = 0;
  std::function<void(int)> go = [&](int pos) {
    if (pos == n) {
      fn(static_cast<const std::vector<int>&>(rank));
      return;
    }
    for (int e = 0; e < n; ++e) {
      std::uint64_t bit = std::uint64_t{1} << e;
      if ((placed & bit) || (p.below_mask(e) & ~placed)) continue;
      placed |= bit;
      rank[e] = pos + 1;
      go(pos + 1);
      placed &= ~bit;
    }
  };
  go(0);
}

inline std::vector<std::vector<int>> linear_extensions(const Poset& p, std::uint64_t cap = kDefaultExtensionCap) {
  std::vector<std::vector<int>> out;
  for_each_extension(p, [&](const std::vector<int>& r) { out.push_back(r); }, cap);
  return out;
}

// Flat table of all extensions, shared by the statistics below.
class ExtensionTable {
 public:
  explicit ExtensionTable(const Poset& p, std::uint64_t cap = kDefaultExtensionCap) : n_(p.size()) {
    for_each_extension(p, [&](const std::vector<int>& r) {
      for (int v : r) ranks_.push_back(static_cast<std::uint8_t>(v));
    }, cap);
  }
  int n() const { return n_; }
  std::size_t count() const { return n_ ? ranks_.size() / n_ : 1; }
  int rank(std::size_t ext, int elem) const { return ranks_[ext * n_ + elem]; }

 private:
  int n_;
  std::vector<std::uint8_t> ranks_;
};

using Counts = std::vector<std::uint64_t>;

// Value at 1-based index k of a sequence stored from index 1; zero outside.
inline std::uint64_t seq_at(const Counts& s, long k) {
  return (k >= 1 && k <= static_cast<long>(s.size())) ? s[k - 1] : 0;
}

inline bool log_concave_at(const Counts& s, long k) {
  ZInt a = seq_at(s, k), b = seq_at(s, k - 1), c = seq_at(s, k + 1);
  return a * a >= b * c;
}

inline bool log_concave(const Counts& s) {
  for (long k = 1; k <= static_cast<long>(s.size()); ++k)
    if (!log_concave_at(s, k)) return false;
  return true;
}

inline void check_element(const Poset& p, int e) {
  if (e < 0 || e >= p.size()) throw error("UnknownElement", "element index out of range");
}

inline Counts stanley_sequence(const ExtensionTable& t, int x) {
  Counts N(t.n(), 0);
  for (std::size_t e = 0; e < t.count(); ++e) ++N[t.rank(e, x) - 1];
  return N;
}

inline Counts stanley_sequence(const Poset& p, int x, std::uint64_t cap = kDefaultExtensionCap) {
  check_element(p, x);
  return stanley_sequence(ExtensionTable(p, cap), x);
}

inline std::uint64_t stanley_chain_counts(const Poset& p, const std::vector<int>& chain,
                                          const std::vector<int>& positions,
                                          std::uint64_t cap = kDefaultExtensionCap) {
  if (chain.size() != positions.size()) throw error("DimensionMismatch", "chain and positions differ in length");
  for (int c : chain) check_element(p, c);
  for (std::size_t j = 1; j < chain.size(); ++j)
    if (!p.less(chain[j - 1], chain[j])) throw error("NotAChain", "chain elements must increase");
  std::uint64_t count = 0;
  for_each_extension(p, [&](const std::vector<int>& r) {
    for (std::size_t j = 0; j < chain.size(); ++j)
      if (r[chain[j]] != positions[j]) return;
    ++count;
  }, cap);
  return count;
}

// N_i > 0 unless |P_{<x}| > i-1 or |P_{>x}| > n-i.
inline bool stanley_positive(const Poset& p, int x, int i) {
  const int n = p.size();
  if (i < 1 || i > n) return false;
  return !(p.count_below(x) > i - 1 || p.count_above(x) > n - i);
}

struct StanleyVerdict {
  std::uint64_t n_prev = 0, n_i = 0, n_next = 0;
  bool a = false, b = false, c = false, d = false;
};

inline StanleyVerdict stanley_equality_classify(const Poset& p, int x, int i, const ExtensionTable& t) {
  const int n = p.size();
  Counts N = stanley_sequence(t, x);
  StanleyVerdict v;
  v.n_i = seq_at(N, i);
  if (v.n_i == 0) throw error("ZeroAtIndex", "N_i = 0 at i = " + std::to_string(i));
  v.n_prev = seq_at(N, i - 1);
  v.n_next = seq_at(N, i + 1);
  v.a = ZInt(v.n_i) * v.n_i == ZInt(v.n_prev) * v.n_next;
  v.b = v.n_i == v.n_prev && v.n_i == v.n_next;
  v.c = i > 1 && i < n;
  for (std::size_t e = 0; e < t.count() && v.c; ++e) {
    if (t.rank(e, x) != i) continue;
    for (int z = 0; z < n; ++z) {
      int rz = t.rank(e, z);
      if ((rz == i - 1 || rz == i + 1) && p.comparable(z, x)) {
        v.c = false;
        break;
      }
    }
  }
  v.d = true;
  for (int z = 0; z < n; ++z) {
    if (p.less(x, z) && !(p.count_below(z) > i)) v.d = false;
    if (p.less(z, x) && !(p.count_above(z) > n - i + 1)) v.d = false;
  }
  return v;
}

inline StanleyVerdict stanley_equality_classify(const Poset& p, int x, int i, std::uint64_t cap = kDefaultExtensionCap) {
  check_element(p, x);
  return stanley_equality_classify(p, x, i, ExtensionTable(p, cap));
}

inline void check_marks(const MarkedPoset& mp) {
  check_element(mp.poset, mp.x);
  check_element(mp.poset, mp.y);
  if (mp.x == mp.y || mp.poset.leq(mp.y, mp.x)) throw error("InvalidMarks", "marks need x not >= y");
}

inline bool is_normalized(const MarkedPoset& mp) {
  const Poset& p = mp.poset;
  auto lo = p.minimum(), hi = p.maximum();
  return p.less(mp.x, mp.y) && lo && hi && *lo != mp.x && *hi != mp.y;
}

inline void require_normalized(const MarkedPoset& mp) {
  check_marks(mp);
  if (!is_normalized(mp)) throw error("NotNormalized", "marked poset must be normalized first");
}

// Adjoins a global minimum and maximum and the relation x <= y (closed transitively).
inline MarkedPoset normalize(const MarkedPoset& mp) {
  check_marks(mp);
  if (is_normalized(mp)) return mp;
  const Poset& p = mp.poset;
  const int n = p.size();
  std::vector<std::string> labels{"_0"};
  for (const auto& l : p.labels()) labels.push_back(l);
  labels.push_back("_1");
  std::vector<std::pair<int, int>> rel;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (p.less(a, b) || (p.leq(a, mp.x) && p.leq(mp.y, b))) rel.push_back({a + 1, b + 1});
  for (int a = 0; a < n; ++a) {
    rel.push_back({0, a + 1});
    rel.push_back({a + 1, n + 1});
  }
  rel.push_back({0, n + 1});
  return {Poset(std::move(labels), rel), mp.x + 1, mp.y + 1};
}

inline Counts kahn_saks_sequence(const MarkedPoset& mp, const ExtensionTable& t) {
  const int n = mp.poset.size();
  Counts N(n > 1 ? n - 1 : 0, 0);
  for (std::size_t e = 0; e < t.count(); ++e) {
    int gap = t.rank(e, mp.y) - t.rank(e, mp.x);
    if (gap >= 1) ++N[gap - 1];
  }
  return N;
}

inline Counts kahn_saks_sequence(const MarkedPoset& mp, std::uint64_t cap = kDefaultExtensionCap) {
  check_marks(mp);
  return kahn_saks_sequence(mp, ExtensionTable(mp.poset, cap));
}

struct PositivityVerdict {
  bool positive = false;
  std::string reason;
};

inline PositivityVerdict kahn_saks_positivity(const MarkedPoset& mp, int k) {
  require_normalized(mp);
  const Poset& p = mp.poset;
  const int n = p.size();
  const int ends = p.count_below(mp.x) + p.count_above(mp.y);
  const int mid = p.count_between(mp.x, mp.y);
  if (ends > n - k - 1)
    return {false, "|P<x| + |P>y| = " + std::to_string(ends) + " > n-k-1 = " + std::to_string(n - k - 1)};
  if (mid > k - 1)
    return {false, "|P(x,y)| = " + std::to_string(mid) + " > k-1 = " + std::to_string(k - 1)};
  return {true, "both dimension bounds met"};
}

struct MidwayVerdict {
  bool midway = true, dual_midway = true;
  // The same properties restricted to END_x and END_y.
  bool midway_end_x = true, dual_end_y = true;
};

inline MidwayVerdict midway_check(const MarkedPoset& mp, int k) {
  require_normalized(mp);
  const Poset& p = mp.poset;
  const int n = p.size();
  const int x = mp.x, y = mp.y;
  MidwayVerdict v;
  for (int z = 0; z < n; ++z) {
    if (p.less(x, z) && z != y && !p.less(y, z) && !(p.count_below(z) + p.count_above(y) > n - k)) v.midway = false;
    if (p.less(z, x) && !(p.count_between(z, y) > k)) v.midway = v.midway_end_x = false;
    if (p.less(z, y) && z != x && !p.less(z, x) && !(p.count_above(z) + p.count_below(x) > n - k)) v.dual_midway = false;
    if (p.less(y, z) && !(p.count_between(x, z) > k)) v.dual_midway = v.dual_end_y = false;
  }
  return v;
}

struct RegionPartition {
  std::vector<int> end_x, end_y, mid, mid_x, mid_y, incomparable_both;
};

inline RegionPartition region_partition(const MarkedPoset& mp) {
  require_normalized(mp);
  const Poset& p = mp.poset;
  const int x = mp.x, y = mp.y;
  RegionPartition r;
  for (int z = 0; z < p.size(); ++z) {
    if (z == x || z == y) continue;
    if (p.less(z, x)) r.end_x.push_back(z);
    else if (p.less(y, z)) r.end_y.push_back(z);
    else if (p.less(x, z) && p.less(z, y)) r.mid.push_back(z);
    else if (p.less(x, z) && !p.comparable(z, y)) r.mid_x.push_back(z);
    else if (p.less(z, y) && !p.comparable(z, x)) r.mid_y.push_back(z);
    else if (!p.comparable(z, x) && !p.comparable(z, y)) r.incomparable_both.push_back(z);
    else throw invariant_violation("element " + p.label(z) + " fits no region");
  }
  return r;
}

struct ExtremalVerdict {
  std::uint64_t n_prev = 0, n_k = 0, n_next = 0;
  bool equality = false;
  std::optional<QRat> ratio;  // N_{k+1} / N_k when equality holds
  std::array<bool, 4> doubling_conditions{};  // (i)..(iv)
  bool doubling = false;  // N_{k+1} = 2 N_k = 4 N_{k-1}
};

inline ExtremalVerdict kahn_saks_extremal_classify(const MarkedPoset& mp, int k, const Counts& N) {
  require_normalized(mp);
  const Poset& p = mp.poset;
  const int x = mp.x, y = mp.y;
  ExtremalVerdict v;
  v.n_k = seq_at(N, k);
  if (v.n_k == 0) throw error("ZeroAtIndex", "N_k = 0 at k = " + std::to_string(k));
  v.n_prev = seq_at(N, k - 1);
  v.n_next = seq_at(N, k + 1);
  v.equality = ZInt(v.n_k) * v.n_k == ZInt(v.n_prev) * v.n_next;
  if (v.equality) v.ratio = make_rat(v.n_next, v.n_k);
  v.doubling = v.n_next == 2 * v.n_k && v.n_k == 2 * v.n_prev;

  MidwayVerdict mw = midway_check(mp, k);
  RegionPartition r = region_partition(mp);
  v.doubling_conditions[0] = mw.midway_end_x && mw.dual_end_y;
  v.doubling_conditions[1] = r.incomparable_both.empty();
  v.doubling_conditions[2] = r.mid.empty();
  v.doubling_conditions[3] = true;
  for (int z : r.mid_y)
    for (int w : r.mid_x)
      if (p.less(z, w) && p.count_between(z, y) + p.count_between(x, w) < k - 1) v.doubling_conditions[3] = false;
  return v;
}

inline ExtremalVerdict kahn_saks_extremal_classify(const MarkedPoset& mp, int k,
                                                   std::uint64_t cap = kDefaultExtensionCap) {
  return kahn_saks_extremal_classify(mp, k, kahn_saks_sequence(mp, cap));
}

struct ExtensionExtremes {
  int min_gap = 0;
  int expected_min_gap = 0;
  bool wide_exists = false;
};

inline ExtensionExtremes extension_extremes(const MarkedPoset& mp, const ExtensionTable& t) {
  require_normalized(mp);
  const Poset& p = mp.poset;
  const int n = p.size();
  ExtensionExtremes r;
  r.expected_min_gap = p.count_between(mp.x, mp.y) + 1;
  r.min_gap = n;
  const int fx = p.count_below(mp.x) + 1, fy = n - p.count_above(mp.y);
  for (std::size_t e = 0; e < t.count(); ++e) {
    r.min_gap = std::min(r.min_gap, t.rank(e, mp.y) - t.rank(e, mp.x));
    if (t.rank(e, mp.x) == fx && t.rank(e, mp.y) == fy) r.wide_exists = true;
  }
  return r;
}

inline ExtensionExtremes extension_extremes(const MarkedPoset& mp, std::uint64_t cap = kDefaultExtensionCap) {
  require_normalized(mp);
  return extension_extremes(mp, ExtensionTable(mp.poset, cap));
}

}  // namespace logcavity
