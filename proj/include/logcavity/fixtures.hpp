#pragma once

#include "exactmath.hpp"
#include "matroid.hpp"
#include "poset.hpp"

#include <string>
#include <utility>
#include <vector>

namespace logcavity::fixtures {

inline Graph k23() { return {5, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}}}; }
inline Graph k4() { return {4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}}; }
inline Graph triangle_with_bridge() { return {4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}}}; }
inline Graph doubled_square() { return {4, {{0, 1}, {0, 1}, {1, 2}, {1, 2}, {2, 3}, {2, 3}, {3, 0}, {3, 0}}}; }

inline QMatrix five_column_matrix() { return {{1, 0, 0, 1, 0}, {0, 1, 0, 1, 1}, {0, 0, 1, 0, 1}}; }

// The 5-basis family {123,125,134,135,145} (1-based), taken as a literal basis list.
inline Matroid five_listed_bases() {
  return Matroid::from_bases(5, {{0, 1, 2}, {0, 1, 4}, {0, 2, 3}, {0, 2, 4}, {0, 3, 4}});
}

inline Matroid fano() {
  const std::vector<std::vector<int>> lines{{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}};
  std::vector<Set> bases;
  for (Set s : subsets_of_size(7, 3)) {
    bool line = false;
    for (const auto& l : lines) line = line || s == make_set(l);
    if (!line) bases.push_back(s);
  }
  return Matroid(7, std::move(bases));
}

// Matroids on at most 7 elements.
inline std::vector<std::pair<std::string, Matroid>> small_zoo() {
  return {
      {"U(1,1)", uniform(1, 1)},
      {"U(1,3)", uniform(1, 3)},
      {"U(2,3)", uniform(2, 3)},
      {"U(2,4)", uniform(2, 4)},
      {"U(3,5)", uniform(3, 5)},
      {"U(2,6)", uniform(2, 6)},
      {"U(3,6)", uniform(3, 6)},
      {"U(4,7)", uniform(4, 7)},
      {"B3", uniform(3, 3)},
      {"M(K4)", graphic(k4())},
      {"M(K23)", graphic(k23())},
      {"triangle+bridge", graphic(triangle_with_bridge())},
      {"five-column", linear(five_column_matrix())},
      {"five-listed", five_listed_bases()},
      {"fano", fano()},
      {"U(2,3)+U(1,2)", direct_sum(uniform(2, 3), uniform(1, 2))},
      {"U(2,3) tripled", parallel_replicate(uniform(2, 3), {3, 2, 2})},
      {"U(1,2)+loop", direct_sum(uniform(1, 2), uniform(0, 1))},
  };
}

// Two 3-chains x < b1 < b2 and a1 < a2 < y; normalized, N_1, N_2, N_3 = 1, 2, 4.
inline MarkedPoset doubling_witness() {
  Poset p({"x", "b1", "b2", "a1", "a2", "y"}, {{0, 1}, {1, 2}, {3, 4}, {4, 5}});
  return {p, 0, 5};
}
inline constexpr int kDoublingIndex = 2;

}  // namespace logcavity::fixtures
