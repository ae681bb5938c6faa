#include <doctest.h>

#include "support.hpp"

#include <logcavity/fixtures.hpp>
#include <logcavity/matroid.hpp>
#include <logcavity/poly.hpp>

using namespace logcavity;
using support::Rng;

namespace {

std::vector<Matroid> random_matroids() {
  std::vector<Matroid> out;
  for (auto& [name, m] : fixtures::small_zoo()) out.push_back(m);
  Rng g(31);
  for (int i = 0; i < 25; ++i) {
    Graph gr = support::random_connected_multigraph(g, support::uniform_int(g, 2, 5), support::uniform_int(g, 3, 8));
    out.push_back(graphic(gr));
  }
  for (int i = 0; i < 25; ++i) out.push_back(support::random_linear_matroid(g, support::uniform_int(g, 1, 3), support::uniform_int(g, 3, 7)));
  return out;
}

}  // namespace

TEST_CASE("construction examples") {
  Matroid u23 = Matroid::from_bases(3, {{0, 1}, {0, 2}, {1, 2}});
  CHECK(u23 == uniform(2, 3));
  CHECK_THROWS_AS(Matroid::from_bases(4, {{0, 1}, {2, 3}}), error);
  try {
    Matroid::from_bases(4, {{0, 1}, {2, 3}});
  } catch (const error& e) {
    CHECK(e.kind() == "ExchangeViolation");
  }
  CHECK_THROWS_AS(Matroid(3, {}), error);
  CHECK_THROWS_AS(Matroid::from_bases(3, {{0, 1}, {2}}), error);
  CHECK_THROWS_AS(uniform(4, 3), error);
  CHECK(uniform(3, 3).bases() == std::vector<Set>{0b111});
  CHECK(graphic({3, {{0, 1}, {1, 2}, {0, 2}}}).bases().size() == 3);

  Matroid listed = fixtures::five_listed_bases();
  CHECK(listed.rank() == 3);
  CHECK(listed.bases().size() == 5);
  CHECK(loops_and_coloops(listed).second == bit(0));

  Matroid col = linear(fixtures::five_column_matrix());
  std::vector<Set> expected;
  for (auto b : std::vector<std::vector<int>>{{0, 1, 2}, {0, 1, 4}, {0, 2, 3}, {0, 2, 4}, {0, 3, 4},
                                              {1, 2, 3}, {1, 3, 4}, {2, 3, 4}})
    expected.push_back(make_set(b));
  CHECK(col.bases() == expected);
}

TEST_CASE("bases are sorted lexicographically") {
  Matroid m = uniform(2, 4);
  for (std::size_t i = 1; i < m.bases().size(); ++i) CHECK(lex_less(m.bases()[i - 1], m.bases()[i]));
}

TEST_CASE("rank and independence against basis scans") {
  for (const Matroid& m : random_matroids()) {
    for (Set s = 0; s <= m.ground(); ++s) {
      CHECK(m.rank_of(s) == support::rank_brute(m, s));
      CHECK(m.is_independent(s) == support::independent_brute(m, s));
    }
  }
  CHECK(uniform(2, 3).rank_of(0) == 0);
  CHECK_THROWS_AS(uniform(2, 3).rank_of(0b1000), error);
}

TEST_CASE("rank and closure axioms") {
  for (const Matroid& m : random_matroids()) {
    if (m.size() > 7) continue;
    const Set all = m.ground();
    for (Set x = 0; x <= all; ++x) {
      const int rx = m.rank_of(x);
      CHECK(rx >= 0);
      CHECK(rx <= card(x));
      const Set cx = m.closure_of(x);
      CHECK((cx & x) == x);
      CHECK(m.closure_of(cx) == cx);
      CHECK(m.rank_of(cx) == rx);
      for (Set y = 0; y <= all; ++y) {
        if ((x & y) == x) {
          CHECK(rx <= m.rank_of(y));
          CHECK((cx & m.closure_of(y)) == cx);
        }
        CHECK(m.rank_of(x | y) + m.rank_of(x & y) <= rx + m.rank_of(y));
      }
      // exchange: y in cl(X+x) \ cl(X) implies x in cl(X+y)
      for (int a = 0; a < m.size(); ++a)
        for (int b = 0; b < m.size(); ++b) {
          if (contains(x, a) || contains(x, b) || a == b) continue;
          if (contains(m.closure_of(x | bit(a)), b) && !contains(cx, b)) CHECK(contains(m.closure_of(x | bit(b)), a));
        }
    }
  }
  CHECK(uniform(2, 3).closure_of(bit(0)) == bit(0));
}

TEST_CASE("basis exchange holds in both directions") {
  for (const Matroid& m : random_matroids())
    for (Set b1 : m.bases())
      for (Set b2 : m.bases())
        for (int x : elements(b1 & ~b2)) {
          bool forward = false, backward = false;
          for (int y : elements(b2 & ~b1)) {
            forward = forward || m.is_basis((b1 & ~bit(x)) | bit(y));
            backward = backward || m.is_basis((b2 & ~bit(y)) | bit(x));
          }
          CHECK(forward);
          CHECK(backward);
        }
}

TEST_CASE("flats") {
  FlatLattice f = flats(uniform(2, 3));
  CHECK(f.by_rank[0].size() == 1);
  CHECK(f.by_rank[1].size() == 3);
  CHECK(f.by_rank[2].size() == 1);
  CHECK(flats(graphic(fixtures::k23())).by_rank[2].size() == 15);
  CHECK(flats(uniform(4, 4)).count() == 16);
  for (const Matroid& m : random_matroids()) {
    if (m.size() > 8) continue;
    FlatLattice fl = flats(m);
    for (std::size_t r = 0; r < fl.by_rank.size(); ++r)
      for (Set a : fl.by_rank[r]) {
        CHECK(m.rank_of(a) == static_cast<int>(r));
        CHECK(m.closure_of(a) == a);
        for (Set b : fl.by_rank[r]) {
          CHECK(m.closure_of(flat_meet(a, b)) == flat_meet(a, b));
          Set j = flat_join(m, a, b);
          CHECK(m.closure_of(j) == j);
          CHECK(m.rank_of(j) + m.rank_of(a & b) <= 2 * static_cast<int>(r));
        }
      }
  }
}

TEST_CASE("parallel classes, loops and simplification") {
  Matroid tripled = parallel_replicate(uniform(2, 3), {3, 3, 3});
  CHECK(tripled.size() == 9);
  Simplification s = simplify(tripled);
  CHECK(s.simple == uniform(2, 3));
  CHECK(simplify(uniform(2, 4)).simple == uniform(2, 4));
  CHECK(is_simple(uniform(2, 4)));
  CHECK_FALSE(is_simple(tripled));
  for (const Matroid& m : random_matroids()) {
    ParallelData pd = parallel_data(m);
    Set covered = pd.loops;
    for (Set cls : pd.classes) {
      CHECK((covered & cls) == 0);
      covered |= cls;
      const int e = elements(cls).front();
      CHECK(m.closure_of(bit(e)) == (cls | pd.loops));
      for (int f : elements(cls)) CHECK(m.rank_of(bit(e) | bit(f)) == 1);
    }
    CHECK(covered == m.ground());
    for (int l : elements(pd.loops)) CHECK(m.rank_of(bit(l)) == 0);
    Simplification si = simplify(m);
    CHECK(is_simple(si.simple));
    CHECK(si.simple.rank() == m.rank());
    CHECK(simplify(si.simple).simple == si.simple);
  }
}

TEST_CASE("minors") {
  Matroid c = contract(uniform(2, 3), bit(0));
  CHECK(c == uniform(1, 2));
  Matroid t = truncate(direct_sum(uniform(3, 3), uniform(2, 2)));
  CHECK(t.rank() == 4);
  CHECK(t == uniform(4, 5));
  CHECK(delete_set(uniform(2, 4), bit(3)) == uniform(2, 3));
  CHECK(direct_sum(uniform(1, 2), uniform(1, 1)).bases().size() == 2);

  for (const Matroid& m : random_matroids()) {
    if (m.size() > 7) continue;
    for (Set t = 1; t < m.ground(); t += 3) {
      Matroid reference = contract(m, t);
      const int rt = m.rank_of(t);
      for_each_subset_of_size(m.size(), rt, [&](Set bt) {
        if ((bt & ~t) == 0 && m.is_independent(bt)) CHECK(contract(m, t, bt) == reference);
      });
      CHECK(reference.rank() == m.rank() - rt);
      CHECK(delete_set(m, t).rank() == m.rank_of(m.ground() & ~t));
    }
  }
  CHECK_THROWS_AS(contract(uniform(2, 3), bit(0), bit(1)), error);
}

TEST_CASE("deletion-contraction for the basis polynomial") {
  for (const Matroid& m : random_matroids()) {
    auto [loops, coloops] = loops_and_coloops(m);
    const MPoly f = basis_generating_poly(m);
    for (int e = 0; e < m.size(); ++e) {
      if (contains(coloops, e) || contains(loops, e)) continue;
      const Set rest = m.ground() & ~bit(e);
      MPoly fc = embed(basis_generating_poly(contract(m, bit(e))), rest, m.size());
      MPoly fd = embed(basis_generating_poly(delete_set(m, bit(e))), rest, m.size());
      CHECK(f == MPoly::variable(m.size(), e) * fc + fd);
    }
  }
}

TEST_CASE("loops and coloops") {
  CHECK(loops_and_coloops(uniform(3, 3)).second == 0b111);
  auto [l, c] = loops_and_coloops(uniform(2, 3));
  CHECK(l == 0);
  CHECK(c == 0);
  Graph g = fixtures::triangle_with_bridge();
  Matroid m = graphic(g);
  CHECK(loops_and_coloops(m).second == bit(3));
  Rng rng(32);
  for (int i = 0; i < 30; ++i) {
    Graph gr = support::random_connected_multigraph(rng, support::uniform_int(rng, 2, 6), support::uniform_int(rng, 3, 8));
    Matroid gm = graphic(gr);
    Set bridges = 0;
    for (std::size_t e = 0; e < gr.edges.size(); ++e) {
      Graph h = gr;
      h.edges.erase(h.edges.begin() + e);
      if (component_count(h) > 1) bridges |= bit(static_cast<int>(e));
    }
    CHECK(loops_and_coloops(gm).second == bridges);
    CHECK(static_cast<long>(gm.bases().size()) == spanning_tree_count(gr));
  }
  Matroid with_loop = graphic({2, {{0, 1}, {1, 1}}});
  CHECK(loops_and_coloops(with_loop).first == bit(1));
}

TEST_CASE("unimodular coordinatization") {
  for (Graph g : {fixtures::k4(), fixtures::k23(), fixtures::triangle_with_bridge()})
    CHECK(unimodular_coordinatization_check(graphic(g), reduced_incidence(g)));
  CHECK(unimodular_coordinatization_check(uniform(3, 3), QMatrix::identity(3)));
  QMatrix bad{{1, 1}, {-1, 1}};
  CHECK_FALSE(unimodular_coordinatization_check(uniform(2, 2), bad));
  CHECK_THROWS_AS(unimodular_coordinatization_check(uniform(2, 3), QMatrix::identity(3)), error);
}

TEST_CASE("independent set counts") {
  CHECK(independent_counts(uniform(2, 3)) == std::vector<ZInt>{1, 3, 3});
  CHECK(independent_counts(graphic(fixtures::k4())) == std::vector<ZInt>{1, 6, 15, 16});
  for (const Matroid& m : random_matroids()) {
    std::vector<ZInt> brute(m.rank() + 1, 0);
    for (Set s = 0; s <= m.ground(); ++s)
      if (support::independent_brute(m, s)) brute[card(s)] += 1;
    CHECK(independent_counts(m) == brute);
  }
}
