#include "fixtures.hpp"

#include "flowhom/complex.hpp"
#include "flowhom/error.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace flowhom;

namespace {

// Invariant factors from determinantal divisors: d_k is the gcd of all k x k
// minors, and the k-th factor is d_k / d_{k-1}.
Integer det(std::vector<std::vector<Integer>> m) {
  // Laplace expansion; only used on tiny matrices.
  const std::size_t n = m.size();
  if (n == 1)
    return m[0][0];
  Integer total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Integer>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Integer> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j)
          row.push_back(m[i][k]);
      minor.push_back(row);
    }
    Integer term = m[0][j] * det(minor);
    total += (j % 2 == 0) ? term : Integer(-term);
  }
  return total;
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask)
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) == k) {
      std::vector<std::size_t> s;
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1)
          s.push_back(i);
      out.push_back(s);
    }
  return out;
}

std::vector<Integer> invariants_by_minors(const DenseMatrix &m) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::vector<Integer> out;
  Integer prev = 1;
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    Integer g = 0;
    for (const auto &rs : subsets(rows, k))
      for (const auto &cs : subsets(cols, k)) {
        std::vector<std::vector<Integer>> sub;
        for (auto r : rs) {
          std::vector<Integer> row;
          for (auto c : cs)
            row.push_back(m[r][c]);
          sub.push_back(row);
        }
        Integer d = det(sub);
        if (d < 0)
          d = -d;
        g = boost::multiprecision::gcd(g, d);
      }
    if (g == 0)
      break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

ChainComplex hollow_triangle() {
  SparseMatrix d1(3, 3);
  // edges 01, 02, 12
  d1.add(1, 0, 1);
  d1.add(0, 0, -1);
  d1.add(2, 1, 1);
  d1.add(0, 1, -1);
  d1.add(2, 2, 1);
  d1.add(1, 2, -1);
  return ChainComplex({3, 3}, {d1});
}

LoopFreeCategory circle_category() {
  // The fan of 1-simplices over their vertices: (C,1),(A,1),(B,1),(A,B) each
  // mapping to both of their vertices.
  std::vector<std::string> objects{"(C,1)", "(A,1)", "(B,1)", "(A,B)",
                                   "(C)",   "(1)",   "(A)",   "(B)"};
  std::vector<LoopFreeCategory::Arrow> arrows{
      {0, 4}, {0, 5}, {1, 6}, {1, 5}, {2, 7}, {2, 5}, {3, 6}, {3, 7}};
  return LoopFreeCategory(objects, arrows, {});
}

} // namespace

TEST_CASE("smith normal form matches determinantal divisors") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> entry(-6, 6);
  std::uniform_int_distribution<std::size_t> dim(1, 4);
  for (int iter = 0; iter < 300; ++iter) {
    std::size_t r = dim(rng), c = dim(rng);
    DenseMatrix m(r, std::vector<Integer>(c));
    for (auto &row : m)
      for (auto &x : row)
        x = entry(rng) * (iter % 3 == 0 ? 2 : 1);
    auto expected = invariants_by_minors(m);
    auto got = smith_invariants(m);
    CHECK(got == expected);
    for (std::size_t i = 1; i < got.size(); ++i)
      CHECK(got[i] % got[i - 1] == 0);

    SparseMatrix s(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        s.add(i, j, m[i][j].convert_to<std::int64_t>());
    auto inv = matrix_invariants(s);
    CHECK(inv.rank == expected.size());
    std::vector<Integer> tors;
    for (const auto &d : expected)
      if (d > 1)
        tors.push_back(d);
    CHECK(inv.torsion == tors);
  }
}

TEST_CASE("known torsion") {
  // Z/2 (+) Z/6 from diag(2, 6) and the 2x2 matrix [[2,4],[6,8]] ~ diag(2,4).
  CHECK(smith_invariants({{2, 0}, {0, 6}}) == std::vector<Integer>{2, 6});
  CHECK(smith_invariants({{2, 4}, {6, 8}}) == std::vector<Integer>{2, 4});
  CHECK(smith_invariants({{0, 0}, {0, 0}}).empty());
  auto g = direct_sum({{0, {2}}, {1, {3}}, {0, {4}}});
  CHECK(g.betti == 1);
  CHECK(g.torsion == std::vector<Integer>{2, 12});
  CHECK(to_string(g) == "Z (+) Z/2 (+) Z/12");
  CHECK(to_record(g) == "1;2,12");
  CHECK(to_string(HomologyGroup{}) == "0");
  CHECK(to_string(HomologyGroup::free(3)) == "Z^3");
}

TEST_CASE("large entries fall back to arbitrary precision") {
  SparseMatrix m(2, 2);
  const std::int64_t big = std::int64_t{1} << 40;
  m.add(0, 0, big);
  m.add(0, 1, big + 1);
  m.add(1, 0, big - 1);
  m.add(1, 1, big);
  // det = big^2 - (big^2 - 1) = 1
  auto inv = matrix_invariants(m);
  CHECK(inv.rank == 2);
  CHECK(inv.torsion.empty());
}

TEST_CASE("homology of small complexes") {
  ChainComplex empty;
  CHECK(homology(empty, 0, false).betti == 0);
  CHECK(homology(empty, 0, true).betti == 0);

  auto tri = hollow_triangle();
  CHECK(homology(tri, 0, false) == HomologyGroup::free(1));
  CHECK(homology(tri, 1, false) == HomologyGroup::free(1));
  CHECK(homology(tri, 0, true).is_zero());
  CHECK(homology(tri, 2, false).is_zero());
  CHECK_THROWS_AS(homology(tri, -1, false), DegreeOutOfRange);

  ChainComplex points({2}, {});
  CHECK(homology(points, 0, true) == HomologyGroup::free(1));
  CHECK(homology(points, 0, false) == HomologyGroup::free(2));

  // RP^2-like torsion: a single 2-cell attached by degree 2.
  SparseMatrix d1(1, 1), d2(1, 1);
  d2.add(0, 0, 2);
  ChainComplex rp2({1, 1, 1}, {d1, d2});
  CHECK(homology(rp2, 1, false).torsion == std::vector<Integer>{2});
  CHECK(homology(rp2, 2, false).is_zero());
}

TEST_CASE("chain complex validation") {
  SparseMatrix d1(1, 2), d2(2, 1);
  d1.add(0, 0, 1);
  d1.add(0, 1, 1);
  d2.add(0, 0, 1);
  d2.add(1, 0, 1);
  CHECK_THROWS_AS(ChainComplex({1, 2, 1}, {d1, d2}), InvalidComplex);
  CHECK_THROWS_AS(ChainComplex({1, 3}, {d1}), InvalidComplex);
}

TEST_CASE("nerves") {
  LoopFreeCategory discrete({"x", "y"}, {}, {});
  auto n0 = nerve(discrete);
  CHECK(n0.length() == 1);
  CHECK(n0.rank(0) == 2);

  auto chain = LoopFreeCategory::from_poset(fixtures::two_chain());
  auto h = all_homology(nerve(chain), false);
  CHECK(h[0] == HomologyGroup::free(1));
  CHECK(h[1].is_zero());

  auto circle = nerve(circle_category());
  CHECK(circle.rank(0) == 8);
  CHECK(circle.rank(1) == 8);
  CHECK(homology(circle, 0, false) == HomologyGroup::free(1));
  CHECK(homology(circle, 1, false) == HomologyGroup::free(1));

  CHECK_THROWS_AS(LoopFreeCategory({"x"}, {{0, 0}}, {}), CyclicCategory);
  CHECK_THROWS_AS(LoopFreeCategory({"x", "y"}, {{0, 1}, {1, 0}}, {}),
                  CyclicCategory);
  CHECK_THROWS_AS(LoopFreeCategory({"x", "y", "z"}, {{0, 1}, {1, 2}}, {}),
                  InvalidComplex);
}

TEST_CASE("order complex homology") {
  auto p = fixtures::pentagon();
  OrderComplex up(p.strict_upper_set(p.index_of("0")));
  for (const auto &g : all_homology(complex_of_order_complex(up), true))
    CHECK(g.is_zero());

  auto anti = all_homology(
      complex_of_order_complex(OrderComplex(fixtures::antichain())), true);
  CHECK(anti[0] == HomologyGroup::free(1));

  for (const auto &g : all_homology(
           complex_of_order_complex(OrderComplex(fixtures::three_chain())),
           true))
    CHECK(g.is_zero());
}

TEST_CASE("nerve of a poset agrees with its order complex; relabelling "
          "invariance; cones are acyclic") {
  std::mt19937_64 rng(3);
  for (int iter = 0; iter < 120; ++iter) {
    auto p = fixtures::random_poset(rng, 1 + iter % 7, 0.4);
    auto via_nerve = all_homology(nerve(LoopFreeCategory::from_poset(p)), false);
    auto via_complex = all_homology(complex_of_order_complex(OrderComplex(p)),
                                    false);
    CHECK(via_nerve == via_complex);

    // Relabel elements in reverse order; homology must not change.
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < p.size(); ++i)
      labels.push_back("z" + std::to_string(p.size() - i));
    std::vector<std::pair<std::string, std::string>> rel;
    for (const auto &[a, b] : p.strict_pairs())
      rel.emplace_back(labels[a], labels[b]);
    auto q = Poset::from_relations(labels, rel);
    CHECK(all_homology(complex_of_order_complex(OrderComplex(q)), false) ==
          via_complex);

    if (auto b = p.bounds())
      for (Element a = 0; a < p.size(); ++a)
        if (a != b->second)
          for (const auto &g : all_homology(
                   complex_of_order_complex(OrderComplex(p.strict_upper_set(a))),
                   true))
            CHECK(g.is_zero());
  }
}
