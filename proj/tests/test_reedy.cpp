#include "fixtures.hpp"

#include "flowhom/audit.hpp"
#include "flowhom/error.hpp"
#include "flowhom/random.hpp"
#include "flowhom/reedy.hpp"

#include <doctest.h>

using namespace flowhom;

namespace {

std::size_t chain_index(const ReedyStructure &r,
                        std::initializer_list<const char *> labels) {
  std::vector<Element> c;
  for (auto l : labels)
    c.push_back(r.poset().index_of(l));
  return *r.find(c);
}

std::size_t simplex(const BranchDiagram &d,
                    std::initializer_list<const char *> labels) {
  std::vector<State> s;
  for (auto l : labels)
    s.push_back(d.flow().state_index(l));
  return *d.find_simplex(s);
}

} // namespace

TEST_CASE("degrees and generators") {
  auto r = reedy_structure(fixtures::pentagon(), "0");
  CHECK(r.size() == 9);
  auto abt = chain_index(r, {"A", "B", "1"});
  auto at = chain_index(r, {"A", "1"});
  auto t = chain_index(r, {"1"});
  auto a = chain_index(r, {"A"});
  CHECK(r.degree(abt) == 3);
  CHECK(r.degree(t) == 9);
  CHECK(r.degree(at) == 5);
  CHECK(r.degree(a) == 1);
  CHECK(r.name(abt) == "(A,B,1)");

  bool saw_plus = false, saw_minus = false;
  for (const auto &g : r.generators()) {
    if (g.source == at && g.target == t) {
      CHECK(g.plus);
      CHECK(g.face == 0);
      saw_plus = true;
    }
    if (g.source == at && g.target == a) {
      CHECK_FALSE(g.plus);
      saw_minus = true;
    }
  }
  CHECK(saw_plus);
  CHECK(saw_minus);
  CHECK_THROWS_AS(reedy_structure(fixtures::pentagon(), "Z"), UnknownLabel);
}

TEST_CASE("factorization") {
  auto r = reedy_structure(fixtures::pentagon(), "0");
  auto abt = chain_index(r, {"A", "B", "1"});
  auto a = chain_index(r, {"A"});
  auto bt = chain_index(r, {"B", "1"});

  auto [m0, p0] = factorize(r, {abt, abt});
  CHECK(m0 == ReedyStructure::Arrow{abt, abt});
  CHECK(p0 == ReedyStructure::Arrow{abt, abt});

  auto [m1, p1] = factorize(r, {abt, a});
  CHECK(m1 == ReedyStructure::Arrow{abt, a});
  CHECK(p1 == ReedyStructure::Arrow{a, a});

  auto [m2, p2] = factorize(r, {abt, bt});
  CHECK(m2 == ReedyStructure::Arrow{abt, abt});
  CHECK(p2 == ReedyStructure::Arrow{abt, bt});

  CHECK_THROWS_AS(factorize(r, {a, bt}), NotAnArrow);
}

TEST_CASE("matching categories") {
  auto r = reedy_structure(fixtures::pentagon(), "0");
  auto tower = matching_category(r, chain_index(r, {"A", "B", "1"}));
  CHECK(tower.num_objects() == 2);
  CHECK(tower.num_arrows() == 1);
  CHECK(tower.objects()[tower.arrows()[0].source] == "(A,B)");
  CHECK(tower.objects()[tower.arrows()[0].target] == "(A)");
  CHECK(matching_category(r, chain_index(r, {"A"})).num_objects() == 0);
  auto single = matching_category(r, chain_index(r, {"A", "B"}));
  CHECK(single.num_objects() == 1);
  CHECK(single.objects()[0] == "(A)");

  auto chain = reedy_structure(
      Poset::from_relations({"0", "a", "b", "c", "d"},
                            {{"0", "a"}, {"a", "b"}, {"b", "c"}, {"c", "d"}}),
      "0");
  auto long_tower = matching_category(chain, chain_index(chain, {"a", "b", "c", "d"}));
  CHECK(long_tower.num_objects() == 3);
  CHECK(long_tower.num_arrows() == 3);
}

TEST_CASE("Reedy axioms on random bounded posets") {
  Rng rng(31);
  for (int iter = 0; iter < 60; ++iter) {
    auto p = random_bounded_poset(rng, 7);
    for (Element base = 0; base < p.size(); ++base) {
      ReedyStructure r(p, base);
      for (const auto &g : r.generators()) {
        if (g.plus)
          CHECK(r.degree(g.target) > r.degree(g.source));
        else
          CHECK(r.degree(g.target) < r.degree(g.source));
      }
      for (const auto &f : r.arrows()) {
        if (f.source == f.target)
          continue;
        if (r.is_plus(f))
          CHECK(r.degree(f.target) > r.degree(f.source));
        if (r.is_minus(f))
          CHECK(r.degree(f.target) < r.degree(f.source));
        // Exactly one (minus, plus) factorization.
        std::size_t count = 0;
        for (std::size_t mid = 0; mid < r.size(); ++mid)
          if (r.is_minus({f.source, mid}) && r.is_plus({mid, f.target}))
            ++count;
        CHECK(count == 1);
        auto [m, q] = factorize(r, f);
        CHECK(r.is_minus(m));
        CHECK(r.is_plus(q));
        CHECK(r.compose(m, q) == f);
      }
    }
    for (Element a = 0; a < p.size(); ++a)
      for (Element b = 0; b < p.size(); ++b)
        for (Element c = 0; c < p.size(); ++c)
          if (p.less(a, b) && p.less(b, c)) {
            auto ab = p.ell(a, b), bc = p.ell(b, c), ac = p.ell(a, c);
            CHECK(ab + bc <= ac);
            CHECK(ab * ab + bc * bc < ac * ac);
          }
  }
}

TEST_CASE("pushout products") {
  SetMap empty_to_point{0, 1, {}};
  auto f = pushout_product({empty_to_point, empty_to_point});
  CHECK(f.domain == 0);
  CHECK(f.codomain == 1);

  SetMap incl{2, 3, {0, 1}};
  auto g = pushout_product({incl, incl});
  CHECK(g.domain == 8);
  CHECK(g.codomain == 9);
  CHECK(g.injective());

  SetMap h{3, 2, {1, 0, 1}};
  auto single = pushout_product({h});
  CHECK(single.domain == 3);
  CHECK(single.map == h.map);

  CHECK(cube_matches_iterated({incl, incl}));
  CHECK(cube_matches_iterated({incl, h, empty_to_point}));
}

TEST_CASE("cube calculus on random maps") {
  Rng rng(2);
  for (int iter = 0; iter < 400; ++iter) {
    std::vector<SetMap> fs;
    std::size_t p = uniform(rng, 1, 4);
    for (std::size_t i = 0; i < p; ++i)
      fs.push_back(random_set_map(rng, 3));
    CHECK(CubeDiagram(fs).check_functorial());
    CHECK(cube_matches_iterated(fs));
    // Pushout products of injections are injections.
    bool all_injective = true;
    for (const auto &f : fs)
      all_injective = all_injective && f.injective();
    if (all_injective)
      CHECK(pushout_product(fs).injective());

    auto d = random_set_diagram(rng), e = random_set_diagram(rng);
    CHECK(colimit_of_product_factors(d, e));
  }
}

TEST_CASE("latching objects") {
  auto pent = flow_of_poset(fixtures::pentagon());
  auto d = branch_diagram(pent, pent.state_index("0"), Sign::minus);
  CHECK(latching_object(d, simplex(d, {"A"})).size == 0);

  // Over (1): the chains (A,1), (B,1), (A,B,1) glue together, (C,1) stays
  // apart, and both classes land on the single path from 0 to 1.
  auto top = latching_object(d, simplex(d, {"1"}));
  CHECK(top.refinements.size() == 4);
  CHECK(top.size == 2);
  CHECK(top.to_vertex_set.codomain == 1);
  CHECK_FALSE(top.injective());
  CHECK_FALSE(check_latching_injective(d));

  auto two = flow_of_poset(fixtures::two_chain());
  auto d2 = branch_diagram(two, 0, Sign::minus);
  CHECK(latching_object(d2, 0).size == 0);
  CHECK(check_latching_injective(d2));

  CHECK(check_latching_injective(branch_diagram(pent, pent.state_index("1"),
                                                Sign::minus)));
  CHECK_THROWS_AS(latching_object(d, 99), UnknownSimplex);

  for (std::size_t s = 0; s < d.num_simplices(); ++s)
    CHECK(verify_latching_formula(d, s));
  auto dg = branch_diagram(glob(2), 0, Sign::minus);
  CHECK(verify_latching_formula(dg, 0));
  CHECK(check_latching_injective(dg));
}

TEST_CASE("restricted diagram has a non-injective latching map") {
  // The vertex-and-edge part of the diagram: the three edges ending at (1)
  // have no arrows between them, so their colimit has three points over a
  // one-point vertex set.
  auto pent = flow_of_poset(fixtures::pentagon());
  auto d = branch_diagram(pent, pent.state_index("0"), Sign::minus);
  auto one = simplex(d, {"1"});
  SetDiagram over;
  for (std::size_t s = 0; s < d.num_simplices(); ++s)
    if (d.dimension(s) == 1 && d.face(s, 0) == one)
      over.sizes.push_back(d.size(s));
  auto c = colimit(over);
  CHECK(c.size == 3);
  CHECK(d.size(one) == 1);
}

TEST_CASE("latching formula on random diagrams") {
  Rng rng(17);
  for (int iter = 0; iter < 60; ++iter) {
    auto x = iter % 2 == 0 ? flow_of_poset(random_bounded_poset(rng, 7))
                           : random_flow(rng);
    for (State a = 0; a < x.num_states(); ++a)
      for (Sign sign : {Sign::minus, Sign::plus}) {
        auto d = branch_diagram(x, a, sign);
        for (std::size_t s = 0; s < d.num_simplices(); ++s)
          CHECK(verify_latching_formula(d, s));
      }
  }
}

TEST_CASE("free flows have injective latching maps") {
  Rng rng(64);
  RandomFlowOptions free;
  free.max_relations = 0;
  free.max_states = 7;
  for (int iter = 0; iter < 80; ++iter) {
    auto x = random_flow(rng, free);
    for (State a = 0; a < x.num_states(); ++a)
      CHECK(check_latching_injective(branch_diagram(x, a, Sign::minus)));
  }
}
