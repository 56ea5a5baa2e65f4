#include "fixtures.hpp"

#include "flowhom/branching.hpp"
#include "flowhom/error.hpp"
#include "flowhom/random.hpp"

#include <doctest.h>

#include <algorithm>

using namespace flowhom;

namespace {

State st(const Flow &x, const char *label) { return x.state_index(label); }

// Homology of the order complex of the states strictly above `a`.
std::vector<HomologyGroup> upper_chain_homology(const Flow &x, State a) {
  return all_homology(
      complex_of_order_complex(OrderComplex(x.order().strict_upper_set(a))),
      false);
}

} // namespace

TEST_CASE("germ spaces") {
  auto fork = flow_of_poset(fixtures::fork());
  auto g = germ_space(fork, Sign::minus);
  CHECK(g.size() == 2);
  CHECK(g.fiber(st(fork, "0")).size() == 2);

  auto pent = flow_of_poset(fixtures::pentagon());
  auto h = germ_space(pent, Sign::minus);
  CHECK(h.fiber(st(pent, "0")).size() == 1);
  CHECK(h.fiber(st(pent, "A")).size() == 1);
  CHECK(h.fiber(st(pent, "1")).empty());
  auto hp = germ_space(pent, Sign::plus);
  CHECK(hp.fiber(st(pent, "1")).size() == 1);
  CHECK(hp.fiber(st(pent, "0")).empty());

  auto g2 = germ_space(glob(2), Sign::minus);
  CHECK(g2.size() == 2);
  CHECK(g2.fiber(0).size() == 2);

  // Every composite shares its germ with its first (minus) or last (plus)
  // factor.
  Rng rng(21);
  for (int iter = 0; iter < 100; ++iter) {
    auto x = random_flow(rng);
    auto gm = germ_space(x, Sign::minus);
    auto gp = germ_space(x, Sign::plus);
    for (PathClass c = 0; c < x.num_classes(); ++c) {
      CHECK(gm.anchor[gm.germ_of[c]] == x.source(c));
      CHECK(gp.anchor[gp.germ_of[c]] == x.target(c));
      for (State t = 0; t < x.num_states(); ++t)
        for (PathClass d : x.paths(x.target(c), t)) {
          CHECK(gm.germ_of[c] == gm.germ_of[x.compose(c, d)]);
          CHECK(gp.germ_of[d] == gp.germ_of[x.compose(c, d)]);
        }
    }
  }
}

TEST_CASE("branch diagram of the bounded example") {
  auto pent = flow_of_poset(fixtures::pentagon());
  auto d = branch_diagram(pent, st(pent, "0"), Sign::minus);
  CHECK(d.num_simplices() == 9);
  auto top = d.find_simplex({st(pent, "A"), st(pent, "B"), st(pent, "1")});
  REQUIRE(top.has_value());
  CHECK(d.size(*top) == 1);
  CHECK(d.simplex_name(*top) == "(A,B,1)");
  CHECK(d.element_name(*top, 0) == "(u(0,A),u(A,B),u(B,1))");
  auto ab = *d.find_simplex({st(pent, "A"), st(pent, "B")});
  CHECK(d.face(*top, 2) == ab);
  CHECK(d.element_name(d.face(*top, 0), d.apply_face(*top, 0, 0)) ==
        "(u(0,A).u(A,B),u(B,1))");
  CHECK(check_simplicial_identities(d));
  CHECK(diagram_colimit(d).size == 1);

  auto g = glob(2);
  auto dg = branch_diagram(g, 0, Sign::minus);
  CHECK(dg.num_simplices() == 1);
  CHECK(dg.size(0) == 2);

  auto d1 = branch_diagram(pent, st(pent, "1"), Sign::minus);
  CHECK(d1.empty());
  CHECK(diagram_colimit(d1).size == 0);

  auto fork = flow_of_poset(fixtures::fork());
  CHECK(diagram_colimit(branch_diagram(fork, 0, Sign::minus)).size == 2);

  CHECK_THROWS_AS(branch_diagram(pent, 17, Sign::minus), UnknownState);
}

TEST_CASE("final subdiagram") {
  auto pent = flow_of_poset(fixtures::pentagon());
  auto d = branch_diagram(pent, st(pent, "0"), Sign::minus);
  CHECK(final_subdiagram_check(d));
  auto k = restricted_index_category(d);
  CHECK(k.num_objects() == 8);
  CHECK(k.num_arrows() == 8);
  auto h = all_homology(nerve(k), false);
  CHECK(h[0] == HomologyGroup::free(1));
  CHECK(h[1] == HomologyGroup::free(1));

  CHECK(final_subdiagram_check(branch_diagram(glob(3), 0, Sign::minus)));
  auto diamond = flow_of_poset(fixtures::diamond());
  CHECK(final_subdiagram_check(branch_diagram(diamond, 0, Sign::minus)));

  Rng rng(4);
  for (int iter = 0; iter < 100; ++iter) {
    auto x = random_flow(rng);
    for (State a = 0; a < x.num_states(); ++a)
      CHECK(final_subdiagram_check(branch_diagram(x, a, Sign::minus)));
  }
}

TEST_CASE("homotopy branching spaces") {
  auto pent = flow_of_poset(fixtures::pentagon());
  for (auto label : {"0", "A", "B", "C"}) {
    auto h = hbranch_homology_at(pent, st(pent, label), Sign::minus);
    CHECK_FALSE(h.empty);
    CHECK(h.acyclic());
  }
  CHECK(hbranch_homology_at(pent, st(pent, "1"), Sign::minus).empty);
  CHECK(hbranch_homology_at(pent, st(pent, "0"), Sign::plus).empty);
  CHECK(hbranch_homology_at(pent, st(pent, "1"), Sign::plus).acyclic());

  auto fork = flow_of_poset(fixtures::fork());
  auto h = hbranch_homology_at(fork, 0, Sign::minus);
  CHECK(h.degree(0) == HomologyGroup::free(2));
  CHECK(h.degree(0, true) == HomologyGroup::free(1));
}

TEST_CASE("homology tables") {
  auto pent = flow_of_poset(fixtures::pentagon());
  for (Sign s : {Sign::minus, Sign::plus}) {
    auto t = homology_table(pent, s);
    CHECK(t.degree(0) == HomologyGroup::free(1));
    for (std::size_t n = 1; n < 6; ++n)
      CHECK(t.degree(n).is_zero());
  }
  auto fork = homology_table(flow_of_poset(fixtures::fork()), Sign::minus);
  CHECK(fork.degree(0) == HomologyGroup::free(2));
  CHECK(fork.degree(1) == HomologyGroup::free(1));
  CHECK(fork.degree(2).is_zero());

  auto g = homology_table(glob(2), Sign::minus);
  CHECK(g.degree(0) == HomologyGroup::free(1));
  CHECK(g.degree(1) == HomologyGroup::free(1));
}

TEST_CASE("colimit of the diagram is the germ fiber") {
  Rng rng(99);
  for (int iter = 0; iter < 150; ++iter) {
    auto x = random_flow(rng);
    for (State a = 0; a < x.num_states(); ++a)
      for (Sign s : {Sign::minus, Sign::plus}) {
        auto d = branch_diagram(x, a, s);
        CHECK(check_simplicial_identities(d));
        auto cmp = compare_with_germs(x, d);
        CHECK(cmp.well_defined);
        CHECK(cmp.bijective);
        CHECK(cmp.colimit_size == cmp.fiber_size);
      }
  }
}

TEST_CASE("element complex agrees with the nerve of the category of "
          "elements") {
  Rng rng(8);
  RandomFlowOptions small;
  small.max_states = 5;
  int compared = 0;
  for (int iter = 0; iter < 80; ++iter) {
    auto x = random_flow(rng, small);
    for (State a = 0; a < x.num_states(); ++a) {
      auto d = branch_diagram(x, a, Sign::minus);
      if (d.empty() || d.total_size() > 40)
        continue;
      auto via_nerve = all_homology(nerve(category_of_elements(d)), false);
      auto h = hbranch_homology(d);
      std::size_t top = std::max(via_nerve.size(), h.groups.size());
      for (std::size_t n = 0; n < top; ++n)
        CHECK(h.degree(n) ==
              (n < via_nerve.size() ? via_nerve[n] : HomologyGroup{}));
      ++compared;
    }
  }
  CHECK(compared > 50);
}

TEST_CASE("branching homology properties on random flows") {
  Rng rng(123);
  for (int iter = 0; iter < 150; ++iter) {
    auto x = random_flow(rng);
    auto [initial, final] = initial_final_states(x);
    auto minus = homology_table(x, Sign::minus);
    auto plus = homology_table(x, Sign::plus);
    CHECK(minus.degree(0) == HomologyGroup::free(final.size()));
    CHECK(plus.degree(0) == HomologyGroup::free(initial.size()));

    auto op = opposite_flow(x);
    auto dual = homology_table(op, Sign::minus);
    CHECK(plus.same_groups(dual));
    for (State a = 0; a < x.num_states(); ++a) {
      CHECK(plus.per_state[a].groups == dual.per_state[a].groups);
      CHECK(plus.per_state[a].empty == dual.per_state[a].empty);
    }
  }
}

TEST_CASE("singleton path sets give the order complex above a state") {
  Rng rng(77);
  for (int iter = 0; iter < 100; ++iter) {
    auto p = random_poset(rng, 7);
    auto x = flow_of_poset(p);
    for (State a = 0; a < x.num_states(); ++a) {
      auto h = hbranch_homology_at(x, a, Sign::minus);
      auto expected = upper_chain_homology(x, a);
      CHECK(h.empty == expected.empty());
      if (!h.empty)
        CHECK(h.groups == expected);
    }
  }
}

TEST_CASE("full directed balls have contractible branching spaces") {
  Rng rng(5);
  for (int iter = 0; iter < 100; ++iter) {
    auto x = flow_of_poset(random_bounded_poset(rng, 8));
    REQUIRE(is_full_directed_ball(x));
    auto [lo, hi] = *x.order().bounds();
    for (State a = 0; a < x.num_states(); ++a) {
      auto minus = hbranch_homology_at(x, a, Sign::minus);
      auto plus = hbranch_homology_at(x, a, Sign::plus);
      CHECK(minus.empty == (a == hi));
      CHECK(plus.empty == (a == lo));
      if (a != hi)
        CHECK(minus.acyclic());
      if (a != lo)
        CHECK(plus.acyclic());
    }
  }
}
