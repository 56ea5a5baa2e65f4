#include "fixtures.hpp"

#include "flowhom/error.hpp"
#include "flowhom/refine.hpp"

#include <doctest.h>

using namespace flowhom;

namespace {

Poset chain3() {
  return Poset::from_relations({"0", "A", "1"}, {{"0", "A"}, {"A", "1"}});
}

TMorphism inclusion(const Poset &source, const Poset &target) {
  std::vector<std::pair<std::string, std::string>> sends;
  for (const auto &l : source.labels())
    sends.emplace_back(l, l);
  return t_morphism_from_labels(source, target, sends);
}

} // namespace

TEST_CASE("T-morphism validation") {
  auto two = fixtures::two_chain();
  CHECK(validate_t_morphism(inclusion(two, chain3())).valid);
  CHECK(validate_t_morphism(inclusion(two, fixtures::diamond())).valid);

  auto bad = t_morphism_from_labels(two, chain3(), {{"0", "0"}, {"1", "A"}});
  auto v = validate_t_morphism(bad);
  CHECK_FALSE(v.valid);
  CHECK(v.condition == 3);

  auto flipped = t_morphism_from_labels(two, chain3(), {{"0", "1"}, {"1", "0"}});
  CHECK(validate_t_morphism(flipped).condition == 2);

  auto unbounded = inclusion(fixtures::antichain(), fixtures::antichain());
  CHECK(validate_t_morphism(unbounded).condition == 1);

  CHECK_THROWS_AS(t_morphism_from_labels(two, chain3(), {{"0", "Q"}}),
                  UnknownLabel);
}

TEST_CASE("embeddings") {
  auto host = flow_of_poset(fixtures::pentagon());
  auto e = identity_embedding(host, fixtures::pentagon());
  CHECK(validate_embedding(host, e).valid);

  // Two different paths of glob(2) cannot both be chosen consistently with
  // a longer chain, but a single pair is fine.
  auto g = glob(2);
  BallEmbedding first{fixtures::two_chain(), {0, 1}, {{{0, 1}, 0}}};
  CHECK(validate_embedding(g, first).valid);

  FlowPresentation p;
  for (auto s : {"0", "m", "1"})
    p.add_state(s);
  p.add_generator("a", "0", "m");
  p.add_generator("b", "m", "1");
  p.add_generator("c", "0", "1");
  auto x = elaborate(p);
  BallEmbedding broken{chain3(), {0, 1, 2}, {}};
  broken.path_choice[{0, 2}] = x.class_of({0});
  broken.path_choice[{2, 1}] = x.class_of({1});
  broken.path_choice[{0, 1}] = x.class_of({2});
  auto v = validate_embedding(x, broken);
  CHECK_FALSE(v.valid);
  CHECK(v.condition == 4);

  BallEmbedding partial{chain3(), {0, 1, 2}, {}};
  partial.path_choice[{0, 2}] = x.class_of({0});
  partial.path_choice[{2, 1}] = x.class_of({1});
  complete_path_choice(x, partial);
  CHECK(validate_embedding(x, partial).valid);
  CHECK(partial.path_choice.at({0, 1}) == x.class_of({0, 1}));

  BallEmbedding reversed{fixtures::two_chain(), {1, 0}, {}};
  CHECK(validate_embedding(g, reversed).condition == 2);
}

TEST_CASE("refining the two-chain") {
  auto two = fixtures::two_chain();
  auto x = flow_of_poset(two);
  auto r = refine_pushout(x, inclusion(two, chain3()), identity_embedding(x, two));
  CHECK(r.refined.num_states() == 3);
  CHECK(r.refined.order() == chain3());
  CHECK(is_full_directed_ball(r.refined));
  CHECK(r.new_states == std::vector<State>{r.refined.state_index("A")});

  CHECK(surrounded(r.refined, {0, 1, 2}, r.state_correspondence));
  CHECK(surrounded(r.refined, {0}, {0, 1}));

  auto report = check_invariance(x, r);
  CHECK(report.passed());
  CHECK(report.host_minus.degree(0) == HomologyGroup::free(1));
  CHECK(report.refined_minus.degree(0) == HomologyGroup::free(1));
}

TEST_CASE("refining one branch of a fork") {
  auto fork = fixtures::fork();
  auto x = flow_of_poset(fork);
  auto ball = Poset::from_relations({"0", "a"}, {{"0", "a"}});
  auto target = Poset::from_relations({"0", "m", "a"}, {{"0", "m"}, {"m", "a"}});
  auto r = refine_pushout(x, inclusion(ball, target), identity_embedding(x, ball));
  auto expected = Poset::from_relations(
      {"0", "a", "b", "m"}, {{"0", "m"}, {"m", "a"}, {"0", "b"}});
  CHECK(r.refined.order() == expected);
  for (State s = 0; s < 4; ++s)
    for (State t = 0; t < 4; ++t)
      CHECK(r.refined.paths(s, t).size() == (expected.less(s, t) ? 1u : 0u));
  auto report = check_invariance(x, r);
  CHECK(report.passed());
  CHECK(report.host_minus.degree(1) == HomologyGroup::free(1));
  CHECK(report.refined_minus.degree(1) == HomologyGroup::free(1));
}

TEST_CASE("refining one path of a globe") {
  auto g = glob(2);
  auto two = fixtures::two_chain();
  BallEmbedding e{two, {0, 1}, {{{0, 1}, g.paths(0, 1)[0]}}};
  auto r = refine_pushout(g, inclusion(two, chain3()), e);
  CHECK(r.refined.num_states() == 3);
  CHECK(r.refined.paths(r.refined.state_index("0"), r.refined.state_index("1"))
            .size() == 2);
  auto report = check_invariance(g, r);
  CHECK(report.passed());
  CHECK(report.host_minus.degree(1) == HomologyGroup::free(1));
  CHECK(report.refined_minus.degree(1) == HomologyGroup::free(1));
}

TEST_CASE("invalid refinements") {
  auto two = fixtures::two_chain();
  auto x = flow_of_poset(two);
  auto bad = t_morphism_from_labels(two, chain3(), {{"0", "0"}, {"1", "A"}});
  CHECK_THROWS_AS(refine_pushout(x, bad, identity_embedding(x, two)),
                  EmbeddingInvalid);
  CHECK_THROWS_AS(refine_pushout(x, inclusion(chain3(), chain3()),
                                 identity_embedding(x, two)),
                  EmbeddingInvalid);
}

TEST_CASE("surrounded") {
  auto x = flow_of_poset(fixtures::fork());
  CHECK(surrounded(x, {0}, {0, 1}));
  CHECK_FALSE(surrounded(x, {1}, {0}));
  CHECK_FALSE(surrounded(x, {2}, {1}));
}

TEST_CASE("identity refinement returns the host") {
  Rng rng(12);
  for (int iter = 0; iter < 40; ++iter) {
    auto inst = random_refinement_instance(rng, 10);
    auto p1 = inst.morphism.source;
    auto r = refine_pushout(inst.host, inclusion(p1, p1), inst.embedding);
    CHECK(r.new_states.empty());
    CHECK(r.refined.states() == inst.host.states());
    CHECK(is_isomorphic_extension(inst.host, r.refined));
  }
}

TEST_CASE("random refinements preserve branching homology") {
  Rng rng(2024);
  for (int iter = 0; iter < 60; ++iter) {
    auto inst = random_refinement_instance(rng);
    CHECK(validate_t_morphism(inst.morphism).valid);
    CHECK(validate_embedding(inst.host, inst.embedding).valid);
    auto r = refine_pushout(inst.host, inst.morphism, inst.embedding);
    CHECK(r.refined.num_states() == inst.host.num_states() +
                                        inst.morphism.target.size() -
                                        inst.morphism.source.size());
    CHECK(r.refined.num_states() <= 12);
    auto report = check_invariance(inst.host, r);
    CHECK(report.passed());
    for (const auto &f : report.failures)
      MESSAGE(f);
  }
}

TEST_CASE("two refinements in a row") {
  // 0<1 refined to 0<A<1, then 0<A refined to 0<B<A, equals 0<B<A<1 at once.
  auto two = fixtures::two_chain();
  auto x = flow_of_poset(two);
  auto step1 = refine_pushout(x, inclusion(two, chain3()), identity_embedding(x, two));
  auto ball = Poset::from_relations({"0", "A"}, {{"0", "A"}});
  auto mid = Poset::from_relations({"0", "B", "A"}, {{"0", "B"}, {"B", "A"}});
  BallEmbedding e{ball,
                  {step1.refined.state_index("0"), step1.refined.state_index("A")},
                  {{{0, 1}, step1.refined.paths(step1.refined.state_index("0"),
                                                step1.refined.state_index("A"))[0]}}};
  auto step2 = refine_pushout(step1.refined, inclusion(ball, mid), e);
  auto full = Poset::from_relations({"0", "A", "B", "1"},
                                    {{"0", "B"}, {"B", "A"}, {"A", "1"}});
  auto once = refine_pushout(x, inclusion(two, full), identity_embedding(x, two));
  CHECK(step2.refined.order() == once.refined.order());
  for (State s = 0; s < 4; ++s)
    for (State t = 0; t < 4; ++t)
      CHECK(step2.refined.paths(s, t).size() == once.refined.paths(s, t).size());
  CHECK(homology_table(step2.refined, Sign::minus)
            .same_groups(homology_table(once.refined, Sign::minus)));
}
