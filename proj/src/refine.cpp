#include "flowhom/refine.hpp"

#include "flowhom/error.hpp"

#include <algorithm>
#include <set>

namespace flowhom {

namespace {

// a = c0 < c1 < ... < ck = b along covers, always taking the first usable
// cover.
std::vector<Element> cover_chain(const Poset &p, Element a, Element b) {
  std::vector<Element> chain{a};
  auto covers = p.covers();
  while (chain.back() != b)
    for (const auto &[c, d] : covers)
      if (c == chain.back() && p.less_equal(d, b)) {
        chain.push_back(d);
        break;
      }
  return chain;
}

Validation fail(int condition, std::string message) {
  return {false, condition, std::move(message)};
}

std::size_t generator_index(const Flow &x, const std::string &name) {
  const auto &gens = x.generators();
  for (std::size_t g = 0; g < gens.size(); ++g)
    if (gens[g].name == name)
      return g;
  throw UnknownLabel("no generator named " + name);
}

FlowPresentation::LabelWord label_word(const Flow &x, const Word &w) {
  FlowPresentation::LabelWord out;
  for (std::size_t g : w)
    out.push_back(x.generators()[g].name);
  return out;
}

} // namespace

Validation validate_t_morphism(const TMorphism &f) {
  const Poset &p = f.source, &q = f.target;
  if (!p.is_bounded())
    return fail(1, "source poset is not bounded");
  if (!q.is_bounded())
    return fail(1, "target poset is not bounded");
  if (f.map.size() != p.size())
    return fail(2, "map is not defined on every element");
  std::set<Element> seen;
  for (Element a = 0; a < p.size(); ++a) {
    if (f.map[a] >= q.size())
      return fail(2, "image of " + p.label(a) + " is not an element");
    if (!seen.insert(f.map[a]).second)
      return fail(2, "map is not one-to-one at " + p.label(a));
  }
  for (const auto &[a, b] : p.strict_pairs())
    if (!q.less(f.map[a], f.map[b]))
      return fail(2, p.label(a) + " < " + p.label(b) +
                         " is not sent to a strict inequality");
  auto [pmin, pmax] = *p.bounds();
  auto [qmin, qmax] = *q.bounds();
  if (f.map[pmin] != qmin)
    return fail(3, "minimum is not sent to the minimum");
  if (f.map[pmax] != qmax)
    return fail(3, "maximum is not sent to the maximum");
  return {};
}

TMorphism t_morphism_from_labels(
    Poset source, Poset target,
    const std::vector<std::pair<std::string, std::string>> &sends) {
  TMorphism f{std::move(source), std::move(target), {}};
  f.map.assign(f.source.size(), static_cast<Element>(-1));
  for (const auto &[a, b] : sends)
    f.map[f.source.index_of(a)] = f.target.index_of(b);
  return f;
}

Validation validate_embedding(const Flow &host, const BallEmbedding &e) {
  const Poset &p = e.ball;
  if (!p.is_bounded())
    return fail(1, "ball poset is not bounded");
  if (e.state_map.size() != p.size())
    return fail(2, "state map is not defined on every element");
  for (Element a = 0; a < p.size(); ++a)
    if (e.state_map[a] >= host.num_states())
      return fail(2, "image of " + p.label(a) + " is not a state");
  for (const auto &[a, b] : p.strict_pairs())
    if (!host.order().less(e.state_map[a], e.state_map[b]))
      return fail(2, p.label(a) + " < " + p.label(b) +
                         " is not sent to a strict inequality of states");
  for (const auto &[a, b] : p.strict_pairs()) {
    auto it = e.path_choice.find({a, b});
    if (it == e.path_choice.end())
      return fail(3, "no path chosen for " + p.label(a) + " < " + p.label(b));
    PathClass c = it->second;
    if (c >= host.num_classes() || host.source(c) != e.state_map[a] ||
        host.target(c) != e.state_map[b])
      return fail(3, "path chosen for " + p.label(a) + " < " + p.label(b) +
                         " has the wrong endpoints");
  }
  for (const auto &[a, b] : p.strict_pairs())
    for (Element c = 0; c < p.size(); ++c)
      if (p.less(b, c) &&
          host.compose(e.path_choice.at({a, b}), e.path_choice.at({b, c})) !=
              e.path_choice.at({a, c}))
        return fail(4, "path choice is not multiplicative along " +
                           p.label(a) + " < " + p.label(b) + " < " +
                           p.label(c));
  return {};
}

void complete_path_choice(const Flow &host, BallEmbedding &e) {
  const Poset &p = e.ball;
  for (const auto &[a, b] : p.strict_pairs()) {
    if (e.path_choice.count({a, b}))
      continue;
    auto chain = cover_chain(p, a, b);
    std::optional<PathClass> c;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      auto it = e.path_choice.find({chain[i], chain[i + 1]});
      if (it == e.path_choice.end())
        throw EmbeddingInvalid("no path chosen for " + p.label(chain[i]) +
                               " < " + p.label(chain[i + 1]));
      if (it->second >= host.num_classes())
        throw EmbeddingInvalid("path class out of range");
      try {
        c = c ? host.compose(*c, it->second) : it->second;
      } catch (const InvalidWord &) {
        throw EmbeddingInvalid("chosen paths along " + p.label(a) + " < " +
                               p.label(b) + " do not compose");
      }
    }
    e.path_choice[{a, b}] = *c;
  }
}

BallEmbedding identity_embedding(const Flow &host, const Poset &ball,
                                 const std::string &prefix) {
  BallEmbedding e{ball, {}, {}};
  for (Element a = 0; a < ball.size(); ++a)
    e.state_map.push_back(host.state_index(ball.label(a)));
  for (const auto &[a, b] : ball.strict_pairs()) {
    auto chain = cover_chain(ball, a, b);
    Word w;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
      w.push_back(generator_index(
          host, cover_generator_name(prefix, ball.label(chain[i]),
                                     ball.label(chain[i + 1]))));
    e.path_choice[{a, b}] = host.class_of(w);
  }
  return e;
}

RefinementResult refine_pushout(const Flow &host, const TMorphism &f,
                                const BallEmbedding &e) {
  if (auto v = validate_t_morphism(f); !v)
    throw EmbeddingInvalid("invalid poset map: " + v.message);
  if (!(e.ball == f.source))
    throw EmbeddingInvalid("the embedded ball is not the source of the map");
  if (auto v = validate_embedding(host, e); !v)
    throw EmbeddingInvalid("invalid embedding: " + v.message);

  const Poset &target = f.target;
  std::set<std::string> used(host.states().begin(), host.states().end());
  std::vector<std::string> label(target.size());
  std::vector<bool> image(target.size(), false);
  for (Element p = 0; p < f.source.size(); ++p) {
    label[f.map[p]] = host.state_label(e.state_map[p]);
    image[f.map[p]] = true;
  }
  for (Element q = 0; q < target.size(); ++q)
    if (!image[q]) {
      std::string l = target.label(q);
      while (used.count(l))
        l += "'";
      used.insert(l);
      label[q] = l;
    }

  std::vector<std::pair<std::string, std::string>> covers;
  for (const auto &[a, b] : target.covers())
    covers.emplace_back(label[a], label[b]);
  Poset glued = Poset::from_relations(label, covers);

  std::set<std::string> names;
  for (const auto &g : host.generators())
    names.insert(g.name);
  std::string prefix = "r";
  for (std::size_t k = 1;; ++k) {
    bool clash = false;
    for (const auto &[a, b] : covers)
      clash = clash || names.count(cover_generator_name(prefix, a, b));
    if (!clash)
      break;
    prefix = "r" + std::to_string(k);
  }

  FlowPresentation merged = host.presentation();
  FlowPresentation ball = presentation_of_poset(glued, prefix);
  for (Element q = 0; q < target.size(); ++q)
    if (!image[q])
      merged.add_state(label[q]);
  for (const auto &g : ball.generators)
    merged.generators.push_back(g);
  for (const auto &r : ball.relations)
    merged.relations.push_back(r);
  for (const auto &[a, b] : f.source.strict_pairs()) {
    auto lhs = label_word(host, host.representative(e.path_choice.at({a, b})));
    auto chain = cover_chain(glued, glued.index_of(label[f.map[a]]),
                             glued.index_of(label[f.map[b]]));
    FlowPresentation::LabelWord rhs;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
      rhs.push_back(cover_generator_name(prefix, glued.label(chain[i]),
                                         glued.label(chain[i + 1])));
    merged.add_relation(std::move(lhs), std::move(rhs));
  }

  RefinementResult r{elaborate(merged), merged, {}, {}, {}};
  for (State s = 0; s < host.num_states(); ++s)
    r.state_correspondence.push_back(r.refined.state_index(host.state_label(s)));
  for (Element q = 0; q < target.size(); ++q) {
    r.target_states.push_back(r.refined.state_index(label[q]));
    if (!image[q])
      r.new_states.push_back(r.target_states.back());
  }
  std::sort(r.new_states.begin(), r.new_states.end());
  return r;
}

bool surrounded(const Flow &x, const std::vector<State> &a,
                const std::vector<State> &b) {
  const Poset &order = x.order();
  for (State s : a) {
    if (std::find(b.begin(), b.end(), s) != b.end())
      continue;
    bool below = false, above = false;
    for (State t : b) {
      below = below || order.less(t, s);
      above = above || order.less(s, t);
    }
    if (!below || !above)
      return false;
  }
  return true;
}

bool is_isomorphic_extension(const Flow &x, const Flow &y) {
  if (x.states() != y.states() || x.num_classes() != y.num_classes())
    return false;
  std::vector<std::size_t> translate;
  for (const auto &g : x.generators()) {
    std::size_t h;
    try {
      h = generator_index(y, g.name);
    } catch (const UnknownLabel &) {
      return false;
    }
    if (y.generators()[h].source != g.source ||
        y.generators()[h].target != g.target)
      return false;
    translate.push_back(h);
  }
  std::vector<bool> hit(y.num_classes(), false);
  for (PathClass c = 0; c < x.num_classes(); ++c) {
    Word w;
    for (std::size_t g : x.representative(c))
      w.push_back(translate[g]);
    PathClass d = y.class_of(w);
    if (hit[d])
      return false;
    hit[d] = true;
  }
  return true;
}

bool same_homology(const SpaceHomology &a, const SpaceHomology &b) {
  if (a.empty != b.empty)
    return false;
  std::size_t top = std::max(a.groups.size(), b.groups.size());
  for (std::size_t n = 0; n < top; ++n)
    if (a.degree(n) != b.degree(n))
      return false;
  return true;
}

InvarianceReport check_invariance(const Flow &host, const RefinementResult &r) {
  const Flow &y = r.refined;
  InvarianceReport out;
  std::vector<State> all(y.num_states());
  for (State s = 0; s < all.size(); ++s)
    all[s] = s;
  out.surrounded = surrounded(y, all, r.state_correspondence);
  if (!out.surrounded)
    for (State s : all)
      if (!surrounded(y, {s}, r.state_correspondence))
        out.failures.push_back("state " + y.state_label(s) +
                               " is not surrounded by the host states");

  out.host_minus = homology_table(host, Sign::minus);
  out.host_plus = homology_table(host, Sign::plus);
  out.refined_minus = homology_table(y, Sign::minus);
  out.refined_plus = homology_table(y, Sign::plus);

  struct Side {
    Sign sign;
    const HomologyTable &before;
    const HomologyTable &after;
  };
  for (const Side &side : {Side{Sign::minus, out.host_minus, out.refined_minus},
                           Side{Sign::plus, out.host_plus, out.refined_plus}}) {
    const std::string tag = "hop^" + to_string(side.sign) + "_";
    for (State s = 0; s < host.num_states(); ++s)
      if (!same_homology(side.before.per_state[s],
                         side.after.per_state[r.state_correspondence[s]])) {
        out.old_states = false;
        out.failures.push_back(tag + host.state_label(s) +
                               " changes under refinement");
      }
    for (State s : r.new_states) {
      const SpaceHomology &h = side.after.per_state[s];
      if (!h.acyclic()) {
        out.new_states = false;
        out.failures.push_back(tag + y.state_label(s) +
                               (h.empty ? " is empty" : " is not acyclic"));
      }
    }
    std::size_t top = std::max(side.before.groups.size(),
                               side.after.groups.size());
    for (std::size_t n = 0; n < top; ++n)
      if (side.before.degree(n) != side.after.degree(n)) {
        out.tables = false;
        out.failures.push_back("H_" + std::to_string(n) + "^" +
                               to_string(side.sign) + " differs: " +
                               to_string(side.before.degree(n)) + " vs " +
                               to_string(side.after.degree(n)));
      }
  }
  return out;
}

TMorphism random_t_morphism(Rng &rng, const Poset &source,
                            std::size_t max_target) {
  auto [bottom, top] = *source.bounds();
  std::vector<Element> order(source.size());
  for (Element a = 0; a < source.size(); ++a)
    order[a] = a;
  auto below = [&](Element a) { return source.strictly_below(a).size(); };
  std::stable_sort(order.begin(), order.end(), [&](Element a, Element b) {
    return below(a) < below(b);
  });

  std::set<std::string> used(source.labels().begin(), source.labels().end());
  std::vector<std::string> line;
  for (Element a : order)
    line.push_back(source.label(a));
  const std::size_t extra =
      max_target > source.size() ? uniform(rng, 0, max_target - source.size())
                                 : 0;
  std::vector<std::string> fresh;
  for (std::size_t k = 0; k < extra; ++k) {
    std::string l = "n" + std::to_string(k);
    while (used.count(l))
      l += "'";
    used.insert(l);
    fresh.push_back(l);
    // Strictly after the bottom and before the top.
    std::size_t pos = uniform(rng, 1, line.size() - 1);
    line.insert(line.begin() + static_cast<std::ptrdiff_t>(pos), l);
  }

  std::vector<std::pair<std::string, std::string>> rel;
  for (const auto &[a, b] : source.strict_pairs())
    rel.emplace_back(source.label(a), source.label(b));
  const std::string &lo = source.label(bottom), &hi = source.label(top);
  auto is_fresh = [&](const std::string &l) {
    return std::find(fresh.begin(), fresh.end(), l) != fresh.end();
  };
  for (const auto &l : fresh) {
    rel.emplace_back(lo, l);
    rel.emplace_back(l, hi);
  }
  std::bernoulli_distribution coin(0.35);
  for (std::size_t i = 1; i + 1 < line.size(); ++i)
    for (std::size_t j = i + 1; j + 1 < line.size(); ++j)
      if ((is_fresh(line[i]) || is_fresh(line[j])) && coin(rng))
        rel.emplace_back(line[i], line[j]);

  std::vector<std::string> labels(used.begin(), used.end());
  TMorphism f{source, Poset::from_relations(labels, rel), {}};
  for (Element a = 0; a < source.size(); ++a)
    f.map.push_back(f.target.index_of(source.label(a)));
  return f;
}

RefinementInstance random_refinement_instance(Rng &rng,
                                              std::size_t max_states) {
  for (;;) {
    Poset ball = random_bounded_poset(rng, std::min<std::size_t>(5, max_states));
    FlowPresentation p = presentation_of_poset(ball, "u");
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto &g : p.generators)
      edges.emplace_back(g.source, g.target);
    auto reaches = [&](const std::string &from, const std::string &to) {
      std::vector<std::string> stack{from};
      std::set<std::string> seen{from};
      while (!stack.empty()) {
        auto at = stack.back();
        stack.pop_back();
        if (at == to)
          return true;
        for (const auto &[a, b] : edges)
          if (a == at && seen.insert(b).second)
            stack.push_back(b);
      }
      return false;
    };
    // Two distinct existing states with no path from the second to the first.
    auto pick_pair = [&](std::string &s, std::string &t) {
      for (int tries = 0; tries < 20; ++tries) {
        s = p.states[uniform(rng, 0, p.states.size() - 1)];
        t = p.states[uniform(rng, 0, p.states.size() - 1)];
        if (s != t && !reaches(t, s))
          return true;
      }
      return false;
    };

    std::size_t fresh = 0, gens = 0;
    auto new_state = [&] {
      std::string l = "h" + std::to_string(fresh++);
      p.add_state(l);
      return l;
    };
    auto add_gen = [&](const std::string &s, const std::string &t) {
      p.add_generator("g" + std::to_string(gens++), s, t);
      edges.emplace_back(s, t);
    };

    const std::size_t pieces = uniform(rng, 0, 3);
    for (std::size_t k = 0; k < pieces; ++k) {
      const std::size_t room = max_states - p.states.size();
      std::string s, t;
      switch (uniform(rng, 0, 2)) {
      case 0:
        if (pick_pair(s, t))
          for (std::size_t m = uniform(rng, 1, 2); m > 0; --m)
            add_gen(s, t);
        break;
      case 1:
        if (room > 0) {
          std::string old = p.states[uniform(rng, 0, p.states.size() - 1)];
          std::string l = new_state();
          const bool outward = uniform(rng, 0, 1) == 0;
          for (std::size_t m = uniform(rng, 1, 2); m > 0; --m) {
            if (outward)
              add_gen(old, l);
            else
              add_gen(l, old);
          }
        }
        break;
      default: {
        if (!pick_pair(s, t))
          break;
        Poset q = random_bounded_poset(rng, std::min<std::size_t>(4, room + 2));
        auto [qlo, qhi] = *q.bounds();
        std::vector<std::string> names(q.size());
        for (Element e = 0; e < q.size(); ++e)
          names[e] = e == qlo ? s : e == qhi ? t : new_state();
        std::vector<std::pair<std::string, std::string>> rel;
        for (const auto &[a, b] : q.covers())
          rel.emplace_back(names[a], names[b]);
        FlowPresentation piece = presentation_of_poset(
            Poset::from_relations(names, rel), "v" + std::to_string(k));
        for (const auto &g : piece.generators) {
          p.generators.push_back(g);
          edges.emplace_back(g.source, g.target);
        }
        for (const auto &r : piece.relations)
          p.relations.push_back(r);
        break;
      }
      }
    }
    if (count_words(p) > 4000)
      continue;
    Flow host = elaborate(p);
    BallEmbedding e = identity_embedding(host, ball, "u");
    std::size_t max_target = std::min<std::size_t>(
        8, ball.size() + (max_states - host.num_states()));
    TMorphism f = random_t_morphism(rng, ball, max_target);
    try {
      refine_pushout(host, f, e);
    } catch (const LoopError &) {
      continue;
    }
    return {std::move(host), std::move(f), std::move(e)};
  }
}

} // namespace flowhom
