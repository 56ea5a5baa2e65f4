#include "flowhom/random.hpp"

#include "flowhom/error.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace flowhom {

std::size_t uniform(Rng &rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

namespace {

bool coin(Rng &rng, double p) { return std::bernoulli_distribution(p)(rng); }

} // namespace

Poset random_bounded_poset(Rng &rng, std::size_t max_size) {
  const std::size_t inner = uniform(rng, 0, max_size < 2 ? 0 : max_size - 2);
  std::vector<std::string> labels{"0", "1"};
  for (std::size_t i = 0; i < inner; ++i)
    labels.push_back("p" + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> rel{{"0", "1"}};
  const double p = coin(rng, 0.5) ? 0.25 : 0.5;
  for (std::size_t i = 0; i < inner; ++i) {
    rel.emplace_back("0", labels[i + 2]);
    rel.emplace_back(labels[i + 2], "1");
    for (std::size_t j = i + 1; j < inner; ++j)
      if (coin(rng, p))
        rel.emplace_back(labels[i + 2], labels[j + 2]);
  }
  return Poset::from_relations(labels, rel);
}

Poset random_poset(Rng &rng, std::size_t max_size) {
  const std::size_t n = uniform(rng, 1, std::max<std::size_t>(max_size, 1));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i)
    labels.push_back("q" + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> rel;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng, 0.4))
        rel.emplace_back(labels[i], labels[j]);
  return Poset::from_relations(labels, rel);
}

std::size_t count_words(const FlowPresentation &p) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < p.states.size(); ++i)
    index.emplace(p.states[i], i);
  const std::size_t n = p.states.size();
  std::vector<std::vector<std::size_t>> out(n);
  std::vector<std::size_t> indegree(n, 0);
  for (const auto &g : p.generators) {
    auto s = index.find(g.source), t = index.find(g.target);
    if (s == index.end() || t == index.end())
      throw UnknownState("generator " + g.name + " has an unknown endpoint");
    out[s->second].push_back(t->second);
    ++indegree[t->second];
  }
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < n; ++i)
    if (indegree[i] == 0)
      order.push_back(i);
  for (std::size_t k = 0; k < order.size(); ++k)
    for (std::size_t t : out[order[k]])
      if (--indegree[t] == 0)
        order.push_back(t);
  if (order.size() != n)
    throw LoopError("generators contain a cycle");
  // Words starting at each state, saturating to avoid overflow.
  std::vector<std::size_t> from(n, 0);
  const std::size_t cap = static_cast<std::size_t>(-1) / 4;
  for (std::size_t k = n; k-- > 0;) {
    std::size_t s = order[k], total = 0;
    for (std::size_t t : out[s])
      total = std::min(cap, total + 1 + from[t]);
    from[s] = total;
  }
  std::size_t total = 0;
  for (std::size_t s = 0; s < n; ++s)
    total = std::min(cap, total + from[s]);
  return total;
}

Flow random_flow(Rng &rng, const RandomFlowOptions &options) {
  for (;;) {
    const std::size_t n = uniform(rng, 1, std::max<std::size_t>(1, options.max_states));
    FlowPresentation p;
    for (std::size_t i = 0; i < n; ++i)
      p.add_state("s" + std::to_string(i));
    const double density = std::min(0.6, 2.0 / static_cast<double>(n));
    std::size_t next = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (coin(rng, density)) {
          std::size_t mult = coin(rng, 0.75)
                                 ? 1
                                 : uniform(rng, 2, std::max<std::size_t>(
                                                       2, options.max_multiplicity));
          for (std::size_t k = 0; k < mult; ++k)
            p.add_generator("g" + std::to_string(next++), p.states[i],
                            p.states[j]);
        }
    if (count_words(p) > options.max_words)
      continue;
    Flow free = elaborate(p);

    // Relations between distinct parallel words of the free flow.
    std::vector<std::pair<State, State>> pairs;
    for (State a = 0; a < free.num_states(); ++a)
      for (State b = 0; b < free.num_states(); ++b)
        if (free.paths(a, b).size() >= 2)
          pairs.emplace_back(a, b);
    const std::size_t relations =
        pairs.empty() ? 0 : uniform(rng, 0, options.max_relations);
    for (std::size_t r = 0; r < relations; ++r) {
      auto [a, b] = pairs[uniform(rng, 0, pairs.size() - 1)];
      auto ps = free.paths(a, b);
      std::size_t i = uniform(rng, 0, ps.size() - 1);
      std::size_t j = uniform(rng, 0, ps.size() - 2);
      if (j >= i)
        ++j;
      auto to_labels = [&](PathClass c) {
        FlowPresentation::LabelWord w;
        for (std::size_t g : free.representative(c))
          w.push_back(free.generators()[g].name);
        return w;
      };
      p.add_relation(to_labels(ps[i]), to_labels(ps[j]));
    }
    return elaborate(p);
  }
}

} // namespace flowhom
