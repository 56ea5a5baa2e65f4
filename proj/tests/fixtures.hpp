#pragma once

#include "flowhom/flow.hpp"
#include "flowhom/poset.hpp"

#include <random>
#include <string>
#include <vector>

namespace fixtures {

// The bounded poset 0 < A < B < 1, 0 < C < 1.
inline flowhom::Poset pentagon() {
  return flowhom::Poset::from_relations(
      {"0", "A", "B", "C", "1"},
      {{"0", "A"}, {"0", "C"}, {"A", "B"}, {"B", "1"}, {"C", "1"}});
}

inline flowhom::Poset two_chain() {
  return flowhom::Poset::from_relations({"0", "1"}, {{"0", "1"}});
}

inline flowhom::Poset three_chain() {
  return flowhom::Poset::from_relations({"x", "y", "z"},
                                        {{"x", "y"}, {"y", "z"}});
}

inline flowhom::Poset antichain() {
  return flowhom::Poset::from_relations({"a", "b"}, {});
}

// 0 < a, 0 < b.
inline flowhom::Poset fork() {
  return flowhom::Poset::from_relations({"0", "a", "b"},
                                        {{"0", "a"}, {"0", "b"}});
}

// 0 < a < 1, 0 < b < 1.
inline flowhom::Poset diamond() {
  return flowhom::Poset::from_relations(
      {"0", "a", "b", "1"}, {{"0", "a"}, {"0", "b"}, {"a", "1"}, {"b", "1"}});
}

// Random poset on n elements: i < j with probability p for i < j in a
// hidden linear order, then closed.
inline flowhom::Poset random_poset(std::mt19937_64 &rng, std::size_t n,
                                   double p) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i)
    labels.push_back("e" + std::to_string(i));
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<std::string, std::string>> rel;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng))
        rel.emplace_back(labels[i], labels[j]);
  return flowhom::Poset::from_relations(labels, rel);
}

} // namespace fixtures
