#pragma once

#include "flowhom/flow.hpp"
#include "flowhom/poset.hpp"

#include <cstddef>
#include <random>

namespace flowhom {

using Rng = std::mt19937_64;

/// Uniform integer in [lo, hi].
std::size_t uniform(Rng &rng, std::size_t lo, std::size_t hi);

/// Bounded poset with bottom "0", top "1" and up to `max_size - 2` inner
/// elements `p0`, `p1`, ... related at random.
Poset random_bounded_poset(Rng &rng, std::size_t max_size);

/// Random poset on up to `max_size` elements, not necessarily bounded.
Poset random_poset(Rng &rng, std::size_t max_size);

struct RandomFlowOptions {
  std::size_t max_states = 8;
  std::size_t max_multiplicity = 2;
  std::size_t max_relations = 2;
  /// Instances with more composable words are redrawn.
  std::size_t max_words = 400;
};

/// Sparse loopless flow: random generators between states in a hidden
/// linear order and a few relations between parallel words.
Flow random_flow(Rng &rng, const RandomFlowOptions &options = {});

/// Number of composable words of a presentation without elaborating it.
/// Throws like `elaborate` on unknown states or generator cycles.
std::size_t count_words(const FlowPresentation &p);

} // namespace flowhom
