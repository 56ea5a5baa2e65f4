#pragma once

#include "flowhom/branching.hpp"
#include "flowhom/flow.hpp"
#include "flowhom/poset.hpp"
#include "flowhom/random.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace flowhom {

/// Map of finite bounded posets, one-to-one, strictly increasing and
/// preserving both bounds.
struct TMorphism {
  Poset source;
  Poset target;
  std::vector<Element> map;
};

/// Result of a validation: the first violated condition (0 when valid) and
/// a human-readable reason.
struct Validation {
  bool valid = true;
  int condition = 0;
  std::string message;

  explicit operator bool() const noexcept { return valid; }
};

/// Conditions: 1 bounded posets, 2 one-to-one and strictly increasing,
/// 3 bounds preserved.
Validation validate_t_morphism(const TMorphism &f);

/// Throws UnknownLabel.
TMorphism t_morphism_from_labels(
    Poset source, Poset target,
    const std::vector<std::pair<std::string, std::string>> &sends);

/// Morphism from the flow of a bounded poset into a host flow.
struct BallEmbedding {
  Poset ball;
  std::vector<State> state_map;
  std::map<std::pair<Element, Element>, PathClass> path_choice;
};

/// Checks boundedness, strict monotonicity into the host order, presence and
/// endpoints of every chosen path, and multiplicativity.
Validation validate_embedding(const Flow &host, const BallEmbedding &e);

/// Fills path choices for the pairs that are missing by composing along
/// covers. Throws EmbeddingInvalid when a needed cover is missing.
void complete_path_choice(const Flow &host, BallEmbedding &e);

/// The ball mapped onto equally named host states, each pair sent to the
/// class of a chain of cover generators named as in presentation_of_poset.
BallEmbedding identity_embedding(const Flow &host, const Poset &ball,
                                 const std::string &prefix = "u");

struct RefinementResult {
  Flow refined;
  FlowPresentation presentation;
  std::vector<State> state_correspondence; ///< host state -> refined state
  std::vector<State> target_states;        ///< target element -> refined state
  std::vector<State> new_states;           ///< refined states, increasing
};

/// Glues the flow of the target poset onto the host along the embedded
/// ball. Throws EmbeddingInvalid, or LoopError if the result has a cycle.
RefinementResult refine_pushout(const Flow &host, const TMorphism &f,
                                const BallEmbedding &e);

/// Every state of `a` is in `b` or lies on a path between two states of `b`.
bool surrounded(const Flow &x, const std::vector<State> &a,
                const std::vector<State> &b);

/// `y` contains the states and generators of `x` under the same names, and
/// the induced map of path classes is one-to-one and onto.
bool is_isomorphic_extension(const Flow &x, const Flow &y);

struct InvarianceReport {
  bool surrounded = false;
  bool old_states = true;
  bool new_states = true;
  bool tables = true;
  std::vector<std::string> failures;
  HomologyTable host_minus, host_plus, refined_minus, refined_plus;

  bool passed() const noexcept {
    return surrounded && old_states && new_states && tables;
  }
};

InvarianceReport check_invariance(const Flow &host, const RefinementResult &r);

/// Same group in every degree.
bool same_homology(const SpaceHomology &a, const SpaceHomology &b);

/// Bounded poset with the source's elements and a few new ones placed
/// strictly between the bounds, and the inclusion into it.
TMorphism random_t_morphism(Rng &rng, const Poset &source,
                            std::size_t max_target);

struct RefinementInstance {
  Flow host;
  TMorphism morphism;
  BallEmbedding embedding;
};

/// Host made of the ball's flow with globes and small ball flows glued on,
/// at most `max_states` states, together with a random refinement of the
/// ball. Instances whose pushout has a cycle are redrawn.
RefinementInstance random_refinement_instance(Rng &rng,
                                              std::size_t max_states = 12);

} // namespace flowhom
