#pragma once

#include "flowhom/poset.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace flowhom {

/// Index of a state in a flow; states are sorted by label.
using State = std::size_t;
/// Index of a path class (an element of some path set).
using PathClass = std::size_t;
/// Composable string of generator indices.
using Word = std::vector<std::size_t>;

struct WordHash {
  std::size_t operator()(const Word &w) const noexcept {
    std::size_t h = w.size();
    for (std::size_t g : w)
      h ^= g + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

/// Label-level description of a finite flow: states, generating arrows and
/// word relations. Generator names must not contain '.', ':', '=' or blanks.
struct FlowPresentation {
  struct Generator {
    std::string name;
    std::string source;
    std::string target;
    bool operator==(const Generator &) const = default;
  };
  using LabelWord = std::vector<std::string>;

  std::vector<std::string> states;
  std::vector<Generator> generators;
  std::vector<std::pair<LabelWord, LabelWord>> relations;

  void add_state(std::string s) { states.push_back(std::move(s)); }
  void add_generator(std::string name, std::string source,
                     std::string target) {
    generators.push_back({std::move(name), std::move(source),
                          std::move(target)});
  }
  void add_relation(LabelWord lhs, LabelWord rhs) {
    relations.emplace_back(std::move(lhs), std::move(rhs));
  }

  bool operator==(const FlowPresentation &) const = default;
};

/// Splits `g1.g2.g3` into generator names.
FlowPresentation::LabelWord split_word(const std::string &dotted);
std::string join_word(const FlowPresentation::LabelWord &w);

/// Finite loopless flow with discrete path spaces: each path set P(a,b) is
/// the set of congruence classes of composable words from a to b.
class Flow {
public:
  struct Generator {
    std::string name;
    State source;
    State target;
  };

  Flow() = default;

  std::size_t num_states() const noexcept { return states_.size(); }
  const std::vector<std::string> &states() const noexcept { return states_; }
  const std::string &state_label(State s) const { return states_.at(s); }
  /// Throws UnknownState.
  State state_index(const std::string &label) const;

  const std::vector<Generator> &generators() const noexcept {
    return generators_;
  }

  std::size_t num_classes() const noexcept { return classes_.size(); }
  State source(PathClass c) const { return classes_.at(c).source; }
  State target(PathClass c) const { return classes_.at(c).target; }
  /// Lexicographically least word of the class.
  const Word &representative(PathClass c) const {
    return classes_.at(c).representative;
  }
  /// Dot-separated generator names of the representative.
  std::string class_name(PathClass c) const;

  /// P(a,b), classes ordered by representative.
  std::span<const PathClass> paths(State a, State b) const {
    return paths_.at(a * num_states() + b);
  }
  /// Class of a composable word; throws InvalidWord otherwise.
  PathClass class_of(const Word &w) const;
  /// Class of "x then y"; throws InvalidWord unless target(x) == source(y).
  PathClass compose(PathClass x, PathClass y) const;

  /// Order induced by non-empty path sets.
  const Poset &order() const noexcept { return order_; }
  /// Normalized presentation this flow was elaborated from.
  const FlowPresentation &presentation() const noexcept {
    return presentation_;
  }

  /// Same states, generators and path classes (by representative).
  bool operator==(const Flow &other) const;

  friend Flow elaborate(const FlowPresentation &p);
  friend Flow opposite_flow(const Flow &x);

private:
  struct ClassData {
    State source;
    State target;
    Word representative;
  };

  std::vector<std::string> states_;
  std::vector<Generator> generators_;
  std::vector<ClassData> classes_;
  std::vector<std::vector<PathClass>> paths_;
  std::unordered_map<Word, PathClass, WordHash> word_class_;
  Poset order_;
  FlowPresentation presentation_;
};

/// Enumerates every composable word, closes the relations into a congruence
/// and tabulates path classes. Throws LoopError on a generator cycle,
/// NonParallelRelation, InvalidWord, UnknownState, UnknownLabel, DuplicateName
/// or SizeLimit when the word set is too large for exact computation.
Flow elaborate(const FlowPresentation &p);

/// The poset on states induced by non-empty path sets.
Poset state_order(const Flow &x);

/// Presentation of F(P): one generator per cover, all parallel words equal.
FlowPresentation presentation_of_poset(const Poset &p,
                                       const std::string &prefix = "u");
Flow flow_of_poset(const Poset &p);

/// Name of the generator for the cover a < b in presentation_of_poset.
std::string cover_generator_name(const std::string &prefix,
                                 const std::string &a, const std::string &b);

/// States "0" and "1" with k parallel generators and no relations.
Flow glob(std::size_t k);

/// Same states with all paths reversed. Involutive.
Flow opposite_flow(const Flow &x);

bool is_full_directed_ball(const Flow &x);

/// States with no incoming (first) or outgoing (second) path.
std::pair<std::vector<State>, std::vector<State>>
initial_final_states(const Flow &x);

/// Upper bound on the number of composable words `elaborate` will enumerate.
inline constexpr std::size_t max_words = 2'000'000;

} // namespace flowhom
