#pragma once

#include "flowhom/complex.hpp"
#include "flowhom/flow.hpp"
#include "flowhom/poset.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace flowhom {

/// Branching (minus) or merging (plus).
enum class Sign { minus, plus };

/// "-" or "+".
std::string to_string(Sign s);

/// Germs of paths: the finest partition of all path classes in which x and
/// x*y agree (minus) or y and x*y agree (plus).
struct GermSpace {
  Sign sign = Sign::minus;
  std::vector<std::size_t> germ_of; ///< path class -> germ
  std::vector<State> anchor;        ///< germ -> source (minus) or target (plus)

  std::size_t size() const noexcept { return anchor.size(); }
  /// Germs anchored at a state, increasing.
  std::vector<std::size_t> fiber(State a) const;
};

GermSpace germ_space(const Flow &x, Sign sign);

/// Set-valued diagram over the opposite of the face category of the chains
/// strictly above a base state. The vertex set over a chain (a0,...,ap) is
/// P(base,a0) x P(a0,a1) x ... x P(a(p-1),ap); the face dropping a(i) composes
/// the two adjacent factors when i < p and drops the last factor when i = p.
///
/// A merging diagram is the branching diagram of the opposite flow, so every
/// accessor below refers to `flow()`, which is already oriented.
class BranchDiagram {
public:
  using Tuple = std::vector<PathClass>;

  /// `oriented` is used as is; `sign` only labels the diagram.
  BranchDiagram(std::shared_ptr<const Flow> oriented, State base, Sign sign);

  Sign sign() const noexcept { return sign_; }
  State base() const noexcept { return base_; }
  const Flow &flow() const noexcept { return *flow_; }
  std::shared_ptr<const Flow> shared_flow() const noexcept { return flow_; }
  const OrderComplex &index() const noexcept { return index_; }

  std::size_t num_simplices() const noexcept { return simplices_.size(); }
  bool empty() const noexcept { return simplices_.empty(); }
  /// Flow states of a simplex, increasing.
  const std::vector<State> &states(std::size_t s) const {
    return simplices_.at(s).states;
  }
  std::size_t dimension(std::size_t s) const { return states(s).size() - 1; }
  std::optional<std::size_t> find_simplex(const std::vector<State> &states) const;

  /// Number of elements over a simplex.
  std::size_t size(std::size_t s) const { return simplices_.at(s).size; }
  /// Position of the first element of a simplex in the global numbering.
  std::size_t offset(std::size_t s) const { return simplices_.at(s).offset; }
  std::size_t total_size() const noexcept { return total_; }

  Tuple element(std::size_t s, std::size_t e) const;
  /// Throws InvalidWord when the tuple does not lie over the simplex.
  std::size_t encode(std::size_t s, const Tuple &t) const;

  /// Simplex obtained by dropping vertex i.
  std::size_t face(std::size_t s, std::size_t i) const {
    return simplices_.at(s).faces.at(i);
  }
  std::size_t apply_face(std::size_t s, std::size_t i, std::size_t e) const;

  /// `(A,B,1)`.
  std::string simplex_name(std::size_t s) const;
  /// `(u(0,A),u(A,B))`.
  std::string element_name(std::size_t s, std::size_t e) const;

private:
  struct SimplexData {
    std::vector<State> states;
    std::vector<std::size_t> faces;
    std::vector<std::size_t> radix; // path count per factor
    std::size_t size = 0;
    std::size_t offset = 0;
  };

  std::shared_ptr<const Flow> flow_;
  State base_;
  Sign sign_;
  OrderComplex index_;
  std::vector<SimplexData> simplices_;
  std::vector<std::size_t> position_; // path class -> position in its P(a,b)
  std::size_t total_ = 0;
};

/// Throws UnknownState.
BranchDiagram branch_diagram(const Flow &x, State base, Sign sign);

/// d_i d_j = d_(j-1) d_i for i < j on every element.
bool check_simplicial_identities(const BranchDiagram &d);

/// Colimit of a branch diagram: all elements modulo the face maps.
struct DiagramColimit {
  std::size_t size = 0;
  std::vector<std::size_t> class_of;       ///< global element -> class
  std::vector<std::size_t> representative; ///< class -> least global element
};

DiagramColimit diagram_colimit(const BranchDiagram &d);

/// Compares the colimit with the germs anchored at the base state.
/// Elements go to the germ of their first factor.
struct GermComparison {
  std::size_t colimit_size = 0;
  std::size_t fiber_size = 0;
  bool well_defined = false;
  bool bijective = false;
};

/// The germ space is computed on `x` itself with the diagram's sign.
GermComparison compare_with_germs(const Flow &x, const BranchDiagram &d);

/// Restriction to vertices and edges, with the two face maps of each edge.
LoopFreeCategory restricted_index_category(const BranchDiagram &d);

/// Checks that the inclusion of vertices and edges into the whole index is
/// final by enumerating every comma category, and that restricting the
/// diagram to it keeps the same colimit.
bool final_subdiagram_check(const BranchDiagram &d);

/// Homology of a space that may be empty.
struct SpaceHomology {
  bool empty = true;
  std::vector<HomologyGroup> groups;  ///< H_0 .. H_top
  std::vector<HomologyGroup> reduced; ///< reduced H_0 .. H_top

  HomologyGroup degree(std::size_t n, bool reduced_group = false) const;
  bool acyclic() const;
};

/// Semi-simplicial chain complex of the elements of the diagram. Its
/// homology is that of the nerve of the category of elements.
ChainComplex element_complex(const BranchDiagram &d);

/// Category of elements as a poset: (s,x) above (t,y) when t is a face of s
/// and x restricts to y. Only for small diagrams.
LoopFreeCategory category_of_elements(const BranchDiagram &d);

SpaceHomology hbranch_homology(const BranchDiagram &d);
SpaceHomology hbranch_homology_at(const Flow &x, State a, Sign sign);

/// Branching or merging homology together with the per-state tables.
struct HomologyTable {
  Sign sign = Sign::minus;
  std::vector<HomologyGroup> groups; ///< H_0 .. H_top, trailing zeros trimmed
  std::vector<SpaceHomology> per_state;

  HomologyGroup degree(std::size_t n) const;
  /// Same groups in every degree.
  bool same_groups(const HomologyTable &other) const;
};

HomologyTable homology_table(const Flow &x, Sign sign);

} // namespace flowhom
