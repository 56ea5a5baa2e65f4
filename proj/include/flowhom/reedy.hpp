#pragma once

#include "flowhom/branching.hpp"
#include "flowhom/complex.hpp"
#include "flowhom/poset.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace flowhom {

/// Degree function and plus/minus generators on the opposite of the face
/// category of chains strictly above a base element. Arrows go from a chain
/// to any of its sub-chains.
class ReedyStructure {
public:
  /// An arrow from `source` to a sub-chain `target` (indices into the index).
  struct Arrow {
    std::size_t source;
    std::size_t target;
    bool operator==(const Arrow &) const = default;
  };

  /// Dropping the vertex `face` of `source`. The last face is a minus
  /// generator, every other face a plus generator.
  struct Generator {
    std::size_t source;
    std::size_t target;
    std::size_t face;
    bool plus;
  };

  /// Throws UnknownLabel.
  ReedyStructure(Poset p, Element base);

  const Poset &poset() const noexcept { return poset_; }
  Element base() const noexcept { return base_; }
  const OrderComplex &index() const noexcept { return index_; }
  std::size_t size() const noexcept { return index_.size(); }
  /// Chain in the elements of `poset()`.
  const std::vector<Element> &chain(std::size_t s) const { return chains_.at(s); }
  std::string name(std::size_t s) const;
  std::optional<std::size_t> find(const std::vector<Element> &chain) const;

  /// Sum of squared longest-chain lengths along base < a0 < ... < ap.
  std::size_t degree(std::size_t s) const { return degree_.at(s); }

  std::vector<Generator> generators() const;
  /// Every arrow, identities included.
  std::vector<Arrow> arrows() const;
  bool is_arrow(const Arrow &a) const;
  /// Only trailing vertices dropped.
  bool is_minus(const Arrow &a) const;
  /// Last vertex kept.
  bool is_plus(const Arrow &a) const;

  /// Composite "f then g"; throws NotAnArrow unless they compose.
  Arrow compose(const Arrow &f, const Arrow &g) const;

private:
  Poset poset_;
  Element base_;
  OrderComplex index_;
  std::vector<std::vector<Element>> chains_;
  std::vector<std::size_t> degree_;
};

ReedyStructure reedy_structure(const Poset &p, const std::string &base);

/// The unique (minus, plus) pair with arrow = minus then plus. The minus part
/// ends at the prefix of the source up to the last vertex of the target.
/// Throws NotAnArrow.
std::pair<ReedyStructure::Arrow, ReedyStructure::Arrow>
factorize(const ReedyStructure &r, const ReedyStructure::Arrow &f);

/// Tower of proper prefixes of a chain, longest first; empty for vertices.
LoopFreeCategory matching_category(const ReedyStructure &r, std::size_t s);

/// Total function {0..domain-1} -> {0..codomain-1}.
struct SetMap {
  std::size_t domain = 0;
  std::size_t codomain = 0;
  std::vector<std::size_t> map;

  bool valid() const;
  bool injective() const;
  bool surjective() const;
};

/// Finite diagram of finite sets whose index category is generated by the
/// listed edges.
struct SetDiagram {
  struct Edge {
    std::size_t from;
    std::size_t to;
    SetMap map;
  };
  std::vector<std::size_t> sizes;
  std::vector<Edge> edges;

  /// Position of the first element of a vertex in the disjoint union.
  std::vector<std::size_t> offsets() const;
};

/// Elements modulo the edge maps. Classes are numbered by least member of
/// the disjoint union.
struct SetColimit {
  std::size_t size = 0;
  std::vector<std::size_t> class_of; ///< element of the disjoint union -> class
};

SetColimit colimit(const SetDiagram &d);

/// Diagram over the product of the two index categories with values
/// D(i) x E(j), encoded as (x, y) -> x * |E(j)| + y.
SetDiagram product_diagram(const SetDiagram &d, const SetDiagram &e);

/// The canonical map colim(D x E) -> colim D x colim E is a bijection.
bool colimit_of_product_factors(const SetDiagram &d, const SetDiagram &e);

/// Cube of the maps f0..fp: the vertex of a subset S holds the product of
/// the codomains over S and the domains elsewhere, factor 0 most significant.
class CubeDiagram {
public:
  explicit CubeDiagram(std::vector<SetMap> maps);

  std::size_t arity() const noexcept { return maps_.size(); }
  const std::vector<SetMap> &maps() const noexcept { return maps_; }
  std::size_t size(unsigned subset) const;
  std::vector<std::size_t> decode(unsigned subset, std::size_t element) const;
  std::size_t encode(unsigned subset, const std::vector<std::size_t> &t) const;
  /// Image under the inclusion of `subset` into `subset | bit(i)`.
  std::size_t apply(unsigned subset, std::size_t i, std::size_t element) const;
  /// Image in the vertex of the full subset.
  std::size_t to_top(unsigned subset, std::size_t element) const;

  /// Functoriality on every square of the subset lattice.
  bool check_functorial() const;

  /// Diagram over all subsets, or only the proper ones.
  SetDiagram diagram(bool proper_only) const;

private:
  std::vector<SetMap> maps_;
};

/// Canonical map from the colimit over proper subsets into the product of
/// the codomains, together with the class of every proper-subset element.
struct CubePushoutProduct {
  CubeDiagram cube;
  SetMap map;
  std::vector<std::size_t> offsets; ///< by subset
  SetColimit colim;

  std::size_t class_of(unsigned subset, std::size_t element) const {
    return colim.class_of[offsets[subset] + element];
  }
};

CubePushoutProduct cube_pushout_product(const std::vector<SetMap> &fs);
SetMap pushout_product(const std::vector<SetMap> &fs);

/// f [] g : (U x X) + (V x W) over U x W -> V x X, pairs encoded first
/// factor most significant.
struct BinaryPushoutProduct {
  SetMap map;
  std::size_t left_width = 0;  ///< |X|
  std::size_t right_width = 0; ///< |W|
  std::vector<std::size_t> left_class;  ///< U x X -> class
  std::vector<std::size_t> right_class; ///< V x W -> class

  std::size_t left(std::size_t u, std::size_t x) const {
    return left_class[u * left_width + x];
  }
  std::size_t right(std::size_t v, std::size_t w) const {
    return right_class[v * right_width + w];
  }
};

BinaryPushoutProduct binary_pushout_product(const SetMap &f, const SetMap &g);

/// ((f0 [] f1) [] f2) ... ; one stage per map after the first.
std::vector<BinaryPushoutProduct>
iterated_pushout_product(const std::vector<SetMap> &fs);

/// Builds the canonical map from the cube colimit to the iterated domain and
/// checks that it is well defined, bijective and compatible with both maps
/// into the product of the codomains.
bool cube_matches_iterated(const std::vector<SetMap> &fs);

/// Colimit of a branch diagram over the chains strictly containing a chain
/// and ending at the same vertex, with its canonical map to the vertex set.
struct LatchingObject {
  std::size_t simplex = 0;
  std::vector<std::size_t> refinements;
  std::size_t size = 0;
  /// Global element of a refinement -> class; npos elsewhere.
  std::vector<std::size_t> class_of;
  SetMap to_vertex_set;

  bool injective() const { return to_vertex_set.injective(); }
};

/// Element of `target` obtained by dropping the vertices of `s` that are not
/// in `target`. Throws NotAnArrow when `target` is not a sub-chain.
std::size_t restrict_element(const BranchDiagram &d, std::size_t s,
                             std::size_t e, std::size_t target);

/// Throws UnknownSimplex.
LatchingObject latching_object(const BranchDiagram &d, std::size_t simplex);

/// Compares the latching map at a simplex (a0,...,ap) with the pushout
/// product of the latching maps of (a(i)) in the diagrams based at a(i-1).
bool verify_latching_formula(const BranchDiagram &d, std::size_t simplex);

/// Every latching map is one-to-one.
bool check_latching_injective(const BranchDiagram &d);

} // namespace flowhom
