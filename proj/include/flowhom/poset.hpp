#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace flowhom {

/// Index of an element inside its poset. Elements are stored sorted by label,
/// so index order and lexicographic label order agree.
using Element = std::size_t;

/// A strictly increasing chain x0 < x1 < ... < xn of poset elements.
using Simplex = std::vector<Element>;

/// Finite strict partial order over distinct string labels.
///
/// The strict order is stored transitively closed; covers are recomputed on
/// demand. Finite posets are trivially locally finite, so no separate check
/// exists for that property.
class Poset {
public:
  Poset() = default;

  /// Builds the transitive closure of `relations` (pairs a < b).
  /// Throws UnknownLabel for pairs naming unknown labels, CycleError when the
  /// closure is not irreflexive, and DuplicateName for repeated labels.
  static Poset from_relations(
      std::vector<std::string> labels,
      const std::vector<std::pair<std::string, std::string>> &relations);

  /// Same as from_relations but with index pairs into the sorted label list.
  static Poset from_index_relations(
      std::vector<std::string> sorted_labels,
      const std::vector<std::pair<Element, Element>> &relations);

  std::size_t size() const noexcept { return labels_.size(); }
  bool empty() const noexcept { return labels_.empty(); }
  const std::vector<std::string> &labels() const noexcept { return labels_; }
  const std::string &label(Element e) const { return labels_.at(e); }

  std::optional<Element> find(const std::string &label) const;
  /// Throws UnknownLabel.
  Element index_of(const std::string &label) const;

  bool less(Element a, Element b) const { return lt_[a * n() + b] != 0; }
  bool less_equal(Element a, Element b) const { return a == b || less(a, b); }
  bool comparable(Element a, Element b) const {
    return less_equal(a, b) || less(b, a);
  }

  /// All pairs a < b, in lexicographic index order.
  std::vector<std::pair<Element, Element>> strict_pairs() const;
  /// Hasse diagram edges.
  std::vector<std::pair<Element, Element>> covers() const;
  bool covers(Element a, Element b) const;

  std::vector<Element> minimal_elements() const;
  std::vector<Element> maximal_elements() const;

  /// Unique bottom and top with bottom != top, when they exist.
  std::optional<std::pair<Element, Element>> bounds() const;
  bool is_bounded() const { return bounds().has_value(); }

  /// Length of the longest chain a = x0 < ... < xp = b. Throws NotComparable
  /// unless a < b.
  std::size_t ell(Element a, Element b) const;

  /// Induced subposet on the given elements (labels kept).
  Poset induced(std::span<const Element> elements) const;
  /// Elements strictly above `a`, in index order.
  std::vector<Element> strictly_above(Element a) const;
  std::vector<Element> strictly_below(Element a) const;

  Poset strict_upper_set(Element a) const;
  Poset strict_lower_set(Element a) const;

  /// Same labels with every relation reversed.
  Poset opposite() const;

  bool operator==(const Poset &other) const = default;

private:
  std::size_t n() const noexcept { return labels_.size(); }

  std::vector<std::string> labels_;
  std::vector<unsigned char> lt_; // row-major n x n
};

/// Every chain of a poset, graded by dimension.
class OrderComplex {
public:
  explicit OrderComplex(Poset base);

  const Poset &base() const noexcept { return base_; }
  /// All simplices, sorted by dimension and then lexicographically.
  const std::vector<Simplex> &simplices() const noexcept { return simplices_; }
  std::size_t size() const noexcept { return simplices_.size(); }
  /// -1 for the empty complex.
  int dimension() const noexcept;
  /// Indices into simplices() of the simplices of dimension `dim`.
  std::span<const std::size_t> of_dimension(std::size_t dim) const;
  std::optional<std::size_t> index_of(const Simplex &s) const;

private:
  Poset base_;
  std::vector<Simplex> simplices_;
  std::vector<std::vector<std::size_t>> by_dim_;
};

OrderComplex order_complex(const Poset &p);

/// Removes position i of a simplex.
Simplex face(const Simplex &s, std::size_t i);

std::string to_string(const Poset &p, const Simplex &s);

} // namespace flowhom
