#pragma once

#include "flowhom/poset.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace flowhom {

using Integer = boost::multiprecision::cpp_int;

/// Column-major sparse integer matrix.
class SparseMatrix {
public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), columns_(cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return columns_.size(); }

  /// Adds `value` to entry (row, col).
  void add(std::size_t row, std::size_t col, std::int64_t value);
  const std::map<std::size_t, std::int64_t> &column(std::size_t c) const {
    return columns_[c];
  }
  std::int64_t at(std::size_t row, std::size_t col) const;
  std::size_t nonzeros() const;

  /// this * rhs; entries must fit in 64 bits.
  SparseMatrix multiply(const SparseMatrix &rhs) const;
  bool is_zero() const { return nonzeros() == 0; }

private:
  std::size_t rows_ = 0;
  std::vector<std::map<std::size_t, std::int64_t>> columns_;
};

using DenseMatrix = std::vector<std::vector<Integer>>;

/// Nonzero invariant factors d1 | d2 | ... of a dense integer matrix,
/// positive and in divisibility order (unit factors included).
std::vector<Integer> smith_invariants(DenseMatrix m);

/// Rank of a sparse matrix together with its invariant factors >= 2.
struct MatrixInvariants {
  std::size_t rank = 0;
  std::vector<Integer> torsion;
};

MatrixInvariants matrix_invariants(const SparseMatrix &m);

/// Finitely generated abelian group Z^betti (+) Z/t1 (+) ... with t1 | t2 | ...
struct HomologyGroup {
  std::size_t betti = 0;
  std::vector<Integer> torsion;

  bool is_zero() const { return betti == 0 && torsion.empty(); }
  bool operator==(const HomologyGroup &) const = default;

  static HomologyGroup free(std::size_t rank) { return {rank, {}}; }
};

/// Invariant-factor normal form of a direct sum of groups.
HomologyGroup direct_sum(const std::vector<HomologyGroup> &groups);

/// `Z^b (+) Z/t1 (+) Z/t2`; the trivial group prints as `0`.
std::string to_string(const HomologyGroup &g);
/// `b;t1,t2,...`
std::string to_record(const HomologyGroup &g);

/// Integer chain complex C_0 <- C_1 <- ... ; boundary(n) maps C_n to C_{n-1}.
class ChainComplex {
public:
  ChainComplex() = default;
  /// Checks matrix shapes and that consecutive boundaries compose to zero.
  /// Throws InvalidComplex.
  ChainComplex(std::vector<std::size_t> dims,
               std::vector<SparseMatrix> boundaries);

  /// Number of degrees carrying a chain group (top degree + 1).
  std::size_t length() const noexcept { return dims_.size(); }
  std::size_t rank(std::size_t n) const {
    return n < dims_.size() ? dims_[n] : 0;
  }
  /// boundary(n) for 1 <= n < length().
  const SparseMatrix &boundary(std::size_t n) const;

private:
  std::vector<std::size_t> dims_;
  std::vector<SparseMatrix> boundaries_; // boundaries_[n-1] is d_n
};

/// H_n of the complex; `reduced` augments degree 0 by the coefficient sum.
/// Throws DegreeOutOfRange for negative degrees.
HomologyGroup homology(const ChainComplex &c, int n, bool reduced);

/// H_0 .. H_{length-1}, each boundary reduced once.
std::vector<HomologyGroup> all_homology(const ChainComplex &c, bool reduced);

/// Finite category without identities listed, whose arrow graph is acyclic.
class LoopFreeCategory {
public:
  struct Arrow {
    std::size_t source;
    std::size_t target;
  };

  LoopFreeCategory() = default;

  /// `composites` maps composable pairs (f then g) to their composite. Every
  /// composable pair must be present. Throws CyclicCategory when an arrow is a
  /// loop or the arrow graph has a cycle, and InvalidComplex when composition
  /// is incomplete, misplaced or not associative.
  LoopFreeCategory(std::vector<std::string> objects, std::vector<Arrow> arrows,
                   std::map<std::pair<std::size_t, std::size_t>, std::size_t>
                       composites);

  /// A poset viewed as a category with one arrow per strict pair.
  static LoopFreeCategory from_poset(const Poset &p);

  std::size_t num_objects() const noexcept { return objects_.size(); }
  std::size_t num_arrows() const noexcept { return arrows_.size(); }
  const std::vector<std::string> &objects() const noexcept { return objects_; }
  const std::vector<Arrow> &arrows() const noexcept { return arrows_; }
  /// Arrow index of "f then g". Requires target(f) == source(g).
  std::size_t compose(std::size_t f, std::size_t g) const;
  /// Arrows leaving each object.
  const std::vector<std::size_t> &outgoing(std::size_t object) const {
    return outgoing_[object];
  }

private:
  std::vector<std::string> objects_;
  std::vector<Arrow> arrows_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> composites_;
  std::vector<std::vector<std::size_t>> outgoing_;
};

/// Normalized chain complex of the nerve: degree n is spanned by composable
/// strings of n non-identity arrows.
ChainComplex nerve(const LoopFreeCategory &k);

/// Simplicial chain complex of an order complex, vertices ordered by the
/// ambient order.
ChainComplex complex_of_order_complex(const OrderComplex &k);

} // namespace flowhom
