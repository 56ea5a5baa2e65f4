#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

namespace flowhom {

/// Disjoint-set forest with path halving. The representative of a class is
/// always its smallest member, so class numbering is deterministic.
class UnionFind {
public:
  explicit UnionFind(std::size_t n = 0) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t size() const noexcept { return parent_.size(); }

  std::size_t add() {
    parent_.push_back(parent_.size());
    return parent_.size() - 1;
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  /// Returns true when the two classes were distinct.
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b)
      return false;
    if (b < a)
      std::swap(a, b);
    parent_[b] = a;
    return true;
  }

  bool same(std::size_t a, std::size_t b) { return find(a) == find(b); }

  /// Dense class ids 0..k-1, numbered by smallest member.
  std::vector<std::size_t> class_ids(std::size_t *num_classes = nullptr) {
    std::vector<std::size_t> ids(parent_.size());
    std::vector<std::size_t> dense(parent_.size(), npos);
    std::size_t next = 0;
    for (std::size_t i = 0; i < parent_.size(); ++i) {
      std::size_t r = find(i);
      if (dense[r] == npos)
        dense[r] = next++;
      ids[i] = dense[r];
    }
    if (num_classes)
      *num_classes = next;
    return ids;
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
  std::vector<std::size_t> parent_;
};

} // namespace flowhom
