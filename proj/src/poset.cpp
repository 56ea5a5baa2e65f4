#include "flowhom/poset.hpp"

#include "flowhom/error.hpp"

#include <algorithm>
#include <map>

namespace flowhom {

Poset Poset::from_relations(
    std::vector<std::string> labels,
    const std::vector<std::pair<std::string, std::string>> &relations) {
  std::sort(labels.begin(), labels.end());
  if (auto dup = std::adjacent_find(labels.begin(), labels.end());
      dup != labels.end())
    throw DuplicateName("duplicate poset element '" + *dup + "'");

  auto lookup = [&](const std::string &l) -> Element {
    auto it = std::lower_bound(labels.begin(), labels.end(), l);
    if (it == labels.end() || *it != l)
      throw UnknownLabel("unknown poset element '" + l + "'");
    return static_cast<Element>(it - labels.begin());
  };
  std::vector<std::pair<Element, Element>> idx;
  idx.reserve(relations.size());
  for (const auto &[a, b] : relations)
    idx.emplace_back(lookup(a), lookup(b));
  return from_index_relations(std::move(labels), idx);
}

Poset Poset::from_index_relations(
    std::vector<std::string> sorted_labels,
    const std::vector<std::pair<Element, Element>> &relations) {
  Poset p;
  p.labels_ = std::move(sorted_labels);
  const std::size_t n = p.n();
  p.lt_.assign(n * n, 0);
  for (const auto &[a, b] : relations) {
    if (a >= n || b >= n)
      throw UnknownLabel("relation references an element out of range");
    p.lt_[a * n + b] = 1;
  }
  // Warshall closure.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (p.lt_[i * n + k])
        for (std::size_t j = 0; j < n; ++j)
          if (p.lt_[k * n + j])
            p.lt_[i * n + j] = 1;
  for (std::size_t i = 0; i < n; ++i)
    if (p.lt_[i * n + i])
      throw CycleError("order relation has a cycle through '" + p.labels_[i] +
                       "'");
  return p;
}

std::optional<Element> Poset::find(const std::string &label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label)
    return std::nullopt;
  return static_cast<Element>(it - labels_.begin());
}

Element Poset::index_of(const std::string &label) const {
  if (auto e = find(label))
    return *e;
  throw UnknownLabel("unknown poset element '" + label + "'");
}

std::vector<std::pair<Element, Element>> Poset::strict_pairs() const {
  std::vector<std::pair<Element, Element>> out;
  for (Element a = 0; a < n(); ++a)
    for (Element b = 0; b < n(); ++b)
      if (less(a, b))
        out.emplace_back(a, b);
  return out;
}

bool Poset::covers(Element a, Element b) const {
  if (!less(a, b))
    return false;
  for (Element c = 0; c < n(); ++c)
    if (less(a, c) && less(c, b))
      return false;
  return true;
}

std::vector<std::pair<Element, Element>> Poset::covers() const {
  std::vector<std::pair<Element, Element>> out;
  for (const auto &[a, b] : strict_pairs())
    if (covers(a, b))
      out.emplace_back(a, b);
  return out;
}

std::vector<Element> Poset::minimal_elements() const {
  std::vector<Element> out;
  for (Element x = 0; x < n(); ++x)
    if (strictly_below(x).empty())
      out.push_back(x);
  return out;
}

std::vector<Element> Poset::maximal_elements() const {
  std::vector<Element> out;
  for (Element x = 0; x < n(); ++x)
    if (strictly_above(x).empty())
      out.push_back(x);
  return out;
}

std::optional<std::pair<Element, Element>> Poset::bounds() const {
  auto lo = minimal_elements();
  auto hi = maximal_elements();
  if (lo.size() != 1 || hi.size() != 1 || lo[0] == hi[0])
    return std::nullopt;
  return std::make_pair(lo[0], hi[0]);
}

std::size_t Poset::ell(Element a, Element b) const {
  if (a >= n() || b >= n() || !less(a, b))
    throw NotComparable("ell requires a < b");
  // Longest path from a in the DAG restricted to [a, b]; process elements by
  // increasing number of predecessors, which is a linear extension.
  std::vector<Element> order;
  for (Element x = 0; x < n(); ++x)
    if (less_equal(a, x) && less_equal(x, b))
      order.push_back(x);
  std::sort(order.begin(), order.end(), [&](Element x, Element y) {
    return strictly_below(x).size() < strictly_below(y).size();
  });
  std::map<Element, std::size_t> best;
  best[a] = 0;
  for (Element x : order) {
    if (x == a)
      continue;
    std::size_t m = 0;
    for (const auto &[y, len] : best)
      if (covers(y, x))
        m = std::max(m, len + 1);
    best[x] = m;
  }
  return best.at(b);
}

Poset Poset::induced(std::span<const Element> elements) const {
  std::vector<Element> sorted(elements.begin(), elements.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  Poset p;
  for (Element e : sorted)
    p.labels_.push_back(labels_.at(e));
  const std::size_t m = sorted.size();
  p.lt_.assign(m * m, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      p.lt_[i * m + j] = lt_[sorted[i] * n() + sorted[j]];
  return p;
}

std::vector<Element> Poset::strictly_above(Element a) const {
  std::vector<Element> out;
  for (Element x = 0; x < n(); ++x)
    if (less(a, x))
      out.push_back(x);
  return out;
}

std::vector<Element> Poset::strictly_below(Element a) const {
  std::vector<Element> out;
  for (Element x = 0; x < n(); ++x)
    if (less(x, a))
      out.push_back(x);
  return out;
}

Poset Poset::strict_upper_set(Element a) const {
  if (a >= n())
    throw UnknownLabel("element index out of range");
  auto up = strictly_above(a);
  return induced(up);
}

Poset Poset::strict_lower_set(Element a) const {
  if (a >= n())
    throw UnknownLabel("element index out of range");
  auto down = strictly_below(a);
  return induced(down);
}

Poset Poset::opposite() const {
  Poset p;
  p.labels_ = labels_;
  p.lt_.assign(n() * n(), 0);
  for (std::size_t i = 0; i < n(); ++i)
    for (std::size_t j = 0; j < n(); ++j)
      p.lt_[i * n() + j] = lt_[j * n() + i];
  return p;
}

OrderComplex::OrderComplex(Poset base) : base_(std::move(base)) {
  const std::size_t n = base_.size();
  // Depth-first extension of chains by strictly larger elements.
  std::vector<Simplex> stack;
  for (Element x = 0; x < n; ++x)
    stack.push_back({x});
  while (!stack.empty()) {
    Simplex s = std::move(stack.back());
    stack.pop_back();
    for (Element y = 0; y < n; ++y)
      if (base_.less(s.back(), y)) {
        Simplex t = s;
        t.push_back(y);
        stack.push_back(std::move(t));
      }
    simplices_.push_back(std::move(s));
  }
  std::sort(simplices_.begin(), simplices_.end(),
            [](const Simplex &a, const Simplex &b) {
              if (a.size() != b.size())
                return a.size() < b.size();
              return a < b;
            });
  for (std::size_t i = 0; i < simplices_.size(); ++i) {
    std::size_t d = simplices_[i].size() - 1;
    if (by_dim_.size() <= d)
      by_dim_.resize(d + 1);
    by_dim_[d].push_back(i);
  }
}

int OrderComplex::dimension() const noexcept {
  return static_cast<int>(by_dim_.size()) - 1;
}

std::span<const std::size_t> OrderComplex::of_dimension(std::size_t dim) const {
  if (dim >= by_dim_.size())
    return {};
  return by_dim_[dim];
}

std::optional<std::size_t> OrderComplex::index_of(const Simplex &s) const {
  auto it = std::lower_bound(simplices_.begin(), simplices_.end(), s,
                             [](const Simplex &a, const Simplex &b) {
                               if (a.size() != b.size())
                                 return a.size() < b.size();
                               return a < b;
                             });
  if (it == simplices_.end() || *it != s)
    return std::nullopt;
  return static_cast<std::size_t>(it - simplices_.begin());
}

OrderComplex order_complex(const Poset &p) { return OrderComplex(p); }

Simplex face(const Simplex &s, std::size_t i) {
  Simplex out;
  out.reserve(s.size() - 1);
  for (std::size_t k = 0; k < s.size(); ++k)
    if (k != i)
      out.push_back(s[k]);
  return out;
}

std::string to_string(const Poset &p, const Simplex &s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i)
      out += ",";
    out += p.label(s[i]);
  }
  return out + ")";
}

} // namespace flowhom
