#include "flowhom/branching.hpp"

#include "flowhom/error.hpp"
#include "flowhom/union_find.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace flowhom {

std::string to_string(Sign s) { return s == Sign::minus ? "-" : "+"; }

std::vector<std::size_t> GermSpace::fiber(State a) const {
  std::vector<std::size_t> out;
  for (std::size_t g = 0; g < anchor.size(); ++g)
    if (anchor[g] == a)
      out.push_back(g);
  return out;
}

GermSpace germ_space(const Flow &x, Sign sign) {
  const std::size_t n = x.num_states();
  UnionFind uf(x.num_classes());
  for (PathClass c = 0; c < x.num_classes(); ++c)
    for (State t = 0; t < n; ++t)
      for (PathClass d : x.paths(x.target(c), t))
        uf.unite(sign == Sign::minus ? c : d, x.compose(c, d));
  GermSpace g;
  g.sign = sign;
  std::size_t count = 0;
  g.germ_of = uf.class_ids(&count);
  g.anchor.assign(count, 0);
  for (PathClass c = 0; c < x.num_classes(); ++c)
    g.anchor[g.germ_of[c]] = sign == Sign::minus ? x.source(c) : x.target(c);
  return g;
}

namespace {

OrderComplex upper_index(const Flow &x, State base) {
  if (base >= x.num_states())
    throw UnknownState("no state with index " + std::to_string(base));
  return OrderComplex(x.order().strict_upper_set(base));
}

} // namespace

BranchDiagram::BranchDiagram(std::shared_ptr<const Flow> oriented, State base,
                             Sign sign)
    : flow_(std::move(oriented)), base_(base), sign_(sign),
      index_(upper_index(*flow_, base)) {
  const Flow &x = *flow_;
  const Poset &up = index_.base();
  std::vector<State> vertex_state(up.size());
  for (Element v = 0; v < up.size(); ++v)
    vertex_state[v] = x.state_index(up.label(v));

  position_.assign(x.num_classes(), 0);
  for (State a = 0; a < x.num_states(); ++a)
    for (State b = 0; b < x.num_states(); ++b) {
      auto ps = x.paths(a, b);
      for (std::size_t k = 0; k < ps.size(); ++k)
        position_[ps[k]] = k;
    }

  simplices_.resize(index_.size());
  for (std::size_t s = 0; s < index_.size(); ++s) {
    const Simplex &simplex = index_.simplices()[s];
    SimplexData &data = simplices_[s];
    for (Element v : simplex)
      data.states.push_back(vertex_state[v]);
    if (simplex.size() > 1)
      for (std::size_t i = 0; i < simplex.size(); ++i)
        data.faces.push_back(*index_.index_of(flowhom::face(simplex, i)));
    State prev = base;
    data.size = 1;
    for (State st : data.states) {
      data.radix.push_back(x.paths(prev, st).size());
      data.size *= data.radix.back();
      prev = st;
    }
    data.offset = total_;
    total_ += data.size;
  }
}

std::optional<std::size_t>
BranchDiagram::find_simplex(const std::vector<State> &states) const {
  Simplex s;
  const Poset &up = index_.base();
  for (State st : states) {
    auto v = up.find(flow_->state_label(st));
    if (!v)
      return std::nullopt;
    s.push_back(*v);
  }
  return index_.index_of(s);
}

BranchDiagram::Tuple BranchDiagram::element(std::size_t s,
                                            std::size_t e) const {
  const SimplexData &data = simplices_.at(s);
  Tuple t(data.states.size());
  for (std::size_t i = data.states.size(); i-- > 0;) {
    std::size_t digit = e % data.radix[i];
    e /= data.radix[i];
    State from = i == 0 ? base_ : data.states[i - 1];
    t[i] = flow_->paths(from, data.states[i])[digit];
  }
  return t;
}

std::size_t BranchDiagram::encode(std::size_t s, const Tuple &t) const {
  const SimplexData &data = simplices_.at(s);
  if (t.size() != data.states.size())
    throw InvalidWord("tuple length does not match simplex");
  std::size_t e = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    State from = i == 0 ? base_ : data.states[i - 1];
    if (flow_->source(t[i]) != from || flow_->target(t[i]) != data.states[i])
      throw InvalidWord("tuple factor does not lie over the simplex");
    e = e * data.radix[i] + position_[t[i]];
  }
  return e;
}

std::size_t BranchDiagram::apply_face(std::size_t s, std::size_t i,
                                      std::size_t e) const {
  Tuple t = element(s, e);
  const std::size_t p = t.size() - 1;
  if (i < p) {
    t[i] = flow_->compose(t[i], t[i + 1]);
    t.erase(t.begin() + static_cast<std::ptrdiff_t>(i) + 1);
  } else {
    t.pop_back();
  }
  return encode(face(s, i), t);
}

std::string BranchDiagram::simplex_name(std::size_t s) const {
  return to_string(index_.base(), index_.simplices().at(s));
}

std::string BranchDiagram::element_name(std::size_t s, std::size_t e) const {
  std::string out = "(";
  Tuple t = element(s, e);
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i)
      out += ",";
    out += flow_->class_name(t[i]);
  }
  return out + ")";
}

BranchDiagram branch_diagram(const Flow &x, State base, Sign sign) {
  if (base >= x.num_states())
    throw UnknownState("no state with index " + std::to_string(base));
  auto oriented = sign == Sign::minus ? std::make_shared<const Flow>(x)
                                      : std::make_shared<const Flow>(
                                            opposite_flow(x));
  return BranchDiagram(std::move(oriented), base, sign);
}

bool check_simplicial_identities(const BranchDiagram &d) {
  for (std::size_t s = 0; s < d.num_simplices(); ++s) {
    const std::size_t p = d.dimension(s);
    if (p < 2)
      continue;
    for (std::size_t j = 1; j <= p; ++j)
      for (std::size_t i = 0; i < j; ++i) {
        std::size_t left = d.face(d.face(s, j), i);
        std::size_t right = d.face(d.face(s, i), j - 1);
        if (left != right)
          return false;
        for (std::size_t e = 0; e < d.size(s); ++e)
          if (d.apply_face(d.face(s, j), i, d.apply_face(s, j, e)) !=
              d.apply_face(d.face(s, i), j - 1, d.apply_face(s, i, e)))
            return false;
      }
  }
  return true;
}

DiagramColimit diagram_colimit(const BranchDiagram &d) {
  UnionFind uf(d.total_size());
  for (std::size_t s = 0; s < d.num_simplices(); ++s)
    if (d.dimension(s) > 0)
      for (std::size_t i = 0; i <= d.dimension(s); ++i) {
        std::size_t t = d.face(s, i);
        for (std::size_t e = 0; e < d.size(s); ++e)
          uf.unite(d.offset(s) + e, d.offset(t) + d.apply_face(s, i, e));
      }
  DiagramColimit c;
  c.class_of = uf.class_ids(&c.size);
  c.representative.assign(c.size, UnionFind::npos);
  for (std::size_t g = 0; g < c.class_of.size(); ++g)
    if (c.representative[c.class_of[g]] == UnionFind::npos)
      c.representative[c.class_of[g]] = g;
  return c;
}

namespace {

// Class of `x` matching a path class of the oriented flow of a diagram.
PathClass class_in(const Flow &x, const BranchDiagram &d, PathClass c) {
  Word w = d.flow().representative(c);
  if (d.sign() == Sign::plus)
    std::reverse(w.begin(), w.end());
  return x.class_of(w);
}

} // namespace

GermComparison compare_with_germs(const Flow &x, const BranchDiagram &d) {
  GermComparison out;
  GermSpace germs = germ_space(x, d.sign());
  auto fiber = germs.fiber(d.base());
  out.fiber_size = fiber.size();
  DiagramColimit colim = diagram_colimit(d);
  out.colimit_size = colim.size;

  std::vector<std::size_t> image(colim.size, UnionFind::npos);
  out.well_defined = true;
  for (std::size_t s = 0; s < d.num_simplices(); ++s)
    for (std::size_t e = 0; e < d.size(s); ++e) {
      std::size_t germ = germs.germ_of[class_in(x, d, d.element(s, e)[0])];
      std::size_t &slot = image[colim.class_of[d.offset(s) + e]];
      if (slot == UnionFind::npos)
        slot = germ;
      else if (slot != germ)
        out.well_defined = false;
    }
  if (!out.well_defined)
    return out;
  std::vector<std::size_t> sorted = image;
  std::sort(sorted.begin(), sorted.end());
  out.bijective = std::adjacent_find(sorted.begin(), sorted.end()) ==
                      sorted.end() &&
                  sorted == fiber;
  return out;
}

LoopFreeCategory restricted_index_category(const BranchDiagram &d) {
  std::vector<std::string> objects;
  std::vector<std::size_t> object_of(d.num_simplices(), UnionFind::npos);
  for (std::size_t s = 0; s < d.num_simplices(); ++s)
    if (d.dimension(s) <= 1) {
      object_of[s] = objects.size();
      objects.push_back(d.simplex_name(s));
    }
  std::vector<LoopFreeCategory::Arrow> arrows;
  for (std::size_t s = 0; s < d.num_simplices(); ++s)
    if (d.dimension(s) == 1)
      for (std::size_t i = 0; i < 2; ++i)
        arrows.push_back({object_of[s], object_of[d.face(s, i)]});
  return LoopFreeCategory(std::move(objects), std::move(arrows), {});
}

bool final_subdiagram_check(const BranchDiagram &d) {
  const auto &simplices = d.index().simplices();
  std::vector<std::size_t> sub;
  for (std::size_t s = 0; s < d.num_simplices(); ++s)
    if (d.dimension(s) <= 1)
      sub.push_back(s);

  // Comma category under each simplex: sub-simplices contained in it, joined
  // by the face arrows of the subcategory.
  for (std::size_t s = 0; s < d.num_simplices(); ++s) {
    const Simplex &top = simplices[s];
    std::vector<std::size_t> objects;
    for (std::size_t t : sub)
      if (std::all_of(simplices[t].begin(), simplices[t].end(),
                      [&](Element v) {
                        return std::find(top.begin(), top.end(), v) !=
                               top.end();
                      }))
        objects.push_back(t);
    if (objects.empty())
      return false;
    UnionFind uf(objects.size());
    for (std::size_t a = 0; a < objects.size(); ++a)
      if (d.dimension(objects[a]) == 1)
        for (std::size_t i = 0; i < 2; ++i) {
          auto it = std::find(objects.begin(), objects.end(),
                              d.face(objects[a], i));
          if (it == objects.end())
            return false;
          uf.unite(a, static_cast<std::size_t>(it - objects.begin()));
        }
    std::size_t components = 0;
    uf.class_ids(&components);
    if (components != 1)
      return false;
  }

  // Colimit of the restricted diagram against the full colimit.
  UnionFind uf(d.total_size());
  for (std::size_t s : sub)
    if (d.dimension(s) == 1)
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t e = 0; e < d.size(s); ++e)
          uf.unite(d.offset(s) + e,
                   d.offset(d.face(s, i)) + d.apply_face(s, i, e));
  DiagramColimit full = diagram_colimit(d);
  std::map<std::size_t, std::size_t> restricted_to_full;
  std::set<std::size_t> hit;
  for (std::size_t s : sub)
    for (std::size_t e = 0; e < d.size(s); ++e) {
      std::size_t g = d.offset(s) + e;
      auto [it, fresh] = restricted_to_full.emplace(uf.find(g),
                                                    full.class_of[g]);
      if (!fresh && it->second != full.class_of[g])
        return false;
      hit.insert(full.class_of[g]);
    }
  std::set<std::size_t> images;
  for (const auto &[r, f] : restricted_to_full)
    if (!images.insert(f).second)
      return false;
  return hit.size() == full.size;
}

HomologyGroup SpaceHomology::degree(std::size_t n, bool reduced_group) const {
  const auto &v = reduced_group ? reduced : groups;
  return n < v.size() ? v[n] : HomologyGroup{};
}

bool SpaceHomology::acyclic() const {
  if (empty)
    return false;
  return std::all_of(reduced.begin(), reduced.end(),
                     [](const HomologyGroup &g) { return g.is_zero(); });
}

ChainComplex element_complex(const BranchDiagram &d) {
  if (d.empty())
    return ChainComplex();
  const std::size_t top = static_cast<std::size_t>(d.index().dimension());
  std::vector<std::size_t> dims(top + 1, 0);
  std::vector<std::size_t> local(d.num_simplices());
  for (std::size_t s = 0; s < d.num_simplices(); ++s) {
    local[s] = dims[d.dimension(s)];
    dims[d.dimension(s)] += d.size(s);
  }
  std::vector<SparseMatrix> boundaries;
  for (std::size_t p = 1; p <= top; ++p)
    boundaries.emplace_back(dims[p - 1], dims[p]);
  for (std::size_t s = 0; s < d.num_simplices(); ++s) {
    const std::size_t p = d.dimension(s);
    if (p == 0)
      continue;
    for (std::size_t e = 0; e < d.size(s); ++e)
      for (std::size_t i = 0; i <= p; ++i) {
        std::size_t t = d.face(s, i);
        boundaries[p - 1].add(local[t] + d.apply_face(s, i, e), local[s] + e,
                              i % 2 == 0 ? 1 : -1);
      }
  }
  return ChainComplex(std::move(dims), std::move(boundaries));
}

LoopFreeCategory category_of_elements(const BranchDiagram &d) {
  auto name = [&](std::size_t g) {
    std::string digits = std::to_string(g);
    return "e" + std::string(12 - digits.size(), '0') + digits;
  };
  std::vector<std::string> labels;
  for (std::size_t g = 0; g < d.total_size(); ++g)
    labels.push_back(name(g));
  std::vector<std::pair<std::string, std::string>> relations;
  for (std::size_t s = 0; s < d.num_simplices(); ++s)
    if (d.dimension(s) > 0)
      for (std::size_t e = 0; e < d.size(s); ++e)
        for (std::size_t i = 0; i <= d.dimension(s); ++i)
          relations.emplace_back(
              name(d.offset(s) + e),
              name(d.offset(d.face(s, i)) + d.apply_face(s, i, e)));
  return LoopFreeCategory::from_poset(Poset::from_relations(labels, relations));
}

SpaceHomology hbranch_homology(const BranchDiagram &d) {
  SpaceHomology h;
  if (d.empty())
    return h;
  h.empty = false;
  ChainComplex c = element_complex(d);
  h.groups = all_homology(c, false);
  h.reduced = all_homology(c, true);
  return h;
}

SpaceHomology hbranch_homology_at(const Flow &x, State a, Sign sign) {
  return hbranch_homology(branch_diagram(x, a, sign));
}

HomologyGroup HomologyTable::degree(std::size_t n) const {
  return n < groups.size() ? groups[n] : HomologyGroup{};
}

bool HomologyTable::same_groups(const HomologyTable &other) const {
  return groups == other.groups;
}

HomologyTable homology_table(const Flow &x, Sign sign) {
  HomologyTable t;
  t.sign = sign;
  auto oriented = sign == Sign::minus
                      ? std::make_shared<const Flow>(x)
                      : std::make_shared<const Flow>(opposite_flow(x));
  std::size_t empty = 0, top = 0;
  for (State a = 0; a < x.num_states(); ++a) {
    t.per_state.push_back(hbranch_homology(BranchDiagram(oriented, a, sign)));
    const SpaceHomology &h = t.per_state.back();
    if (h.empty)
      ++empty;
    else
      top = std::max(top, h.groups.size());
  }
  t.groups.assign(top + 1, HomologyGroup{});
  t.groups[0] = HomologyGroup::free(empty);
  for (std::size_t n = 1; n <= top; ++n) {
    std::vector<HomologyGroup> parts;
    for (const auto &h : t.per_state)
      if (!h.empty)
        parts.push_back(h.degree(n - 1, n == 1));
    t.groups[n] = direct_sum(parts);
  }
  while (t.groups.size() > 1 && t.groups.back().is_zero())
    t.groups.pop_back();
  return t;
}

} // namespace flowhom
