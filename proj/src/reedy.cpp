#include "flowhom/reedy.hpp"

#include "flowhom/error.hpp"
#include "flowhom/union_find.hpp"

#include <algorithm>
#include <functional>

namespace flowhom {

namespace {

bool contains_all(const std::vector<std::size_t> &big,
                  const std::vector<std::size_t> &small) {
  return std::all_of(small.begin(), small.end(), [&](std::size_t v) {
    return std::find(big.begin(), big.end(), v) != big.end();
  });
}

OrderComplex upper_index(const Poset &p, Element base) {
  if (base >= p.size())
    throw UnknownLabel("no element with index " + std::to_string(base));
  return OrderComplex(p.strict_upper_set(base));
}

} // namespace

ReedyStructure::ReedyStructure(Poset p, Element base)
    : poset_(std::move(p)), base_(base), index_(upper_index(poset_, base)) {
  const Poset &up = index_.base();
  for (const Simplex &s : index_.simplices()) {
    std::vector<Element> chain;
    for (Element v : s)
      chain.push_back(poset_.index_of(up.label(v)));
    std::size_t d = 0;
    Element prev = base_;
    for (Element e : chain) {
      std::size_t l = poset_.ell(prev, e);
      d += l * l;
      prev = e;
    }
    chains_.push_back(std::move(chain));
    degree_.push_back(d);
  }
}

std::string ReedyStructure::name(std::size_t s) const {
  return to_string(index_.base(), index_.simplices().at(s));
}

std::optional<std::size_t>
ReedyStructure::find(const std::vector<Element> &chain) const {
  Simplex s;
  for (Element e : chain) {
    auto v = index_.base().find(poset_.label(e));
    if (!v)
      return std::nullopt;
    s.push_back(*v);
  }
  return index_.index_of(s);
}

std::vector<ReedyStructure::Generator> ReedyStructure::generators() const {
  std::vector<Generator> out;
  for (std::size_t s = 0; s < size(); ++s) {
    const auto &c = chains_[s];
    if (c.size() < 2)
      continue;
    for (std::size_t i = 0; i < c.size(); ++i)
      out.push_back({s, *index_.index_of(face(index_.simplices()[s], i)), i,
                     i + 1 < c.size()});
  }
  return out;
}

std::vector<ReedyStructure::Arrow> ReedyStructure::arrows() const {
  std::vector<Arrow> out;
  for (std::size_t s = 0; s < size(); ++s)
    for (std::size_t t = 0; t < size(); ++t)
      if (is_arrow({s, t}))
        out.push_back({s, t});
  return out;
}

bool ReedyStructure::is_arrow(const Arrow &a) const {
  return a.source < size() && a.target < size() &&
         contains_all(chains_[a.source], chains_[a.target]);
}

bool ReedyStructure::is_minus(const Arrow &a) const {
  if (!is_arrow(a))
    return false;
  const auto &s = chains_[a.source];
  const auto &t = chains_[a.target];
  return std::equal(t.begin(), t.end(), s.begin());
}

bool ReedyStructure::is_plus(const Arrow &a) const {
  return is_arrow(a) && chains_[a.source].back() == chains_[a.target].back();
}

ReedyStructure::Arrow ReedyStructure::compose(const Arrow &f,
                                              const Arrow &g) const {
  if (!is_arrow(f) || !is_arrow(g) || f.target != g.source)
    throw NotAnArrow("arrows do not compose");
  return {f.source, g.target};
}

ReedyStructure reedy_structure(const Poset &p, const std::string &base) {
  auto e = p.find(base);
  if (!e)
    throw UnknownLabel("unknown element " + base);
  return ReedyStructure(p, *e);
}

std::pair<ReedyStructure::Arrow, ReedyStructure::Arrow>
factorize(const ReedyStructure &r, const ReedyStructure::Arrow &f) {
  if (!r.is_arrow(f))
    throw NotAnArrow("not a sub-chain");
  const auto &s = r.chain(f.source);
  Element last = r.chain(f.target).back();
  std::vector<Element> prefix(s.begin(),
                              std::find(s.begin(), s.end(), last) + 1);
  std::size_t middle = *r.find(prefix);
  return {{f.source, middle}, {middle, f.target}};
}

LoopFreeCategory matching_category(const ReedyStructure &r, std::size_t s) {
  const auto &c = r.chain(s);
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> rel;
  for (std::size_t len = c.size() - 1; len >= 1; --len) {
    labels.push_back(
        r.name(*r.find(std::vector<Element>(c.begin(), c.begin() + len))));
    if (labels.size() > 1)
      rel.emplace_back(labels[labels.size() - 2], labels.back());
  }
  return LoopFreeCategory::from_poset(Poset::from_relations(labels, rel));
}

bool SetMap::valid() const {
  return map.size() == domain &&
         std::all_of(map.begin(), map.end(),
                     [&](std::size_t y) { return y < codomain; });
}

bool SetMap::injective() const {
  std::vector<bool> hit(codomain, false);
  for (std::size_t y : map) {
    if (hit[y])
      return false;
    hit[y] = true;
  }
  return true;
}

bool SetMap::surjective() const {
  std::vector<bool> hit(codomain, false);
  for (std::size_t y : map)
    hit[y] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

std::vector<std::size_t> SetDiagram::offsets() const {
  std::vector<std::size_t> out(sizes.size() + 1, 0);
  for (std::size_t i = 0; i < sizes.size(); ++i)
    out[i + 1] = out[i] + sizes[i];
  return out;
}

SetColimit colimit(const SetDiagram &d) {
  auto off = d.offsets();
  UnionFind uf(off.back());
  for (const auto &e : d.edges)
    for (std::size_t x = 0; x < e.map.domain; ++x)
      uf.unite(off[e.from] + x, off[e.to] + e.map.map[x]);
  SetColimit c;
  c.class_of = uf.class_ids(&c.size);
  return c;
}

SetDiagram product_diagram(const SetDiagram &d, const SetDiagram &e) {
  const std::size_t m = e.sizes.size();
  SetDiagram out;
  for (std::size_t i = 0; i < d.sizes.size(); ++i)
    for (std::size_t j = 0; j < m; ++j)
      out.sizes.push_back(d.sizes[i] * e.sizes[j]);
  for (const auto &edge : d.edges)
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t w = e.sizes[j];
      SetMap f{d.sizes[edge.from] * w, d.sizes[edge.to] * w, {}};
      for (std::size_t x = 0; x < d.sizes[edge.from]; ++x)
        for (std::size_t y = 0; y < w; ++y)
          f.map.push_back(edge.map.map[x] * w + y);
      out.edges.push_back({edge.from * m + j, edge.to * m + j, std::move(f)});
    }
  for (const auto &edge : e.edges)
    for (std::size_t i = 0; i < d.sizes.size(); ++i) {
      const std::size_t from = e.sizes[edge.from], to = e.sizes[edge.to];
      SetMap f{d.sizes[i] * from, d.sizes[i] * to, {}};
      for (std::size_t x = 0; x < d.sizes[i]; ++x)
        for (std::size_t y = 0; y < from; ++y)
          f.map.push_back(x * to + edge.map.map[y]);
      out.edges.push_back({i * m + edge.from, i * m + edge.to, std::move(f)});
    }
  return out;
}

bool colimit_of_product_factors(const SetDiagram &d, const SetDiagram &e) {
  SetColimit cd = colimit(d), ce = colimit(e);
  SetDiagram pd = product_diagram(d, e);
  SetColimit cp = colimit(pd);
  auto od = d.offsets(), oe = e.offsets(), op = pd.offsets();
  const std::size_t m = e.sizes.size();
  std::vector<std::size_t> image(cp.size, UnionFind::npos);
  for (std::size_t i = 0; i < d.sizes.size(); ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t x = 0; x < d.sizes[i]; ++x)
        for (std::size_t y = 0; y < e.sizes[j]; ++y) {
          std::size_t pair =
              cd.class_of[od[i] + x] * ce.size + ce.class_of[oe[j] + y];
          std::size_t c = cp.class_of[op[i * m + j] + x * e.sizes[j] + y];
          if (image[c] == UnionFind::npos)
            image[c] = pair;
          else if (image[c] != pair)
            return false;
        }
  SetMap f{cp.size, cd.size * ce.size, image};
  return f.valid() && f.injective() && f.surjective();
}

CubeDiagram::CubeDiagram(std::vector<SetMap> maps) : maps_(std::move(maps)) {
  if (maps_.empty() || maps_.size() > 16)
    throw Error("a cube needs between 1 and 16 maps");
  for (const auto &f : maps_)
    if (!f.valid())
      throw Error("set map is not a total function");
}

std::size_t CubeDiagram::size(unsigned subset) const {
  std::size_t n = 1;
  for (std::size_t i = 0; i < maps_.size(); ++i)
    n *= (subset >> i & 1u) ? maps_[i].codomain : maps_[i].domain;
  return n;
}

std::vector<std::size_t> CubeDiagram::decode(unsigned subset,
                                             std::size_t element) const {
  std::vector<std::size_t> t(maps_.size());
  for (std::size_t i = maps_.size(); i-- > 0;) {
    std::size_t radix =
        (subset >> i & 1u) ? maps_[i].codomain : maps_[i].domain;
    t[i] = element % radix;
    element /= radix;
  }
  return t;
}

std::size_t CubeDiagram::encode(unsigned subset,
                                const std::vector<std::size_t> &t) const {
  std::size_t e = 0;
  for (std::size_t i = 0; i < maps_.size(); ++i)
    e = e * ((subset >> i & 1u) ? maps_[i].codomain : maps_[i].domain) + t[i];
  return e;
}

std::size_t CubeDiagram::apply(unsigned subset, std::size_t i,
                               std::size_t element) const {
  auto t = decode(subset, element);
  t[i] = maps_[i].map[t[i]];
  return encode(subset | (1u << i), t);
}

std::size_t CubeDiagram::to_top(unsigned subset, std::size_t element) const {
  auto t = decode(subset, element);
  for (std::size_t i = 0; i < maps_.size(); ++i)
    if (!(subset >> i & 1u))
      t[i] = maps_[i].map[t[i]];
  return encode((1u << maps_.size()) - 1, t);
}

bool CubeDiagram::check_functorial() const {
  const unsigned full = (1u << maps_.size()) - 1;
  for (unsigned s = 0; s <= full; ++s)
    for (std::size_t i = 0; i < maps_.size(); ++i)
      for (std::size_t j = i + 1; j < maps_.size(); ++j) {
        if ((s >> i & 1u) || (s >> j & 1u))
          continue;
        for (std::size_t e = 0; e < size(s); ++e) {
          std::size_t a = apply(s | (1u << i), j, apply(s, i, e));
          std::size_t b = apply(s | (1u << j), i, apply(s, j, e));
          if (a != b)
            return false;
        }
      }
  return true;
}

SetDiagram CubeDiagram::diagram(bool proper_only) const {
  const unsigned full = (1u << maps_.size()) - 1;
  const unsigned last = proper_only ? full - 1 : full;
  SetDiagram d;
  for (unsigned s = 0; s <= last; ++s)
    d.sizes.push_back(size(s));
  for (unsigned s = 0; s <= last; ++s)
    for (std::size_t i = 0; i < maps_.size(); ++i) {
      unsigned t = s | (1u << i);
      if (t == s || t > last)
        continue;
      SetMap f{size(s), size(t), {}};
      for (std::size_t e = 0; e < size(s); ++e)
        f.map.push_back(apply(s, i, e));
      d.edges.push_back({s, t, std::move(f)});
    }
  return d;
}

CubePushoutProduct cube_pushout_product(const std::vector<SetMap> &fs) {
  CubeDiagram cube(fs);
  SetDiagram d = cube.diagram(true);
  CubePushoutProduct out{cube, {}, d.offsets(), colimit(d)};
  const unsigned full = (1u << fs.size()) - 1;
  out.map.domain = out.colim.size;
  out.map.codomain = cube.size(full);
  out.map.map.assign(out.colim.size, 0);
  for (unsigned s = 0; s < full; ++s)
    for (std::size_t e = 0; e < cube.size(s); ++e)
      out.map.map[out.class_of(s, e)] = cube.to_top(s, e);
  return out;
}

SetMap pushout_product(const std::vector<SetMap> &fs) {
  return cube_pushout_product(fs).map;
}

BinaryPushoutProduct binary_pushout_product(const SetMap &f, const SetMap &g) {
  const std::size_t u = f.domain, v = f.codomain, w = g.domain,
                    x = g.codomain;
  UnionFind uf(u * x + v * w);
  for (std::size_t a = 0; a < u; ++a)
    for (std::size_t b = 0; b < w; ++b)
      uf.unite(a * x + g.map[b], u * x + f.map[a] * w + b);
  std::size_t count = 0;
  auto ids = uf.class_ids(&count);
  BinaryPushoutProduct out;
  out.left_width = x;
  out.right_width = w;
  out.left_class.assign(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(u * x));
  out.right_class.assign(ids.begin() + static_cast<std::ptrdiff_t>(u * x), ids.end());
  out.map = {count, v * x, std::vector<std::size_t>(count, 0)};
  for (std::size_t a = 0; a < u; ++a)
    for (std::size_t c = 0; c < x; ++c)
      out.map.map[out.left(a, c)] = f.map[a] * x + c;
  for (std::size_t a = 0; a < v; ++a)
    for (std::size_t b = 0; b < w; ++b)
      out.map.map[out.right(a, b)] = a * x + g.map[b];
  return out;
}

std::vector<BinaryPushoutProduct>
iterated_pushout_product(const std::vector<SetMap> &fs) {
  std::vector<BinaryPushoutProduct> stages;
  for (std::size_t k = 1; k < fs.size(); ++k)
    stages.push_back(binary_pushout_product(
        k == 1 ? fs[0] : stages.back().map, fs[k]));
  return stages;
}

bool cube_matches_iterated(const std::vector<SetMap> &fs) {
  CubePushoutProduct cube = cube_pushout_product(fs);
  if (fs.size() == 1) {
    const SetMap &f = fs[0];
    return cube.map.domain == f.domain && cube.map.map == f.map;
  }
  auto stages = iterated_pushout_product(fs);
  const SetMap &last = stages.back().map;

  // Element of the domain of f0 [] ... [] fk for a cube tuple whose subset
  // restricted to 0..k is proper.
  std::function<std::size_t(unsigned, const std::vector<std::size_t> &,
                            std::size_t)>
      embed = [&](unsigned s, const std::vector<std::size_t> &t,
                  std::size_t k) -> std::size_t {
    if (k == 0)
      return t[0];
    if (s >> k & 1u)
      return stages[k - 1].left(embed(s, t, k - 1), t[k]);
    std::size_t v = 0;
    for (std::size_t i = 0; i < k; ++i)
      v = v * fs[i].codomain + ((s >> i & 1u) ? t[i] : fs[i].map[t[i]]);
    return stages[k - 1].right(v, t[k]);
  };

  const unsigned full = (1u << fs.size()) - 1;
  std::vector<std::size_t> image(cube.colim.size, UnionFind::npos);
  for (unsigned s = 0; s < full; ++s)
    for (std::size_t e = 0; e < cube.cube.size(s); ++e) {
      std::size_t y = embed(s, cube.cube.decode(s, e), fs.size() - 1);
      std::size_t c = cube.class_of(s, e);
      if (image[c] == UnionFind::npos)
        image[c] = y;
      else if (image[c] != y)
        return false;
      if (last.map[y] != cube.map.map[c])
        return false;
    }
  SetMap comparison{cube.colim.size, last.domain, image};
  return comparison.valid() && comparison.injective() &&
         comparison.surjective();
}

std::size_t restrict_element(const BranchDiagram &d, std::size_t s,
                             std::size_t e, std::size_t target) {
  const auto &keep = d.states(target);
  if (!contains_all(d.states(s), keep))
    throw NotAnArrow(d.simplex_name(target) + " is not a sub-chain of " +
                     d.simplex_name(s));
  while (d.states(s).size() != keep.size()) {
    const auto &cur = d.states(s);
    std::size_t i = 0;
    while (std::find(keep.begin(), keep.end(), cur[i]) != keep.end())
      ++i;
    e = d.apply_face(s, i, e);
    s = d.face(s, i);
  }
  return e;
}

LatchingObject latching_object(const BranchDiagram &d, std::size_t simplex) {
  if (simplex >= d.num_simplices())
    throw UnknownSimplex("no simplex with index " + std::to_string(simplex));
  LatchingObject out;
  out.simplex = simplex;
  const auto &target = d.states(simplex);
  std::vector<bool> member(d.num_simplices(), false);
  for (std::size_t b = 0; b < d.num_simplices(); ++b)
    if (d.states(b).size() > target.size() &&
        d.states(b).back() == target.back() &&
        contains_all(d.states(b), target)) {
      member[b] = true;
      out.refinements.push_back(b);
    }

  UnionFind uf(d.total_size());
  for (std::size_t b : out.refinements)
    for (std::size_t i = 0; i < d.dimension(b); ++i) {
      std::size_t t = d.face(b, i);
      if (!member[t])
        continue;
      for (std::size_t e = 0; e < d.size(b); ++e)
        uf.unite(d.offset(b) + e, d.offset(t) + d.apply_face(b, i, e));
    }

  out.class_of.assign(d.total_size(), UnionFind::npos);
  std::vector<std::size_t> dense(d.total_size(), UnionFind::npos);
  out.to_vertex_set.codomain = d.size(simplex);
  for (std::size_t b : out.refinements)
    for (std::size_t e = 0; e < d.size(b); ++e) {
      std::size_t root = uf.find(d.offset(b) + e);
      if (dense[root] == UnionFind::npos) {
        dense[root] = out.size++;
        out.to_vertex_set.map.push_back(restrict_element(d, b, e, simplex));
      }
      out.class_of[d.offset(b) + e] = dense[root];
    }
  out.to_vertex_set.domain = out.size;
  return out;
}

bool verify_latching_formula(const BranchDiagram &d, std::size_t simplex) {
  if (simplex >= d.num_simplices())
    throw UnknownSimplex("no simplex with index " + std::to_string(simplex));
  const auto &sigma = d.states(simplex);
  const std::size_t n = sigma.size();

  // Latching maps of the single vertices a(i) over a(i-1).
  std::vector<BranchDiagram> legs;
  std::vector<LatchingObject> leg_latching;
  std::vector<SetMap> fs;
  State prev = d.base();
  for (State a : sigma) {
    legs.emplace_back(d.shared_flow(), prev, d.sign());
    std::size_t vertex = *legs.back().find_simplex({a});
    leg_latching.push_back(latching_object(legs.back(), vertex));
    fs.push_back(leg_latching.back().to_vertex_set);
    prev = a;
  }
  CubePushoutProduct cube = cube_pushout_product(fs);
  LatchingObject lat = latching_object(d, simplex);
  if (cube.map.codomain != d.size(simplex))
    return false;

  std::vector<std::size_t> image(lat.size, UnionFind::npos);
  for (std::size_t b : lat.refinements) {
    const auto &beta = d.states(b);
    for (std::size_t e = 0; e < d.size(b); ++e) {
      auto x = d.element(b, e);
      unsigned subset = 0;
      std::vector<std::size_t> t(n);
      std::size_t start = 0;
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t end = static_cast<std::size_t>(
            std::find(beta.begin(), beta.end(), sigma[i]) - beta.begin());
        std::vector<State> block(beta.begin() + static_cast<std::ptrdiff_t>(start),
                                 beta.begin() + static_cast<std::ptrdiff_t>(end) + 1);
        BranchDiagram::Tuple piece(x.begin() + static_cast<std::ptrdiff_t>(start),
                                   x.begin() + static_cast<std::ptrdiff_t>(end) + 1);
        const BranchDiagram &leg = legs[i];
        std::size_t ls = *leg.find_simplex(block);
        std::size_t le = leg.encode(ls, piece);
        if (block.size() == 1) {
          subset |= 1u << i;
          t[i] = le;
        } else {
          t[i] = leg_latching[i].class_of[leg.offset(ls) + le];
        }
        start = end + 1;
      }
      const unsigned full = (1u << n) - 1;
      if (subset == full)
        return false;
      std::size_t c = cube.class_of(subset, cube.cube.encode(subset, t));
      std::size_t l = lat.class_of[d.offset(b) + e];
      if (image[l] == UnionFind::npos)
        image[l] = c;
      else if (image[l] != c)
        return false;
      if (cube.map.map[c] != lat.to_vertex_set.map[l])
        return false;
    }
  }
  SetMap comparison{lat.size, cube.colim.size, image};
  return comparison.valid() && comparison.injective() &&
         comparison.surjective();
}

bool check_latching_injective(const BranchDiagram &d) {
  for (std::size_t s = 0; s < d.num_simplices(); ++s)
    if (!latching_object(d, s).injective())
      return false;
  return true;
}

} // namespace flowhom
