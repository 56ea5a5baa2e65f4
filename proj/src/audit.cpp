#include "flowhom/audit.hpp"

namespace flowhom {

void Audit::expect(bool ok, const std::string &what) {
  ++checks;
  if (!ok)
    failures.push_back(what);
}

void Audit::merge(const Audit &other) {
  checks += other.checks;
  failures.insert(failures.end(), other.failures.begin(), other.failures.end());
}

Audit audit_reedy(const ReedyStructure &r) {
  Audit a;
  for (const auto &g : r.generators()) {
    bool up = r.degree(g.target) > r.degree(g.source);
    bool down = r.degree(g.target) < r.degree(g.source);
    a.expect(g.plus ? up : down, "generator " + r.name(g.source) + " -> " +
                                     r.name(g.target) +
                                     " moves the degree the wrong way");
  }
  for (const auto &f : r.arrows()) {
    std::string what = r.name(f.source) + " -> " + r.name(f.target);
    std::size_t count = 0;
    for (std::size_t mid = 0; mid < r.size(); ++mid)
      if (r.is_minus({f.source, mid}) && r.is_plus({mid, f.target}))
        ++count;
    a.expect(count == 1, what + " has " + std::to_string(count) +
                             " factorizations");
    auto [m, q] = factorize(r, f);
    a.expect(r.is_minus(m) && r.is_plus(q) && r.compose(m, q) == f,
             "factorization of " + what + " does not recompose");
  }
  return a;
}

Audit audit_superadditivity(const Poset &p) {
  Audit a;
  for (const auto &[x, y] : p.strict_pairs())
    for (Element z : p.strictly_above(y)) {
      auto xy = p.ell(x, y), yz = p.ell(y, z), xz = p.ell(x, z);
      a.expect(xy + yz <= xz && xy * xy + yz * yz < xz * xz,
               "lengths along " + p.label(x) + " < " + p.label(y) + " < " +
                   p.label(z));
    }
  return a;
}

Audit audit_germs(const Flow &x, Sign sign) {
  Audit a;
  for (State s = 0; s < x.num_states(); ++s) {
    auto c = compare_with_germs(x, branch_diagram(x, s, sign));
    a.expect(c.well_defined && c.bijective &&
                 c.colimit_size == c.fiber_size,
             "germs at " + x.state_label(s) + " (" + to_string(sign) +
                 "): colimit " + std::to_string(c.colimit_size) +
                 ", fiber " + std::to_string(c.fiber_size));
  }
  return a;
}

Audit audit_latching(const BranchDiagram &d) {
  Audit a;
  for (std::size_t s = 0; s < d.num_simplices(); ++s)
    a.expect(verify_latching_formula(d, s),
             "latching formula at " + d.simplex_name(s));
  return a;
}

Audit audit_cube(const std::vector<SetMap> &fs) {
  Audit a;
  a.expect(CubeDiagram(fs).check_functorial(), "cube is not a functor");
  a.expect(cube_matches_iterated(fs),
           "cube and iterated pushout products differ");
  bool injective = true;
  for (const auto &f : fs)
    injective = injective && f.injective();
  if (injective)
    a.expect(pushout_product(fs).injective(),
             "pushout product of injections is not injective");
  return a;
}

Audit audit_duality(const Flow &x) {
  Audit a;
  a.expect(homology_table(x, Sign::plus)
               .same_groups(homology_table(opposite_flow(x), Sign::minus)),
           "merging homology differs from branching homology of the "
           "opposite flow");
  return a;
}

SetMap random_set_map(Rng &rng, std::size_t max_size) {
  SetMap f;
  f.domain = uniform(rng, 0, max_size);
  f.codomain = uniform(rng, f.domain == 0 ? 0 : 1, max_size);
  for (std::size_t i = 0; i < f.domain; ++i)
    f.map.push_back(uniform(rng, 0, f.codomain - 1));
  return f;
}

SetDiagram random_set_diagram(Rng &rng) {
  SetDiagram d;
  std::size_t n = uniform(rng, 1, 4);
  for (std::size_t i = 0; i < n; ++i)
    d.sizes.push_back(uniform(rng, 0, 3));
  std::size_t edges = uniform(rng, 0, 4);
  for (std::size_t k = 0; k < edges; ++k) {
    std::size_t from = uniform(rng, 0, n - 1), to = uniform(rng, 0, n - 1);
    if (d.sizes[to] == 0 && d.sizes[from] != 0)
      continue;
    SetMap f{d.sizes[from], d.sizes[to], {}};
    for (std::size_t x = 0; x < f.domain; ++x)
      f.map.push_back(uniform(rng, 0, f.codomain - 1));
    d.edges.push_back({from, to, std::move(f)});
  }
  return d;
}

} // namespace flowhom
