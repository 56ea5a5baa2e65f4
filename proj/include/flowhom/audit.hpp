#pragma once

#include "flowhom/branching.hpp"
#include "flowhom/flow.hpp"
#include "flowhom/poset.hpp"
#include "flowhom/random.hpp"
#include "flowhom/reedy.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace flowhom {

/// Checks run over one object, with a message per failed check.
struct Audit {
  std::size_t checks = 0;
  std::vector<std::string> failures;

  bool passed() const noexcept { return failures.empty(); }
  void expect(bool ok, const std::string &what);
  void merge(const Audit &other);
};

/// Plus generators raise the degree, minus generators lower it, and every
/// arrow has exactly one (minus, plus) factorization, the one `factorize`
/// returns.
Audit audit_reedy(const ReedyStructure &r);

/// l(a,b) + l(b,c) <= l(a,c) and l(a,b)^2 + l(b,c)^2 < l(a,c)^2 on every
/// a < b < c.
Audit audit_superadditivity(const Poset &p);

/// At every state and for the given sign, the diagram colimit matches the
/// germs anchored there.
Audit audit_germs(const Flow &x, Sign sign);

/// Latching formula at every simplex.
Audit audit_latching(const BranchDiagram &d);

/// Functoriality of the cube, agreement of the cube and the iterated
/// pushout products, and injectivity when every map is injective.
Audit audit_cube(const std::vector<SetMap> &fs);

/// Merging homology of `x` against branching homology of its opposite.
Audit audit_duality(const Flow &x);

/// Map between sets of at most `max_size` elements, never from a non-empty
/// set to the empty set.
SetMap random_set_map(Rng &rng, std::size_t max_size);

/// Up to four sets of at most three elements and up to four maps.
SetDiagram random_set_diagram(Rng &rng);

} // namespace flowhom
