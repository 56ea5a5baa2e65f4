#include "fixtures.hpp"

#include "flowhom/audit.hpp"

#include <doctest.h>

using namespace flowhom;

TEST_CASE("audit bookkeeping") {
  Audit a;
  a.expect(true, "fine");
  a.expect(false, "broken");
  CHECK(a.checks == 2);
  CHECK_FALSE(a.passed());
  Audit b;
  b.expect(true, "fine");
  b.merge(a);
  CHECK(b.checks == 3);
  CHECK(b.failures == std::vector<std::string>{"broken"});
}

TEST_CASE("audits on known objects") {
  auto pent = fixtures::pentagon();
  CHECK(audit_superadditivity(pent).passed());
  CHECK(audit_superadditivity(pent).checks == 5);
  auto r = reedy_structure(pent, "0");
  auto ra = audit_reedy(r);
  CHECK(ra.passed());
  CHECK(ra.checks == r.generators().size() + 2 * r.arrows().size());

  auto x = flow_of_poset(pent);
  CHECK(audit_germs(x, Sign::minus).passed());
  CHECK(audit_germs(glob(3), Sign::plus).passed());
  CHECK(audit_latching(branch_diagram(x, 0, Sign::minus)).checks == 9);
  CHECK(audit_duality(x).passed());

  SetMap incl{2, 3, {0, 1}};
  auto c = audit_cube({incl, incl});
  CHECK(c.passed());
  CHECK(c.checks == 3);
}

TEST_CASE("random set maps stay in range") {
  Rng rng(9);
  for (int i = 0; i < 200; ++i) {
    auto f = random_set_map(rng, 4);
    CHECK(f.domain <= 4);
    CHECK(f.codomain <= 4);
    CHECK(f.valid());
    CHECK((f.domain == 0 || f.codomain > 0));
    auto d = random_set_diagram(rng);
    for (const auto &e : d.edges)
      CHECK(e.map.valid());
  }
}
