#include "flowhom/commands.hpp"

#include "flowhom/audit.hpp"
#include "flowhom/error.hpp"
#include "flowhom/random.hpp"
#include "flowhom/reedy.hpp"
#include "flowhom/refine.hpp"

#include <json.hpp>

#include <algorithm>
#include <ostream>

namespace flowhom {

namespace {

using Record = nlohmann::ordered_json;

std::size_t longest_chain(const Flow &x) {
  std::size_t top = 0;
  for (const auto &[a, b] : x.order().strict_pairs())
    top = std::max(top, x.order().ell(a, b));
  return top;
}

std::string group_name(Sign s, std::size_t n) {
  return "H_" + std::to_string(n) + "^" + to_string(s);
}

std::string space_name(Sign s, const std::string &state) {
  return "hop^" + to_string(s) + "_" + state;
}

std::string reduced_line(const SpaceHomology &h) {
  if (h.empty)
    return "EMPTY";
  std::string out;
  std::size_t top = std::max<std::size_t>(h.reduced.size(), 1);
  for (std::size_t n = 0; n < top; ++n)
    out += (n ? ", ~H_" : "~H_") + std::to_string(n) + " = " +
           to_string(h.degree(n, true));
  return out;
}

Record reduced_record(const SpaceHomology &h) {
  Record groups = Record::array();
  for (const auto &g : h.reduced)
    groups.push_back(to_record(g));
  return groups;
}

const char *yes_no(bool b) { return b ? "yes" : "no"; }

std::vector<State> bases(const Flow &x, const CommandOptions &o) {
  if (o.state)
    return {x.state_index(*o.state)};
  std::vector<State> all(x.num_states());
  for (State s = 0; s < all.size(); ++s)
    all[s] = s;
  return all;
}

} // namespace

int cmd_homology(const Document &d, const CommandOptions &o,
                 std::ostream &out) {
  Flow x = document_flow(d, o.flow);
  auto table = homology_table(x, o.sign);
  std::size_t top = longest_chain(x) + 1;
  if (!o.json_lines)
    out << "homology flow=" << o.flow << " sign=" << to_string(o.sign)
        << "\n";
  for (std::size_t n = 0; n <= top; ++n) {
    if (o.json_lines)
      out << Record{{"command", "homology"},
                    {"flow", o.flow},
                    {"sign", to_string(o.sign)},
                    {"degree", n},
                    {"group", to_record(table.degree(n))}}
                 .dump()
          << "\n";
    else
      out << group_name(o.sign, n) << " = " << to_string(table.degree(n))
          << "\n";
  }
  if (o.per_state)
    for (State s = 0; s < x.num_states(); ++s) {
      const auto &h = table.per_state[s];
      if (o.json_lines)
        out << Record{{"command", "homology"},
                      {"flow", o.flow},
                      {"sign", to_string(o.sign)},
                      {"state", x.state_label(s)},
                      {"empty", h.empty},
                      {"reduced", reduced_record(h)}}
                   .dump()
            << "\n";
      else
        out << space_name(o.sign, x.state_label(s))
            << (h.empty ? " = " : ": ") << reduced_line(h) << "\n";
    }
  return exit_ok;
}

int cmd_branch_space(const Document &d, const CommandOptions &o,
                     std::ostream &out) {
  Flow x = document_flow(d, o.flow);
  auto germs = germ_space(x, o.sign);
  bool ok = true;
  if (!o.json_lines)
    out << "branch-space flow=" << o.flow << " sign=" << to_string(o.sign)
        << "\n";
  for (State a : bases(x, o)) {
    auto diagram = branch_diagram(x, a, o.sign);
    auto c = compare_with_germs(x, diagram);
    auto h = hbranch_homology(diagram);
    ok = ok && c.bijective && c.well_defined;
    auto fiber = germs.fiber(a);
    // Each germ is shown by the least path class it contains.
    std::vector<std::string> names;
    for (std::size_t g : fiber)
      for (PathClass p = 0; p < x.num_classes(); ++p)
        if (germs.germ_of[p] == g) {
          names.push_back(x.class_name(p));
          break;
        }
    if (o.json_lines) {
      out << Record{{"command", "branch-space"},
                    {"flow", o.flow},
                    {"sign", to_string(o.sign)},
                    {"state", x.state_label(a)},
                    {"germs", names},
                    {"simplices", diagram.num_simplices()},
                    {"elements", diagram.total_size()},
                    {"colimit", c.colimit_size},
                    {"bijective", c.bijective && c.well_defined},
                    {"empty", h.empty},
                    {"reduced", reduced_record(h)}}
                 .dump()
          << "\n";
      continue;
    }
    const std::string &l = x.state_label(a);
    out << "state " << l << "\n";
    out << "  germs: " << fiber.size();
    for (const auto &n : names)
      out << " [" << n << "]";
    out << "\n";
    out << "  diagram: " << diagram.num_simplices() << " simplices, "
        << diagram.total_size() << " elements\n";
    out << "  colimit: " << c.colimit_size << ", matches germs: "
        << yes_no(c.bijective && c.well_defined) << "\n";
    out << "  " << space_name(o.sign, l) << (h.empty ? " = " : ": ")
        << reduced_line(h) << "\n";
  }
  return ok ? exit_ok : exit_property_failure;
}

namespace {

struct Refinement {
  Flow host;
  RefinementResult result;
};

Refinement run_refinement(const Document &d, const CommandOptions &o) {
  Flow host = document_flow(d, o.flow);
  auto f = resolve_tmap(d, o.tmap);
  auto e = resolve_ball(d, o.ball, host);
  if (!(e.ball == f.source))
    throw EmbeddingInvalid("ball '" + o.ball + "' and tmap '" + o.tmap +
                           "' start from different posets");
  auto r = refine_pushout(host, f, e);
  return {std::move(host), std::move(r)};
}

std::string refine_header(const std::string &command,
                          const CommandOptions &o) {
  return command + " flow=" + o.flow + " ball=" + o.ball + " tmap=" + o.tmap;
}

} // namespace

int cmd_refine(const Document &d, const CommandOptions &o, std::ostream &out) {
  auto [host, r] = run_refinement(d, o);
  out << "# " << refine_header("refine", o) << "\n";
  out << "# states " << host.num_states() << " -> " << r.refined.num_states()
      << "\n";
  out << "# new states:";
  for (State s : r.new_states)
    out << " " << r.refined.state_label(s);
  out << "\n";
  out << emit_flow(o.flow + "_refined", r.presentation);
  return exit_ok;
}

int cmd_check_invariance(const Document &d, const CommandOptions &o,
                         std::ostream &out) {
  auto [host, r] = run_refinement(d, o);
  auto report = check_invariance(host, r);
  std::size_t top = 1;
  for (const auto *t : {&report.host_minus, &report.host_plus,
                        &report.refined_minus, &report.refined_plus})
    top = std::max(top, t->groups.size());

  struct Side {
    Sign sign;
    const HomologyTable &host, &refined;
  };
  const Side sides[] = {{Sign::minus, report.host_minus, report.refined_minus},
                        {Sign::plus, report.host_plus, report.refined_plus}};
  const std::pair<const char *, bool> conditions[] = {
      {"surrounded", report.surrounded},
      {"old states", report.old_states},
      {"new states", report.new_states},
      {"tables", report.tables}};

  if (o.json_lines) {
    for (const auto &s : sides)
      for (std::size_t n = 0; n < top; ++n)
        out << Record{{"command", "check-invariance"},
                      {"sign", to_string(s.sign)},
                      {"degree", n},
                      {"host", to_record(s.host.degree(n))},
                      {"refined", to_record(s.refined.degree(n))}}
                   .dump()
            << "\n";
    Record verdict{{"command", "check-invariance"}};
    for (const auto &[name, ok] : conditions)
      verdict[name] = ok;
    verdict["failures"] = report.failures;
    verdict["verdict"] = report.passed() ? "pass" : "fail";
    out << verdict.dump() << "\n";
  } else {
    out << refine_header("check-invariance", o) << "\n";
    for (const auto &[name, ok] : conditions)
      out << name << ": " << yes_no(ok) << "\n";
    for (const auto &s : sides)
      for (std::size_t n = 0; n < top; ++n)
        out << group_name(s.sign, n) << " = " << to_string(s.host.degree(n))
            << " | " << to_string(s.refined.degree(n)) << "\n";
    for (const auto &f : report.failures)
      out << "failure: " << f << "\n";
    out << "verdict: " << (report.passed() ? "pass" : "fail") << "\n";
  }
  return report.passed() ? exit_ok : exit_property_failure;
}

int cmd_reedy_audit(const Document &d, const CommandOptions &o,
                    std::ostream &out) {
  Flow x = document_flow(d, o.flow);
  Audit total = audit_superadditivity(x.order());
  if (!o.json_lines)
    out << "reedy-audit flow=" << o.flow << "\n"
        << "lengths: " << total.checks << " checks\n";
  for (State base : bases(x, o)) {
    ReedyStructure r(x.order(), base);
    auto a = audit_reedy(r);
    Audit latching;
    bool injective[2];
    for (Sign s : {Sign::minus, Sign::plus}) {
      auto diagram = branch_diagram(x, base, s);
      latching.merge(audit_latching(diagram));
      injective[s == Sign::plus] = check_latching_injective(diagram);
    }
    total.merge(a);
    total.merge(latching);
    const std::string &l = x.state_label(base);
    if (o.json_lines) {
      Record degrees = Record::object();
      for (std::size_t s = 0; s < r.size(); ++s)
        degrees[r.name(s)] = r.degree(s);
      out << Record{{"command", "reedy-audit"},
                    {"flow", o.flow},
                    {"base", l},
                    {"degrees", degrees},
                    {"reedy_checks", a.checks},
                    {"reedy_failures", a.failures.size()},
                    {"latching_checks", latching.checks},
                    {"latching_failures", latching.failures.size()},
                    {"latching_injective_minus", injective[0]},
                    {"latching_injective_plus", injective[1]}}
                 .dump()
          << "\n";
      continue;
    }
    out << "base " << l << "\n";
    for (std::size_t s = 0; s < r.size(); ++s)
      out << "  " << r.name(s) << " degree " << r.degree(s) << "\n";
    out << "  reedy: " << a.checks << " checks, " << a.failures.size()
        << " failures\n";
    out << "  latching formula: " << latching.checks << " checks, "
        << latching.failures.size() << " failures\n";
    out << "  latching injective: - " << yes_no(injective[0]) << ", + "
        << yes_no(injective[1]) << "\n";
  }
  if (!o.json_lines) {
    for (const auto &f : total.failures)
      out << "failure: " << f << "\n";
    out << "verdict: " << (total.passed() ? "pass" : "fail") << "\n";
  } else {
    out << Record{{"command", "reedy-audit"},
                  {"verdict", total.passed() ? "pass" : "fail"}}
               .dump()
        << "\n";
  }
  return total.passed() ? exit_ok : exit_property_failure;
}

int cmd_selftest(const SelftestOptions &o, std::ostream &out) {
  Rng rng(o.seed);
  struct Suite {
    explicit Suite(const char *n) : name(n) {}
    const char *name;
    std::size_t items = 0;
    Audit audit;
  };
  Suite reedy{"reedy"}, lengths{"lengths"}, latching{"latching"},
      germs{"germs"}, cube{"cube"}, products{"colimit products"},
      invariance{"invariance"}, duality{"duality"};
  std::size_t injective_diagrams = 0, latching_diagrams = 0;

  RandomFlowOptions flows;
  flows.max_states = 12;
  for (std::size_t i = 0; i < o.count; ++i) {
    auto p = random_bounded_poset(rng, 8);
    ++lengths.items;
    lengths.audit.merge(audit_superadditivity(p));
    auto fp = flow_of_poset(p);
    for (Element base = 0; base < p.size(); ++base) {
      ++reedy.items;
      reedy.audit.merge(audit_reedy(ReedyStructure(p, base)));
      for (Sign s : {Sign::minus, Sign::plus}) {
        auto d = branch_diagram(fp, base, s);
        ++latching.items;
        latching.audit.merge(audit_latching(d));
        ++latching_diagrams;
        injective_diagrams += check_latching_injective(d);
      }
    }

    auto x = random_flow(rng, flows);
    ++germs.items;
    germs.audit.merge(audit_germs(x, Sign::minus));
    germs.audit.merge(audit_germs(x, Sign::plus));
    ++duality.items;
    duality.audit.merge(audit_duality(x));

    std::vector<SetMap> fs(uniform(rng, 1, 3));
    for (auto &f : fs)
      f = random_set_map(rng, 4);
    ++cube.items;
    cube.audit.merge(audit_cube(fs));
    ++products.items;
    products.audit.expect(
        colimit_of_product_factors(random_set_diagram(rng),
                                   random_set_diagram(rng)),
        "colimit of a product diagram is not the product of colimits");

    auto inst = random_refinement_instance(rng, 12);
    auto r = refine_pushout(inst.host, inst.morphism, inst.embedding);
    auto report = check_invariance(inst.host, r);
    ++invariance.items;
    invariance.audit.expect(report.passed(),
                            "invariance on instance " + std::to_string(i));
    for (const auto &f : report.failures)
      invariance.audit.failures.push_back(f);
    duality.items += 2;
    duality.audit.merge(audit_duality(inst.host));
    duality.audit.merge(audit_duality(r.refined));
  }

  bool passed = true;
  if (!o.json_lines)
    out << "selftest seed=" << o.seed << " count=" << o.count << "\n";
  for (const Suite *s : {&reedy, &lengths, &latching, &germs, &cube, &products,
                         &invariance, &duality}) {
    passed = passed && s->audit.passed();
    if (o.json_lines) {
      out << Record{{"command", "selftest"},
                    {"suite", s->name},
                    {"items", s->items},
                    {"checks", s->audit.checks},
                    {"failures", s->audit.failures.size()}}
                 .dump()
          << "\n";
      continue;
    }
    out << s->name << ": " << s->items << " items, " << s->audit.checks
        << " checks, " << s->audit.failures.size() << " failures\n";
    for (std::size_t k = 0; k < std::min<std::size_t>(5, s->audit.failures.size());
         ++k)
      out << "  " << s->audit.failures[k] << "\n";
  }
  if (o.json_lines) {
    out << Record{{"command", "selftest"},
                  {"latching_injective", injective_diagrams},
                  {"latching_diagrams", latching_diagrams},
                  {"verdict", passed ? "pass" : "fail"}}
               .dump()
        << "\n";
  } else {
    out << "latching injective: " << injective_diagrams << " of "
        << latching_diagrams << " diagrams (reported)\n";
    out << "verdict: " << (passed ? "pass" : "fail") << "\n";
  }
  return passed ? exit_ok : exit_property_failure;
}

int guarded(const std::function<int()> &body, std::ostream &err) {
  try {
    return body();
  } catch (const ParseError &e) {
    err << "parse error: " << e.what() << "\n";
    return exit_parse_error;
  } catch (const DuplicateName &e) {
    err << "duplicate name: " << e.what() << "\n";
    return exit_parse_error;
  } catch (const UnresolvedReference &e) {
    err << "unresolved reference: " << e.what() << "\n";
    return exit_parse_error;
  } catch (const Error &e) {
    err << "precondition failed: " << e.what() << "\n";
    return exit_precondition;
  }
}

} // namespace flowhom
