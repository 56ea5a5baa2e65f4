// Command-line front end: reads a document and runs one command on it.

#include "flowhom/commands.hpp"
#include "flowhom/document.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace flowhom;

namespace {

bool read_input(const std::string &path, std::string &text) {
  std::stringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in)
      return false;
    buf << in.rdbuf();
  }
  text = buf.str();
  return true;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Branching and merging homology of finite flows"};
  app.require_subcommand(1);

  std::string input, output;
  CommandOptions opts;
  SelftestOptions self;
  bool plus = false;

  auto add_doc = [&](CLI::App *c) {
    c->add_option("file", input, "Document to read, '-' for stdin")
        ->required();
    c->add_option("--flow", opts.flow, "Flow name")->required();
    c->add_flag("--json-lines", opts.json_lines, "One JSON record per line");
    c->add_option("-o", output, "Write the report to FILE");
  };
  auto add_sign = [&](CLI::App *c) {
    auto *m = c->add_flag("--minus", "Branching side (default)");
    c->add_flag("--plus", plus, "Merging side")->excludes(m);
  };
  auto add_refine = [&](CLI::App *c) {
    c->add_option("--ball", opts.ball, "Ball block name")->required();
    c->add_option("--tmap", opts.tmap, "Poset map to refine along")
        ->required();
  };
  auto add_state = [&](CLI::App *c) {
    c->add_option_function<std::string>(
        "--state", [&](const std::string &s) { opts.state = s; },
        "Restrict to one state");
  };

  auto *homology = app.add_subcommand("homology", "Branching/merging homology");
  add_doc(homology);
  add_sign(homology);
  homology->add_flag("--per-state", opts.per_state, "Per-state tables");

  auto *branch = app.add_subcommand("branch-space", "Germs and diagram colimit");
  add_doc(branch);
  add_sign(branch);
  add_state(branch);

  auto *refine = app.add_subcommand("refine", "Refine a flow along a ball");
  add_doc(refine);
  add_refine(refine);

  auto *check = app.add_subcommand("check-invariance",
                                   "Compare homology before and after refining");
  add_doc(check);
  add_refine(check);

  auto *reedy = app.add_subcommand("reedy-audit", "Reedy structure checks");
  add_doc(reedy);
  add_state(reedy);

  auto *selftest = app.add_subcommand("selftest", "Randomized property suites");
  selftest->add_option("--seed", self.seed, "Random seed");
  selftest->add_option("--count", self.count, "Number of random rounds");
  selftest->add_flag("--json-lines", self.json_lines,
                     "One JSON record per line");
  selftest->add_option("-o", output, "Write the report to FILE");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? exit_ok : exit_parse_error;
  }
  opts.sign = plus ? Sign::plus : Sign::minus;

  std::string text;
  if (!selftest->parsed() && !read_input(input, text)) {
    std::cerr << "cannot open '" << input << "'\n";
    return exit_parse_error;
  }

  std::ostringstream report;
  int code = guarded(
      [&] {
        if (selftest->parsed())
          return cmd_selftest(self, report);
        Document doc = parse_document(text);
        if (homology->parsed())
          return cmd_homology(doc, opts, report);
        if (branch->parsed())
          return cmd_branch_space(doc, opts, report);
        if (refine->parsed())
          return cmd_refine(doc, opts, report);
        if (check->parsed())
          return cmd_check_invariance(doc, opts, report);
        return cmd_reedy_audit(doc, opts, report);
      },
      std::cerr);

  if (output.empty()) {
    std::cout << report.str();
  } else {
    std::ofstream out(output);
    if (!out) {
      std::cerr << "cannot write '" << output << "'\n";
      return exit_precondition;
    }
    out << report.str();
  }
  return code;
}
