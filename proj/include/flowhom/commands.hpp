#pragma once

#include "flowhom/branching.hpp"
#include "flowhom/document.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

namespace flowhom {

enum ExitCode : int {
  exit_ok = 0,
  exit_property_failure = 1,
  exit_parse_error = 2,
  exit_precondition = 3,
};

struct CommandOptions {
  std::string flow;
  std::optional<std::string> state;
  std::string ball;
  std::string tmap;
  Sign sign = Sign::minus;
  bool per_state = false;
  bool json_lines = false;
};

/// H_n for 0 <= n <= longest chain + 1, then the per-state tables on request.
int cmd_homology(const Document &d, const CommandOptions &o, std::ostream &out);

/// Germs, diagram colimit and homology of the branching space at one state,
/// or at every state when none is given.
int cmd_branch_space(const Document &d, const CommandOptions &o,
                     std::ostream &out);

/// Writes the refined flow as a document whose leading comments describe the
/// refinement.
int cmd_refine(const Document &d, const CommandOptions &o, std::ostream &out);

/// Exit code 1 when any invariance condition fails.
int cmd_check_invariance(const Document &d, const CommandOptions &o,
                         std::ostream &out);

/// Degree table and Reedy checks on the state order of a flow, at one base
/// state or all of them. Latching injectivity is reported, not enforced.
int cmd_reedy_audit(const Document &d, const CommandOptions &o,
                    std::ostream &out);

struct SelftestOptions {
  std::uint64_t seed = 0;
  std::size_t count = 100;
  bool json_lines = false;
};

/// Random posets, flows, set maps and refinements through every property
/// suite. Same seed, same report.
int cmd_selftest(const SelftestOptions &o, std::ostream &out);

/// Runs `body`, turning library errors into a message on `err` and the
/// matching exit code.
int guarded(const std::function<int()> &body, std::ostream &err);

} // namespace flowhom
