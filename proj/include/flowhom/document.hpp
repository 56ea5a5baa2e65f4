#pragma once

#include "flowhom/flow.hpp"
#include "flowhom/poset.hpp"
#include "flowhom/refine.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace flowhom {

/// A ball block as written: the poset it is drawn from, where its elements
/// go and the paths chosen for some of its pairs.
struct BallSpec {
  std::string flow;
  std::string poset;
  std::map<std::string, std::string> map; ///< ball element -> host state
  std::map<std::pair<std::string, std::string>, FlowPresentation::LabelWord>
      paths;
};

struct TMapSpec {
  std::string source;
  std::string target;
  std::map<std::string, std::string> sends;
};

/// Named posets, flows, balls and poset maps. Every cross-reference
/// resolves once parsing succeeds.
struct Document {
  std::map<std::string, Poset> posets;
  std::map<std::string, FlowPresentation> flows;
  std::map<std::string, BallSpec> balls;
  std::map<std::string, TMapSpec> tmaps;
};

/// Line-oriented block grammar with '#' comments:
///
///   poset P            flow F              ball B in F       tmap T: P -> Q
///   elem a b c         state a b           poset P           send a -> b
///   rel a < b < c      gen g: a -> b       map p -> s        end
///   end                eq g.h = k          path p q = g.h
///                      end                 end
///
/// Throws ParseError, DuplicateName or UnresolvedReference.
Document parse_document(const std::string &text);

/// Canonical text: blocks grouped by kind and sorted by name, posets by
/// their covers, flow states and generators sorted.
std::string emit_document(const Document &d);

std::string emit_poset(const std::string &name, const Poset &p);
std::string emit_flow(const std::string &name, const FlowPresentation &p);

/// Looks up a flow and elaborates it. Throws UnknownLabel.
Flow document_flow(const Document &d, const std::string &name);

/// Turns a ball block into an embedding of its poset in `host`, composing
/// missing path choices along covers. Throws UnknownLabel, UnknownState,
/// InvalidWord or EmbeddingInvalid.
BallEmbedding resolve_ball(const Document &d, const std::string &name,
                           const Flow &host);

/// Throws UnknownLabel.
TMorphism resolve_tmap(const Document &d, const std::string &name);

} // namespace flowhom
