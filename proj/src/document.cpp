#include "flowhom/document.hpp"

#include "flowhom/error.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace flowhom {

namespace {

bool is_special(char c) {
  return c == ':' || c == '<' || c == '=' || c == '#';
}

std::vector<std::string> tokenize(const std::string &line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '#')
      break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (line.compare(i, 2, "->") == 0) {
      out.emplace_back("->");
      i += 2;
    } else if (is_special(c)) {
      out.emplace_back(1, c);
      ++i;
    } else {
      std::size_t j = i;
      while (j < line.size() &&
             !std::isspace(static_cast<unsigned char>(line[j])) &&
             !is_special(line[j]) && line.compare(j, 2, "->") != 0)
        ++j;
      out.push_back(line.substr(i, j - i));
      i = j;
    }
  }
  return out;
}

bool is_name(const std::string &t) {
  return !t.empty() && t != "->" && !(t.size() == 1 && is_special(t[0]));
}

class Parser {
public:
  explicit Parser(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
      lines_.push_back(tokenize(line));
  }

  Document run() {
    while (next()) {
      const auto &t = tok();
      if (t[0] == "poset")
        poset_block();
      else if (t[0] == "flow")
        flow_block();
      else if (t[0] == "ball")
        ball_block();
      else if (t[0] == "tmap")
        tmap_block();
      else
        fail("unknown directive '" + t[0] + "'");
    }
    for (const auto &[name, b] : doc_.balls)
      check_ball(name, b);
    for (const auto &[name, m] : doc_.tmaps)
      check_tmap(name, m);
    return std::move(doc_);
  }

private:
  std::vector<std::vector<std::string>> lines_;
  std::size_t at_ = 0; // 1-based number of the current line
  Document doc_;
  std::map<std::string, std::size_t> ball_line_, tmap_line_;

  const std::vector<std::string> &tok() const { return lines_[at_ - 1]; }

  bool next() {
    while (at_ < lines_.size()) {
      ++at_;
      if (!tok().empty())
        return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string &msg) const {
    throw ParseError(at_, msg);
  }

  void expect(bool ok, const std::string &msg) const {
    if (!ok)
      fail(msg);
  }

  std::string block_name(std::size_t pos) const {
    expect(tok().size() > pos && is_name(tok()[pos]),
           "missing name after '" + tok()[0] + "'");
    return tok()[pos];
  }

  template <class Map>
  void unique(const Map &m, const std::string &kind, const std::string &name) {
    if (m.count(name))
      throw DuplicateName("line " + std::to_string(at_) + ": " + kind + " '" +
                          name + "' is defined twice");
  }

  // Reads lines up to "end", calling `body` on each.
  template <class F> void block(const std::string &kind, F body) {
    std::size_t start = at_;
    while (next()) {
      if (tok()[0] == "end") {
        expect(tok().size() == 1, "unexpected text after 'end'");
        return;
      }
      body(tok());
    }
    throw ParseError(start, kind + " block is not closed by 'end'");
  }

  void poset_block() {
    std::string name = block_name(1);
    expect(tok().size() == 2, "unexpected text after poset name");
    unique(doc_.posets, "poset", name);
    std::vector<std::string> elems;
    std::set<std::string> seen;
    std::vector<std::pair<std::string, std::string>> rels;
    block("poset", [&](const std::vector<std::string> &t) {
      if (t[0] == "elem") {
        for (std::size_t i = 1; i < t.size(); ++i) {
          expect(is_name(t[i]), "bad element name '" + t[i] + "'");
          expect(seen.insert(t[i]).second,
                 "element '" + t[i] + "' is declared twice");
          elems.push_back(t[i]);
        }
      } else if (t[0] == "rel") {
        expect(t.size() >= 4 && t.size() % 2 == 0,
               "expected 'rel a < b [< c ...]'");
        for (std::size_t i = 1; i + 2 < t.size(); i += 2) {
          const auto &a = t[i], &b = t[i + 2];
          expect(t[i + 1] == "<", "expected '<' in relation");
          expect(seen.count(a), "unknown element '" + a + "'");
          expect(seen.count(b), "unknown element '" + b + "'");
          expect(a != b, "relation " + a + " < " + a + " is reflexive");
          rels.emplace_back(a, b);
        }
      } else {
        fail("unknown directive '" + t[0] + "' in poset block");
      }
    });
    try {
      doc_.posets.emplace(name, Poset::from_relations(elems, rels));
    } catch (const CycleError &e) {
      fail(std::string("poset '") + name + "': " + e.what());
    }
  }

  void flow_block() {
    std::string name = block_name(1);
    expect(tok().size() == 2, "unexpected text after flow name");
    unique(doc_.flows, "flow", name);
    FlowPresentation p;
    std::set<std::string> states, gens;
    block("flow", [&](const std::vector<std::string> &t) {
      if (t[0] == "state") {
        for (std::size_t i = 1; i < t.size(); ++i) {
          expect(is_name(t[i]), "bad state name '" + t[i] + "'");
          expect(states.insert(t[i]).second,
                 "state '" + t[i] + "' is declared twice");
          p.add_state(t[i]);
        }
      } else if (t[0] == "gen") {
        expect(t.size() == 6 && t[2] == ":" && t[4] == "->",
               "expected 'gen g: a -> b'");
        expect(is_name(t[1]) && t[1].find('.') == std::string::npos,
               "bad generator name '" + t[1] + "'");
        expect(gens.insert(t[1]).second,
               "generator '" + t[1] + "' is declared twice");
        expect(states.count(t[3]), "unknown state '" + t[3] + "'");
        expect(states.count(t[5]), "unknown state '" + t[5] + "'");
        p.add_generator(t[1], t[3], t[5]);
      } else if (t[0] == "eq") {
        expect(t.size() == 4 && t[2] == "=", "expected 'eq w1 = w2'");
        auto side = [&](const std::string &s) {
          FlowPresentation::LabelWord w;
          try {
            w = split_word(s);
          } catch (const Error &) {
            fail("bad word '" + s + "'");
          }
          for (const auto &g : w)
            expect(gens.count(g), "unknown generator '" + g + "'");
          return w;
        };
        p.add_relation(side(t[1]), side(t[3]));
      } else {
        fail("unknown directive '" + t[0] + "' in flow block");
      }
    });
    doc_.flows.emplace(name, std::move(p));
  }

  void ball_block() {
    std::string name = block_name(1);
    expect(tok().size() == 4 && tok()[2] == "in" && is_name(tok()[3]),
           "expected 'ball NAME in FLOW'");
    unique(doc_.balls, "ball", name);
    BallSpec b;
    b.flow = tok()[3];
    ball_line_[name] = at_;
    block("ball", [&](const std::vector<std::string> &t) {
      if (t[0] == "poset") {
        expect(t.size() == 2 && is_name(t[1]), "expected 'poset NAME'");
        expect(b.poset.empty(), "ball poset is given twice");
        b.poset = t[1];
      } else if (t[0] == "map") {
        expect(t.size() == 4 && t[2] == "->" && is_name(t[1]) &&
                   is_name(t[3]),
               "expected 'map p -> s'");
        expect(b.map.emplace(t[1], t[3]).second,
               "element '" + t[1] + "' is mapped twice");
      } else if (t[0] == "path") {
        expect(t.size() == 5 && t[3] == "=" && is_name(t[1]) &&
                   is_name(t[2]) && is_name(t[4]),
               "expected 'path a b = w'");
        FlowPresentation::LabelWord w;
        try {
          w = split_word(t[4]);
        } catch (const Error &) {
          fail("bad word '" + t[4] + "'");
        }
        expect(b.paths.emplace(std::pair{t[1], t[2]}, w).second,
               "path " + t[1] + " " + t[2] + " is given twice");
      } else {
        fail("unknown directive '" + t[0] + "' in ball block");
      }
    });
    if (b.poset.empty())
      throw ParseError(ball_line_[name], "ball '" + name + "' names no poset");
    doc_.balls.emplace(name, std::move(b));
  }

  void tmap_block() {
    std::string name = block_name(1);
    expect(tok().size() == 6 && tok()[2] == ":" && is_name(tok()[3]) &&
               tok()[4] == "->" && is_name(tok()[5]),
           "expected 'tmap NAME: P -> Q'");
    unique(doc_.tmaps, "tmap", name);
    TMapSpec m{tok()[3], tok()[5], {}};
    tmap_line_[name] = at_;
    block("tmap", [&](const std::vector<std::string> &t) {
      expect(t[0] == "send",
             "unknown directive '" + t[0] + "' in tmap block");
      expect(t.size() == 4 && t[2] == "->" && is_name(t[1]) && is_name(t[3]),
             "expected 'send a -> b'");
      expect(m.sends.emplace(t[1], t[3]).second,
             "element '" + t[1] + "' is sent twice");
    });
    doc_.tmaps.emplace(name, std::move(m));
  }

  [[noreturn]] static void unresolved(std::size_t line, const std::string &msg) {
    throw UnresolvedReference("line " + std::to_string(line) + ": " + msg);
  }

  void check_ball(const std::string &name, const BallSpec &b) {
    std::size_t line = ball_line_.at(name);
    auto f = doc_.flows.find(b.flow);
    if (f == doc_.flows.end())
      unresolved(line, "ball '" + name + "' refers to unknown flow '" +
                           b.flow + "'");
    auto p = doc_.posets.find(b.poset);
    if (p == doc_.posets.end())
      unresolved(line, "ball '" + name + "' refers to unknown poset '" +
                           b.poset + "'");
    const auto &states = f->second.states;
    for (const auto &[e, s] : b.map) {
      if (!p->second.find(e))
        unresolved(line, "ball '" + name + "' maps unknown element '" + e +
                             "'");
      if (std::find(states.begin(), states.end(), s) == states.end())
        unresolved(line, "ball '" + name + "' maps to unknown state '" + s +
                             "'");
    }
    for (const auto &[pair, w] : b.paths) {
      if (!p->second.find(pair.first) || !p->second.find(pair.second))
        unresolved(line, "ball '" + name + "' has a path between unknown "
                         "elements");
      for (const auto &g : w)
        if (std::none_of(f->second.generators.begin(),
                         f->second.generators.end(),
                         [&](const auto &x) { return x.name == g; }))
          unresolved(line, "ball '" + name + "' uses unknown generator '" +
                               g + "'");
    }
  }

  void check_tmap(const std::string &name, const TMapSpec &m) {
    std::size_t line = tmap_line_.at(name);
    auto p = doc_.posets.find(m.source), q = doc_.posets.find(m.target);
    if (p == doc_.posets.end() || q == doc_.posets.end())
      unresolved(line, "tmap '" + name + "' refers to an unknown poset");
    for (const auto &[a, b] : m.sends)
      if (!p->second.find(a) || !q->second.find(b))
        unresolved(line, "tmap '" + name + "' sends " + a + " -> " + b +
                             " between unknown elements");
  }
};

} // namespace

Document parse_document(const std::string &text) { return Parser(text).run(); }

std::string emit_poset(const std::string &name, const Poset &p) {
  std::string out = "poset " + name + "\n";
  if (!p.empty()) {
    out += "  elem";
    for (const auto &l : p.labels())
      out += " " + l;
    out += "\n";
  }
  for (const auto &[a, b] : p.covers())
    out += "  rel " + p.label(a) + " < " + p.label(b) + "\n";
  return out + "end\n";
}

std::string emit_flow(const std::string &name, const FlowPresentation &p) {
  std::string out = "flow " + name + "\n";
  auto states = p.states;
  std::sort(states.begin(), states.end());
  if (!states.empty()) {
    out += "  state";
    for (const auto &s : states)
      out += " " + s;
    out += "\n";
  }
  auto gens = p.generators;
  std::sort(gens.begin(), gens.end(),
            [](const auto &a, const auto &b) { return a.name < b.name; });
  for (const auto &g : gens)
    out += "  gen " + g.name + ": " + g.source + " -> " + g.target + "\n";
  for (const auto &[l, r] : p.relations)
    out += "  eq " + join_word(l) + " = " + join_word(r) + "\n";
  return out + "end\n";
}

std::string emit_document(const Document &d) {
  std::vector<std::string> blocks;
  for (const auto &[name, p] : d.posets)
    blocks.push_back(emit_poset(name, p));
  for (const auto &[name, f] : d.flows)
    blocks.push_back(emit_flow(name, f));
  for (const auto &[name, m] : d.tmaps) {
    std::string out = "tmap " + name + ": " + m.source + " -> " + m.target +
                      "\n";
    for (const auto &[a, b] : m.sends)
      out += "  send " + a + " -> " + b + "\n";
    blocks.push_back(out + "end\n");
  }
  for (const auto &[name, b] : d.balls) {
    std::string out = "ball " + name + " in " + b.flow + "\n  poset " +
                      b.poset + "\n";
    for (const auto &[e, s] : b.map)
      out += "  map " + e + " -> " + s + "\n";
    for (const auto &[pair, w] : b.paths)
      out += "  path " + pair.first + " " + pair.second + " = " +
             join_word(w) + "\n";
    blocks.push_back(out + "end\n");
  }
  std::string out;
  for (std::size_t i = 0; i < blocks.size(); ++i)
    out += (i ? "\n" : "") + blocks[i];
  return out;
}

Flow document_flow(const Document &d, const std::string &name) {
  auto it = d.flows.find(name);
  if (it == d.flows.end())
    throw UnknownLabel("no flow named '" + name + "'");
  return elaborate(it->second);
}

BallEmbedding resolve_ball(const Document &d, const std::string &name,
                           const Flow &host) {
  auto it = d.balls.find(name);
  if (it == d.balls.end())
    throw UnknownLabel("no ball named '" + name + "'");
  const BallSpec &b = it->second;
  auto p = d.posets.find(b.poset);
  if (p == d.posets.end())
    throw UnresolvedReference("no poset named '" + b.poset + "'");
  BallEmbedding e{p->second, {}, {}};
  for (Element a = 0; a < e.ball.size(); ++a) {
    auto m = b.map.find(e.ball.label(a));
    if (m == b.map.end())
      throw EmbeddingInvalid("ball '" + name + "' does not map '" +
                             e.ball.label(a) + "'");
    e.state_map.push_back(host.state_index(m->second));
  }
  std::map<std::string, std::size_t> gen;
  for (std::size_t g = 0; g < host.generators().size(); ++g)
    gen[host.generators()[g].name] = g;
  for (const auto &[pair, w] : b.paths) {
    Word word;
    for (const auto &g : w) {
      auto f = gen.find(g);
      if (f == gen.end())
        throw UnresolvedReference("no generator named '" + g + "'");
      word.push_back(f->second);
    }
    Element a = e.ball.index_of(pair.first), b = e.ball.index_of(pair.second);
    if (!e.ball.less(a, b))
      throw EmbeddingInvalid("path " + pair.first + " " + pair.second +
                             " is not between comparable elements");
    e.path_choice[{a, b}] = host.class_of(word);
  }
  complete_path_choice(host, e);
  return e;
}

TMorphism resolve_tmap(const Document &d, const std::string &name) {
  auto it = d.tmaps.find(name);
  if (it == d.tmaps.end())
    throw UnknownLabel("no tmap named '" + name + "'");
  auto p = d.posets.find(it->second.source),
       q = d.posets.find(it->second.target);
  if (p == d.posets.end() || q == d.posets.end())
    throw UnresolvedReference("tmap '" + name + "' names an unknown poset");
  return t_morphism_from_labels(
      p->second, q->second,
      {it->second.sends.begin(), it->second.sends.end()});
}

} // namespace flowhom
