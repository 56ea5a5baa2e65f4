#include "flowhom/flow.hpp"

#include "flowhom/error.hpp"
#include "flowhom/union_find.hpp"

#include <algorithm>
#include <map>

namespace flowhom {

FlowPresentation::LabelWord split_word(const std::string &dotted) {
  FlowPresentation::LabelWord out;
  std::string cur;
  for (char ch : dotted) {
    if (ch == '.') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  for (const auto &g : out)
    if (g.empty())
      throw InvalidWord("empty generator name in word '" + dotted + "'");
  return out;
}

std::string join_word(const FlowPresentation::LabelWord &w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i)
      out += '.';
    out += w[i];
  }
  return out;
}

State Flow::state_index(const std::string &label) const {
  auto it = std::lower_bound(states_.begin(), states_.end(), label);
  if (it == states_.end() || *it != label)
    throw UnknownState("unknown state '" + label + "'");
  return static_cast<State>(it - states_.begin());
}

std::string Flow::class_name(PathClass c) const {
  std::string out;
  for (std::size_t i = 0; i < representative(c).size(); ++i) {
    if (i)
      out += '.';
    out += generators_[representative(c)[i]].name;
  }
  return out;
}

PathClass Flow::class_of(const Word &w) const {
  auto it = word_class_.find(w);
  if (it == word_class_.end())
    throw InvalidWord("word is not composable in this flow");
  return it->second;
}

PathClass Flow::compose(PathClass x, PathClass y) const {
  if (target(x) != source(y))
    throw InvalidWord("path classes are not composable");
  Word w = representative(x);
  const Word &v = representative(y);
  w.insert(w.end(), v.begin(), v.end());
  return class_of(w);
}

bool Flow::operator==(const Flow &other) const {
  if (states_ != other.states_ || generators_.size() != other.generators_.size() ||
      classes_.size() != other.classes_.size())
    return false;
  for (std::size_t g = 0; g < generators_.size(); ++g) {
    const auto &a = generators_[g];
    const auto &b = other.generators_[g];
    if (a.name != b.name || a.source != b.source || a.target != b.target)
      return false;
  }
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    const auto &a = classes_[c];
    const auto &b = other.classes_[c];
    if (a.source != b.source || a.target != b.target ||
        a.representative != b.representative)
      return false;
  }
  return true;
}

namespace {

bool valid_generator_name(const std::string &name) {
  if (name.empty())
    return false;
  for (char ch : name)
    if (ch == '.' || ch == ':' || ch == '=' || ch == ' ' || ch == '\t' ||
        ch == '#')
      return false;
  return true;
}

} // namespace

Flow elaborate(const FlowPresentation &p) {
  Flow x;
  x.states_ = p.states;
  std::sort(x.states_.begin(), x.states_.end());
  if (auto dup = std::adjacent_find(x.states_.begin(), x.states_.end());
      dup != x.states_.end())
    throw DuplicateName("duplicate state '" + *dup + "'");
  const std::size_t n = x.states_.size();

  auto gens = p.generators;
  std::sort(gens.begin(), gens.end(),
            [](const auto &a, const auto &b) { return a.name < b.name; });
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (!valid_generator_name(gens[i].name))
      throw InvalidWord("invalid generator name '" + gens[i].name + "'");
    if (i > 0 && gens[i].name == gens[i - 1].name)
      throw DuplicateName("duplicate generator '" + gens[i].name + "'");
    Flow::Generator g{gens[i].name, x.state_index(gens[i].source),
                      x.state_index(gens[i].target)};
    if (g.source == g.target)
      throw LoopError("generator '" + g.name + "' is a loop");
    x.generators_.push_back(g);
  }
  const auto &gen = x.generators_;

  std::vector<std::vector<std::size_t>> out_gens(n), in_gens(n);
  for (std::size_t g = 0; g < gen.size(); ++g) {
    out_gens[gen[g].source].push_back(g);
    in_gens[gen[g].target].push_back(g);
  }
  {
    std::vector<std::size_t> indeg(n, 0);
    for (const auto &g : gen)
      ++indeg[g.target];
    std::vector<State> ready;
    for (State s = 0; s < n; ++s)
      if (indeg[s] == 0)
        ready.push_back(s);
    std::size_t seen = 0;
    while (!ready.empty()) {
      State s = ready.back();
      ready.pop_back();
      ++seen;
      for (std::size_t g : out_gens[s])
        if (--indeg[gen[g].target] == 0)
          ready.push_back(gen[g].target);
    }
    if (seen != n)
      throw LoopError("generator graph has a cycle");
  }

  // Every composable word; finite because the generator graph is acyclic.
  std::vector<Word> words;
  {
    std::vector<Word> stack;
    for (std::size_t g = 0; g < gen.size(); ++g)
      stack.push_back({g});
    while (!stack.empty()) {
      Word w = std::move(stack.back());
      stack.pop_back();
      for (std::size_t g : out_gens[gen[w.back()].target]) {
        Word v = w;
        v.push_back(g);
        stack.push_back(std::move(v));
      }
      words.push_back(std::move(w));
      if (words.size() > max_words)
        throw SizeLimit("flow has more than " + std::to_string(max_words) +
                        " composable words");
    }
  }
  auto src = [&](const Word &w) { return gen[w.front()].source; };
  auto dst = [&](const Word &w) { return gen[w.back()].target; };
  std::sort(words.begin(), words.end(), [&](const Word &a, const Word &b) {
    if (src(a) != src(b))
      return src(a) < src(b);
    if (dst(a) != dst(b))
      return dst(a) < dst(b);
    return a < b;
  });
  std::unordered_map<Word, std::size_t, WordHash> word_id;
  word_id.reserve(words.size());
  for (std::size_t i = 0; i < words.size(); ++i)
    word_id.emplace(words[i], i);

  std::map<std::string, std::size_t> gen_index;
  for (std::size_t g = 0; g < gen.size(); ++g)
    gen_index[gen[g].name] = g;
  auto to_word = [&](const FlowPresentation::LabelWord &lw) {
    if (lw.empty())
      throw InvalidWord("empty word in relation");
    Word w;
    for (const auto &name : lw) {
      auto it = gen_index.find(name);
      if (it == gen_index.end())
        throw UnknownLabel("unknown generator '" + name + "'");
      w.push_back(it->second);
    }
    for (std::size_t i = 1; i < w.size(); ++i)
      if (gen[w[i - 1]].target != gen[w[i]].source)
        throw InvalidWord("word '" + join_word(lw) + "' is not composable");
    return w;
  };

  UnionFind uf(words.size());
  std::vector<std::pair<std::size_t, std::size_t>> work;
  std::vector<std::pair<FlowPresentation::LabelWord, FlowPresentation::LabelWord>>
      normalized;
  for (const auto &[lhs, rhs] : p.relations) {
    Word a = to_word(lhs), b = to_word(rhs);
    if (src(a) != src(b) || dst(a) != dst(b))
      throw NonParallelRelation("relation '" + join_word(lhs) + " = " +
                                join_word(rhs) + "' is not parallel");
    if (uf.unite(word_id.at(a), word_id.at(b)))
      work.emplace_back(word_id.at(a), word_id.at(b));
    auto l = join_word(lhs), r = join_word(rhs);
    if (l <= r)
      normalized.emplace_back(lhs, rhs);
    else
      normalized.emplace_back(rhs, lhs);
  }
  // Close under one-sided composition with generators.
  while (!work.empty()) {
    auto [i, j] = work.back();
    work.pop_back();
    const Word a = words[i], b = words[j];
    for (std::size_t g : in_gens[src(a)]) {
      Word ga{g}, gb{g};
      ga.insert(ga.end(), a.begin(), a.end());
      gb.insert(gb.end(), b.begin(), b.end());
      auto u = word_id.at(ga), v = word_id.at(gb);
      if (uf.unite(u, v))
        work.emplace_back(u, v);
    }
    for (std::size_t g : out_gens[dst(a)]) {
      Word ag = a, bg = b;
      ag.push_back(g);
      bg.push_back(g);
      auto u = word_id.at(ag), v = word_id.at(bg);
      if (uf.unite(u, v))
        work.emplace_back(u, v);
    }
  }

  std::size_t num_classes = 0;
  auto ids = uf.class_ids(&num_classes);
  x.classes_.resize(num_classes);
  std::vector<bool> filled(num_classes, false);
  for (std::size_t i = 0; i < words.size(); ++i) {
    auto c = ids[i];
    if (!filled[c]) {
      x.classes_[c] = {src(words[i]), dst(words[i]), words[i]};
      filled[c] = true;
    }
    x.word_class_.emplace(words[i], c);
  }
  x.paths_.assign(n * n, {});
  for (PathClass c = 0; c < num_classes; ++c)
    x.paths_[x.classes_[c].source * n + x.classes_[c].target].push_back(c);

  std::vector<std::pair<Element, Element>> rel;
  for (State a = 0; a < n; ++a)
    for (State b = 0; b < n; ++b)
      if (!x.paths_[a * n + b].empty())
        rel.emplace_back(a, b);
  x.order_ = Poset::from_index_relations(x.states_, rel);

  std::sort(normalized.begin(), normalized.end());
  normalized.erase(std::unique(normalized.begin(), normalized.end()),
                   normalized.end());
  x.presentation_.states = x.states_;
  x.presentation_.generators = gens;
  x.presentation_.relations = std::move(normalized);
  return x;
}

Poset state_order(const Flow &x) { return x.order(); }

std::string cover_generator_name(const std::string &prefix,
                                 const std::string &a, const std::string &b) {
  return prefix + "(" + a + "," + b + ")";
}

FlowPresentation presentation_of_poset(const Poset &p,
                                       const std::string &prefix) {
  FlowPresentation out;
  out.states = p.labels();
  auto covers = p.covers();
  for (const auto &[a, b] : covers)
    out.add_generator(cover_generator_name(prefix, p.label(a), p.label(b)),
                      p.label(a), p.label(b));
  // All cover chains from a to b are identified with the first one.
  for (const auto &[a, b] : p.strict_pairs()) {
    std::vector<FlowPresentation::LabelWord> chains;
    std::vector<std::pair<Element, FlowPresentation::LabelWord>> stack{{a, {}}};
    while (!stack.empty()) {
      auto [at, w] = std::move(stack.back());
      stack.pop_back();
      if (at == b) {
        chains.push_back(std::move(w));
        continue;
      }
      for (const auto &[c, d] : covers)
        if (c == at && p.less_equal(d, b)) {
          auto v = w;
          v.push_back(cover_generator_name(prefix, p.label(c), p.label(d)));
          stack.emplace_back(d, std::move(v));
        }
    }
    std::sort(chains.begin(), chains.end());
    for (std::size_t i = 1; i < chains.size(); ++i)
      out.add_relation(chains[0], chains[i]);
  }
  return out;
}

Flow flow_of_poset(const Poset &p) { return elaborate(presentation_of_poset(p)); }

Flow glob(std::size_t k) {
  if (k == 0)
    throw Error("glob needs at least one path");
  FlowPresentation p;
  p.states = {"0", "1"};
  for (std::size_t i = 1; i <= k; ++i)
    p.add_generator("g" + std::to_string(i), "0", "1");
  return elaborate(p);
}

Flow opposite_flow(const Flow &x) {
  Flow y;
  y.states_ = x.states_;
  y.generators_ = x.generators_;
  for (auto &g : y.generators_)
    std::swap(g.source, g.target);
  const std::size_t n = y.states_.size();

  // Members of each class, reversed; the new representative is the least.
  std::vector<Word> least(x.classes_.size());
  std::vector<bool> seen(x.classes_.size(), false);
  for (const auto &[w, c] : x.word_class_) {
    Word r(w.rbegin(), w.rend());
    if (!seen[c] || r < least[c]) {
      least[c] = r;
      seen[c] = true;
    }
  }
  std::vector<PathClass> order(x.classes_.size());
  for (PathClass c = 0; c < order.size(); ++c)
    order[c] = c;
  auto key = [&](PathClass c) {
    return std::tie(x.classes_[c].target, x.classes_[c].source, least[c]);
  };
  std::sort(order.begin(), order.end(),
            [&](PathClass a, PathClass b) { return key(a) < key(b); });
  std::vector<PathClass> renumber(order.size());
  for (PathClass i = 0; i < order.size(); ++i)
    renumber[order[i]] = i;

  y.classes_.resize(order.size());
  for (PathClass c = 0; c < order.size(); ++c)
    y.classes_[renumber[c]] = {x.classes_[c].target, x.classes_[c].source,
                               least[c]};
  for (const auto &[w, c] : x.word_class_)
    y.word_class_.emplace(Word(w.rbegin(), w.rend()), renumber[c]);
  y.paths_.assign(n * n, {});
  for (PathClass c = 0; c < y.classes_.size(); ++c)
    y.paths_[y.classes_[c].source * n + y.classes_[c].target].push_back(c);
  y.order_ = x.order_.opposite();

  y.presentation_.states = x.presentation_.states;
  for (const auto &g : x.presentation_.generators)
    y.presentation_.add_generator(g.name, g.target, g.source);
  for (const auto &[l, r] : x.presentation_.relations)
    y.presentation_.add_relation({l.rbegin(), l.rend()}, {r.rbegin(), r.rend()});
  return y;
}

bool is_full_directed_ball(const Flow &x) {
  const Poset &order = x.order();
  if (!order.is_bounded())
    return false;
  for (State a = 0; a < x.num_states(); ++a)
    for (State b = 0; b < x.num_states(); ++b)
      if (order.less(a, b) && x.paths(a, b).size() != 1)
        return false;
  return true;
}

std::pair<std::vector<State>, std::vector<State>>
initial_final_states(const Flow &x) {
  std::vector<State> initial, final;
  for (State s = 0; s < x.num_states(); ++s) {
    bool in = false, out = false;
    for (State t = 0; t < x.num_states(); ++t) {
      in = in || !x.paths(t, s).empty();
      out = out || !x.paths(s, t).empty();
    }
    if (!in)
      initial.push_back(s);
    if (!out)
      final.push_back(s);
  }
  return {initial, final};
}

} // namespace flowhom
