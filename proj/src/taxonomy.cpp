#include "semsim/taxonomy.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace semsim {

namespace {

constexpr std::int32_t kUnvisited = -1;

struct Token {
  std::string text;
  std::size_t column = 0;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    if (i >= line.size()) break;
    std::size_t start = i;
    while (i < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

bool blank_or_comment(const std::string& line) {
  for (char c : line) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '#';
  }
  return true;
}

bool indented(const std::string& line) {
  return !line.empty() &&
         std::isspace(static_cast<unsigned char>(line.front()));
}

bool is_lowercase_form(const std::string& s) {
  return std::none_of(s.begin(), s.end(), [](unsigned char c) {
    return c >= 'A' && c <= 'Z';
  });
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

int direction_class(RelationType r) {
  switch (r) {
    case RelationType::hypernym:
    case RelationType::holonym:
      return 0;  // up
    case RelationType::hyponym:
    case RelationType::meronym:
      return 1;  // down
    case RelationType::antonym:
      return 2;  // horizontal
  }
  return 2;
}

}  // namespace

RelationType inverse_of(RelationType r) {
  switch (r) {
    case RelationType::hypernym:
      return RelationType::hyponym;
    case RelationType::hyponym:
      return RelationType::hypernym;
    case RelationType::holonym:
      return RelationType::meronym;
    case RelationType::meronym:
      return RelationType::holonym;
    case RelationType::antonym:
      return RelationType::antonym;
  }
  return r;
}

const char* to_string(RelationType r) {
  switch (r) {
    case RelationType::hypernym:
      return "hypernym";
    case RelationType::hyponym:
      return "hyponym";
    case RelationType::holonym:
      return "holonym";
    case RelationType::meronym:
      return "meronym";
    case RelationType::antonym:
      return "antonym";
  }
  return "?";
}

std::optional<RelationType> relation_from_string(std::string_view s) {
  if (s == "hypernym") return RelationType::hypernym;
  if (s == "hyponym") return RelationType::hyponym;
  if (s == "holonym") return RelationType::holonym;
  if (s == "meronym") return RelationType::meronym;
  if (s == "antonym") return RelationType::antonym;
  return std::nullopt;
}

const char* to_string(PartOfSpeech pos) {
  switch (pos) {
    case PartOfSpeech::noun:
      return "n";
    case PartOfSpeech::verb:
      return "v";
    case PartOfSpeech::adjective:
      return "a";
  }
  return "?";
}

std::optional<PartOfSpeech> pos_from_string(std::string_view s) {
  if (s == "n" || s == "noun") return PartOfSpeech::noun;
  if (s == "v" || s == "verb") return PartOfSpeech::verb;
  if (s == "a" || s == "adj" || s == "adjective") return PartOfSpeech::adjective;
  return std::nullopt;
}

int count_direction_changes(const std::vector<RelationType>& relation_seq) {
  int changes = 0;
  for (std::size_t i = 1; i < relation_seq.size(); ++i) {
    if (direction_class(relation_seq[i]) !=
        direction_class(relation_seq[i - 1]))
      ++changes;
  }
  return changes;
}

Taxonomy Taxonomy::parse(std::istream& in) {
  Taxonomy t;
  struct PendingRelation {
    std::int32_t source;
    RelationType rel;
    std::string target;
    std::size_t line;
  };
  std::vector<PendingRelation> pending;
  std::vector<bool> has_gloss;

  std::string line;
  std::size_t lineno = 0;
  std::int32_t current = kUnvisited;

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (blank_or_comment(line)) continue;
    auto tokens = tokenize(line);

    if (!indented(line)) {
      if (tokens[0].text != "synset")
        throw ParseError("expected 'synset', got '" + tokens[0].text + "'",
                         lineno, tokens[0].column);
      if (tokens.size() != 3 && tokens.size() != 4)
        throw ParseError("synset line needs an id, a part of speech and a "
                         "lemma list",
                         lineno);
      const std::string& id = tokens[1].text;
      if (t.index_.count(id))
        throw ParseError("duplicate synset id '" + id + "'", lineno,
                         tokens[1].column);
      auto pos = pos_from_string(tokens[2].text);
      if (!pos)
        throw ParseError("unknown part of speech '" + tokens[2].text + "'",
                         lineno, tokens[2].column);
      if (tokens.size() < 4)
        throw ParseError("synset '" + id + "' has no lemmas", lineno);
      Synset s;
      s.id = id;
      s.pos = *pos;
      for (const auto& lemma : split_csv(tokens[3].text)) {
        if (lemma.empty())
          throw ParseError("empty lemma in synset '" + id + "'", lineno,
                           tokens[3].column);
        if (!is_lowercase_form(lemma))
          throw ParseError("lemma '" + lemma + "' is not lowercase", lineno,
                           tokens[3].column);
        s.lemmas.push_back(lemma);
      }
      current = static_cast<std::int32_t>(t.synsets_.size());
      t.index_.emplace(id, current);
      t.synsets_.push_back(std::move(s));
      has_gloss.push_back(false);
      continue;
    }

    if (current == kUnvisited)
      throw ParseError("indented line before any synset", lineno,
                       tokens[0].column);

    if (tokens[0].text == "gloss") {
      if (has_gloss[static_cast<std::size_t>(current)])
        throw ParseError("synset '" + t.synsets_[current].id +
                         "' has more than one gloss",
                         lineno, tokens[0].column);
      std::size_t start = line.find("gloss") + 5;
      while (start < line.size() &&
             std::isspace(static_cast<unsigned char>(line[start])))
        ++start;
      t.synsets_[current].gloss = line.substr(start);
      has_gloss[static_cast<std::size_t>(current)] = true;
    } else if (tokens[0].text == "rel") {
      if (tokens.size() != 3)
        throw ParseError("rel line needs a relation type and a target id",
                         lineno);
      auto rel = relation_from_string(tokens[1].text);
      if (!rel)
        throw ParseError("unknown relation type '" + tokens[1].text + "'",
                         lineno, tokens[1].column);
      const std::string& target = tokens[2].text;
      if (target == t.synsets_[current].id &&
          (*rel == RelationType::hypernym || *rel == RelationType::hyponym))
        throw ParseError("synset '" + target + "' lists itself as its own " +
                             to_string(*rel),
                         lineno, tokens[2].column);
      pending.push_back({current, *rel, target, lineno});
    } else {
      throw ParseError("expected 'gloss' or 'rel', got '" + tokens[0].text +
                           "'",
                       lineno, tokens[0].column);
    }
  }

  if (t.synsets_.empty()) throw ParseError("no synsets", lineno ? lineno : 1);

  // Resolve targets, dropping duplicate (relation, target) entries.
  std::vector<std::set<std::pair<int, std::string>>> seen(t.synsets_.size());
  for (const auto& p : pending) {
    if (!t.index_.count(p.target))
      throw ParseError("dangling relation target '" + p.target + "'", p.line);
    if (seen[p.source].insert({static_cast<int>(p.rel), p.target}).second)
      t.synsets_[p.source].relations.emplace_back(p.rel, p.target);
  }

  // Materialize missing inverse edges so every link is bidirectional.
  // Indexed loops: a self-referencing edge appends to the list being
  // walked, and the appended inverses need no further processing.
  for (std::size_t i = 0; i < t.synsets_.size(); ++i) {
    for (std::size_t r = 0; r < t.synsets_[i].relations.size(); ++r) {
      auto [rel, target] = t.synsets_[i].relations[r];
      std::int32_t ti = t.index_.at(target);
      RelationType inv = inverse_of(rel);
      if (seen[ti].insert({static_cast<int>(inv), t.synsets_[i].id}).second)
        t.synsets_[ti].relations.emplace_back(inv, t.synsets_[i].id);
    }
  }

  t.finalize();
  return t;
}

Taxonomy Taxonomy::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open taxonomy file: " + path);
  return parse(in);
}

void Taxonomy::finalize() {
  const std::size_t n = synsets_.size();
  adjacency_.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [rel, target] : synsets_[i].relations)
      adjacency_[i].push_back({rel, index_.at(target)});
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& lemma : synsets_[i].lemmas)
      lemma_index_[lemma][static_cast<int>(synsets_[i].pos)].push_back(
          synsets_[i].id);
  }

  for (std::size_t i = 0; i < n; ++i) {
    bool has_hypernym = false;
    for (const auto& e : adjacency_[i])
      if (e.rel == RelationType::hypernym) has_hypernym = true;
    if (!has_hypernym) roots_.push_back(synsets_[i].id);
  }

  // Hypernym acyclicity. Recursion depth is bounded by the longest
  // hypernym chain, not by the synset count.
  std::vector<int> color(n, 0);
  std::function<void(std::int32_t)> check_cycle = [&](std::int32_t u) {
    color[u] = 1;
    for (const Edge& e : adjacency_[u]) {
      if (e.rel != RelationType::hypernym) continue;
      if (color[e.target] == 1)
        throw Error("hypernym cycle involving '" + synsets_[e.target].id +
                    "'");
      if (color[e.target] == 0) check_cycle(e.target);
    }
    color[u] = 2;
  };
  for (std::size_t start = 0; start < n; ++start)
    if (!color[start]) check_cycle(static_cast<std::int32_t>(start));

  // Depths: multi-source BFS downward from the roots.
  depths_.assign(n, 0);
  std::vector<std::int32_t> dist(n, kUnvisited);
  std::deque<std::int32_t> queue;
  for (const auto& rid : roots_) {
    std::int32_t ri = index_.at(rid);
    dist[ri] = 0;
    queue.push_back(ri);
  }
  while (!queue.empty()) {
    std::int32_t u = queue.front();
    queue.pop_front();
    for (const Edge& e : adjacency_[u]) {
      if (e.rel != RelationType::hyponym) continue;
      if (dist[e.target] != kUnvisited) continue;
      dist[e.target] = dist[u] + 1;
      queue.push_back(e.target);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i] == kUnvisited)
      throw Error("synset '" + synsets_[i].id +
                  "' is unreachable from any root");
    depths_[i] = dist[i] + 1;
    max_depth_ = std::max(max_depth_, depths_[i]);
  }
}

bool Taxonomy::contains(const SynsetId& id) const {
  return index_.count(id) != 0;
}

std::int32_t Taxonomy::index_of(const SynsetId& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? kUnvisited : it->second;
}

std::int32_t Taxonomy::require_index(const SynsetId& id) const {
  std::int32_t i = index_of(id);
  if (i == kUnvisited) throw Error("unknown synset id: " + id);
  return i;
}

const Synset& Taxonomy::synset(const SynsetId& id) const {
  return synsets_[require_index(id)];
}

const std::vector<SynsetId>& Taxonomy::senses(const std::string& word,
                                              PartOfSpeech pos) const {
  static const std::vector<SynsetId> kEmpty;
  auto it = lemma_index_.find(word);
  if (it == lemma_index_.end()) return kEmpty;
  return it->second[static_cast<int>(pos)];
}

std::vector<SynsetId> Taxonomy::senses_any_pos(const std::string& word) const {
  std::vector<SynsetId> out;
  auto it = lemma_index_.find(word);
  if (it == lemma_index_.end()) return out;
  for (const auto& per_pos : it->second)
    out.insert(out.end(), per_pos.begin(), per_pos.end());
  return out;
}

int Taxonomy::depth(const SynsetId& id) const {
  return depths_[require_index(id)];
}

int Taxonomy::local_density(const SynsetId& id, RelationType r) const {
  std::int32_t i = require_index(id);
  int count = 0;
  for (const Edge& e : adjacency_[i])
    if (e.rel == r) ++count;
  return count;
}

std::vector<std::int32_t> Taxonomy::hypernym_up_distances(
    std::int32_t from) const {
  std::vector<std::int32_t> dist(synsets_.size(), kUnvisited);
  std::deque<std::int32_t> queue;
  dist[from] = 0;
  queue.push_back(from);
  while (!queue.empty()) {
    std::int32_t u = queue.front();
    queue.pop_front();
    for (const Edge& e : adjacency_[u]) {
      if (e.rel != RelationType::hypernym) continue;
      if (dist[e.target] != kUnvisited) continue;
      dist[e.target] = dist[u] + 1;
      queue.push_back(e.target);
    }
  }
  return dist;
}

std::optional<PathResult> Taxonomy::build_path(
    const std::vector<std::int32_t>& nodes,
    const std::vector<RelationType>& rels) const {
  PathResult path;
  path.length = static_cast<int>(rels.size());
  for (std::int32_t i : nodes) path.nodes.push_back(synsets_[i].id);
  path.relation_seq = rels;
  path.direction_changes = count_direction_changes(rels);

  auto up_a = hypernym_up_distances(nodes.front());
  auto up_b = hypernym_up_distances(nodes.back());
  std::int32_t best = kUnvisited;
  for (std::int32_t i : nodes) {
    if (up_a[i] == kUnvisited || up_b[i] == kUnvisited) continue;
    if (best == kUnvisited || depths_[i] > depths_[best] ||
        (depths_[i] == depths_[best] && synsets_[i].id < synsets_[best].id))
      best = i;
  }
  if (best != kUnvisited) path.ncn = synsets_[best].id;
  return path;
}

std::optional<PathResult> Taxonomy::shortest_path(const SynsetId& a,
                                                  const SynsetId& b,
                                                  RelationMask allowed,
                                                  int max_length) const {
  std::int32_t ia = require_index(a);
  std::int32_t ib = require_index(b);
  if (allowed == 0) throw std::invalid_argument("empty allowed relation set");

  if (ia == ib) return build_path({ia}, {});

  std::vector<std::int32_t> parent(synsets_.size(), kUnvisited);
  std::vector<RelationType> via(synsets_.size(), RelationType::hypernym);
  std::vector<std::int32_t> dist(synsets_.size(), kUnvisited);
  std::deque<std::int32_t> queue;
  dist[ia] = 0;
  queue.push_back(ia);
  bool found = false;
  while (!queue.empty() && !found) {
    std::int32_t u = queue.front();
    queue.pop_front();
    for (const Edge& e : adjacency_[u]) {
      if (!(allowed & relation_bit(e.rel))) continue;
      if (dist[e.target] != kUnvisited) continue;
      if (max_length >= 0 && dist[u] + 1 > max_length) continue;
      dist[e.target] = dist[u] + 1;
      parent[e.target] = u;
      via[e.target] = e.rel;
      if (e.target == ib) {
        found = true;
        break;
      }
      queue.push_back(e.target);
    }
  }
  if (!found) return std::nullopt;

  std::vector<std::int32_t> nodes;
  std::vector<RelationType> rels;
  for (std::int32_t cur = ib; cur != ia; cur = parent[cur]) {
    nodes.push_back(cur);
    rels.push_back(via[cur]);
  }
  nodes.push_back(ia);
  std::reverse(nodes.begin(), nodes.end());
  std::reverse(rels.begin(), rels.end());
  return build_path(nodes, rels);
}

std::optional<SynsetId> Taxonomy::ncn(const SynsetId& a,
                                      const SynsetId& b) const {
  std::int32_t ia = require_index(a);
  std::int32_t ib = require_index(b);
  auto up_a = hypernym_up_distances(ia);
  auto up_b = hypernym_up_distances(ib);

  std::int32_t best = kUnvisited;
  std::int64_t best_sum = 0;
  for (std::size_t i = 0; i < synsets_.size(); ++i) {
    if (up_a[i] == kUnvisited || up_b[i] == kUnvisited) continue;
    std::int64_t sum = static_cast<std::int64_t>(up_a[i]) + up_b[i];
    if (best == kUnvisited || sum < best_sum ||
        (sum == best_sum &&
         (depths_[i] > depths_[best] ||
          (depths_[i] == depths_[best] && synsets_[i].id < synsets_[best].id))))
    {
      best = static_cast<std::int32_t>(i);
      best_sum = sum;
    }
  }
  if (best == kUnvisited) return std::nullopt;
  return synsets_[best].id;
}

bool Taxonomy::subsumes(const SynsetId& ancestor,
                        const SynsetId& descendant) const {
  std::int32_t anc = require_index(ancestor);
  std::int32_t desc = require_index(descendant);
  if (anc == desc) return true;
  auto up = hypernym_up_distances(desc);
  return up[anc] != kUnvisited;
}

void Taxonomy::for_each_simple_path(
    const SynsetId& a, const SynsetId& b, RelationMask allowed, int max_length,
    const std::function<void(const PathResult&)>& visit) const {
  std::int32_t ia = require_index(a);
  std::int32_t ib = require_index(b);
  if (allowed == 0) throw std::invalid_argument("empty allowed relation set");
  if (max_length < 0) throw std::invalid_argument("path bound must be >= 0");

  std::vector<bool> on_path(synsets_.size(), false);
  std::vector<std::int32_t> nodes{ia};
  std::vector<RelationType> rels;
  on_path[ia] = true;

  // Depth-first over adjacency order, so the visit order is reproducible.
  std::function<void(std::int32_t)> walk = [&](std::int32_t u) {
    if (u == ib) {
      PathResult path;
      path.length = static_cast<int>(rels.size());
      for (std::int32_t i : nodes) path.nodes.push_back(synsets_[i].id);
      path.relation_seq = rels;
      path.direction_changes = count_direction_changes(rels);
      visit(path);
      return;  // extensions would have to revisit the target
    }
    if (static_cast<int>(rels.size()) >= max_length) return;
    for (const Edge& e : adjacency_[u]) {
      if (!(allowed & relation_bit(e.rel))) continue;
      if (on_path[e.target]) continue;
      on_path[e.target] = true;
      nodes.push_back(e.target);
      rels.push_back(e.rel);
      walk(e.target);
      on_path[e.target] = false;
      nodes.pop_back();
      rels.pop_back();
    }
  };
  walk(ia);
}

void Taxonomy::serialize(std::ostream& out) const {
  for (const Synset& s : synsets_) {
    out << "synset " << s.id << ' ' << to_string(s.pos) << ' ';
    for (std::size_t i = 0; i < s.lemmas.size(); ++i) {
      if (i) out << ',';
      out << s.lemmas[i];
    }
    out << '\n';
    if (!s.gloss.empty()) out << "  gloss " << s.gloss << '\n';
    for (const auto& [rel, target] : s.relations)
      out << "  rel " << to_string(rel) << ' ' << target << '\n';
  }
}

bool Taxonomy::operator==(const Taxonomy& other) const {
  return synsets_ == other.synsets_ && roots_ == other.roots_;
}

}  // namespace semsim
