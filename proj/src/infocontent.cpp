#include "semsim/infocontent.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace semsim {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == '\t') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_real(const std::string& s, std::size_t lineno,
                  const char* what) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(std::string("malformed ") + what + ": '" + s + "'",
                     lineno);
  }
}

// Distinct synsets reachable from `start` via edges of type `rel`,
// excluding `start` itself.
std::vector<SynsetId> reachable(const Taxonomy& t, const SynsetId& start,
                                RelationType rel) {
  std::vector<SynsetId> out;
  std::unordered_map<std::string, bool> seen;
  std::deque<SynsetId> queue{start};
  seen[start] = true;
  while (!queue.empty()) {
    SynsetId cur = queue.front();
    queue.pop_front();
    for (const auto& [r, target] : t.synset(cur).relations) {
      if (r != rel || seen.count(target)) continue;
      seen[target] = true;
      out.push_back(target);
      queue.push_back(target);
    }
  }
  return out;
}

}  // namespace

FrequencyTable FrequencyTable::parse(std::istream& in) {
  FrequencyTable table;
  std::string line;
  std::size_t lineno = 0;
  bool explicit_total = false;
  double sum = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      auto fields = split_tabs(line);
      if (fields[0] == "#total") {
        if (fields.size() != 2)
          throw ParseError("expected '#total<TAB>N'", lineno);
        table.total_tokens = parse_real(fields[1], lineno, "total");
        explicit_total = true;
      }
      continue;
    }
    auto fields = split_tabs(line);
    if (fields.size() != 2)
      throw ParseError("expected 'word<TAB>count'", lineno);
    double count = parse_real(fields[1], lineno, "count");
    if (count < 0) throw ParseError("negative count", lineno);
    table.counts[fields[0]] += count;
    sum += count;
  }
  if (!explicit_total) table.total_tokens = sum;
  if (table.total_tokens <= 0)
    throw Error("frequency table has no corpus mass");
  return table;
}

FrequencyTable FrequencyTable::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open frequency file: " + path);
  return parse(in);
}

double ICTable::value(const SynsetId& id) const {
  auto it = ic.find(id);
  if (it == ic.end()) throw Error("synset not covered by IC table: " + id);
  return it->second;
}

void ICTable::save(std::ostream& out) const {
  out << "#source\t" << (source == IcSource::corpus ? "corpus" : "intrinsic")
      << '\n';
  out << "#skipped\t" << skipped_words << '\n';
  std::vector<SynsetId> ids;
  ids.reserve(ic.size());
  for (const auto& it : ic) ids.push_back(it.first);
  std::sort(ids.begin(), ids.end());
  char buf[128];
  for (const auto& id : ids) {
    std::snprintf(buf, sizeof(buf), "%s\t%.17g\t%.17g", id.c_str(), ic.at(id),
                  mass.at(id));
    out << buf << '\n';
  }
}

ICTable ICTable::load(std::istream& in) {
  ICTable table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_tabs(line);
    if (fields[0] == "#source") {
      if (fields.size() == 2 && fields[1] == "intrinsic")
        table.source = IcSource::intrinsic;
      continue;
    }
    if (fields[0] == "#skipped") {
      if (fields.size() == 2)
        table.skipped_words =
            static_cast<std::size_t>(parse_real(fields[1], lineno, "count"));
      continue;
    }
    if (fields[0].front() == '#') continue;
    if (fields.size() != 3)
      throw ParseError("expected 'synset<TAB>ic<TAB>mass'", lineno);
    table.ic[fields[0]] = parse_real(fields[1], lineno, "ic");
    table.mass[fields[0]] = parse_real(fields[2], lineno, "mass");
  }
  if (table.ic.empty()) throw Error("empty IC table");
  return table;
}

ICTable ICTable::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open IC table: " + path);
  return load(in);
}

ICTable build_corpus_ic(const Taxonomy& t, const FrequencyTable& freq,
                        double smoothing, bool split_sense_counts) {
  if (smoothing < 0) throw std::invalid_argument("smoothing must be >= 0");

  ICTable table;
  table.source = IcSource::corpus;

  std::unordered_map<SynsetId, double> credit;
  for (const Synset& s : t.synsets()) credit[s.id] = smoothing;

  for (const auto& [word, count] : freq.counts) {
    auto senses = t.senses_any_pos(word);
    if (senses.empty()) {
      ++table.skipped_words;
      continue;
    }
    double share =
        split_sense_counts ? count / static_cast<double>(senses.size()) : count;
    for (const auto& id : senses) credit[id] += share;
  }

  // Each synset's credit flows to every distinct hypernym ancestor once,
  // so diamonds in the hierarchy do not double-count.
  std::unordered_map<SynsetId, double> mass;
  for (const Synset& s : t.synsets()) mass[s.id] = 0;
  for (const Synset& s : t.synsets()) {
    double c = credit[s.id];
    mass[s.id] += c;
    for (const auto& anc : reachable(t, s.id, RelationType::hypernym))
      mass[anc] += c;
  }

  double mass_total = 0;
  for (const auto& root : t.roots()) mass_total += mass[root];
  if (mass_total <= 0) throw Error("zero total corpus mass");

  for (const Synset& s : t.synsets()) {
    double p = mass[s.id] / mass_total;
    table.mass[s.id] = p;
    table.ic[s.id] = p > 0 ? -std::log(p) : HUGE_VAL;
  }
  return table;
}

ICTable build_intrinsic_ic(const Taxonomy& t) {
  if (t.size() < 2)
    throw Error("intrinsic IC needs a taxonomy with at least 2 synsets");

  ICTable table;
  table.source = IcSource::intrinsic;
  const double log_total = std::log(static_cast<double>(t.size()));
  for (const Synset& s : t.synsets()) {
    auto descendants = reachable(t, s.id, RelationType::hyponym);
    double share =
        static_cast<double>(descendants.size() + 1) / static_cast<double>(t.size());
    table.mass[s.id] = share;
    table.ic[s.id] =
        1.0 - std::log(static_cast<double>(descendants.size() + 1)) / log_total;
  }
  return table;
}

}  // namespace semsim
