#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <unordered_map>

#include "semsim/taxonomy.hpp"

namespace semsim {

// Corpus word counts. Input is UTF-8 TSV, one `word<TAB>count` per line,
// with an optional `#total<TAB>N` header; when the header is absent N is
// the sum of the listed counts.
struct FrequencyTable {
  std::unordered_map<std::string, double> counts;
  double total_tokens = 0;

  static FrequencyTable parse(std::istream& in);
  static FrequencyTable parse_file(const std::string& path);

  double count_of(const std::string& word) const {
    auto it = counts.find(word);
    return it == counts.end() ? 0.0 : it->second;
  }
};

enum class IcSource { corpus, intrinsic };

// Information content per synset. `mass` holds the propagated probability
// (corpus tables) or the normalized descendant share (intrinsic tables);
// ic == -ln(mass) for corpus tables. Roots carry ic 0 and ic never
// decreases from a synset to its hyponyms.
struct ICTable {
  std::unordered_map<SynsetId, double> ic;
  std::unordered_map<SynsetId, double> mass;
  IcSource source = IcSource::corpus;
  std::size_t skipped_words = 0;  // frequency entries missing from the taxonomy

  double value(const SynsetId& id) const;
  bool covers(const SynsetId& id) const { return ic.count(id) != 0; }

  void save(std::ostream& out) const;
  static ICTable load(std::istream& in);
  static ICTable load_file(const std::string& path);
};

// Resnik-style propagation: every word count is credited to its synsets
// (split equally across senses unless `split_sense_counts` is off), plus
// `smoothing` per synset; a synset's mass is its own credit plus the
// credit of every distinct hyponym descendant. P(c) = mass(c) / sum of
// root masses.
ICTable build_corpus_ic(const Taxonomy& t, const FrequencyTable& freq,
                        double smoothing = 1.0, bool split_sense_counts = true);

// Structure-only table: IC(c) = 1 - ln(hypo(c) + 1) / ln(|synsets|) with
// hypo(c) the number of distinct strict descendants; leaves score 1,
// roots of a fully connected hierarchy score 0.
ICTable build_intrinsic_ic(const Taxonomy& t);

}  // namespace semsim
