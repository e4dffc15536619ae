#pragma once

#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "semsim/embeddings.hpp"
#include "semsim/eval.hpp"
#include "semsim/taxonomy.hpp"

#ifndef TEST_DATA_DIR
#define TEST_DATA_DIR "data"
#endif

namespace fixtures {

inline std::string data_path(const std::string& name) {
  return std::string(TEST_DATA_DIR) + "/" + name;
}

inline semsim::Taxonomy taxonomy_from_string(const std::string& text) {
  std::istringstream in(text);
  return semsim::Taxonomy::parse(in);
}

inline semsim::Taxonomy toy9() {
  return semsim::Taxonomy::parse_file(data_path("toy9.tax"));
}

// toy9 with extra lemmas so that "pet" and "green" each have two senses.
inline semsim::Taxonomy toy9_polysemous() {
  return taxonomy_from_string(R"(synset entity n entity
synset organism n organism
  rel hypernym entity
synset artifact n artifact
  rel hypernym entity
synset animal n animal
  rel hypernym organism
synset plant n plant,green
  rel hypernym organism
synset cat n cat,pet
  gloss a small domesticated feline kept as a pet
  rel hypernym animal
synset dog n dog,pet
  gloss a domesticated canine that barks and keeps company
  rel hypernym animal
synset vehicle n vehicle
  rel hypernym artifact
synset car n car,automobile,green
  rel hypernym vehicle
)");
}

// Small graph mixing IS-A, HAS-A and antonym links plus a compound lemma.
// `wall` hangs off `house` through part-of only, so paths to it must mix
// relation kinds.
inline semsim::Taxonomy mixed_relations() {
  return taxonomy_from_string(R"(synset thing n thing
synset building n building
  rel hypernym thing
synset house n house,home
  rel hypernym building
  rel meronym roof
synset roof n roof
  rel hypernym thing
synset wall n wall
  rel holonym house
synset sports_car n sports_car
  rel hypernym thing
synset car n car
  rel hypernym thing
synset hot a hot
  rel antonym cold
synset cold a cold
)");
}

// Two-sense "bank" with glosses pointing at distinct vector clusters.
inline semsim::Taxonomy gloss_bank() {
  return taxonomy_from_string(R"(synset top n top
synset bank_fin n bank
  gloss money institution for deposit
  rel hypernym top
synset bank_river n bank
  gloss sloping land beside water
  rel hypernym top
synset river n river
  gloss large natural stream of water
  rel hypernym top
)");
}

// Twelve gold pairs with planted word frequencies and sense counts, built
// so every bucketing criterion has a hand-checkable partition.
struct BucketFixture {
  semsim::EvalDataset dataset;
  semsim::FrequencyTable freq;
  semsim::Taxonomy taxonomy;
};

inline BucketFixture bucket_fixture() {
  BucketFixture fx{{}, {}, taxonomy_from_string([] {
                     // word -> polysemy degree
                     const std::vector<std::pair<std::string, int>> degrees = {
                         {"a", 1}, {"b", 2}, {"c", 3}, {"d", 4},
                         {"e", 5}, {"f", 6}, {"g", 7}, {"h", 1},
                         {"i", 2}, {"j", 4}, {"k", 5}, {"l", 3}};
                     std::string text;
                     for (int level = 1; level <= 8; ++level) {
                       text += "synset z" + std::to_string(level) + " n zz" +
                               std::to_string(level);
                       for (const auto& [word, degree] : degrees)
                         if (degree >= level) text += "," + word;
                       text += "\n";
                       if (level > 1)
                         text += "  rel hypernym z" +
                                 std::to_string(level - 1) + "\n";
                     }
                     return text;
                   }())};

  fx.freq.counts = {{"a", 100},   {"b", 2500}, {"c", 3000}, {"d", 9999},
                    {"e", 10000}, {"f", 50000}, {"g", 500},  {"h", 20000},
                    {"i", 1},     {"j", 4000}, {"k", 12000}, {"l", 8000}};
  fx.freq.total_tokens = 120100;

  fx.dataset.name = "bucket12";
  fx.dataset.pos = semsim::DatasetPos::noun;
  fx.dataset.pairs = {
      {"a", "b", 1.0}, {"a", "i", 2.9}, {"c", "d", 3.0}, {"j", "c", 5.9},
      {"e", "g", 6.0}, {"f", "k", 9.9}, {"a", "c", 0.5}, {"b", "e", 4.5},
      {"d", "f", 8.0}, {"h", "e", 10.0}, {"l", "d", 3.5}, {"g", "i", 0.0}};
  return fx;
}

// Random DAG taxonomy text: parents always point at earlier synsets, so
// hypernyms stay acyclic; some nodes get two parents (diamonds), some
// become extra roots, and a few part-of edges are sprinkled in.
inline std::string random_taxonomy_text(unsigned seed, int n = 14) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> roll(0, 7);
  std::string text = "synset s0 n s0w\n";
  for (int i = 1; i < n; ++i) {
    std::string id = "s" + std::to_string(i);
    text += "synset " + id + " n " + id + "w\n";
    std::uniform_int_distribution<int> earlier(0, i - 1);
    if (roll(rng) != 0) {  // otherwise this synset is another root
      int p1 = earlier(rng);
      text += "  rel hypernym s" + std::to_string(p1) + "\n";
      int p2 = earlier(rng);
      if (p2 != p1 && roll(rng) <= 1)
        text += "  rel hypernym s" + std::to_string(p2) + "\n";
    }
    if (roll(rng) == 2)
      text += "  rel meronym s" + std::to_string(earlier(rng)) + "\n";
  }
  return text;
}

inline semsim::VectorSpace space_from_pairs(
    const std::vector<std::pair<std::string, std::vector<double>>>& entries) {
  semsim::VectorSpace vs;
  for (const auto& [word, values] : entries) vs.add(word, values);
  return vs;
}

// Deterministic random space; every norm stays clear of zero.
inline semsim::VectorSpace random_space(int words, int dim,
                                        unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> magnitude(0.25, 1.0);
  std::bernoulli_distribution sign(0.5);
  semsim::VectorSpace vs;
  for (int w = 0; w < words; ++w) {
    std::vector<double> v(dim);
    for (int d = 0; d < dim; ++d)
      v[d] = (sign(rng) ? 1 : -1) * magnitude(rng);
    vs.add("w" + std::to_string(w), v);
  }
  return vs;
}

}  // namespace fixtures
