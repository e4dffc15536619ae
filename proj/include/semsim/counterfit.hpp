#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "semsim/config.hpp"
#include "semsim/embeddings.hpp"

namespace semsim {

using WordPair = std::pair<std::string, std::string>;

// Synonym and antonym pairs aligned to a vector space. Pairs are stored
// unordered (canonical lexicographic order, deduplicated); pairs touching
// out-of-vocabulary words are dropped and counted. Self-pairs and pairs
// present in both sets are data errors.
struct ConstraintSet {
  std::vector<WordPair> synonyms;
  std::vector<WordPair> antonyms;
  std::size_t dropped_pairs = 0;

  // TSV, one `word1<TAB>word2` per line, '#' lines ignored.
  static std::vector<WordPair> load_pairs(std::istream& in);
  static std::vector<WordPair> load_pairs_file(const std::string& path);

  static ConstraintSet from_pairs(std::vector<WordPair> synonyms,
                                  std::vector<WordPair> antonyms,
                                  const VectorSpace& space);

  bool are_partners(const std::string& a, const std::string& b) const;
  bool empty() const { return synonyms.empty() && antonyms.empty(); }
};

struct RetrofitConfig {
  double delta_syn = 1.0;  // target minimum synonym cosine, in (0,1]
  double delta_ant = 0.0;  // tolerated maximum antonym cosine, in [0,1)
  int neighborhood_k = 10;
  // When set, neighborhoods are every word above this cosine instead of
  // the k nearest.
  std::optional<double> neighborhood_threshold;
  double lambda_syn = 1.0;
  double lambda_ant = 1.0;
  double lambda_preserve = 1.0;
  double learning_rate = 0.1;
  int epochs = 20;
  std::uint64_t rng_seed = 0;

  void validate() const;

  static RetrofitConfig from_key_values(const KeyValues& kv);
  static bool consumes_key(const std::string& key);
};

struct EpochLoss {
  double syn = 0;
  double ant = 0;
  double preserve = 0;
  double total = 0;  // lambda-weighted objective
};

struct RetrofitReport {
  std::vector<EpochLoss> loss_per_epoch;
  std::size_t dropped_pairs = 0;
  VectorSpace final_space;
};

// Word -> negative-sample words, precomputed on the original space.
using Neighborhoods =
    std::unordered_map<std::string, std::vector<std::string>>;

// Hinge losses. Every pair must resolve in the given space.
double loss_syn(const VectorSpace& space, const std::vector<WordPair>& pairs,
                double delta_syn);
double loss_ant(const VectorSpace& space, const std::vector<WordPair>& pairs,
                double delta_ant);
double loss_preserve(const VectorSpace& original, const VectorSpace& current,
                     const Neighborhoods& neighborhoods);

// Analytic gradients, one slot per coordinate of the space (same layout
// as VectorSpace::data()). The preserve gradient is taken with respect to
// `current`.
std::vector<double> grad_syn(const VectorSpace& space,
                             const std::vector<WordPair>& pairs,
                             double delta_syn);
std::vector<double> grad_ant(const VectorSpace& space,
                             const std::vector<WordPair>& pairs,
                             double delta_ant);
std::vector<double> grad_preserve(const VectorSpace& original,
                                  const VectorSpace& current,
                                  const Neighborhoods& neighborhoods);

// For every word, the k highest-cosine vocabulary words, excluding the
// word itself and its constraint partners; ties break toward the
// lexicographically smaller word.
Neighborhoods build_neighborhoods(const VectorSpace& space,
                                  const ConstraintSet& constraints, int k);
// Threshold variant: every word at or above `min_cosine`.
Neighborhoods build_neighborhoods_by_threshold(const VectorSpace& space,
                                               const ConstraintSet& constraints,
                                               double min_cosine);

// Full-batch gradient descent on lambda_S*L_S + lambda_A*L_A + lambda_P*L_P,
// starting from a copy of `space`. After each epoch every vector that
// received gradient is renormalized to unit length; vectors no term ever
// touches keep their original bytes. Deterministic for fixed inputs.
RetrofitReport counterfit(const VectorSpace& space,
                          const ConstraintSet& constraints,
                          const RetrofitConfig& cfg);

}  // namespace semsim
