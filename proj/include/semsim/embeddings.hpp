#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "semsim/taxonomy.hpp"

namespace semsim {

// Dense word vectors of one fixed dimensionality, kept in input order.
// Text format: optional first line `<vocab_size> <dim>`, then one entry
// per line, the word followed by dim space-separated reals.
class VectorSpace {
 public:
  VectorSpace() = default;
  explicit VectorSpace(int dim) : dim_(dim) {}

  static VectorSpace load(std::istream& in);
  static VectorSpace load_file(const std::string& path);
  void save(std::ostream& out) const;

  int dim() const { return dim_; }
  std::size_t size() const { return words_.size(); }
  bool contains(const std::string& word) const;
  const std::vector<std::string>& words() const { return words_; }
  std::size_t duplicate_count() const { return duplicates_; }

  // Unit-norm within 1e-6 across the whole vocabulary.
  bool normalized() const;

  std::span<const double> vector(const std::string& word) const;  // OovError
  std::span<const double> vector_at(std::size_t index) const;
  std::span<double> mutable_vector_at(std::size_t index);
  std::optional<std::size_t> index_of(const std::string& word) const;

  // Appends a word; rejects dimension mismatches and non-finite values.
  void add(const std::string& word, std::span<const double> values);

  const std::vector<double>& data() const { return data_; }

 private:
  int dim_ = 0;
  std::vector<std::string> words_;
  std::vector<double> data_;  // size() * dim_
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t duplicates_ = 0;
};

// Throws Error on dimension mismatch or a zero-norm operand.
double cosine(std::span<const double> u, std::span<const double> v);

struct SenseEmbedding {
  SynsetId synset;
  std::vector<double> vector;
  int token_count = 0;  // gloss tokens that contributed to the mean
};

// Lowercases, splits on whitespace, strips ASCII punctuation.
std::vector<std::string> tokenize_gloss(std::string_view text);

// Mean of the vectors of the gloss tokens found in `vs`; absent when the
// gloss is empty or no token resolves.
std::optional<SenseEmbedding> gloss_sense_embedding(const VectorSpace& vs,
                                                    const Taxonomy& t,
                                                    const SynsetId& synset);

// Max cosine across the two words' gloss sense embeddings; absent when
// either side has no resolvable sense embedding.
std::optional<double> sense_max_similarity(const VectorSpace& vs,
                                           const Taxonomy& t,
                                           const std::string& word_a,
                                           const std::string& word_b,
                                           std::optional<PartOfSpeech> pos);

// Cosine of the two unified vectors; absent when either word is out of
// vocabulary.
std::optional<double> word_cosine(const VectorSpace& vs,
                                  const std::string& word_a,
                                  const std::string& word_b);

}  // namespace semsim
