#include "semsim/embeddings.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace semsim {

namespace {

constexpr double kUnitNormTolerance = 1e-6;

std::vector<std::string> split_spaces(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c);
  });
}

double parse_component(const std::string& s, std::size_t lineno) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParseError("non-numeric vector component '" + s + "'", lineno);
  }
  if (used != s.size())
    throw ParseError("non-numeric vector component '" + s + "'", lineno);
  if (!std::isfinite(v))
    throw ParseError("non-finite vector component '" + s + "'", lineno);
  return v;
}

double norm(std::span<const double> v) {
  double sum = 0;
  for (double x : v) sum += x * x;
  return std::sqrt(sum);
}

}  // namespace

VectorSpace VectorSpace::load(std::istream& in) {
  VectorSpace vs;
  std::string line;
  std::size_t lineno = 0;
  bool first_content_line = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto tokens = split_spaces(line);
    if (tokens.empty()) continue;

    // Optional `<vocab> <dim>` header.
    if (first_content_line && tokens.size() == 2 && all_digits(tokens[0]) &&
        all_digits(tokens[1])) {
      vs.dim_ = std::stoi(tokens[1]);
      if (vs.dim_ < 1) throw ParseError("header dimension must be >= 1", lineno);
      first_content_line = false;
      continue;
    }
    first_content_line = false;

    if (tokens.size() < 2)
      throw ParseError("vector entry needs a word and components", lineno);
    int dim = static_cast<int>(tokens.size()) - 1;
    if (vs.dim_ == 0) vs.dim_ = dim;
    if (dim != vs.dim_)
      throw ParseError("inconsistent dimensionality: expected " +
                           std::to_string(vs.dim_) + ", got " +
                           std::to_string(dim),
                       lineno);
    if (vs.index_.count(tokens[0])) {
      ++vs.duplicates_;
      continue;  // keep the first occurrence
    }
    vs.index_.emplace(tokens[0], vs.words_.size());
    vs.words_.push_back(tokens[0]);
    for (int i = 0; i < dim; ++i)
      vs.data_.push_back(parse_component(tokens[i + 1], lineno));
  }
  if (vs.words_.empty()) throw Error("empty vector file");
  return vs;
}

VectorSpace VectorSpace::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open vector file: " + path);
  return load(in);
}

void VectorSpace::save(std::ostream& out) const {
  out << words_.size() << ' ' << dim_ << '\n';
  char buf[64];
  for (std::size_t i = 0; i < words_.size(); ++i) {
    out << words_[i];
    auto v = vector_at(i);
    for (double x : v) {
      std::snprintf(buf, sizeof(buf), " %.9g", x);
      out << buf;
    }
    out << '\n';
  }
}

bool VectorSpace::contains(const std::string& word) const {
  return index_.count(word) != 0;
}

bool VectorSpace::normalized() const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (std::fabs(norm(vector_at(i)) - 1.0) > kUnitNormTolerance) return false;
  return !words_.empty();
}

std::span<const double> VectorSpace::vector(const std::string& word) const {
  auto it = index_.find(word);
  if (it == index_.end()) throw OovError(word);
  return vector_at(it->second);
}

std::span<const double> VectorSpace::vector_at(std::size_t index) const {
  return {data_.data() + index * dim_, static_cast<std::size_t>(dim_)};
}

std::span<double> VectorSpace::mutable_vector_at(std::size_t index) {
  return {data_.data() + index * dim_, static_cast<std::size_t>(dim_)};
}

std::optional<std::size_t> VectorSpace::index_of(
    const std::string& word) const {
  auto it = index_.find(word);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void VectorSpace::add(const std::string& word, std::span<const double> values) {
  if (dim_ == 0) dim_ = static_cast<int>(values.size());
  if (static_cast<int>(values.size()) != dim_)
    throw Error("vector dimension mismatch for word: " + word);
  if (index_.count(word)) throw Error("duplicate word: " + word);
  for (double v : values)
    if (!std::isfinite(v)) throw Error("non-finite component for word: " + word);
  index_.emplace(word, words_.size());
  words_.push_back(word);
  data_.insert(data_.end(), values.begin(), values.end());
}

double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw Error("cosine of unequal dimensions");
  double dot = 0, nu = 0, nv = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  if (nu == 0 || nv == 0) throw Error("cosine of a zero-norm vector");
  return std::clamp(dot / (std::sqrt(nu) * std::sqrt(nv)), -1.0, 1.0);
}

std::vector<std::string> tokenize_gloss(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) tokens.push_back(cur);
    cur.clear();
  };
  for (char raw : text) {
    unsigned char c = static_cast<unsigned char>(raw);
    if (std::isspace(c)) {
      flush();
    } else if (c < 0x80 && std::ispunct(c)) {
      // strip ASCII punctuation entirely
    } else {
      cur.push_back(static_cast<char>(std::tolower(c)));
    }
  }
  flush();
  return tokens;
}

std::optional<SenseEmbedding> gloss_sense_embedding(const VectorSpace& vs,
                                                    const Taxonomy& t,
                                                    const SynsetId& synset) {
  const Synset& s = t.synset(synset);
  if (s.gloss.empty()) return std::nullopt;

  SenseEmbedding emb;
  emb.synset = synset;
  emb.vector.assign(vs.dim(), 0.0);
  for (const auto& token : tokenize_gloss(s.gloss)) {
    auto idx = vs.index_of(token);
    if (!idx) continue;  // out-of-vocabulary tokens are skipped
    auto v = vs.vector_at(*idx);
    for (int d = 0; d < vs.dim(); ++d) emb.vector[d] += v[d];
    ++emb.token_count;
  }
  if (emb.token_count == 0) return std::nullopt;
  for (double& x : emb.vector) x /= emb.token_count;
  return emb;
}

std::optional<double> sense_max_similarity(const VectorSpace& vs,
                                           const Taxonomy& t,
                                           const std::string& word_a,
                                           const std::string& word_b,
                                           std::optional<PartOfSpeech> pos) {
  auto embeddings_of = [&](const std::string& word) {
    std::vector<SenseEmbedding> out;
    auto senses = pos ? t.senses(word, *pos) : t.senses_any_pos(word);
    for (const auto& id : senses) {
      if (auto emb = gloss_sense_embedding(vs, t, id)) out.push_back(*emb);
    }
    return out;
  };
  auto embs_a = embeddings_of(word_a);
  if (embs_a.empty()) return std::nullopt;
  auto embs_b = embeddings_of(word_b);
  if (embs_b.empty()) return std::nullopt;

  double best = -HUGE_VAL;
  for (const auto& ea : embs_a)
    for (const auto& eb : embs_b)
      best = std::max(best, cosine(ea.vector, eb.vector));
  return best;
}

std::optional<double> word_cosine(const VectorSpace& vs,
                                  const std::string& word_a,
                                  const std::string& word_b) {
  if (!vs.contains(word_a) || !vs.contains(word_b)) return std::nullopt;
  return cosine(vs.vector(word_a), vs.vector(word_b));
}

}  // namespace semsim
