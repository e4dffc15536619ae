#include "semsim/counterfit.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace semsim {

namespace {

WordPair canonical(std::string a, std::string b) {
  if (b < a) std::swap(a, b);
  return {std::move(a), std::move(b)};
}

double vector_norm(std::span<const double> v) {
  double sum = 0;
  for (double x : v) sum += x * x;
  return std::sqrt(sum);
}

// d cos(x,y) / dx = y/(|x||y|) - cos(x,y) * x/|x|^2, accumulated into
// `out` with weight `w`.
void accumulate_cosine_gradient(std::span<const double> x,
                                std::span<const double> y, double w,
                                std::span<double> out) {
  double dot = 0, nx2 = 0, ny2 = 0;
  for (std::size_t d = 0; d < x.size(); ++d) {
    dot += x[d] * y[d];
    nx2 += x[d] * x[d];
    ny2 += y[d] * y[d];
  }
  double nx = std::sqrt(nx2), ny = std::sqrt(ny2);
  double c = dot / (nx * ny);
  for (std::size_t d = 0; d < x.size(); ++d)
    out[d] += w * (y[d] / (nx * ny) - c * x[d] / nx2);
}

std::unordered_map<std::string, std::unordered_set<std::string>> partner_map(
    const ConstraintSet& constraints) {
  std::unordered_map<std::string, std::unordered_set<std::string>> partners;
  for (const auto& [a, b] : constraints.synonyms) {
    partners[a].insert(b);
    partners[b].insert(a);
  }
  for (const auto& [a, b] : constraints.antonyms) {
    partners[a].insert(b);
    partners[b].insert(a);
  }
  return partners;
}

struct PreservePair {
  std::size_t i;
  std::size_t j;
  double original_cosine;
};

std::vector<PreservePair> preserve_pairs(const VectorSpace& original,
                                         const Neighborhoods& neighborhoods) {
  std::vector<PreservePair> out;
  for (std::size_t i = 0; i < original.words().size(); ++i) {
    auto it = neighborhoods.find(original.words()[i]);
    if (it == neighborhoods.end()) continue;
    for (const auto& word : it->second) {
      auto j = original.index_of(word);
      if (!j) throw Error("neighborhood word missing from space: " + word);
      out.push_back(
          {i, *j, cosine(original.vector_at(i), original.vector_at(*j))});
    }
  }
  return out;
}

}  // namespace

std::vector<WordPair> ConstraintSet::load_pairs(std::istream& in) {
  std::vector<WordPair> pairs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size())
      throw ParseError("expected 'word1<TAB>word2'", lineno);
    if (line.find('\t', tab + 1) != std::string::npos)
      throw ParseError("expected exactly two fields", lineno);
    pairs.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  return pairs;
}

std::vector<WordPair> ConstraintSet::load_pairs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open constraint file: " + path);
  return load_pairs(in);
}

ConstraintSet ConstraintSet::from_pairs(std::vector<WordPair> synonyms,
                                        std::vector<WordPair> antonyms,
                                        const VectorSpace& space) {
  ConstraintSet cs;
  auto intake = [&](std::vector<WordPair>& raw, std::vector<WordPair>& out) {
    std::set<WordPair> unique;
    for (auto& [a, b] : raw) {
      if (a == b) throw Error("self-pair constraint: " + a);
      if (!space.contains(a) || !space.contains(b)) {
        ++cs.dropped_pairs;
        continue;
      }
      unique.insert(canonical(a, b));
    }
    out.assign(unique.begin(), unique.end());
  };
  intake(synonyms, cs.synonyms);
  intake(antonyms, cs.antonyms);

  std::set<WordPair> syn_set(cs.synonyms.begin(), cs.synonyms.end());
  for (const auto& pair : cs.antonyms)
    if (syn_set.count(pair))
      throw Error("pair listed as both synonym and antonym: " + pair.first +
                  "/" + pair.second);
  return cs;
}

bool ConstraintSet::are_partners(const std::string& a,
                                 const std::string& b) const {
  WordPair key = canonical(a, b);
  return std::binary_search(synonyms.begin(), synonyms.end(), key) ||
         std::binary_search(antonyms.begin(), antonyms.end(), key);
}

void RetrofitConfig::validate() const {
  if (delta_syn <= 0 || delta_syn > 1)
    throw std::invalid_argument("delta_syn must lie in (0,1]");
  if (delta_ant < 0 || delta_ant >= 1)
    throw std::invalid_argument("delta_ant must lie in [0,1)");
  if (delta_ant >= delta_syn)
    throw std::invalid_argument("delta_ant must be smaller than delta_syn");
  if (neighborhood_k < 1)
    throw std::invalid_argument("neighborhood size must be >= 1");
  if (neighborhood_threshold &&
      (*neighborhood_threshold < -1 || *neighborhood_threshold > 1))
    throw std::invalid_argument("neighborhood threshold must lie in [-1,1]");
  if (lambda_syn < 0 || lambda_ant < 0 || lambda_preserve < 0)
    throw std::invalid_argument("loss weights must be non-negative");
  if (learning_rate <= 0)
    throw std::invalid_argument("learning rate must be positive");
  if (epochs < 0) throw std::invalid_argument("epochs must be >= 0");
}

RetrofitConfig RetrofitConfig::from_key_values(const KeyValues& kv) {
  RetrofitConfig cfg;
  cfg.delta_syn = kv_double(kv, "delta_syn", cfg.delta_syn);
  cfg.delta_ant = kv_double(kv, "delta_ant", cfg.delta_ant);
  cfg.neighborhood_k = kv_int(kv, "neighborhood_k", cfg.neighborhood_k);
  if (kv.count("neighborhood_threshold"))
    cfg.neighborhood_threshold = kv_double(kv, "neighborhood_threshold", 0);
  cfg.lambda_syn = kv_double(kv, "lambda_syn", cfg.lambda_syn);
  cfg.lambda_ant = kv_double(kv, "lambda_ant", cfg.lambda_ant);
  cfg.lambda_preserve = kv_double(kv, "lambda_preserve", cfg.lambda_preserve);
  cfg.learning_rate = kv_double(kv, "learning_rate", cfg.learning_rate);
  cfg.epochs = kv_int(kv, "epochs", cfg.epochs);
  cfg.rng_seed =
      static_cast<std::uint64_t>(kv_double(kv, "rng_seed", 0));
  return cfg;
}

bool RetrofitConfig::consumes_key(const std::string& key) {
  static const std::vector<std::string> keys = {
      "delta_syn",   "delta_ant",       "neighborhood_k",
      "neighborhood_threshold", "lambda_syn", "lambda_ant",
      "lambda_preserve", "learning_rate", "epochs", "rng_seed"};
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

double loss_syn(const VectorSpace& space, const std::vector<WordPair>& pairs,
                double delta_syn) {
  double loss = 0;
  for (const auto& [a, b] : pairs)
    loss += std::max(0.0, delta_syn - cosine(space.vector(a), space.vector(b)));
  return loss;
}

double loss_ant(const VectorSpace& space, const std::vector<WordPair>& pairs,
                double delta_ant) {
  double loss = 0;
  for (const auto& [a, b] : pairs)
    loss += std::max(0.0, delta_ant + cosine(space.vector(a), space.vector(b)));
  return loss;
}

double loss_preserve(const VectorSpace& original, const VectorSpace& current,
                     const Neighborhoods& neighborhoods) {
  if (original.dim() != current.dim() ||
      original.words() != current.words())
    throw Error("preserve loss needs spaces over the same vocabulary");
  double loss = 0;
  for (const auto& pair : preserve_pairs(original, neighborhoods)) {
    double now = cosine(current.vector_at(pair.i), current.vector_at(pair.j));
    loss += std::max(0.0, pair.original_cosine - now);
  }
  return loss;
}

std::vector<double> grad_syn(const VectorSpace& space,
                             const std::vector<WordPair>& pairs,
                             double delta_syn) {
  std::vector<double> grad(space.data().size(), 0.0);
  const int dim = space.dim();
  for (const auto& [a, b] : pairs) {
    std::size_t ia = *space.index_of(a), ib = *space.index_of(b);
    auto xa = space.vector_at(ia);
    auto xb = space.vector_at(ib);
    if (delta_syn - cosine(xa, xb) <= 0) continue;
    accumulate_cosine_gradient(xa, xb, -1.0,
                               {grad.data() + ia * dim, (std::size_t)dim});
    accumulate_cosine_gradient(xb, xa, -1.0,
                               {grad.data() + ib * dim, (std::size_t)dim});
  }
  return grad;
}

std::vector<double> grad_ant(const VectorSpace& space,
                             const std::vector<WordPair>& pairs,
                             double delta_ant) {
  std::vector<double> grad(space.data().size(), 0.0);
  const int dim = space.dim();
  for (const auto& [a, b] : pairs) {
    std::size_t ia = *space.index_of(a), ib = *space.index_of(b);
    auto xa = space.vector_at(ia);
    auto xb = space.vector_at(ib);
    if (delta_ant + cosine(xa, xb) <= 0) continue;
    accumulate_cosine_gradient(xa, xb, 1.0,
                               {grad.data() + ia * dim, (std::size_t)dim});
    accumulate_cosine_gradient(xb, xa, 1.0,
                               {grad.data() + ib * dim, (std::size_t)dim});
  }
  return grad;
}

std::vector<double> grad_preserve(const VectorSpace& original,
                                  const VectorSpace& current,
                                  const Neighborhoods& neighborhoods) {
  std::vector<double> grad(current.data().size(), 0.0);
  const int dim = current.dim();
  for (const auto& pair : preserve_pairs(original, neighborhoods)) {
    auto xi = current.vector_at(pair.i);
    auto xj = current.vector_at(pair.j);
    if (pair.original_cosine - cosine(xi, xj) <= 0) continue;
    accumulate_cosine_gradient(
        xi, xj, -1.0, {grad.data() + pair.i * dim, (std::size_t)dim});
    accumulate_cosine_gradient(
        xj, xi, -1.0, {grad.data() + pair.j * dim, (std::size_t)dim});
  }
  return grad;
}

Neighborhoods build_neighborhoods(const VectorSpace& space,
                                  const ConstraintSet& constraints, int k) {
  if (k < 1) throw std::invalid_argument("neighborhood size must be >= 1");
  Neighborhoods out;
  auto partners = partner_map(constraints);
  const std::size_t n = space.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& word = space.words()[i];
    if (vector_norm(space.vector_at(i)) == 0) {
      out[word] = {};
      continue;
    }
    auto excluded = partners.find(word);
    std::vector<std::pair<double, std::string>> scored;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const std::string& candidate = space.words()[j];
      if (excluded != partners.end() && excluded->second.count(candidate))
        continue;
      if (vector_norm(space.vector_at(j)) == 0) continue;
      scored.emplace_back(cosine(space.vector_at(i), space.vector_at(j)),
                          candidate);
    }
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    std::vector<std::string> nearest;
    for (std::size_t j = 0; j < scored.size() && j < (std::size_t)k; ++j)
      nearest.push_back(scored[j].second);
    out[word] = std::move(nearest);
  }
  return out;
}

Neighborhoods build_neighborhoods_by_threshold(const VectorSpace& space,
                                               const ConstraintSet& constraints,
                                               double min_cosine) {
  Neighborhoods out;
  auto partners = partner_map(constraints);
  const std::size_t n = space.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& word = space.words()[i];
    std::vector<std::string> nearby;
    if (vector_norm(space.vector_at(i)) > 0) {
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const std::string& candidate = space.words()[j];
        auto excluded = partners.find(word);
        if (excluded != partners.end() && excluded->second.count(candidate))
          continue;
        if (vector_norm(space.vector_at(j)) == 0) continue;
        if (cosine(space.vector_at(i), space.vector_at(j)) >= min_cosine)
          nearby.push_back(candidate);
      }
    }
    out[word] = std::move(nearby);
  }
  return out;
}

RetrofitReport counterfit(const VectorSpace& space,
                          const ConstraintSet& constraints,
                          const RetrofitConfig& cfg) {
  cfg.validate();
  if (constraints.empty())
    throw Error("no usable constraint pairs after filtering");

  Neighborhoods neighborhoods =
      cfg.neighborhood_threshold
          ? build_neighborhoods_by_threshold(space, constraints,
                                             *cfg.neighborhood_threshold)
          : build_neighborhoods(space, constraints, cfg.neighborhood_k);

  RetrofitReport report;
  report.dropped_pairs = constraints.dropped_pairs;
  VectorSpace current = space;
  const int dim = current.dim();
  const std::size_t n = current.size();

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    EpochLoss loss;
    loss.syn = loss_syn(current, constraints.synonyms, cfg.delta_syn);
    loss.ant = loss_ant(current, constraints.antonyms, cfg.delta_ant);
    loss.preserve = loss_preserve(space, current, neighborhoods);
    loss.total = cfg.lambda_syn * loss.syn + cfg.lambda_ant * loss.ant +
                 cfg.lambda_preserve * loss.preserve;
    report.loss_per_epoch.push_back(loss);

    auto gs = grad_syn(current, constraints.synonyms, cfg.delta_syn);
    auto ga = grad_ant(current, constraints.antonyms, cfg.delta_ant);
    auto gp = grad_preserve(space, current, neighborhoods);

    for (std::size_t i = 0; i < n; ++i) {
      bool touched = false;
      auto v = current.mutable_vector_at(i);
      for (int d = 0; d < dim; ++d) {
        double g = cfg.lambda_syn * gs[i * dim + d] +
                   cfg.lambda_ant * ga[i * dim + d] +
                   cfg.lambda_preserve * gp[i * dim + d];
        if (g != 0) {
          v[d] -= cfg.learning_rate * g;
          touched = true;
        }
      }
      if (touched) {
        double norm = vector_norm(v);
        if (norm > 0)
          for (int d = 0; d < dim; ++d) v[d] /= norm;
      }
    }
  }

  report.final_space = std::move(current);
  return report;
}

}  // namespace semsim
