#include "semsim/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace semsim {

namespace {

SimilarityScore make_score(double value, Scale scale, Measure m,
                           const SynsetId& a, const SynsetId& b) {
  return SimilarityScore{value, scale, m, {a, b}};
}

// Splits a multiword lemma on '_' and reports whether `word` is one of
// the parts.
bool compound_contains(const std::string& lemma, const std::string& word) {
  if (lemma.find('_') == std::string::npos) return false;
  std::size_t start = 0;
  while (start <= lemma.size()) {
    std::size_t end = lemma.find('_', start);
    if (end == std::string::npos) end = lemma.size();
    if (lemma.compare(start, end - start, word) == 0) return true;
    start = end + 1;
  }
  return false;
}

PathType path_type_of(const std::vector<RelationType>& rels) {
  bool has_sa = false, has_hm = false;
  for (RelationType r : rels) {
    if (r == RelationType::antonym) has_sa = true;
    if (r == RelationType::holonym || r == RelationType::meronym)
      has_hm = true;
  }
  if (has_sa) return PathType::sa;
  if (has_hm) return PathType::hm;
  return PathType::hh;
}

}  // namespace

const char* to_string(Measure m) {
  switch (m) {
    case Measure::edge: return "edge";
    case Measure::lch: return "lch";
    case Measure::wup: return "wup";
    case Measure::agi: return "agi";
    case Measure::sus: return "sus";
    case Measure::hso: return "hso";
    case Measure::yp: return "yp";
    case Measure::res: return "res";
    case Measure::jcn: return "jcn";
    case Measure::lin: return "lin";
  }
  return "?";
}

std::optional<Measure> measure_from_string(std::string_view tag) {
  if (tag == "edge") return Measure::edge;
  if (tag == "lch") return Measure::lch;
  if (tag == "wup") return Measure::wup;
  if (tag == "agi") return Measure::agi;
  if (tag == "sus") return Measure::sus;
  if (tag == "hso") return Measure::hso;
  if (tag == "yp") return Measure::yp;
  if (tag == "res") return Measure::res;
  if (tag == "jcn") return Measure::jcn;
  if (tag == "lin") return Measure::lin;
  return std::nullopt;
}

bool measure_needs_ic(Measure m) {
  return m == Measure::res || m == Measure::jcn || m == Measure::lin;
}

void MeasureConfig::validate(const Taxonomy* t) const {
  if (max_depth < 1) throw std::invalid_argument("max_depth must be >= 1");
  if (t && max_depth < t->max_depth())
    throw std::invalid_argument(
        "max_depth is smaller than the loaded taxonomy's depth");
  if (hso_min_len < 1 || hso_max_len < hso_min_len)
    throw std::invalid_argument("bad path-length window");
  for (int i = 0; i < kPathTypeCount; ++i) {
    if (yp_alpha[i] <= 0 || yp_alpha[i] > 1)
      throw std::invalid_argument("alpha weights must lie in (0,1]");
    if (yp_beta[i] <= 0 || yp_beta[i] > 1)
      throw std::invalid_argument("beta weights must lie in (0,1]");
  }
  if (yp_depth_limit < 1)
    throw std::invalid_argument("depth limit must be >= 1");
  for (int i = 0; i < kRelationCount; ++i)
    if (sussna_min[i] > sussna_max[i])
      throw std::invalid_argument("relation weight bounds are inverted");
}

namespace {

const char* kRelationKeys[kRelationCount] = {"hypernym", "hyponym", "holonym",
                                             "meronym", "antonym"};
const char* kPathTypeKeys[kPathTypeCount] = {"hh", "hm", "sa", "id"};

}  // namespace

MeasureConfig MeasureConfig::from_key_values(const KeyValues& kv) {
  MeasureConfig cfg;
  cfg.max_depth = kv_int(kv, "max_depth", cfg.max_depth);
  cfg.hso_ceiling = kv_double(kv, "hso_ceiling", cfg.hso_ceiling);
  cfg.hso_direction_penalty =
      kv_double(kv, "hso_direction_penalty", cfg.hso_direction_penalty);
  cfg.hso_min_len = kv_int(kv, "hso_min_len", cfg.hso_min_len);
  cfg.hso_max_len = kv_int(kv, "hso_max_len", cfg.hso_max_len);
  for (int i = 0; i < kRelationCount; ++i) {
    cfg.sussna_min[i] = kv_double(
        kv, std::string("sussna_min_") + kRelationKeys[i], cfg.sussna_min[i]);
    cfg.sussna_max[i] = kv_double(
        kv, std::string("sussna_max_") + kRelationKeys[i], cfg.sussna_max[i]);
  }
  cfg.sussna_min_synonym =
      kv_double(kv, "sussna_min_synonym", cfg.sussna_min_synonym);
  cfg.sussna_max_synonym =
      kv_double(kv, "sussna_max_synonym", cfg.sussna_max_synonym);
  for (int i = 0; i < kPathTypeCount; ++i) {
    cfg.yp_alpha[i] = kv_double(kv, std::string("yp_alpha_") + kPathTypeKeys[i],
                                cfg.yp_alpha[i]);
    cfg.yp_beta[i] = kv_double(kv, std::string("yp_beta_") + kPathTypeKeys[i],
                               cfg.yp_beta[i]);
  }
  cfg.yp_depth_limit = kv_int(kv, "yp_depth_limit", cfg.yp_depth_limit);
  cfg.agi_textual_variant =
      kv_bool(kv, "agi_textual_variant", cfg.agi_textual_variant);
  return cfg;
}

bool MeasureConfig::consumes_key(const std::string& key) {
  static const std::vector<std::string> fixed = {
      "max_depth",     "hso_ceiling", "hso_direction_penalty",
      "hso_min_len",   "hso_max_len", "yp_depth_limit",
      "agi_textual_variant", "sussna_min_synonym", "sussna_max_synonym"};
  for (const auto& k : fixed)
    if (key == k) return true;
  for (int i = 0; i < kRelationCount; ++i) {
    if (key == std::string("sussna_min_") + kRelationKeys[i]) return true;
    if (key == std::string("sussna_max_") + kRelationKeys[i]) return true;
  }
  for (int i = 0; i < kPathTypeCount; ++i) {
    if (key == std::string("yp_alpha_") + kPathTypeKeys[i]) return true;
    if (key == std::string("yp_beta_") + kPathTypeKeys[i]) return true;
  }
  return false;
}

std::optional<SimilarityScore> sim_edge(const Taxonomy& t, const SynsetId& a,
                                        const SynsetId& b) {
  auto path = t.shortest_path(a, b, kIsaRelations);
  if (!path || !t.ncn(a, b)) return std::nullopt;
  return make_score(1.0 / (1.0 + path->length), Scale::similarity,
                    Measure::edge, a, b);
}

std::optional<SimilarityScore> sim_lch(const Taxonomy& t, const SynsetId& a,
                                       const SynsetId& b,
                                       const MeasureConfig& cfg) {
  cfg.validate(&t);
  auto path = t.shortest_path(a, b, kIsaRelations);
  if (!path || !t.ncn(a, b)) return std::nullopt;
  double node_counted = path->length + 1;
  return make_score(-std::log(node_counted / (2.0 * cfg.max_depth)),
                    Scale::similarity, Measure::lch, a, b);
}

std::optional<SimilarityScore> sim_wup(const Taxonomy& t, const SynsetId& a,
                                       const SynsetId& b) {
  auto common = t.ncn(a, b);
  if (!common) return std::nullopt;
  double value = 2.0 * t.depth(*common) / (t.depth(a) + t.depth(b));
  return make_score(value, Scale::similarity, Measure::wup, a, b);
}

std::optional<SimilarityScore> sim_agi(const Taxonomy& t, const SynsetId& a,
                                       const SynsetId& b,
                                       const MeasureConfig& cfg) {
  auto path = t.shortest_path(a, b, kIsaRelations);
  if (!path || !t.ncn(a, b)) return std::nullopt;
  double reciprocal_sum = 0;
  for (const auto& node : path->nodes) reciprocal_sum += 1.0 / t.depth(node);
  if (cfg.agi_textual_variant) {
    double distance = static_cast<double>(path->nodes.size()) / reciprocal_sum;
    return make_score(-distance, Scale::negated_distance, Measure::agi, a, b);
  }
  return make_score(1.0 / reciprocal_sum, Scale::similarity, Measure::agi, a,
                    b);
}

std::optional<SimilarityScore> dist_sussna(const Taxonomy& t, const SynsetId& a,
                                           const SynsetId& b,
                                           const MeasureConfig& cfg) {
  cfg.validate();
  auto path = t.shortest_path(a, b, kAllRelations);
  if (!path) return std::nullopt;
  double total = 0;
  for (int i = 0; i < path->length; ++i) {
    const SynsetId& x = path->nodes[i];
    const SynsetId& y = path->nodes[i + 1];
    RelationType r = path->relation_seq[i];
    RelationType r_inv = inverse_of(r);
    double w_out = cfg.sussna_max[static_cast<int>(r)] -
                   (cfg.sussna_max[static_cast<int>(r)] -
                    cfg.sussna_min[static_cast<int>(r)]) /
                       t.local_density(x, r);
    double w_back = cfg.sussna_max[static_cast<int>(r_inv)] -
                    (cfg.sussna_max[static_cast<int>(r_inv)] -
                     cfg.sussna_min[static_cast<int>(r_inv)]) /
                        t.local_density(y, r_inv);
    total += (w_out + w_back) / (2.0 * std::max(t.depth(x), t.depth(y)));
  }
  return make_score(-total, Scale::negated_distance, Measure::sus, a, b);
}

SimilarityScore sim_yp(const Taxonomy& t, const SynsetId& a, const SynsetId& b,
                       const MeasureConfig& cfg) {
  cfg.validate();
  if (a == b) {
    int type = static_cast<int>(PathType::id);
    return make_score(cfg.yp_alpha[type], Scale::similarity, Measure::yp, a,
                      b);
  }
  auto path = t.shortest_path(a, b, kAllRelations);
  if (!path || path->length > cfg.yp_depth_limit)
    return make_score(0.0, Scale::similarity, Measure::yp, a, b);
  int type = static_cast<int>(path_type_of(path->relation_seq));
  int effective = std::max(path->length, 1);
  double value =
      cfg.yp_alpha[type] * std::pow(cfg.yp_beta[type], effective - 1);
  return make_score(value, Scale::similarity, Measure::yp, a, b);
}

std::optional<SimilarityScore> sim_res(const Taxonomy& t, const ICTable& ic,
                                       const SynsetId& a, const SynsetId& b) {
  auto common = t.ncn(a, b);
  if (!common) return std::nullopt;
  return make_score(ic.value(*common), Scale::similarity, Measure::res, a, b);
}

std::optional<SimilarityScore> sim_jcn(const Taxonomy& t, const ICTable& ic,
                                       const SynsetId& a, const SynsetId& b) {
  auto common = t.ncn(a, b);
  if (!common) return std::nullopt;
  double value = 2.0 * ic.value(*common) - ic.value(a) - ic.value(b);
  return make_score(value, Scale::negated_distance, Measure::jcn, a, b);
}

std::optional<SimilarityScore> sim_lin(const Taxonomy& t, const ICTable& ic,
                                       const SynsetId& a, const SynsetId& b) {
  auto common = t.ncn(a, b);
  if (!common) return std::nullopt;
  double denom = ic.value(a) + ic.value(b);
  if (denom <= 0) return std::nullopt;
  double value = std::clamp(2.0 * ic.value(*common) / denom, 0.0, 1.0);
  return make_score(value, Scale::similarity, Measure::lin, a, b);
}

SimilarityScore sim_hso(const Taxonomy& t, const std::string& word_a,
                        const std::string& word_b, const MeasureConfig& cfg) {
  cfg.validate();
  auto senses_a = t.senses_any_pos(word_a);
  if (senses_a.empty()) throw OovError(word_a);
  auto senses_b = t.senses_any_pos(word_b);
  if (senses_b.empty()) throw OovError(word_b);

  const double extra_strong = 2.0 * cfg.hso_ceiling;
  const double strong = 2.0 * cfg.hso_ceiling - 2.0;

  if (word_a == word_b)
    return make_score(extra_strong, Scale::similarity, Measure::hso,
                      senses_a.front(), senses_b.front());

  // Strong tier: shared synset, antonymous senses, or one word being a
  // part of the other's multiword lemma.
  for (const auto& sa : senses_a)
    for (const auto& sb : senses_b)
      if (sa == sb)
        return make_score(strong, Scale::similarity, Measure::hso, sa, sb);
  for (const auto& sa : senses_a) {
    for (const auto& [rel, target] : t.synset(sa).relations) {
      if (rel != RelationType::antonym) continue;
      for (const auto& sb : senses_b)
        if (sb == target)
          return make_score(strong, Scale::similarity, Measure::hso, sa, sb);
    }
  }
  auto any_compound_hit = [&](const std::vector<SynsetId>& senses,
                              const std::string& other) {
    for (const auto& id : senses)
      for (const auto& lemma : t.synset(id).lemmas)
        if (compound_contains(lemma, other)) return true;
    return false;
  };
  if (any_compound_hit(senses_a, word_b) || any_compound_hit(senses_b, word_a))
    return make_score(strong, Scale::similarity, Measure::hso,
                      senses_a.front(), senses_b.front());

  // Medium-strong tier: best C - length - K*turns over simple paths whose
  // link count lies in the configured window.
  double best = -HUGE_VAL;
  std::pair<SynsetId, SynsetId> best_pair{senses_a.front(), senses_b.front()};
  for (const auto& sa : senses_a) {
    for (const auto& sb : senses_b) {
      t.for_each_simple_path(
          sa, sb, kAllRelations, cfg.hso_max_len,
          [&](const PathResult& path) {
            if (path.length < cfg.hso_min_len) return;
            double score = cfg.hso_ceiling - path.length -
                           cfg.hso_direction_penalty * path.direction_changes;
            if (score > best) {
              best = score;
              best_pair = {sa, sb};
            }
          });
    }
  }
  double value = best > 0 ? best : 0.0;
  return make_score(value, Scale::similarity, Measure::hso, best_pair.first,
                    best_pair.second);
}

std::optional<SimilarityScore> word_similarity(
    const Taxonomy& t, Measure measure, const std::string& word_a,
    const std::string& word_b, std::optional<PartOfSpeech> pos,
    const MeasureConfig& cfg, const ICTable* ic) {
  if (measure == Measure::hso) return sim_hso(t, word_a, word_b, cfg);
  if (measure_needs_ic(measure) && !ic)
    throw std::invalid_argument(std::string(to_string(measure)) +
                                " needs an information-content table");

  auto senses_of = [&](const std::string& word) {
    return pos ? t.senses(word, *pos) : t.senses_any_pos(word);
  };
  const std::vector<SynsetId> senses_a = senses_of(word_a);
  if (senses_a.empty()) throw OovError(word_a);
  const std::vector<SynsetId> senses_b = senses_of(word_b);
  if (senses_b.empty()) throw OovError(word_b);

  std::optional<SimilarityScore> best;
  for (const auto& sa : senses_a) {
    for (const auto& sb : senses_b) {
      std::optional<SimilarityScore> score;
      switch (measure) {
        case Measure::edge: score = sim_edge(t, sa, sb); break;
        case Measure::lch: score = sim_lch(t, sa, sb, cfg); break;
        case Measure::wup: score = sim_wup(t, sa, sb); break;
        case Measure::agi: score = sim_agi(t, sa, sb, cfg); break;
        case Measure::sus: score = dist_sussna(t, sa, sb, cfg); break;
        case Measure::yp: score = sim_yp(t, sa, sb, cfg); break;
        case Measure::res: score = sim_res(t, *ic, sa, sb); break;
        case Measure::jcn: score = sim_jcn(t, *ic, sa, sb); break;
        case Measure::lin: score = sim_lin(t, *ic, sa, sb); break;
        case Measure::hso: break;  // handled above
      }
      if (score && (!best || score->value > best->value)) best = score;
    }
  }
  return best;
}

}  // namespace semsim
