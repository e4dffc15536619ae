#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <utility>

#include "semsim/config.hpp"
#include "semsim/infocontent.hpp"
#include "semsim/taxonomy.hpp"

namespace semsim {

enum class Measure { edge, lch, wup, agi, sus, hso, yp, res, jcn, lin };

const char* to_string(Measure m);
std::optional<Measure> measure_from_string(std::string_view tag);
bool measure_needs_ic(Measure m);

enum class Scale { similarity, negated_distance };

// Path categories used by the hybrid measure: hyper/hyponym, holo/meronym,
// syn/antonym, identity.
enum class PathType : int { hh = 0, hm = 1, sa = 2, id = 3 };

inline constexpr int kPathTypeCount = 4;

struct MeasureConfig {
  int max_depth = 16;                 // D; must cover the loaded taxonomy
  double hso_ceiling = 8.0;           // C
  double hso_direction_penalty = 1.0; // K
  int hso_min_len = 2;
  int hso_max_len = 5;

  // Per-relation weight bounds for the fanout-weighted distance.
  std::array<double, kRelationCount> sussna_min{1.0, 1.0, 1.0, 1.0, 2.5};
  std::array<double, kRelationCount> sussna_max{2.0, 2.0, 2.0, 2.0, 2.5};
  double sussna_min_synonym = 0.0;
  double sussna_max_synonym = 0.0;

  std::array<double, kPathTypeCount> yp_alpha{1.0, 1.0, 1.0, 1.0};
  std::array<double, kPathTypeCount> yp_beta{0.7, 0.7, 0.7, 0.7};
  int yp_depth_limit = 12;  // gamma

  // Off: reciprocal-depth-sum similarity as published in the survey table.
  // On: node count divided by the reciprocal-depth sum, as a negated
  // distance.
  bool agi_textual_variant = false;

  void validate(const Taxonomy* t = nullptr) const;

  static MeasureConfig from_key_values(const KeyValues& kv);
  static bool consumes_key(const std::string& key);
};

struct SimilarityScore {
  double value = 0;
  Scale scale = Scale::similarity;
  Measure measure = Measure::edge;
  std::pair<SynsetId, SynsetId> sense_pair;
};

// Concept-level measures. Absent result means the two synsets cannot be
// compared (no shared hierarchy, or an undefined ratio); unknown ids
// throw Error.
std::optional<SimilarityScore> sim_edge(const Taxonomy& t, const SynsetId& a,
                                        const SynsetId& b);
std::optional<SimilarityScore> sim_lch(const Taxonomy& t, const SynsetId& a,
                                       const SynsetId& b,
                                       const MeasureConfig& cfg);
std::optional<SimilarityScore> sim_wup(const Taxonomy& t, const SynsetId& a,
                                       const SynsetId& b);
std::optional<SimilarityScore> sim_agi(const Taxonomy& t, const SynsetId& a,
                                       const SynsetId& b,
                                       const MeasureConfig& cfg);
std::optional<SimilarityScore> dist_sussna(const Taxonomy& t, const SynsetId& a,
                                           const SynsetId& b,
                                           const MeasureConfig& cfg);
std::optional<SimilarityScore> sim_res(const Taxonomy& t, const ICTable& ic,
                                       const SynsetId& a, const SynsetId& b);
std::optional<SimilarityScore> sim_jcn(const Taxonomy& t, const ICTable& ic,
                                       const SynsetId& a, const SynsetId& b);
std::optional<SimilarityScore> sim_lin(const Taxonomy& t, const ICTable& ic,
                                       const SynsetId& a, const SynsetId& b);

// Falls back to 0 when no path survives the depth limit, so always yields
// a score.
SimilarityScore sim_yp(const Taxonomy& t, const SynsetId& a, const SynsetId& b,
                       const MeasureConfig& cfg);

// Word-level, three tiers: 2C for identical surface forms, 2C-2 for
// synonym/antonym senses or compound containment, otherwise the best
// C - length - K*turns over paths of 2..5 links (floored at 0). Throws
// OovError when a word has no sense at all.
SimilarityScore sim_hso(const Taxonomy& t, const std::string& word_a,
                        const std::string& word_b, const MeasureConfig& cfg);

// Maximum over all sense pairs for the given part of speech (any part of
// speech when `pos` is absent). Returns the achieving sense pair. Absent
// result means every sense pair was a no-comparison. Throws OovError for
// a word with no senses.
std::optional<SimilarityScore> word_similarity(
    const Taxonomy& t, Measure measure, const std::string& word_a,
    const std::string& word_b, std::optional<PartOfSpeech> pos,
    const MeasureConfig& cfg, const ICTable* ic = nullptr);

}  // namespace semsim
