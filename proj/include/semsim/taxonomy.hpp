#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "semsim/error.hpp"

namespace semsim {

using SynsetId = std::string;

enum class RelationType : std::uint8_t {
  hypernym = 0,
  hyponym = 1,
  holonym = 2,
  meronym = 3,
  antonym = 4,
};

inline constexpr int kRelationCount = 5;

RelationType inverse_of(RelationType r);
const char* to_string(RelationType r);
std::optional<RelationType> relation_from_string(std::string_view s);

enum class PartOfSpeech : std::uint8_t { noun = 0, verb = 1, adjective = 2 };

inline constexpr int kPosCount = 3;

const char* to_string(PartOfSpeech pos);
std::optional<PartOfSpeech> pos_from_string(std::string_view s);

// Bit set over RelationType, used to restrict path searches.
using RelationMask = unsigned;

constexpr RelationMask relation_bit(RelationType r) {
  return 1u << static_cast<unsigned>(r);
}

inline constexpr RelationMask kIsaRelations =
    relation_bit(RelationType::hypernym) | relation_bit(RelationType::hyponym);
inline constexpr RelationMask kAllRelations = (1u << kRelationCount) - 1;

struct Synset {
  SynsetId id;
  PartOfSpeech pos = PartOfSpeech::noun;
  std::vector<std::string> lemmas;
  std::string gloss;
  std::vector<std::pair<RelationType, SynsetId>> relations;

  bool operator==(const Synset&) const = default;
};

// A concrete path found by shortest_path(). `length` counts links, so
// length == nodes.size() - 1 == relation_seq.size(). `ncn` is the deepest
// node on the path that is a (reflexive) hypernym ancestor of both
// endpoints, when one exists.
struct PathResult {
  int length = 0;
  std::vector<SynsetId> nodes;
  std::vector<RelationType> relation_seq;
  int direction_changes = 0;
  std::optional<SynsetId> ncn;
};

// Immutable IS-A/HAS-A semantic network. Parsing validates the whole
// graph (resolvable targets, acyclic hypernyms, root reachability) and
// materializes missing inverse edges, so every stored relation can be
// walked in both directions. All queries are pure and thread-safe.
class Taxonomy {
 public:
  // Input format (UTF-8, line based, lines whose first non-blank
  // character is '#' are comments):
  //   synset <id> <pos> <lemma1,lemma2,...>
  //     gloss <free text to end of line>
  //     rel <hypernym|hyponym|holonym|meronym|antonym> <target-id>
  static Taxonomy parse(std::istream& in);
  static Taxonomy parse_file(const std::string& path);

  std::size_t size() const { return synsets_.size(); }
  bool contains(const SynsetId& id) const;
  const Synset& synset(const SynsetId& id) const;
  const std::vector<Synset>& synsets() const { return synsets_; }
  const std::vector<SynsetId>& roots() const { return roots_; }
  int max_depth() const { return max_depth_; }

  // Synsets listing `word` as a lemma under `pos`, in file order.
  const std::vector<SynsetId>& senses(const std::string& word,
                                      PartOfSpeech pos) const;
  // Senses across all parts of speech (noun, verb, adjective order).
  std::vector<SynsetId> senses_any_pos(const std::string& word) const;

  // Node-counted depth: 1 + minimum hypernym links to any root.
  int depth(const SynsetId& id) const;

  // Number of edges of type `r` leaving `id`.
  int local_density(const SynsetId& id, RelationType r) const;

  // Breadth-first shortest path over edges whose type is in `allowed`.
  // `max_length` < 0 means unlimited. Returns absent when no path exists
  // within the bound.
  std::optional<PathResult> shortest_path(const SynsetId& a, const SynsetId& b,
                                          RelationMask allowed,
                                          int max_length = -1) const;

  // Nearest common node: the reflexive hypernym ancestor minimizing the
  // summed upward distances, ties broken by greater depth then smaller
  // id. Absent when the synsets share no ancestor.
  std::optional<SynsetId> ncn(const SynsetId& a, const SynsetId& b) const;

  // Reflexive hypernym reachability.
  bool subsumes(const SynsetId& ancestor, const SynsetId& descendant) const;

  // Visits every simple path from `a` to `b` whose link count is at most
  // `max_length`, in a deterministic order. Reported paths carry no ncn.
  void for_each_simple_path(
      const SynsetId& a, const SynsetId& b, RelationMask allowed,
      int max_length,
      const std::function<void(const PathResult&)>& visit) const;

  // Writes the taxonomy back in the input format; reparsing the output
  // yields an identical taxonomy.
  void serialize(std::ostream& out) const;

  bool operator==(const Taxonomy& other) const;

 private:
  struct Edge {
    RelationType rel;
    std::int32_t target;
  };

  std::int32_t index_of(const SynsetId& id) const;
  std::int32_t require_index(const SynsetId& id) const;
  void finalize();  // builds adjacency, checks graph invariants, depths
  std::vector<std::int32_t> hypernym_up_distances(std::int32_t from) const;
  std::optional<PathResult> build_path(
      const std::vector<std::int32_t>& nodes,
      const std::vector<RelationType>& rels) const;

  std::vector<Synset> synsets_;  // file order
  std::vector<std::vector<Edge>> adjacency_;
  std::unordered_map<std::string, std::int32_t> index_;
  std::unordered_map<std::string, std::array<std::vector<SynsetId>, kPosCount>>
      lemma_index_;
  std::vector<SynsetId> roots_;
  std::vector<int> depths_;
  int max_depth_ = 0;
};

// Counts transitions between the direction classes up = {hypernym,
// holonym}, down = {hyponym, meronym}, horizontal = {antonym}.
int count_direction_changes(const std::vector<RelationType>& relation_seq);

}  // namespace semsim
