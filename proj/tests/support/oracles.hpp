#pragma once

// Independent reference computations for the test suites. Everything here
// works from the public Synset relation lists with its own traversal code,
// so it exercises none of the library's search paths.

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "semsim/infocontent.hpp"
#include "semsim/taxonomy.hpp"

namespace oracles {

inline constexpr int kUnreachable = 1 << 20;

// All-pairs link counts via Floyd-Warshall over the chosen relation types.
// Indexing follows Taxonomy::synsets() order.
std::vector<std::vector<int>> floyd_warshall(const semsim::Taxonomy& t,
                                             semsim::RelationMask allowed);

// Directed hypernym-link distances (row: from, column: ancestor).
std::vector<std::vector<int>> hypernym_up_matrix(const semsim::Taxonomy& t);

int index_of(const semsim::Taxonomy& t, const semsim::SynsetId& id);

int depth(const semsim::Taxonomy& t, const semsim::SynsetId& id);

std::optional<semsim::SynsetId> nearest_common_node(
    const semsim::Taxonomy& t, const semsim::SynsetId& a,
    const semsim::SynsetId& b);

// Distinct nodes reachable via one relation type, excluding the start.
std::set<semsim::SynsetId> reachable_set(const semsim::Taxonomy& t,
                                         const semsim::SynsetId& start,
                                         semsim::RelationType rel);

struct SimplePath {
  std::vector<semsim::SynsetId> nodes;
  std::vector<semsim::RelationType> relations;
  int direction_changes = 0;
};

// Every simple path of at most `max_len` links; recursive enumeration.
std::vector<SimplePath> simple_paths(const semsim::Taxonomy& t,
                                     const semsim::SynsetId& a,
                                     const semsim::SynsetId& b,
                                     semsim::RelationMask allowed, int max_len);

// Set-based frequency propagation: credit words, then sum each synset's
// credit over its descendant set.
semsim::ICTable corpus_ic(const semsim::Taxonomy& t,
                          const semsim::FrequencyTable& freq, double smoothing,
                          bool split_sense_counts);

// Rank correlation via O(n^2) counting ranks and the computational
// Pearson formula.
double spearman_bruteforce(const std::vector<double>& x,
                           const std::vector<double>& y);
double pearson_bruteforce(const std::vector<double>& x,
                          const std::vector<double>& y);

// 1 - 6*sum(d^2) / (n(n^2-1)); valid only without ties.
double spearman_closed_form(const std::vector<double>& x,
                            const std::vector<double>& y);

// Central finite difference of `f` with respect to every coordinate of a
// flat parameter vector.
std::vector<double> finite_difference(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> at, double step = 1e-5);

}  // namespace oracles
