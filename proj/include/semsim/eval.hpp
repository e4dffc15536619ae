#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "semsim/infocontent.hpp"
#include "semsim/taxonomy.hpp"

namespace semsim {

enum class DatasetPos { noun, verb, mixed };

const char* to_string(DatasetPos pos);
std::optional<DatasetPos> dataset_pos_from_string(std::string_view s);

// Gold human similarity judgements on a 0-10 scale. File format: TSV
// `word1<TAB>word2<TAB>gold` with one header line; `rescale_0_4` maps
// legacy 0-4 scores onto 0-10.
struct EvalDataset {
  struct Pair {
    std::string word1;
    std::string word2;
    double gold = 0;
  };

  std::string name;
  DatasetPos pos = DatasetPos::mixed;
  std::vector<Pair> pairs;

  static EvalDataset load(std::istream& in, const std::string& name,
                          DatasetPos pos, bool rescale_0_4 = false);
  static EvalDataset load_file(const std::string& path, DatasetPos pos,
                               bool rescale_0_4 = false);
};

// Average-rank fractional ranks (1-based); ties share the mean rank.
std::vector<double> fractional_ranks(std::span<const double> values);

// Rank correlation with average-tie handling. Throws Error on length
// mismatch, length < 2, or a constant list.
double spearman(std::span<const double> x, std::span<const double> y);
// Product-moment correlation, same preconditions.
double pearson(std::span<const double> x, std::span<const double> y);

enum class PairOutcome { scored, no_comparison, oov };

struct BackendResult {
  PairOutcome outcome = PairOutcome::scored;
  double value = 0;

  static BackendResult scored(double v) { return {PairOutcome::scored, v}; }
  static BackendResult no_comparison() {
    return {PairOutcome::no_comparison, 0};
  }
  static BackendResult oov() { return {PairOutcome::oov, 0}; }
};

using Backend =
    std::function<BackendResult(const std::string&, const std::string&)>;

// skip: unscored pairs are left out of the correlation and counted.
// floor: unscored pairs receive the backend's minimum observed score.
enum class MissingPolicy { skip, floor };

struct EvalResult {
  std::string dataset;
  double rho = 0;
  double r = 0;
  std::size_t total = 0;
  std::size_t scored = 0;
  std::size_t no_comparison = 0;
  std::size_t oov = 0;
  double coverage = 0;  // scored / total
};

// Scores every pair (optionally with `jobs` worker threads; aggregation is
// order-independent) and correlates against gold. Throws Error when fewer
// than 2 pairs could be scored.
EvalResult evaluate(const Backend& backend, const EvalDataset& ds,
                    MissingPolicy policy = MissingPolicy::skip, int jobs = 1);

enum class BucketCriterion { frequency, polysemy, intensity };

const char* to_string(BucketCriterion c);

// Ascending boundaries defining half-open intervals [b0,b1), [b1,b2), ...
// For frequency and polysemy a pair joins an interval only when both
// words' statistics fall inside it; intensity buckets on the pair's gold
// score directly.
struct BucketSpec {
  BucketCriterion criterion = BucketCriterion::intensity;
  std::vector<double> boundaries;
  std::vector<std::string> labels;  // optional, one per interval

  void validate() const;
  std::size_t interval_count() const { return boundaries.size() - 1; }
  std::string label_of(std::size_t interval) const;

  // Presets mirroring the shipped evaluation protocol. Frequency and
  // polysemy presets differ between nouns and verbs; intensity covers the
  // whole 0-10 scale with the top interval closed.
  static BucketSpec preset(BucketCriterion criterion, DatasetPos pos);
};

struct Bucket {
  std::string label;
  double lo = 0;
  double hi = 0;
  EvalDataset subset;
};

struct BucketizeResult {
  std::vector<Bucket> buckets;
  std::size_t excluded = 0;  // pairs whose words straddle intervals
};

BucketizeResult bucketize(const EvalDataset& ds, const BucketSpec& spec,
                          const FrequencyTable* freq = nullptr,
                          const Taxonomy* taxonomy = nullptr);

// Mean noun correlation over mean verb correlation.
double mcr(std::span<const double> noun_rhos, std::span<const double> verb_rhos);

// Pearson and Spearman agreement between two groups' mean ratings over
// the same pairs.
std::pair<double, double> upper_bound(std::span<const double> ratings_a,
                                      std::span<const double> ratings_b);

struct BucketRow {
  std::string label;
  std::size_t pairs = 0;
  double rho = 0;
  bool valid = false;  // false when the bucket was too small to correlate
};

struct EvalReport {
  EvalResult overall;
  std::vector<BucketRow> buckets;
  std::size_t bucket_excluded = 0;
  std::optional<double> mcr;
};

void write_report_tsv(std::ostream& out, const EvalReport& report,
                      int precision = 6);
void write_report_text(std::ostream& out, const EvalReport& report,
                       int precision = 6);

// Shared numeric formatting: significant-digit shortest form.
std::string format_number(double value, int precision = 6);

}  // namespace semsim
