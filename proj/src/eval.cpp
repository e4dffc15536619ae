#include "semsim/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

namespace semsim {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == '\t') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

const char* to_string(DatasetPos pos) {
  switch (pos) {
    case DatasetPos::noun: return "n";
    case DatasetPos::verb: return "v";
    case DatasetPos::mixed: return "mixed";
  }
  return "?";
}

std::optional<DatasetPos> dataset_pos_from_string(std::string_view s) {
  if (s == "n" || s == "noun") return DatasetPos::noun;
  if (s == "v" || s == "verb") return DatasetPos::verb;
  if (s == "mixed" || s == "all") return DatasetPos::mixed;
  return std::nullopt;
}

EvalDataset EvalDataset::load(std::istream& in, const std::string& name,
                              DatasetPos pos, bool rescale_0_4) {
  EvalDataset ds;
  ds.name = name;
  ds.pos = pos;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  std::set<std::pair<std::string, std::string>> seen;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      header_seen = true;  // first content line is the header
      continue;
    }
    auto fields = split_tabs(line);
    if (fields.size() != 3)
      throw ParseError("expected 'word1<TAB>word2<TAB>gold'", lineno);
    Pair p;
    p.word1 = fields[0];
    p.word2 = fields[1];
    try {
      std::size_t used = 0;
      p.gold = std::stod(fields[2], &used);
      if (used != fields[2].size()) throw std::invalid_argument(fields[2]);
    } catch (const std::exception&) {
      throw ParseError("malformed gold score '" + fields[2] + "'", lineno);
    }
    if (rescale_0_4) p.gold *= 2.5;
    if (p.gold < 0 || p.gold > 10)
      throw ParseError("gold score out of the 0-10 range", lineno);
    auto key = p.word1 <= p.word2 ? std::make_pair(p.word1, p.word2)
                                  : std::make_pair(p.word2, p.word1);
    if (!seen.insert(key).second)
      throw ParseError("duplicate pair " + p.word1 + "/" + p.word2, lineno);
    ds.pairs.push_back(std::move(p));
  }
  return ds;
}

EvalDataset EvalDataset::load_file(const std::string& path, DatasetPos pos,
                                   bool rescale_0_4) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open dataset: " + path);
  return load(in, std::filesystem::path(path).stem().string(), pos,
              rescale_0_4);
}

std::vector<double> fractional_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a,
                                                   std::size_t b) {
    return values[a] < values[b];
  });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    double shared = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
    i = j + 1;
  }
  return ranks;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error("correlation of unequal lengths");
  if (x.size() < 2) throw Error("correlation needs at least 2 points");
  const std::size_t n = x.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0 || syy == 0) throw Error("correlation of a constant list");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error("correlation of unequal lengths");
  auto rx = fractional_ranks(x);
  auto ry = fractional_ranks(y);
  return pearson(rx, ry);
}

EvalResult evaluate(const Backend& backend, const EvalDataset& ds,
                    MissingPolicy policy, int jobs) {
  if (ds.pairs.empty()) throw Error("empty dataset: " + ds.name);
  if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");

  const std::size_t n = ds.pairs.size();
  std::vector<BackendResult> results(n);
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i)
      results[i] = backend(ds.pairs[i].word1, ds.pairs[i].word2);
  } else {
    std::vector<std::thread> workers;
    std::size_t stride = static_cast<std::size_t>(jobs);
    for (std::size_t w = 0; w < stride; ++w) {
      workers.emplace_back([&, w] {
        for (std::size_t i = w; i < n; i += stride)
          results[i] = backend(ds.pairs[i].word1, ds.pairs[i].word2);
      });
    }
    for (auto& worker : workers) worker.join();
  }

  EvalResult out;
  out.dataset = ds.name;
  out.total = n;
  double floor_value = HUGE_VAL;
  for (const auto& result : results) {
    switch (result.outcome) {
      case PairOutcome::scored:
        ++out.scored;
        floor_value = std::min(floor_value, result.value);
        break;
      case PairOutcome::no_comparison:
        ++out.no_comparison;
        break;
      case PairOutcome::oov:
        ++out.oov;
        break;
    }
  }
  out.coverage = static_cast<double>(out.scored) / static_cast<double>(n);
  if (out.scored < 2) throw Error("fewer than 2 scored pairs");

  std::vector<double> gold, score;
  for (std::size_t i = 0; i < n; ++i) {
    if (results[i].outcome == PairOutcome::scored) {
      gold.push_back(ds.pairs[i].gold);
      score.push_back(results[i].value);
    } else if (policy == MissingPolicy::floor) {
      gold.push_back(ds.pairs[i].gold);
      score.push_back(floor_value);
    }
  }
  out.rho = spearman(score, gold);
  out.r = pearson(score, gold);
  return out;
}

const char* to_string(BucketCriterion c) {
  switch (c) {
    case BucketCriterion::frequency: return "frequency";
    case BucketCriterion::polysemy: return "polysemy";
    case BucketCriterion::intensity: return "intensity";
  }
  return "?";
}

void BucketSpec::validate() const {
  if (boundaries.size() < 2)
    throw Error("bucket spec needs at least one interval");
  for (std::size_t i = 1; i < boundaries.size(); ++i)
    if (!(boundaries[i - 1] < boundaries[i]))
      throw Error("bucket boundaries must be strictly ascending");
  if (!labels.empty() && labels.size() != interval_count())
    throw Error("bucket labels do not match the interval count");
}

std::string BucketSpec::label_of(std::size_t interval) const {
  if (!labels.empty()) return labels[interval];
  char buf[64];
  double hi = boundaries[interval + 1];
  if (std::isinf(hi))
    std::snprintf(buf, sizeof(buf), "[%g,inf)", boundaries[interval]);
  else
    std::snprintf(buf, sizeof(buf), "[%g,%g)", boundaries[interval], hi);
  return buf;
}

BucketSpec BucketSpec::preset(BucketCriterion criterion, DatasetPos pos) {
  constexpr double inf = HUGE_VAL;
  BucketSpec spec;
  spec.criterion = criterion;
  switch (criterion) {
    case BucketCriterion::frequency:
      if (pos == DatasetPos::verb) {
        spec.boundaries = {0, 1000, 5000, inf};
        spec.labels = {"[0,1000)", "[1000,5000)", "5000+"};
      } else if (pos == DatasetPos::noun) {
        spec.boundaries = {0, 3000, 10000, inf};
        spec.labels = {"[0,3000)", "[3000,10000)", "10000+"};
      } else {
        throw Error("frequency buckets need a noun or verb dataset");
      }
      break;
    case BucketCriterion::polysemy:
      if (pos == DatasetPos::verb) {
        spec.boundaries = {0, 3, 8, inf};
        spec.labels = {"<=2", "3-7", "8+"};
      } else if (pos == DatasetPos::noun) {
        spec.boundaries = {0, 3, 5, inf};
        spec.labels = {"<=2", "3-4", "5+"};
      } else {
        throw Error("polysemy buckets need a noun or verb dataset");
      }
      break;
    case BucketCriterion::intensity:
      // Top interval closed at 10: the boundary sits just past the scale.
      spec.boundaries = {0, 3, 6, std::nextafter(10.0, inf)};
      spec.labels = {"[0,3)", "[3,6)", "[6,10]"};
      break;
  }
  return spec;
}

BucketizeResult bucketize(const EvalDataset& ds, const BucketSpec& spec,
                          const FrequencyTable* freq,
                          const Taxonomy* taxonomy) {
  spec.validate();
  if (spec.criterion == BucketCriterion::frequency && !freq)
    throw Error("frequency bucketing needs a frequency table");
  if (spec.criterion == BucketCriterion::polysemy && !taxonomy)
    throw Error("polysemy bucketing needs a taxonomy");

  auto interval_of = [&](double value) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i + 1 < spec.boundaries.size(); ++i)
      if (value >= spec.boundaries[i] && value < spec.boundaries[i + 1])
        return i;
    return std::nullopt;
  };

  auto polysemy_degree = [&](const std::string& word) -> double {
    switch (ds.pos) {
      case DatasetPos::noun:
        return static_cast<double>(
            taxonomy->senses(word, PartOfSpeech::noun).size());
      case DatasetPos::verb:
        return static_cast<double>(
            taxonomy->senses(word, PartOfSpeech::verb).size());
      case DatasetPos::mixed:
        return static_cast<double>(taxonomy->senses_any_pos(word).size());
    }
    return 0;
  };

  BucketizeResult result;
  result.buckets.resize(spec.interval_count());
  for (std::size_t i = 0; i < spec.interval_count(); ++i) {
    result.buckets[i].label = spec.label_of(i);
    result.buckets[i].lo = spec.boundaries[i];
    result.buckets[i].hi = spec.boundaries[i + 1];
    result.buckets[i].subset.name = ds.name + ":" + result.buckets[i].label;
    result.buckets[i].subset.pos = ds.pos;
  }

  for (const auto& pair : ds.pairs) {
    std::optional<std::size_t> target;
    if (spec.criterion == BucketCriterion::intensity) {
      target = interval_of(pair.gold);
    } else {
      double s1, s2;
      if (spec.criterion == BucketCriterion::frequency) {
        s1 = freq->count_of(pair.word1);
        s2 = freq->count_of(pair.word2);
      } else {
        s1 = polysemy_degree(pair.word1);
        s2 = polysemy_degree(pair.word2);
      }
      auto i1 = interval_of(s1);
      auto i2 = interval_of(s2);
      // Both words' statistics must sit in the same interval.
      if (i1 && i2 && *i1 == *i2) target = i1;
    }
    if (target)
      result.buckets[*target].subset.pairs.push_back(pair);
    else
      ++result.excluded;
  }
  return result;
}

double mcr(std::span<const double> noun_rhos,
           std::span<const double> verb_rhos) {
  if (noun_rhos.empty() || verb_rhos.empty())
    throw Error("mean correlation ratio needs both noun and verb results");
  double noun_mean =
      std::accumulate(noun_rhos.begin(), noun_rhos.end(), 0.0) /
      static_cast<double>(noun_rhos.size());
  double verb_mean =
      std::accumulate(verb_rhos.begin(), verb_rhos.end(), 0.0) /
      static_cast<double>(verb_rhos.size());
  if (verb_mean == 0) throw Error("verb mean correlation is zero");
  return noun_mean / verb_mean;
}

std::pair<double, double> upper_bound(std::span<const double> ratings_a,
                                      std::span<const double> ratings_b) {
  return {pearson(ratings_a, ratings_b), spearman(ratings_a, ratings_b)};
}

std::string format_number(double value, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
  return buf;
}

void write_report_tsv(std::ostream& out, const EvalReport& report,
                      int precision) {
  const EvalResult& r = report.overall;
  out << "dataset\t" << r.dataset << '\n';
  out << "pairs\t" << r.total << '\n';
  out << "scored\t" << r.scored << '\n';
  out << "coverage\t" << format_number(r.coverage, precision) << '\n';
  out << "oov\t" << r.oov << '\n';
  out << "no_comparison\t" << r.no_comparison << '\n';
  out << "spearman\t" << format_number(r.rho, precision) << '\n';
  out << "pearson\t" << format_number(r.r, precision) << '\n';
  if (report.mcr)
    out << "mcr\t" << format_number(*report.mcr, precision) << '\n';
  for (const auto& bucket : report.buckets) {
    out << "bucket\t" << bucket.label << '\t' << bucket.pairs << '\t'
        << (bucket.valid ? format_number(bucket.rho, precision) : "na")
        << '\n';
  }
  if (!report.buckets.empty())
    out << "bucket_excluded\t" << report.bucket_excluded << '\n';
}

void write_report_text(std::ostream& out, const EvalReport& report,
                       int precision) {
  const EvalResult& r = report.overall;
  char line[256];
  std::snprintf(line, sizeof(line), "%-16s %s", "dataset", r.dataset.c_str());
  out << line << '\n';
  std::snprintf(line, sizeof(line), "%-16s %zu scored of %zu (coverage %s)",
                "pairs", r.scored, r.total,
                format_number(r.coverage, precision).c_str());
  out << line << '\n';
  std::snprintf(line, sizeof(line), "%-16s oov %zu, no-comparison %zu",
                "misses", r.oov, r.no_comparison);
  out << line << '\n';
  std::snprintf(line, sizeof(line), "%-16s %s", "spearman",
                format_number(r.rho, precision).c_str());
  out << line << '\n';
  std::snprintf(line, sizeof(line), "%-16s %s", "pearson",
                format_number(r.r, precision).c_str());
  out << line << '\n';
  if (report.mcr) {
    std::snprintf(line, sizeof(line), "%-16s %s", "mcr",
                  format_number(*report.mcr, precision).c_str());
    out << line << '\n';
  }
  if (!report.buckets.empty()) {
    out << '\n';
    std::snprintf(line, sizeof(line), "%-16s %8s %10s", "bucket", "pairs",
                  "spearman");
    out << line << '\n';
    for (const auto& bucket : report.buckets) {
      std::snprintf(line, sizeof(line), "%-16s %8zu %10s",
                    bucket.label.c_str(), bucket.pairs,
                    bucket.valid ? format_number(bucket.rho, precision).c_str()
                                 : "na");
      out << line << '\n';
    }
    std::snprintf(line, sizeof(line), "%-16s %8zu", "excluded",
                  report.bucket_excluded);
    out << line << '\n';
  }
}

}  // namespace semsim
