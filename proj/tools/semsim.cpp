// semsim — batch front end for the similarity toolkit.
//
// Exit codes: 0 success, 1 usage error, 2 data error. Scores go to
// standard output; machine-readable error tokens (usage_error,
// parse_error, data_error, oov, no_comparison) go to standard error.

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "semsim/config.hpp"
#include "semsim/counterfit.hpp"
#include "semsim/embeddings.hpp"
#include "semsim/error.hpp"
#include "semsim/eval.hpp"
#include "semsim/infocontent.hpp"
#include "semsim/measures.hpp"
#include "semsim/taxonomy.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string lowercased(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

void require_readable(const std::string& path) {
  std::ifstream probe(path);
  if (!probe) throw semsim::Error("cannot read file: " + path);
}

semsim::KeyValues load_config(const std::string& path) {
  if (path.empty()) return {};
  require_readable(path);
  auto kv = semsim::parse_key_values_file(path);
  for (const auto& [key, value] : kv) {
    (void)value;
    if (!semsim::MeasureConfig::consumes_key(key) &&
        !semsim::RetrofitConfig::consumes_key(key))
      throw UsageError("unknown configuration key: " + key);
  }
  return kv;
}

std::string sense_token(const semsim::Taxonomy& t, const std::string& word,
                        std::optional<semsim::PartOfSpeech> pos,
                        const semsim::SynsetId& synset) {
  auto locate = [&](const std::vector<semsim::SynsetId>& ids)
      -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < ids.size(); ++i)
      if (ids[i] == synset) return i;
    return std::nullopt;
  };
  if (pos) {
    if (auto i = locate(t.senses(word, *pos)))
      return word + "#" + std::to_string(*i + 1);
  } else if (auto i = locate(t.senses_any_pos(word))) {
    return word + "#" + std::to_string(*i + 1);
  }
  return synset;  // fall back to the raw id
}

struct SimArgs {
  std::string taxonomy_path;
  std::string word1;
  std::string word2;
  std::string measure_tag = "edge";
  std::string pos_tag = "n";
  std::string config_path;
  std::string ic_path;
  int precision = 6;
};

int run_sim(const SimArgs& args) {
  auto measure = semsim::measure_from_string(args.measure_tag);
  if (!measure) throw UsageError("unknown measure: " + args.measure_tag);
  auto pos = semsim::pos_from_string(args.pos_tag);
  if (!pos) throw UsageError("unknown part of speech: " + args.pos_tag);
  if (semsim::measure_needs_ic(*measure) && args.ic_path.empty())
    throw UsageError(args.measure_tag + " needs --ic");

  require_readable(args.taxonomy_path);
  auto cfg = semsim::MeasureConfig::from_key_values(load_config(args.config_path));
  semsim::Taxonomy t = semsim::Taxonomy::parse_file(args.taxonomy_path);
  cfg.validate(&t);

  std::optional<semsim::ICTable> ic;
  if (!args.ic_path.empty()) {
    require_readable(args.ic_path);
    ic = semsim::ICTable::load_file(args.ic_path);
  }

  std::string word1 = lowercased(args.word1);
  std::string word2 = lowercased(args.word2);
  auto score = semsim::word_similarity(t, *measure, word1, word2, *pos, cfg,
                                       ic ? &*ic : nullptr);
  if (!score) {
    std::cerr << "no_comparison: " << word1 << " and " << word2
              << " share no hierarchy\n";
    return kExitData;
  }
  std::cout << semsim::format_number(score->value, args.precision) << '\t'
            << sense_token(t, word1, *pos, score->sense_pair.first) << '\t'
            << sense_token(t, word2, *pos, score->sense_pair.second) << '\n';
  return 0;
}

struct ValidateArgs {
  std::string taxonomy_path;
};

int run_taxo_validate(const ValidateArgs& args) {
  require_readable(args.taxonomy_path);
  semsim::Taxonomy t = semsim::Taxonomy::parse_file(args.taxonomy_path);
  std::cout << "ok\tsynsets=" << t.size() << "\troots=" << t.roots().size()
            << "\tmax_depth=" << t.max_depth() << '\n';
  return 0;
}

struct IcBuildArgs {
  std::string taxonomy_path;
  std::string freq_path;
  bool intrinsic = false;
  double smoothing = 1.0;
  bool full_credit = false;
  std::string out_path;
};

int run_ic_build(const IcBuildArgs& args) {
  if (args.intrinsic == !args.freq_path.empty())
    throw UsageError("pass exactly one of --freq or --intrinsic");
  require_readable(args.taxonomy_path);
  semsim::Taxonomy t = semsim::Taxonomy::parse_file(args.taxonomy_path);

  semsim::ICTable table;
  if (args.intrinsic) {
    table = semsim::build_intrinsic_ic(t);
  } else {
    require_readable(args.freq_path);
    auto freq = semsim::FrequencyTable::parse_file(args.freq_path);
    table = semsim::build_corpus_ic(t, freq, args.smoothing,
                                    !args.full_credit);
  }

  if (args.out_path.empty()) {
    table.save(std::cout);
  } else {
    std::ofstream out(args.out_path);
    if (!out) throw semsim::Error("cannot write: " + args.out_path);
    table.save(out);
    std::cout << "ok\tsynsets=" << table.ic.size()
              << "\tskipped=" << table.skipped_words << '\n';
  }
  return 0;
}

struct RetrofitArgs {
  std::string vectors_path;
  std::string syn_path;
  std::string ant_path;
  std::string out_path;
  std::string config_path;
  int precision = 6;
};

int run_retrofit(const RetrofitArgs& args) {
  if (args.syn_path.empty() && args.ant_path.empty())
    throw UsageError("pass --syn and/or --ant");
  require_readable(args.vectors_path);
  auto cfg =
      semsim::RetrofitConfig::from_key_values(load_config(args.config_path));
  cfg.validate();

  semsim::VectorSpace space = semsim::VectorSpace::load_file(args.vectors_path);
  std::vector<semsim::WordPair> syn, ant;
  if (!args.syn_path.empty()) {
    require_readable(args.syn_path);
    syn = semsim::ConstraintSet::load_pairs_file(args.syn_path);
  }
  if (!args.ant_path.empty()) {
    require_readable(args.ant_path);
    ant = semsim::ConstraintSet::load_pairs_file(args.ant_path);
  }
  auto constraints = semsim::ConstraintSet::from_pairs(syn, ant, space);

  auto report = semsim::counterfit(space, constraints, cfg);

  std::ofstream out(args.out_path);
  if (!out) throw semsim::Error("cannot write: " + args.out_path);
  report.final_space.save(out);

  for (std::size_t e = 0; e < report.loss_per_epoch.size(); ++e) {
    const auto& loss = report.loss_per_epoch[e];
    std::cout << (e + 1) << '\t'
              << semsim::format_number(loss.syn, args.precision) << '\t'
              << semsim::format_number(loss.ant, args.precision) << '\t'
              << semsim::format_number(loss.preserve, args.precision) << '\t'
              << semsim::format_number(loss.total, args.precision) << '\n';
  }
  std::cout << "dropped_pairs\t" << report.dropped_pairs << '\n';
  return 0;
}

struct EvalArgs {
  std::string dataset_path;
  std::string backend;
  std::string taxonomy_path;
  std::string ic_path;
  std::string vectors_path;
  std::string freq_path;
  std::string config_path;
  std::string pos_tag = "mixed";
  std::string policy_tag = "skip";
  std::string buckets;
  std::string format = "text";
  int jobs = 1;
  bool rescale_0_4 = false;
  int precision = 6;
};

int run_eval(const EvalArgs& args) {
  auto pos = semsim::dataset_pos_from_string(args.pos_tag);
  if (!pos) throw UsageError("unknown dataset pos: " + args.pos_tag);
  semsim::MissingPolicy policy;
  if (args.policy_tag == "skip") {
    policy = semsim::MissingPolicy::skip;
  } else if (args.policy_tag == "floor") {
    policy = semsim::MissingPolicy::floor;
  } else {
    throw UsageError("unknown policy: " + args.policy_tag);
  }
  if (args.format != "text" && args.format != "tsv")
    throw UsageError("unknown report format: " + args.format);
  if (args.jobs < 1) throw UsageError("--jobs must be >= 1");

  // every supplied path is checked before any parsing starts
  for (const std::string& path :
       {args.dataset_path, args.taxonomy_path, args.ic_path,
        args.vectors_path, args.freq_path, args.config_path})
    if (!path.empty()) require_readable(path);
  semsim::EvalDataset ds =
      semsim::EvalDataset::load_file(args.dataset_path, *pos, args.rescale_0_4);
  for (auto& pair : ds.pairs) {
    pair.word1 = lowercased(pair.word1);
    pair.word2 = lowercased(pair.word2);
  }

  std::optional<semsim::PartOfSpeech> word_pos;
  if (*pos == semsim::DatasetPos::noun) word_pos = semsim::PartOfSpeech::noun;
  if (*pos == semsim::DatasetPos::verb) word_pos = semsim::PartOfSpeech::verb;

  // Assemble the backend.
  std::optional<semsim::Taxonomy> taxonomy;
  std::optional<semsim::ICTable> ic;
  std::optional<semsim::VectorSpace> vectors;
  auto need_taxonomy = [&] {
    if (taxonomy) return;
    if (args.taxonomy_path.empty()) throw UsageError("backend needs --taxonomy");
    require_readable(args.taxonomy_path);
    taxonomy = semsim::Taxonomy::parse_file(args.taxonomy_path);
  };
  auto need_vectors = [&] {
    if (vectors) return;
    if (args.vectors_path.empty()) throw UsageError("backend needs --vectors");
    require_readable(args.vectors_path);
    vectors = semsim::VectorSpace::load_file(args.vectors_path);
  };

  semsim::Backend backend;
  if (auto measure = semsim::measure_from_string(args.backend)) {
    need_taxonomy();
    auto cfg =
        semsim::MeasureConfig::from_key_values(load_config(args.config_path));
    cfg.validate(&*taxonomy);
    if (semsim::measure_needs_ic(*measure)) {
      if (args.ic_path.empty())
        throw UsageError(args.backend + " needs --ic");
      require_readable(args.ic_path);
      ic = semsim::ICTable::load_file(args.ic_path);
    }
    backend = [&t = *taxonomy, measure = *measure, word_pos, cfg,
               table = ic ? &*ic : nullptr](const std::string& a,
                                            const std::string& b) {
      try {
        auto score = semsim::word_similarity(t, measure, a, b, word_pos, cfg,
                                             table);
        if (!score) return semsim::BackendResult::no_comparison();
        return semsim::BackendResult::scored(score->value);
      } catch (const semsim::OovError&) {
        return semsim::BackendResult::oov();
      }
    };
  } else if (args.backend == "cosine") {
    need_vectors();
    backend = [&vs = *vectors](const std::string& a, const std::string& b) {
      auto c = semsim::word_cosine(vs, a, b);
      return c ? semsim::BackendResult::scored(*c)
               : semsim::BackendResult::oov();
    };
  } else if (args.backend == "gloss") {
    need_vectors();
    need_taxonomy();
    backend = [&vs = *vectors, &t = *taxonomy, word_pos](
                  const std::string& a, const std::string& b) {
      auto c = semsim::sense_max_similarity(vs, t, a, b, word_pos);
      return c ? semsim::BackendResult::scored(*c)
               : semsim::BackendResult::oov();
    };
  } else {
    throw UsageError("unknown backend: " + args.backend);
  }

  semsim::EvalReport report;
  report.overall = semsim::evaluate(backend, ds, policy, args.jobs);

  if (!args.buckets.empty()) {
    semsim::BucketCriterion criterion;
    if (args.buckets == "frequency") {
      criterion = semsim::BucketCriterion::frequency;
    } else if (args.buckets == "polysemy") {
      criterion = semsim::BucketCriterion::polysemy;
    } else if (args.buckets == "intensity") {
      criterion = semsim::BucketCriterion::intensity;
    } else {
      throw UsageError("unknown bucket preset: " + args.buckets);
    }
    std::optional<semsim::FrequencyTable> freq;
    if (criterion == semsim::BucketCriterion::frequency) {
      if (args.freq_path.empty())
        throw UsageError("frequency buckets need --freq");
      require_readable(args.freq_path);
      freq = semsim::FrequencyTable::parse_file(args.freq_path);
    }
    if (criterion == semsim::BucketCriterion::polysemy) need_taxonomy();
    auto spec = semsim::BucketSpec::preset(criterion, *pos);
    auto buckets = semsim::bucketize(ds, spec, freq ? &*freq : nullptr,
                                     taxonomy ? &*taxonomy : nullptr);
    report.bucket_excluded = buckets.excluded;
    for (const auto& bucket : buckets.buckets) {
      semsim::BucketRow row;
      row.label = bucket.label;
      row.pairs = bucket.subset.pairs.size();
      if (bucket.subset.pairs.size() >= 2) {
        try {
          row.rho = semsim::evaluate(backend, bucket.subset, policy,
                                     args.jobs)
                        .rho;
          row.valid = true;
        } catch (const semsim::Error&) {
          row.valid = false;  // too few scorable pairs or constant lists
        }
      }
      report.buckets.push_back(row);
    }
  }

  if (args.format == "tsv")
    semsim::write_report_tsv(std::cout, report, args.precision);
  else
    semsim::write_report_text(std::cout, report, args.precision);
  return 0;
}

struct UpperBoundArgs {
  std::string ratings_a;
  std::string ratings_b;
  int precision = 6;
};

int run_upper_bound(const UpperBoundArgs& args) {
  require_readable(args.ratings_a);
  require_readable(args.ratings_b);
  auto a = semsim::EvalDataset::load_file(args.ratings_a, semsim::DatasetPos::mixed);
  auto b = semsim::EvalDataset::load_file(args.ratings_b, semsim::DatasetPos::mixed);

  auto key = [](const semsim::EvalDataset::Pair& p) {
    return p.word1 <= p.word2 ? p.word1 + "\t" + p.word2
                              : p.word2 + "\t" + p.word1;
  };
  std::map<std::string, double> b_scores;
  for (const auto& pair : b.pairs) b_scores[key(pair)] = pair.gold;

  std::vector<double> xs, ys;
  for (const auto& pair : a.pairs) {
    auto it = b_scores.find(key(pair));
    if (it == b_scores.end()) continue;
    xs.push_back(pair.gold);
    ys.push_back(it->second);
  }
  if (xs.size() < 2)
    throw semsim::Error("fewer than 2 shared pairs between the rating files");
  auto [r, rho] = semsim::upper_bound(xs, ys);
  std::cout << semsim::format_number(r, args.precision) << '\t'
            << semsim::format_number(rho, args.precision) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semsim: taxonomy and vector-space word similarity toolkit"};
  app.require_subcommand(1);

  SimArgs sim_args;
  auto* sim = app.add_subcommand("sim", "score one word pair");
  sim->add_option("taxonomy", sim_args.taxonomy_path, "taxonomy file")
      ->required();
  sim->add_option("word1", sim_args.word1)->required();
  sim->add_option("word2", sim_args.word2)->required();
  sim->add_option("--measure", sim_args.measure_tag,
                  "edge|lch|wup|agi|sus|hso|yp|res|jcn|lin");
  sim->add_option("--pos", sim_args.pos_tag, "n|v|a");
  sim->add_option("--config", sim_args.config_path, "key=value overrides");
  sim->add_option("--ic", sim_args.ic_path, "information-content table");
  sim->add_option("--precision", sim_args.precision, "significant digits");

  ValidateArgs validate_args;
  auto* validate =
      app.add_subcommand("taxo-validate", "parse and check a taxonomy");
  validate->add_option("taxonomy", validate_args.taxonomy_path)->required();

  IcBuildArgs ic_args;
  auto* ic_build =
      app.add_subcommand("ic-build", "build an information-content table");
  ic_build->add_option("taxonomy", ic_args.taxonomy_path)->required();
  ic_build->add_option("--freq", ic_args.freq_path, "word frequency TSV");
  ic_build->add_flag("--intrinsic", ic_args.intrinsic,
                     "derive from taxonomy structure only");
  ic_build->add_option("--smoothing", ic_args.smoothing,
                       "per-synset additive smoothing");
  ic_build->add_flag("--full-credit", ic_args.full_credit,
                     "credit full counts to every sense");
  ic_build->add_option("-o,--out", ic_args.out_path, "output path");

  RetrofitArgs retrofit_args;
  auto* retrofit =
      app.add_subcommand("retrofit", "counter-fit vectors with constraints");
  retrofit->add_option("vectors", retrofit_args.vectors_path)->required();
  retrofit->add_option("--syn", retrofit_args.syn_path, "synonym pairs TSV");
  retrofit->add_option("--ant", retrofit_args.ant_path, "antonym pairs TSV");
  retrofit->add_option("-o,--out", retrofit_args.out_path)->required();
  retrofit->add_option("--config", retrofit_args.config_path);
  retrofit->add_option("--precision", retrofit_args.precision);

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "score a backend against gold");
  eval->add_option("dataset", eval_args.dataset_path)->required();
  eval->add_option("--backend", eval_args.backend,
                   "measure tag, cosine, or gloss")
      ->required();
  eval->add_option("--taxonomy", eval_args.taxonomy_path);
  eval->add_option("--ic", eval_args.ic_path);
  eval->add_option("--vectors", eval_args.vectors_path);
  eval->add_option("--freq", eval_args.freq_path);
  eval->add_option("--config", eval_args.config_path);
  eval->add_option("--pos", eval_args.pos_tag, "n|v|mixed");
  eval->add_option("--policy", eval_args.policy_tag, "skip|floor");
  eval->add_option("--buckets", eval_args.buckets,
                   "frequency|polysemy|intensity");
  eval->add_option("--format", eval_args.format, "text|tsv");
  eval->add_option("--jobs", eval_args.jobs, "worker threads");
  eval->add_flag("--rescale-0-4", eval_args.rescale_0_4,
                 "gold scores are on a 0-4 scale");
  eval->add_option("--precision", eval_args.precision);

  UpperBoundArgs ub_args;
  auto* ub = app.add_subcommand(
      "upper-bound", "agreement between two groups' mean ratings");
  ub->add_option("ratings_a", ub_args.ratings_a)->required();
  ub->add_option("ratings_b", ub_args.ratings_b)->required();
  ub->add_option("--precision", ub_args.precision);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage_error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*sim) return run_sim(sim_args);
    if (*validate) return run_taxo_validate(validate_args);
    if (*ic_build) return run_ic_build(ic_args);
    if (*retrofit) return run_retrofit(retrofit_args);
    if (*eval) return run_eval(eval_args);
    if (*ub) return run_upper_bound(ub_args);
  } catch (const UsageError& e) {
    std::cerr << "usage_error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage_error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const semsim::OovError& e) {
    std::cerr << "oov: " << e.what() << '\n';
    return kExitData;
  } catch (const semsim::ParseError& e) {
    std::cerr << "parse_error: " << e.what() << '\n';
    return kExitData;
  } catch (const semsim::Error& e) {
    std::cerr << "data_error: " << e.what() << '\n';
    return kExitData;
  }
  return 0;
}
