#pragma once

#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "stancekit/default_lexicon.hpp"
#include "stancekit/hashtag_graph.hpp"
#include "stancekit/ingest.hpp"
#include "stancekit/lexicon.hpp"
#include "stancekit/lingstats.hpp"
#include "stancekit/log.hpp"
#include "stancekit/netmetrics.hpp"
#include "stancekit/propagation.hpp"
#include "stancekit/report.hpp"
#include "stancekit/synth.hpp"
#include "stancekit/util.hpp"

namespace stancekit {

/// One config drives every stage; paper-default knobs are gamma=50 and
/// alpha=0.05. Individual CLI flags override file values.
struct PipelineConfig {
  std::vector<std::string> inputs;
  std::string seeds_path;
  std::string lexicons_path;  // empty: use the built-in default lexicon
  std::string out_dir = "out";
  long long gamma = 50;
  double alpha = 0.05;
  std::vector<std::string> lemmas = {"vacc", "vax"};
  std::size_t min_user_tweets = 1;
  bool dedupe_output = false;      // ingest also dedupes the exported corpus
  bool raw_denominators = false;   // linguistic stats on raw instead of deduped tweets
  bool literal_dilution = false;   // propagation averages over all neighbor weights
  bool dedup_for_networks = false; // networks from the deduped corpus
};

inline PipelineConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path.string());
  nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw std::runtime_error("config file is not valid JSON: " + path.string());

  static const std::set<std::string> known{
      "inputs", "seeds", "lexicons", "out_dir", "gamma", "alpha", "lemmas",
      "min_user_tweets", "dedupe_output", "raw_denominators", "literal_dilution",
      "dedup_for_networks"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.count(key)) log_warn("config: ignoring unknown key \"" + key + "\"");
  }

  PipelineConfig cfg;
  if (doc.contains("inputs")) cfg.inputs = doc["inputs"].get<std::vector<std::string>>();
  cfg.seeds_path = doc.value("seeds", cfg.seeds_path);
  cfg.lexicons_path = doc.value("lexicons", cfg.lexicons_path);
  cfg.out_dir = doc.value("out_dir", cfg.out_dir);
  cfg.gamma = doc.value("gamma", cfg.gamma);
  cfg.alpha = doc.value("alpha", cfg.alpha);
  if (doc.contains("lemmas")) cfg.lemmas = doc["lemmas"].get<std::vector<std::string>>();
  cfg.min_user_tweets = doc.value("min_user_tweets", cfg.min_user_tweets);
  cfg.dedupe_output = doc.value("dedupe_output", cfg.dedupe_output);
  cfg.raw_denominators = doc.value("raw_denominators", cfg.raw_denominators);
  cfg.literal_dilution = doc.value("literal_dilution", cfg.literal_dilution);
  cfg.dedup_for_networks = doc.value("dedup_for_networks", cfg.dedup_for_networks);
  return cfg;
}

inline std::vector<LexicalCategory> load_configured_lexicons(const PipelineConfig& cfg) {
  if (cfg.lexicons_path.empty()) return default_lexicons();
  return load_lexicons_file(cfg.lexicons_path);
}

/// Parses every input file into one corpus; tweet ids must be unique across
/// all of them.
inline Corpus read_inputs(const PipelineConfig& cfg) {
  if (cfg.inputs.empty()) throw std::invalid_argument("no input files given");
  Corpus merged;
  std::set<std::string> ids;
  for (const std::string& path : cfg.inputs) {
    Corpus part = parse_corpus_file(path);
    for (TweetRecord& t : part.tweets) {
      if (!ids.insert(t.tweet_id).second) {
        throw std::runtime_error("duplicate tweet id \"" + t.tweet_id + "\" across inputs (" +
                                 path + ")");
      }
      merged.tweets.push_back(std::move(t));
    }
  }
  merged.rebuild_user_index();
  return merged;
}

namespace detail {

inline std::filesystem::path out_path(const PipelineConfig& cfg, const std::string& name) {
  return std::filesystem::path(cfg.out_dir) / name;
}

}  // namespace detail

struct IngestResult {
  std::size_t tweets_parsed = 0;
  std::size_t tweets_kept = 0;
  std::size_t unique_texts = 0;
  std::size_t users = 0;
  std::string corpus_path;
};

/// parse -> lemma_filter -> (optionally) dedupe; writes the filtered corpus
/// and a summary with the headline counts.
inline IngestResult run_ingest(const PipelineConfig& cfg) {
  Corpus corpus = read_inputs(cfg);
  IngestResult res;
  res.tweets_parsed = corpus.tweets.size();

  Corpus filtered = lemma_filter(corpus, cfg.lemmas);
  res.tweets_kept = filtered.tweets.size();
  Corpus deduped = dedupe(filtered);
  res.unique_texts = deduped.tweets.size();
  res.users = filtered.users.size();

  const Corpus& output = cfg.dedupe_output ? deduped : filtered;
  std::ostringstream corpus_text;
  serialize_corpus(output, corpus_text);
  std::filesystem::path corpus_file = detail::out_path(cfg, "corpus_filtered.jsonl");
  atomic_write_file(corpus_file, corpus_text.str());
  res.corpus_path = corpus_file.string();

  nlohmann::json summary;
  summary["tweets_parsed"] = res.tweets_parsed;
  summary["tweets_kept"] = res.tweets_kept;
  summary["unique_texts"] = res.unique_texts;
  summary["users"] = res.users;
  summary["lemmas"] = cfg.lemmas;
  summary["deduped_output"] = cfg.dedupe_output;
  atomic_write_file(detail::out_path(cfg, "ingest_summary.json"), summary.dump(2) + "\n");

  std::cout << res.users << " users with " << res.tweets_kept << " tweets after the lemma filter ("
            << res.unique_texts << " unique texts)\n";
  return res;
}

struct StanceStage {
  HashtagGraph graph;  // seeded input graph
  PropagationRun run;
  StanceAssignment stances;
  std::map<std::string, double> seeds;
};

inline StanceStage compute_stance_stage(const Corpus& corpus, const PipelineConfig& cfg) {
  if (cfg.seeds_path.empty()) throw std::invalid_argument("no seed file configured");
  StanceStage stage;
  stage.seeds = load_seed_file(cfg.seeds_path);
  stage.graph = apply_seeds(build_cooccurrence(corpus), stage.seeds);
  PropagationOptions opts;
  opts.gamma = cfg.gamma;
  opts.variant = cfg.literal_dilution ? PropagationVariant::dilute_unlabeled
                                      : PropagationVariant::labeled_only;
  stage.run = propagate(stage.graph, opts);
  stage.stances = assign_stances(corpus, stage.run.graph.valence);
  return stage;
}

struct StanceResult {
  std::size_t users_pro = 0, users_anti = 0, users_unlabeled = 0;
  std::size_t tweets_pro = 0, tweets_anti = 0;
  std::size_t hashtags_labeled = 0, hashtags_total = 0;
};

/// Builds the co-occurrence graph, seeds it, propagates, assigns user
/// stances; exports the graph, the hashtag valences, the stance table, and
/// a per-seed top co-occurrence list as a curation aid.
inline StanceResult run_stance(const PipelineConfig& cfg) {
  Corpus corpus = read_inputs(cfg);
  StanceStage stage = compute_stance_stage(corpus, cfg);

  StanceResult res;
  res.hashtags_total = stage.run.graph.nodes.size();
  res.hashtags_labeled = stage.run.graph.valence.size();
  for (const auto& [user, label] : stage.stances.label) {
    std::size_t n_tweets = corpus.users.count(user) ? corpus.users.at(user).size() : 0;
    switch (label) {
      case Stance::Pro:
        ++res.users_pro;
        res.tweets_pro += n_tweets;
        break;
      case Stance::Anti:
        ++res.users_anti;
        res.tweets_anti += n_tweets;
        break;
      default: ++res.users_unlabeled;
    }
  }

  std::ostringstream graph_csv;
  write_graph_csv(stage.run.graph, graph_csv);
  atomic_write_file(detail::out_path(cfg, "hashtag_graph.csv"), graph_csv.str());

  std::ostringstream valence_csv;
  write_valence_csv(stage.run.graph, valence_csv);
  atomic_write_file(detail::out_path(cfg, "hashtag_valences.csv"), valence_csv.str());

  std::ostringstream stance_csv;
  write_stance_csv(stage.stances, stance_csv);
  atomic_write_file(detail::out_path(cfg, "stances.csv"), stance_csv.str());

  std::ostringstream top;
  for (const auto& [seed, val] : stage.seeds) {
    top << seed << " (" << (val > 0 ? "+1" : "-1") << ")\n";
    if (stage.run.graph.has_node(seed)) {
      for (const auto& [tag, w] : top_cooccurring(stage.run.graph, seed, 10)) {
        top << "  " << tag << " " << w << "\n";
      }
    }
  }
  atomic_write_file(detail::out_path(cfg, "top_cooccurring.txt"), top.str());

  nlohmann::json summary;
  summary["users_pro"] = res.users_pro;
  summary["users_anti"] = res.users_anti;
  summary["users_unlabeled"] = res.users_unlabeled;
  summary["tweets_pro"] = res.tweets_pro;
  summary["tweets_anti"] = res.tweets_anti;
  summary["hashtags_total"] = res.hashtags_total;
  summary["hashtags_labeled"] = res.hashtags_labeled;
  summary["gamma"] = cfg.gamma;
  summary["sweeps"] = stage.run.sweeps;
  atomic_write_file(detail::out_path(cfg, "stance_summary.json"), summary.dump(2) + "\n");

  std::cout << res.users_pro << " pro users with " << res.tweets_pro << " pro tweets, "
            << res.users_anti << " anti users with " << res.tweets_anti << " anti tweets, "
            << res.users_unlabeled << " unlabeled users\n";
  return res;
}

struct AnalyzeResult {
  bool linguistics_written = false;
  std::vector<CategoryStats> linguistic;
  NetworkMetricsByKind network_metrics;
  std::size_t tweets_pro = 0, tweets_anti = 0;  // linguistic corpus sizes
};

/// Full analysis: stance detection, then the linguistic comparison on the
/// deduplicated corpus (raw with --raw-denominators) and the three
/// communication networks with their group metrics.
inline AnalyzeResult run_analyze(const PipelineConfig& cfg) {
  Corpus corpus = read_inputs(cfg);
  std::vector<LexicalCategory> lexicons = load_configured_lexicons(cfg);
  StanceStage stage = compute_stance_stage(corpus, cfg);

  AnalyzeResult res;

  // linguistic side
  Corpus ling = cfg.raw_denominators ? corpus : dedupe(corpus);
  Corpus pro, anti;
  for (const TweetRecord& t : ling.tweets) {
    auto it = stage.stances.label.find(t.user_id);
    if (it == stage.stances.label.end()) continue;
    if (it->second == Stance::Pro) pro.tweets.push_back(t);
    if (it->second == Stance::Anti) anti.tweets.push_back(t);
  }
  pro.rebuild_user_index();
  anti.rebuild_user_index();
  res.tweets_pro = pro.tweets.size();
  res.tweets_anti = anti.tweets.size();

  if (pro.tweets.empty() || anti.tweets.empty()) {
    std::cout << "linguistic report skipped: "
              << (pro.tweets.empty() ? "Pro" : "Anti") << " group has no tweets\n";
  } else {
    StatsConfig stats_cfg{cfg.alpha, cfg.min_user_tweets};
    res.linguistic = analyze(pro, anti, lexicons, stats_cfg);
    atomic_write_file(detail::out_path(cfg, "linguistic_report.csv"),
                      lingstats_csv(res.linguistic));
    atomic_write_file(detail::out_path(cfg, "linguistic_report.txt"),
                      lingstats_table(res.linguistic));
    atomic_write_file(detail::out_path(cfg, "linguistic_report.json"),
                      lingstats_json(res.linguistic, cfg.alpha).dump(2) + "\n");
    res.linguistics_written = true;
  }

  // network side: the full corpus unless configured otherwise
  Networks nets = build_networks(cfg.dedup_for_networks ? dedupe(corpus) : corpus, stage.stances);
  for (const std::string& kind : network_kind_order()) {
    const CommNetwork& net = kind == "mention"   ? nets.mention
                             : kind == "retweet" ? nets.retweet
                                                 : nets.reply;
    std::ostringstream csv;
    write_network_csv(net, csv);
    atomic_write_file(detail::out_path(cfg, "network_" + kind + ".csv"), csv.str());
    try {
      res.network_metrics[kind] = group_metrics(net);
    } catch (const std::exception& e) {
      log_warn("network metrics for " + kind + " unavailable: " + e.what());
      res.network_metrics[kind] = std::nullopt;
    }
  }
  atomic_write_file(detail::out_path(cfg, "network_metrics.csv"),
                    netmetrics_csv(res.network_metrics));
  atomic_write_file(detail::out_path(cfg, "network_metrics.txt"),
                    netmetrics_table(res.network_metrics));
  nlohmann::json net_json = netmetrics_json(res.network_metrics);
  net_json["config"] = {{"gamma", cfg.gamma},
                        {"alpha", cfg.alpha},
                        {"raw_denominators", cfg.raw_denominators},
                        {"literal_dilution", cfg.literal_dilution},
                        {"dedup_for_networks", cfg.dedup_for_networks}};
  atomic_write_file(detail::out_path(cfg, "network_metrics.json"), net_json.dump(2) + "\n");

  std::cout << "analyzed " << res.tweets_pro << " pro and " << res.tweets_anti
            << " anti tweets; reports in " << cfg.out_dir << "\n";
  return res;
}

struct SynthResult {
  GenerateStats stats;
  std::string corpus_path;
  std::string truth_path;
};

inline SynthResult run_synth(const PipelineConfig& cfg, const std::string& params_path) {
  std::ifstream in(params_path);
  if (!in) throw std::runtime_error("cannot open synth params: " + params_path);
  SynthParams params = parse_synth_params(in);
  std::vector<LexicalCategory> lexicons = load_configured_lexicons(cfg);

  std::ostringstream corpus_js, truth_js;
  SynthResult res;
  res.stats = generate(params, lexicons, corpus_js, truth_js);

  std::filesystem::path corpus_file = detail::out_path(cfg, "corpus_synth.jsonl");
  std::filesystem::path truth_file = detail::out_path(cfg, "truth.json");
  atomic_write_file(corpus_file, corpus_js.str());
  atomic_write_file(truth_file, truth_js.str());
  res.corpus_path = corpus_file.string();
  res.truth_path = truth_file.string();

  std::cout << "generated " << res.stats.content_tweets << " content and "
            << res.stats.interaction_tweets << " interaction tweets";
  for (const auto& [kind, n] : res.stats.planted_edges) {
    std::cout << ", " << n << " " << kind << " edges";
  }
  std::cout << "\n";
  return res;
}

/// Re-renders the saved JSON reports as aligned text on stdout.
inline void run_report(const PipelineConfig& cfg) {
  bool any = false;
  std::filesystem::path ling = detail::out_path(cfg, "linguistic_report.json");
  if (std::filesystem::exists(ling)) {
    nlohmann::json doc = nlohmann::json::parse(read_file(ling));
    std::cout << lingstats_table(lingstats_from_json(doc)) << "\n";
    any = true;
  }
  std::filesystem::path net = detail::out_path(cfg, "network_metrics.json");
  if (std::filesystem::exists(net)) {
    nlohmann::json doc = nlohmann::json::parse(read_file(net));
    std::cout << netmetrics_table(netmetrics_from_json(doc));
    any = true;
  }
  if (!any) {
    throw std::runtime_error("no reports found in " + cfg.out_dir +
                             " (expected linguistic_report.json or network_metrics.json)");
  }
}

}  // namespace stancekit
