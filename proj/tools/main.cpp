#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "stancekit/pipeline.hpp"

namespace {

struct CliOptions {
  std::string config_path;
  std::vector<std::string> inputs;
  std::string seeds, lexicons, out_dir;
  long long gamma = 0;
  double alpha = 0.0;
  std::vector<std::string> lemmas;
  std::size_t min_user_tweets = 0;
  bool dedupe_output = false;
  bool raw_denominators = false;
  bool literal_dilution = false;
  bool dedup_for_networks = false;
};

// Shared options; per-flag CLI values override the config file.
void add_common_options(CLI::App* cmd, CliOptions& o) {
  cmd->add_option("--config", o.config_path, "JSON config file");
  cmd->add_option("--input", o.inputs, "input corpus file(s), JSON Lines");
  cmd->add_option("--seeds", o.seeds, "seed hashtag file (hashtag,valence per line)");
  cmd->add_option("--lexicons", o.lexicons, "lexicon config JSON (default: built-in)");
  cmd->add_option("--gamma", o.gamma, "slack schedule denominator (default 50)");
  cmd->add_option("--alpha", o.alpha, "significance level (default 0.05)");
  cmd->add_option("--out", o.out_dir, "output directory (default out)");
  cmd->add_option("--lemmas", o.lemmas, "topical lemmas for the ingest filter");
  cmd->add_option("--min-user-tweets", o.min_user_tweets,
                  "minimum tweets per user for the per-user statistic");
  cmd->add_flag("--dedupe", o.dedupe_output, "also dedupe the corpus written by ingest");
  cmd->add_flag("--raw-denominators", o.raw_denominators,
                "linguistic stats on raw rather than deduplicated tweets");
  cmd->add_flag("--literal-dilution", o.literal_dilution,
                "propagation variant: unlabeled neighbors dilute toward zero");
  cmd->add_flag("--dedup-for-networks", o.dedup_for_networks,
                "build communication networks from the deduplicated corpus");
}

stancekit::PipelineConfig build_config(const CLI::App* cmd, const CliOptions& o) {
  stancekit::PipelineConfig cfg;
  if (!o.config_path.empty()) cfg = stancekit::load_config_file(o.config_path);
  if (cmd->count("--input")) cfg.inputs = o.inputs;
  if (cmd->count("--seeds")) cfg.seeds_path = o.seeds;
  if (cmd->count("--lexicons")) cfg.lexicons_path = o.lexicons;
  if (cmd->count("--gamma")) cfg.gamma = o.gamma;
  if (cmd->count("--alpha")) cfg.alpha = o.alpha;
  if (cmd->count("--out")) cfg.out_dir = o.out_dir;
  if (cmd->count("--lemmas")) cfg.lemmas = o.lemmas;
  if (cmd->count("--min-user-tweets")) cfg.min_user_tweets = o.min_user_tweets;
  if (cmd->count("--dedupe")) cfg.dedupe_output = o.dedupe_output;
  if (cmd->count("--raw-denominators")) cfg.raw_denominators = o.raw_denominators;
  if (cmd->count("--literal-dilution")) cfg.literal_dilution = o.literal_dilution;
  if (cmd->count("--dedup-for-networks")) cfg.dedup_for_networks = o.dedup_for_networks;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stance community detection and sociolinguistic analysis for tweet corpora"};
  app.require_subcommand(1);

  CliOptions o;
  std::string synth_params;

  CLI::App* ingest = app.add_subcommand(
      "ingest", "parse corpus files, apply the topical lemma filter, write the corpus");
  add_common_options(ingest, o);

  CLI::App* stance = app.add_subcommand(
      "stance", "build the hashtag co-occurrence graph, propagate seed valences, label users");
  add_common_options(stance, o);

  CLI::App* analyze = app.add_subcommand(
      "analyze", "full analysis: stances, linguistic comparison, network metrics");
  add_common_options(analyze, o);

  CLI::App* synth = app.add_subcommand(
      "synth", "generate a synthetic corpus with planted ground truth");
  add_common_options(synth, o);
  synth->add_option("--params", synth_params, "synth parameter JSON file")->required();

  CLI::App* report = app.add_subcommand(
      "report", "render saved JSON reports from the output directory as text tables");
  add_common_options(report, o);

  CLI11_PARSE(app, argc, argv);

  try {
    if (ingest->parsed()) {
      stancekit::run_ingest(build_config(ingest, o));
    } else if (stance->parsed()) {
      stancekit::run_stance(build_config(stance, o));
    } else if (analyze->parsed()) {
      stancekit::run_analyze(build_config(analyze, o));
    } else if (synth->parsed()) {
      stancekit::run_synth(build_config(synth, o), synth_params);
    } else if (report->parsed()) {
      stancekit::run_report(build_config(report, o));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
