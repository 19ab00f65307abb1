#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "stancekit/ingest.hpp"
#include "stancekit/lexicon.hpp"
#include "stancekit/netmetrics.hpp"

namespace stancekit {

/// Per-pair interaction probabilities for one network kind. `p_in_*` are
/// within-group, `p_out` is cross-group; asymmetric in-group values let a
/// run plant one community denser than the other.
struct NetworkPlant {
  double p_in_pro = 0.0;
  double p_in_anti = 0.0;
  double p_out = 0.0;
};

struct SynthParams {
  int users_per_group = 100;
  int tweets_per_user = 20;
  double seed_hashtag_rate = 0.3;
  int shared_hashtag_vocab = 20;
  // category id -> {pro rate, anti rate}: probability a tweet carries a
  // token of that category
  std::map<std::string, std::pair<double, double>> category_rates;
  NetworkPlant mention, retweet, reply;
  std::uint64_t rng_seed = 1;

  void validate() const {
    if (users_per_group < 1) throw std::invalid_argument("synth: users_per_group must be >= 1");
    if (tweets_per_user < 1) throw std::invalid_argument("synth: tweets_per_user must be >= 1");
    if (shared_hashtag_vocab < 1) {
      throw std::invalid_argument("synth: shared_hashtag_vocab must be >= 1");
    }
    auto check_prob = [](double p, const char* name) {
      if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument(std::string("synth: ") + name + " must lie in [0,1]");
      }
    };
    check_prob(seed_hashtag_rate, "seed_hashtag_rate");
    for (const auto& [cat, rates] : category_rates) {
      check_prob(rates.first, ("category_rates[" + cat + "].pro").c_str());
      check_prob(rates.second, ("category_rates[" + cat + "].anti").c_str());
    }
    for (const NetworkPlant* np : {&mention, &retweet, &reply}) {
      check_prob(np->p_in_pro, "p_in_pro");
      check_prob(np->p_in_anti, "p_in_anti");
      check_prob(np->p_out, "p_out");
    }
  }
};

struct GenerateStats {
  std::size_t content_tweets = 0;
  std::size_t interaction_tweets = 0;
  std::map<std::string, std::size_t> planted_edges;  // kind -> count
};

namespace detail {

// All sampling goes through raw mt19937_64 output so a fixed seed gives
// byte-identical corpora on any platform.
class SynthRng {
 public:
  explicit SynthRng(std::uint64_t seed) : eng_(seed) {}

  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform01() < p; }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(eng_() % n); }

  // geometric gap: failures before the next success at probability p
  std::uint64_t gap(double p) {
    double u = 1.0 - uniform01();  // (0, 1]
    return static_cast<std::uint64_t>(std::floor(std::log(u) / std::log1p(-p)));
  }

 private:
  std::mt19937_64 eng_;
};

inline std::string planted_piece(const LexiconEntry& e) {
  switch (e.kind) {
    case EntryKind::single_token: return e.value;
    case EntryKind::token_sequence: {
      std::string out;
      for (const std::string& t : e.seq) {
        if (!out.empty()) out.push_back(' ');
        out += t;
      }
      return out;
    }
    case EntryKind::suffix_pattern: return "big" + e.value;  // e.g. "big-ass"
    case EntryKind::char_pattern: return e.value;
  }
  return e.value;
}

inline void sample_block_edges(SynthRng& rng, double p, const std::vector<std::string>& src,
                               const std::vector<std::string>& dst, bool same_group,
                               std::vector<std::pair<std::size_t, std::size_t>>& out) {
  if (p <= 0.0) return;
  const std::uint64_t cols = same_group ? dst.size() - 1 : dst.size();
  const std::uint64_t total = static_cast<std::uint64_t>(src.size()) * cols;
  if (cols == 0) return;

  auto emit = [&](std::uint64_t k) {
    std::size_t s = static_cast<std::size_t>(k / cols);
    std::size_t d = static_cast<std::size_t>(k % cols);
    if (same_group && d >= s) ++d;  // skip the diagonal
    out.emplace_back(s, d);
  };

  if (p >= 1.0) {
    for (std::uint64_t k = 0; k < total; ++k) emit(k);
    return;
  }
  std::uint64_t k = rng.gap(p);
  while (k < total) {
    emit(k);
    k += 1 + rng.gap(p);
  }
}

}  // namespace detail

/// Generates a corpus with planted stance labels, lexical usage rates, and
/// network homophily. The corpus goes out as JSON Lines in the ingest
/// schema; the ground truth (user groups, planted parameters and edges)
/// goes to a separate stream the pipeline under test never reads. Output is
/// byte-identical for a fixed rng_seed. Every text contains the "vacc"
/// lemma, so the topical filter keeps everything.
inline GenerateStats generate(const SynthParams& params,
                              const std::vector<LexicalCategory>& categories,
                              std::ostream& corpus_out, std::ostream& truth_out) {
  params.validate();

  std::map<std::string, const LexicalCategory*> by_id;
  for (const LexicalCategory& c : categories) by_id[c.id] = &c;
  for (const auto& [cat, rates] : params.category_rates) {
    auto it = by_id.find(cat);
    if (it == by_id.end()) {
      throw std::invalid_argument("synth: category_rates names unknown category \"" + cat + "\"");
    }
    if (it->second->entries.empty() && (rates.first > 0.0 || rates.second > 0.0)) {
      throw std::invalid_argument("synth: category \"" + cat + "\" has no entries to plant");
    }
  }

  detail::SynthRng rng(params.rng_seed);
  GenerateStats stats;

  auto user_name = [&](int group, int i) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%s_%05d", group == 0 ? "pro" : "anti", i);
    return std::string(buf);
  };
  std::vector<std::string> pro_users, anti_users;
  for (int i = 0; i < params.users_per_group; ++i) pro_users.push_back(user_name(0, i));
  for (int i = 0; i < params.users_per_group; ++i) anti_users.push_back(user_name(1, i));

  const std::string kSeedTag[2] = {"vaccineswork", "learntherisk"};

  std::size_t tweet_counter = 0;
  auto next_id = [&] { return "s" + std::to_string(tweet_counter++); };

  // content tweets
  for (int group = 0; group < 2; ++group) {
    const auto& users = group == 0 ? pro_users : anti_users;
    for (const std::string& user : users) {
      for (int t = 0; t < params.tweets_per_user; ++t) {
        TweetRecord rec;
        rec.tweet_id = next_id();
        rec.user_id = user;
        rec.text = "update regarding vacc policy item " + std::to_string(stats.content_tweets);
        for (const auto& [cat, rates] : params.category_rates) {
          double rate = group == 0 ? rates.first : rates.second;
          if (rate > 0.0 && rng.bernoulli(rate)) {
            const auto& entries = by_id.at(cat)->entries;
            rec.text += " " + detail::planted_piece(entries[rng.below(entries.size())]);
          }
        }
        if (rng.bernoulli(params.seed_hashtag_rate)) rec.hashtags.push_back(kSeedTag[group]);
        std::size_t neutral = 1 + (rng.bernoulli(0.5) ? 1 : 0);
        for (std::size_t k = 0; k < neutral; ++k) {
          rec.hashtags.push_back(
              "topic" + std::to_string(rng.below(static_cast<std::size_t>(params.shared_hashtag_vocab))));
        }
        nlohmann::ordered_json j;
        serialize_tweet(rec, j);
        corpus_out << j.dump() << "\n";
        ++stats.content_tweets;
      }
    }
  }

  // planted interaction edges, one network kind at a time
  nlohmann::json truth_edges = nlohmann::json::object();
  struct KindSpec {
    const char* name;
    const NetworkPlant* plant;
  };
  const KindSpec kinds[3] = {{"mention", &params.mention},
                             {"retweet", &params.retweet},
                             {"reply", &params.reply}};
  for (const KindSpec& ks : kinds) {
    std::vector<std::pair<std::string, std::string>> edges;
    std::vector<std::pair<std::size_t, std::size_t>> idx;

    idx.clear();
    detail::sample_block_edges(rng, ks.plant->p_in_pro, pro_users, pro_users, true, idx);
    for (auto [s, d] : idx) edges.emplace_back(pro_users[s], pro_users[d]);
    idx.clear();
    detail::sample_block_edges(rng, ks.plant->p_in_anti, anti_users, anti_users, true, idx);
    for (auto [s, d] : idx) edges.emplace_back(anti_users[s], anti_users[d]);
    idx.clear();
    detail::sample_block_edges(rng, ks.plant->p_out, pro_users, anti_users, false, idx);
    for (auto [s, d] : idx) edges.emplace_back(pro_users[s], anti_users[d]);
    idx.clear();
    detail::sample_block_edges(rng, ks.plant->p_out, anti_users, pro_users, false, idx);
    for (auto [s, d] : idx) edges.emplace_back(anti_users[s], pro_users[d]);

    stats.planted_edges[ks.name] = edges.size();
    nlohmann::json earr = nlohmann::json::array();
    for (const auto& [src, dst] : edges) earr.push_back({src, dst});
    truth_edges[ks.name] = std::move(earr);

    const std::string kind_name = ks.name;
    if (kind_name == "mention") {
      // bundle each source's targets into one record
      std::map<std::string, std::vector<std::string>> per_src;
      for (const auto& [src, dst] : edges) per_src[src].push_back(dst);
      for (const auto& [src, targets] : per_src) {
        TweetRecord rec;
        rec.tweet_id = next_id();
        rec.user_id = src;
        rec.text = "vacc mention relay";
        rec.mentioned_users = targets;
        nlohmann::ordered_json j;
        serialize_tweet(rec, j);
        corpus_out << j.dump() << "\n";
        ++stats.interaction_tweets;
      }
    } else {
      for (const auto& [src, dst] : edges) {
        TweetRecord rec;
        rec.tweet_id = next_id();
        rec.user_id = src;
        rec.text = "vacc " + kind_name + " relay";
        if (kind_name == "retweet") {
          rec.retweet_of_user = dst;
        } else {
          rec.reply_to_user = dst;
        }
        nlohmann::ordered_json j;
        serialize_tweet(rec, j);
        corpus_out << j.dump() << "\n";
        ++stats.interaction_tweets;
      }
    }
  }

  nlohmann::json truth;
  truth["users"]["pro"] = pro_users;
  truth["users"]["anti"] = anti_users;
  truth["seeds"]["pro"] = kSeedTag[0];
  truth["seeds"]["anti"] = kSeedTag[1];
  nlohmann::json rates = nlohmann::json::object();
  for (const auto& [cat, r] : params.category_rates) {
    rates[cat] = {{"pro", r.first}, {"anti", r.second}};
  }
  truth["params"]["category_rates"] = rates;
  truth["params"]["users_per_group"] = params.users_per_group;
  truth["params"]["tweets_per_user"] = params.tweets_per_user;
  truth["params"]["seed_hashtag_rate"] = params.seed_hashtag_rate;
  truth["params"]["shared_hashtag_vocab"] = params.shared_hashtag_vocab;
  truth["params"]["rng_seed"] = params.rng_seed;
  truth["edges"] = std::move(truth_edges);
  truth_out << truth.dump(2) << "\n";
  return stats;
}

/// Ground truth as written by generate(); used only by evaluation
/// harnesses, never by the analysis pipeline.
struct SynthTruth {
  std::map<std::string, Stance> user_group;
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> edges;
};

inline SynthTruth load_truth(std::istream& in) {
  nlohmann::json doc = nlohmann::json::parse(in);
  SynthTruth t;
  for (const auto& u : doc.at("users").at("pro")) {
    t.user_group[u.get<std::string>()] = Stance::Pro;
  }
  for (const auto& u : doc.at("users").at("anti")) {
    t.user_group[u.get<std::string>()] = Stance::Anti;
  }
  for (const auto& [kind, arr] : doc.at("edges").items()) {
    auto& vec = t.edges[kind];
    for (const auto& e : arr) {
      vec.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
  }
  return t;
}

/// Synth parameter file: JSON with users_per_group, tweets_per_user,
/// seed_hashtag_rate, shared_hashtag_vocab, rng_seed, category_rates
/// (id -> {pro, anti}), networks (kind -> {p_in | p_in_pro/p_in_anti, p_out}).
inline SynthParams parse_synth_params(std::istream& in) {
  nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw std::runtime_error("synth params: invalid JSON");
  SynthParams p;
  p.users_per_group = doc.value("users_per_group", p.users_per_group);
  p.tweets_per_user = doc.value("tweets_per_user", p.tweets_per_user);
  p.seed_hashtag_rate = doc.value("seed_hashtag_rate", p.seed_hashtag_rate);
  p.shared_hashtag_vocab = doc.value("shared_hashtag_vocab", p.shared_hashtag_vocab);
  p.rng_seed = doc.value("rng_seed", p.rng_seed);
  if (doc.contains("category_rates")) {
    for (const auto& [cat, r] : doc["category_rates"].items()) {
      p.category_rates[cat] = {r.value("pro", 0.0), r.value("anti", 0.0)};
    }
  }
  if (doc.contains("networks")) {
    auto read_plant = [](const nlohmann::json& j) {
      NetworkPlant np;
      double p_in = j.value("p_in", 0.0);
      np.p_in_pro = j.value("p_in_pro", p_in);
      np.p_in_anti = j.value("p_in_anti", p_in);
      np.p_out = j.value("p_out", 0.0);
      return np;
    };
    const nlohmann::json& nets = doc["networks"];
    if (nets.contains("mention")) p.mention = read_plant(nets["mention"]);
    if (nets.contains("retweet")) p.retweet = read_plant(nets["retweet"]);
    if (nets.contains("reply")) p.reply = read_plant(nets["reply"]);
  }
  p.validate();
  return p;
}

}  // namespace stancekit
