#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "stancekit/hashtag_graph.hpp"
#include "stancekit/ingest.hpp"

namespace stancekit {

enum class Stance { Pro, Anti, Unlabeled };

inline const char* to_string(Stance s) {
  switch (s) {
    case Stance::Pro: return "Pro";
    case Stance::Anti: return "Anti";
    default: return "Unlabeled";
  }
}

inline Stance stance_from_string(const std::string& s) {
  if (s == "Pro") return Stance::Pro;
  if (s == "Anti") return Stance::Anti;
  if (s == "Unlabeled") return Stance::Unlabeled;
  throw std::invalid_argument("unknown stance label \"" + s + "\"");
}

/// How unlabeled neighbors enter the valence average. The default reading
/// uses labeled neighbors only; the dilution variant counts every
/// neighbor's weight in the denominator, pulling values toward zero.
enum class PropagationVariant { labeled_only, dilute_unlabeled };

struct PropagationOptions {
  long long gamma = 50;
  PropagationVariant variant = PropagationVariant::labeled_only;
};

struct PropagationRun {
  HashtagGraph graph;                          // input graph with valence extended
  std::vector<std::string> order;              // sweep order used
  std::map<std::string, long long> labeled_at_slack;  // non-seed node -> slack when labeled
  long long sweeps = 0;
  long long final_slack = 0;
};

/// Spreads seed valences over the co-occurrence graph.
///
/// Sweeps visit nodes in descending total incident edge weight (ties
/// lexicographic). An unlabeled node with neighbor set t and labeled
/// neighbors t_l gets the weighted average of its labeled neighbors once
/// |t_l| + l >= |t|, where the slack l = floor(i / gamma) grows as the pass
/// counter i advances (one increment per sweep). Labels assigned during a
/// sweep are visible to nodes visited later in the same sweep. The run
/// stops when a full sweep labels nothing and l has reached the maximum
/// node degree, so no amount of further slack could change the outcome.
/// Sweeps that cannot change anything at the current slack are skipped by
/// jumping i forward to the next slack increment.
inline PropagationRun propagate(const HashtagGraph& graph, PropagationOptions opts = {}) {
  if (opts.gamma < 1) throw std::invalid_argument("propagate: gamma must be >= 1");
  if (graph.seeds.empty()) throw std::invalid_argument("propagate: graph has no seed valences");

  PropagationRun run;
  run.graph = graph;

  run.order.assign(graph.nodes.begin(), graph.nodes.end());
  std::sort(run.order.begin(), run.order.end(), [&](const std::string& a, const std::string& b) {
    long long wa = graph.incident_weight(a);
    long long wb = graph.incident_weight(b);
    if (wa != wb) return wa > wb;
    return a < b;
  });

  long long max_degree = 0;
  for (const std::string& n : run.order) {
    max_degree = std::max(max_degree, static_cast<long long>(graph.degree(n)));
  }

  std::map<std::string, double>& valence = run.graph.valence;
  long long i = 0;
  while (true) {
    const long long slack = i / opts.gamma;
    ++i;
    ++run.sweeps;
    run.final_slack = slack;

    std::size_t changed = 0;
    for (const std::string& n : run.order) {
      if (valence.count(n)) continue;
      auto adj_it = run.graph.adj.find(n);
      if (adj_it == run.graph.adj.end()) continue;
      const auto& nbrs = adj_it->second;

      double score = 0.0;
      double weight_sum = 0.0;
      std::size_t labeled_count = 0;
      for (const auto& [nbr, w] : nbrs) {
        auto v = valence.find(nbr);
        if (v != valence.end()) {
          score += v->second * static_cast<double>(w);
          weight_sum += static_cast<double>(w);
          ++labeled_count;
        } else if (opts.variant == PropagationVariant::dilute_unlabeled) {
          weight_sum += static_cast<double>(w);
        }
      }
      if (labeled_count == 0) continue;  // nothing to average from, revisit later
      if (static_cast<long long>(labeled_count) + slack <
          static_cast<long long>(nbrs.size())) {
        continue;
      }
      valence[n] = std::clamp(score / weight_sum, -1.0, 1.0);
      run.labeled_at_slack[n] = slack;
      ++changed;
    }

    if (changed == 0) {
      if (slack >= max_degree) break;
      i = (slack + 1) * opts.gamma;  // idempotent at this slack; jump ahead
    }
  }
  return run;
}

/// Mean valence over every hashtag occurrence in the user's tweets
/// (occurrences counted with multiplicity); absent when no occurrence has a
/// valence.
inline std::optional<double> user_valence(const Corpus& corpus,
                                          const std::vector<std::size_t>& tweet_indices,
                                          const std::map<std::string, double>& valence) {
  double sum = 0.0;
  long long count = 0;
  for (std::size_t idx : tweet_indices) {
    for (const std::string& h : corpus.tweets[idx].hashtags) {
      auto it = valence.find(h);
      if (it != valence.end()) {
        sum += it->second;
        ++count;
      }
    }
  }
  if (count == 0) return std::nullopt;
  return sum / static_cast<double>(count);
}

inline std::optional<double> user_valence(const std::vector<TweetRecord>& tweets,
                                          const std::map<std::string, double>& valence) {
  Corpus c;
  c.tweets = tweets;
  std::vector<std::size_t> all(tweets.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return user_valence(c, all, valence);
}

inline Stance assign_stance(std::optional<double> valence) {
  if (!valence || *valence == 0.0) return Stance::Unlabeled;
  return *valence > 0.0 ? Stance::Pro : Stance::Anti;
}

/// Per-user continuous valence plus discrete label. Every corpus author has
/// a label; only users with at least one valenced hashtag occurrence have a
/// valence.
struct StanceAssignment {
  std::map<std::string, double> valence;
  std::map<std::string, Stance> label;
};

inline StanceAssignment assign_stances(const Corpus& corpus,
                                       const std::map<std::string, double>& hashtag_valence) {
  StanceAssignment out;
  for (const auto& [user, indices] : corpus.users) {
    std::optional<double> v = user_valence(corpus, indices, hashtag_valence);
    if (v) out.valence[user] = *v;
    out.label[user] = assign_stance(v);
  }
  return out;
}

/// CSV `hashtag,valence,is_seed`; unlabeled nodes get an empty valence cell.
inline void write_valence_csv(const HashtagGraph& graph, std::ostream& out) {
  out << "hashtag,valence,is_seed\n";
  for (const std::string& n : graph.nodes) {
    out << n << ",";
    if (auto it = graph.valence.find(n); it != graph.valence.end()) {
      out << format_double(it->second);
    }
    out << "," << (graph.seeds.count(n) ? 1 : 0) << "\n";
  }
}

/// CSV `user_id,valence,label`.
inline void write_stance_csv(const StanceAssignment& stances, std::ostream& out) {
  out << "user_id,valence,label\n";
  for (const auto& [user, label] : stances.label) {
    out << user << ",";
    if (auto it = stances.valence.find(user); it != stances.valence.end()) {
      out << format_double(it->second);
    }
    out << "," << to_string(label) << "\n";
  }
}

}  // namespace stancekit
