#pragma once

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "stancekit/ingest.hpp"
#include "stancekit/log.hpp"
#include "stancekit/util.hpp"

namespace stancekit {

/// Weighted undirected hashtag co-occurrence graph with a partial valence
/// labeling. Seed valences are frozen: propagation never overwrites them.
/// Ordered containers keep every traversal deterministic.
struct HashtagGraph {
  std::set<std::string> nodes;
  // symmetric adjacency, both directions stored
  std::map<std::string, std::map<std::string, long long>> adj;
  std::map<std::string, double> valence;
  std::set<std::string> seeds;

  bool has_node(const std::string& h) const { return nodes.count(h) > 0; }

  long long weight(const std::string& a, const std::string& b) const {
    auto it = adj.find(a);
    if (it == adj.end()) return 0;
    auto jt = it->second.find(b);
    return jt == it->second.end() ? 0 : jt->second;
  }

  std::size_t degree(const std::string& h) const {
    auto it = adj.find(h);
    return it == adj.end() ? 0 : it->second.size();
  }

  // Sum of weights over incident edges; drives the propagation sweep order.
  long long incident_weight(const std::string& h) const {
    auto it = adj.find(h);
    if (it == adj.end()) return 0;
    long long sum = 0;
    for (const auto& [nbr, w] : it->second) sum += w;
    return sum;
  }

  std::size_t edge_count() const {
    std::size_t directed = 0;
    for (const auto& [node, nbrs] : adj) directed += nbrs.size();
    return directed / 2;
  }
};

/// Builds the co-occurrence graph: nodes are hashtags, an edge's weight is
/// the number of tweets containing both tags. Duplicate tags inside one
/// tweet count once.
inline HashtagGraph build_cooccurrence(const Corpus& corpus) {
  HashtagGraph g;
  for (const TweetRecord& t : corpus.tweets) {
    std::set<std::string> distinct(t.hashtags.begin(), t.hashtags.end());
    for (const std::string& h : distinct) g.nodes.insert(h);
    for (auto a = distinct.begin(); a != distinct.end(); ++a) {
      for (auto b = std::next(a); b != distinct.end(); ++b) {
        g.adj[*a][*b] += 1;
        g.adj[*b][*a] += 1;
      }
    }
  }
  return g;
}

/// Freezes the listed hashtags at valence +1 or -1. Seeds missing from the
/// graph are added as isolated nodes with a warning.
inline HashtagGraph apply_seeds(HashtagGraph graph, const std::map<std::string, double>& seeds) {
  for (const auto& [tag, val] : seeds) {
    if (val != 1.0 && val != -1.0) {
      throw std::invalid_argument("seed valence for \"" + tag +
                                  "\" must be exactly +1 or -1, got " + format_double(val));
    }
    if (!graph.has_node(tag)) {
      log_warn("seed hashtag \"" + tag + "\" does not occur in the corpus; added as isolated node");
      graph.nodes.insert(tag);
    }
    graph.valence[tag] = val;
    graph.seeds.insert(tag);
  }
  return graph;
}

/// Top-k neighbors of an anchor hashtag by descending co-occurrence weight,
/// ties broken lexicographically. Curation aid for picking further seeds.
inline std::vector<std::pair<std::string, long long>> top_cooccurring(const HashtagGraph& graph,
                                                                      const std::string& anchor,
                                                                      std::size_t k) {
  if (!graph.has_node(anchor)) {
    throw std::invalid_argument("top_cooccurring: unknown hashtag \"" + anchor + "\"");
  }
  std::vector<std::pair<std::string, long long>> nbrs;
  if (auto it = graph.adj.find(anchor); it != graph.adj.end()) {
    nbrs.assign(it->second.begin(), it->second.end());
  }
  std::sort(nbrs.begin(), nbrs.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (nbrs.size() > k) nbrs.resize(k);
  return nbrs;
}

/// Seed config: one `hashtag,valence` pair per line, '#' starts a comment.
inline std::map<std::string, double> parse_seed_file(std::istream& in) {
  std::map<std::string, double> seeds;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string stripped = trim(line);
    if (stripped.empty()) continue;
    auto parts = split(stripped, ',');
    if (parts.size() != 2) {
      throw std::runtime_error("seed file line " + std::to_string(line_no) +
                               ": expected `hashtag,valence`");
    }
    std::string tag = lowercase_ascii(trim(parts[0]));
    std::string val_text = trim(parts[1]);
    double val = 0.0;
    try {
      std::size_t used = 0;
      val = std::stod(val_text, &used);
      if (used != val_text.size()) throw std::invalid_argument(val_text);
    } catch (const std::exception&) {
      throw std::runtime_error("seed file line " + std::to_string(line_no) +
                               ": invalid valence \"" + val_text + "\"");
    }
    if (val != 1.0 && val != -1.0) {
      throw std::runtime_error("seed file line " + std::to_string(line_no) +
                               ": seed valence must be exactly +1 or -1");
    }
    if (tag.empty()) {
      throw std::runtime_error("seed file line " + std::to_string(line_no) + ": empty hashtag");
    }
    seeds[tag] = val;
  }
  return seeds;
}

inline std::map<std::string, double> load_seed_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open seed file: " + path.string());
  return parse_seed_file(in);
}

/// CSV edge list `h1,h2,weight`, each undirected edge once (h1 < h2).
inline void write_graph_csv(const HashtagGraph& graph, std::ostream& out) {
  out << "h1,h2,weight\n";
  for (const auto& [node, nbrs] : graph.adj) {
    for (const auto& [other, w] : nbrs) {
      if (node < other) out << node << "," << other << "," << w << "\n";
    }
  }
}

}  // namespace stancekit
