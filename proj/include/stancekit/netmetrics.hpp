#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "stancekit/ingest.hpp"
#include "stancekit/propagation.hpp"

namespace stancekit {

enum class NetworkKind { mention, retweet, reply };

inline const char* to_string(NetworkKind k) {
  switch (k) {
    case NetworkKind::mention: return "mention";
    case NetworkKind::retweet: return "retweet";
    default: return "reply";
  }
}

/// Directed user-user communication network with per-node stances. Edge
/// multiplicity is kept for export, but every metric works on distinct
/// directed edges.
struct CommNetwork {
  NetworkKind kind = NetworkKind::mention;
  std::vector<std::string> node_ids;                 // sorted
  std::unordered_map<std::string, int> index;
  std::map<std::pair<int, int>, long long> edges;    // (src,dst) -> multiplicity
  std::vector<Stance> stance;                        // aligned with node_ids

  std::size_t node_count() const { return node_ids.size(); }
  std::size_t distinct_edge_count() const { return edges.size(); }

  bool has_edge(int src, int dst) const { return edges.count({src, dst}) > 0; }
};

/// Assembles a network from directed endpoint pairs. Self-loops are
/// dropped, repeated pairs accumulate multiplicity, and the node set is the
/// union of `nodes` and every endpoint.
inline CommNetwork make_network(NetworkKind kind, const std::vector<std::string>& nodes,
                                const std::vector<std::pair<std::string, std::string>>& directed,
                                const std::map<std::string, Stance>& stances) {
  CommNetwork net;
  net.kind = kind;
  std::set<std::string> all(nodes.begin(), nodes.end());
  for (const auto& [src, dst] : directed) {
    all.insert(src);
    all.insert(dst);
  }
  net.node_ids.assign(all.begin(), all.end());
  for (int i = 0; i < static_cast<int>(net.node_ids.size()); ++i) {
    net.index[net.node_ids[i]] = i;
  }
  net.stance.assign(net.node_ids.size(), Stance::Unlabeled);
  for (std::size_t i = 0; i < net.node_ids.size(); ++i) {
    if (auto it = stances.find(net.node_ids[i]); it != stances.end()) net.stance[i] = it->second;
  }
  for (const auto& [src, dst] : directed) {
    if (src == dst) continue;
    net.edges[{net.index.at(src), net.index.at(dst)}] += 1;
  }
  return net;
}

struct Networks {
  CommNetwork mention, retweet, reply;

  const CommNetwork& by_kind(NetworkKind k) const {
    switch (k) {
      case NetworkKind::mention: return mention;
      case NetworkKind::retweet: return retweet;
      default: return reply;
    }
  }
};

/// Builds the mention, retweet, and reply networks over the corpus. Nodes
/// are all authors plus all interaction targets; stances come from the
/// assignment (Unlabeled where missing).
inline Networks build_networks(const Corpus& corpus, const StanceAssignment& stances) {
  std::vector<std::string> authors;
  authors.reserve(corpus.users.size());
  for (const auto& [user, idx] : corpus.users) authors.push_back(user);

  std::vector<std::pair<std::string, std::string>> mention_edges, retweet_edges, reply_edges;
  for (const TweetRecord& t : corpus.tweets) {
    if (t.retweet_of_user) retweet_edges.emplace_back(t.user_id, *t.retweet_of_user);
    if (t.reply_to_user) reply_edges.emplace_back(t.user_id, *t.reply_to_user);
    for (const std::string& m : t.mentioned_users) mention_edges.emplace_back(t.user_id, m);
  }

  Networks nets;
  nets.mention = make_network(NetworkKind::mention, authors, mention_edges, stances.label);
  nets.retweet = make_network(NetworkKind::retweet, authors, retweet_edges, stances.label);
  nets.reply = make_network(NetworkKind::reply, authors, reply_edges, stances.label);
  return nets;
}

namespace detail {

inline std::vector<char> subset_mask(const CommNetwork& net,
                                     const std::set<std::string>& subset) {
  std::vector<char> mask(net.node_count(), 0);
  for (const std::string& id : subset) {
    auto it = net.index.find(id);
    if (it != net.index.end()) mask[static_cast<std::size_t>(it->second)] = 1;
  }
  return mask;
}

inline std::vector<char> stance_mask(const CommNetwork& net, Stance group) {
  std::vector<char> mask(net.node_count(), 0);
  for (std::size_t i = 0; i < net.node_count(); ++i) mask[i] = net.stance[i] == group;
  return mask;
}

inline double density_masked(const CommNetwork& net, const std::vector<char>& mask) {
  long long n = std::count(mask.begin(), mask.end(), 1);
  if (n < 2) throw std::invalid_argument("density: need at least 2 nodes");
  long long inside = 0;
  for (const auto& [edge, mult] : net.edges) {
    if (mask[static_cast<std::size_t>(edge.first)] && mask[static_cast<std::size_t>(edge.second)]) {
      ++inside;
    }
  }
  return static_cast<double>(inside) / static_cast<double>(n * (n - 1));
}

inline double reciprocity_masked(const CommNetwork& net, const std::vector<char>& mask) {
  long long total = 0, mutual = 0;
  for (const auto& [edge, mult] : net.edges) {
    if (!mask[static_cast<std::size_t>(edge.first)] ||
        !mask[static_cast<std::size_t>(edge.second)]) {
      continue;
    }
    ++total;
    if (net.has_edge(edge.second, edge.first)) ++mutual;
  }
  if (total == 0) throw std::invalid_argument("reciprocity: no edges in scope");
  return static_cast<double>(mutual) / static_cast<double>(total);
}

}  // namespace detail

/// Distinct directed edges over possible ordered pairs, n(n-1).
inline double density(const CommNetwork& net) {
  return detail::density_masked(net, std::vector<char>(net.node_count(), 1));
}

inline double density(const CommNetwork& net, const std::set<std::string>& subset) {
  return detail::density_masked(net, detail::subset_mask(net, subset));
}

/// Fraction of distinct directed edges whose reverse edge also exists.
inline double reciprocity(const CommNetwork& net) {
  return detail::reciprocity_masked(net, std::vector<char>(net.node_count(), 1));
}

inline double reciprocity(const CommNetwork& net, const std::set<std::string>& subset) {
  return detail::reciprocity_masked(net, detail::subset_mask(net, subset));
}

struct EiResult {
  double ei = 0.0;
  long long el = 0;  // edges between the group and the opposing community
  long long il = 0;  // edges inside the group
};

/// External-internal index over all distinct directed edges incident to the
/// group, counting only the two stance communities (edges touching
/// unlabeled users are ignored). No normalization is applied.
inline EiResult ei_index(const CommNetwork& net, Stance group) {
  if (group == Stance::Unlabeled) throw std::invalid_argument("ei_index: group must be Pro or Anti");
  Stance opposing = group == Stance::Pro ? Stance::Anti : Stance::Pro;
  long long members = 0;
  for (Stance s : net.stance) members += s == group;
  if (members == 0) throw std::invalid_argument("ei_index: group has no members");

  EiResult r;
  for (const auto& [edge, mult] : net.edges) {
    Stance ss = net.stance[static_cast<std::size_t>(edge.first)];
    Stance sd = net.stance[static_cast<std::size_t>(edge.second)];
    if (ss == group && sd == group) {
      ++r.il;
    } else if ((ss == group && sd == opposing) || (ss == opposing && sd == group)) {
      ++r.el;
    }
  }
  if (r.el + r.il == 0) throw std::domain_error("ei_index: no links touch the group");
  r.ei = static_cast<double>(r.el - r.il) / static_cast<double>(r.el + r.il);
  return r;
}

inline double echo_chamberness_value(double r, double d) { return std::cbrt(r * d); }

/// (reciprocity * density)^(1/3) on the group-induced subgraph.
inline double echo_chamberness(const CommNetwork& net, Stance group) {
  std::vector<char> mask = detail::stance_mask(net, group);
  double r = detail::reciprocity_masked(net, mask);  // also checks edge presence
  double d = detail::density_masked(net, mask);
  return echo_chamberness_value(r, d);
}

/// All network-level measures for one network kind. Individual measures
/// are absent where undefined (too few nodes or no edges in scope).
struct GroupNetworkMetrics {
  std::optional<double> density_all, density_pro, density_anti;
  std::optional<double> ei_pro, ei_anti;
  long long el_pro = 0, il_pro = 0, el_anti = 0, il_anti = 0;
  std::optional<double> ec_pro, ec_anti;
  std::optional<double> reciprocity_pro, reciprocity_anti;
};

inline GroupNetworkMetrics group_metrics(const CommNetwork& net) {
  long long pro = 0, anti = 0;
  for (Stance s : net.stance) {
    pro += s == Stance::Pro;
    anti += s == Stance::Anti;
  }
  if (pro == 0 || anti == 0) {
    throw std::invalid_argument(std::string("group_metrics: ") +
                                (pro == 0 ? "Pro" : "Anti") + " community is empty in the " +
                                to_string(net.kind) + " network");
  }

  GroupNetworkMetrics m;
  auto attempt = [](std::optional<double>& slot, auto&& fn) {
    try {
      slot = fn();
    } catch (const std::exception&) {
      slot = std::nullopt;
    }
  };

  std::vector<char> pro_mask = detail::stance_mask(net, Stance::Pro);
  std::vector<char> anti_mask = detail::stance_mask(net, Stance::Anti);

  attempt(m.density_all, [&] { return density(net); });
  attempt(m.density_pro, [&] { return detail::density_masked(net, pro_mask); });
  attempt(m.density_anti, [&] { return detail::density_masked(net, anti_mask); });
  attempt(m.reciprocity_pro, [&] { return detail::reciprocity_masked(net, pro_mask); });
  attempt(m.reciprocity_anti, [&] { return detail::reciprocity_masked(net, anti_mask); });

  try {
    EiResult e = ei_index(net, Stance::Pro);
    m.ei_pro = e.ei;
    m.el_pro = e.el;
    m.il_pro = e.il;
  } catch (const std::exception&) {
  }
  try {
    EiResult e = ei_index(net, Stance::Anti);
    m.ei_anti = e.ei;
    m.el_anti = e.el;
    m.il_anti = e.il;
  } catch (const std::exception&) {
  }

  if (m.reciprocity_pro && m.density_pro) {
    m.ec_pro = echo_chamberness_value(*m.reciprocity_pro, *m.density_pro);
  }
  if (m.reciprocity_anti && m.density_anti) {
    m.ec_anti = echo_chamberness_value(*m.reciprocity_anti, *m.density_anti);
  }
  return m;
}

/// CSV edge list `src,dst,weight,kind`.
inline void write_network_csv(const CommNetwork& net, std::ostream& out) {
  out << "src,dst,weight,kind\n";
  for (const auto& [edge, mult] : net.edges) {
    out << net.node_ids[static_cast<std::size_t>(edge.first)] << ","
        << net.node_ids[static_cast<std::size_t>(edge.second)] << "," << mult << ","
        << to_string(net.kind) << "\n";
  }
}

}  // namespace stancekit
