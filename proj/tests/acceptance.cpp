// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// fail. Each criterion enforces its stated tolerance and runtime budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "stancekit/default_lexicon.hpp"
#include "stancekit/lingstats.hpp"
#include "stancekit/pipeline.hpp"
#include "stancekit/synth.hpp"

using namespace stancekit;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << (detail.str().empty() ? "" : "; ") << what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---------------------------------------------------------------- criterion 1

void criterion_1(Check& c) {
  struct Row {
    const char* name;
    double p_pro, p_anti, reported;
  };
  const Row rows[] = {{"Intensifiers", 0.4590, 0.5060, -36.25},
                      {"Third-Person", 0.148, 0.209, -60.51},
                      {"Subject", 0.2890, 0.3750, -69.53}};
  for (const Row& r : rows) {
    double z = z_prop(r.p_pro, 310461, r.p_anti, 277649);
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%s: z=%.3f vs reported %.2f", r.name, z, r.reported);
    c.expect(std::fabs(z - r.reported) <= 1.0, buf);
  }
}

// ---------------------------------------------------------------- criterion 2

struct NetOracle {
  int n = 0;
  std::vector<std::vector<bool>> adj;
  std::vector<Stance> st;

  std::optional<double> density(const std::vector<bool>& in) const {
    int nn = 0;
    for (bool b : in) nn += b;
    if (nn < 2) return std::nullopt;
    long long cnt = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i != j && in[i] && in[j] && adj[i][j]) ++cnt;
      }
    }
    return double(cnt) / (double(nn) * (nn - 1));
  }

  std::optional<double> reciprocity(const std::vector<bool>& in) const {
    long long total = 0, mutual = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i != j && in[i] && in[j] && adj[i][j]) {
          ++total;
          if (adj[j][i]) ++mutual;
        }
      }
    }
    if (total == 0) return std::nullopt;
    return double(mutual) / double(total);
  }

  std::optional<double> ei(Stance g) const {
    Stance opp = g == Stance::Pro ? Stance::Anti : Stance::Pro;
    long long el = 0, il = 0;
    long long members = 0;
    for (Stance s : st) members += s == g;
    if (members == 0) return std::nullopt;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j || !adj[i][j]) continue;
        if (st[i] == g && st[j] == g) {
          ++il;
        } else if ((st[i] == g && st[j] == opp) || (st[i] == opp && st[j] == g)) {
          ++el;
        }
      }
    }
    if (el + il == 0) return std::nullopt;
    return double(el - il) / double(el + il);
  }

  std::optional<double> ec(Stance g) const {
    std::vector<bool> in(static_cast<std::size_t>(n), false);
    for (int i = 0; i < n; ++i) in[static_cast<std::size_t>(i)] = st[static_cast<std::size_t>(i)] == g;
    auto r = reciprocity(in);
    auto d = density(in);
    if (!r || !d) return std::nullopt;
    return std::cbrt(*r * *d);
  }
};

void criterion_2(Check& c) {
  std::mt19937 rng(20260809);
  std::size_t compared = 0;
  for (int trial = 0; trial < 1000 && c.ok; ++trial) {
    int n = 2 + static_cast<int>(rng() % 49);
    double p = (1 + rng() % 40) / 100.0;
    std::vector<std::string> names(static_cast<std::size_t>(n));
    std::map<std::string, Stance> stances;
    for (int i = 0; i < n; ++i) {
      char buf[8];
      std::snprintf(buf, sizeof(buf), "u%02d", i);
      names[static_cast<std::size_t>(i)] = buf;
      stances[buf] = (rng() % 2) ? Stance::Pro : Stance::Anti;
    }
    std::vector<std::pair<std::string, std::string>> edges;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i != j && (rng() % 1000) < p * 1000) {
          edges.emplace_back(names[static_cast<std::size_t>(i)],
                             names[static_cast<std::size_t>(j)]);
        }
      }
    }
    CommNetwork net = make_network(NetworkKind::mention, names, edges, stances);

    NetOracle o;
    o.n = static_cast<int>(net.node_count());
    o.adj.assign(static_cast<std::size_t>(o.n), std::vector<bool>(static_cast<std::size_t>(o.n), false));
    o.st = net.stance;
    for (const auto& [e, mult] : net.edges) {
      o.adj[static_cast<std::size_t>(e.first)][static_cast<std::size_t>(e.second)] = true;
    }

    std::vector<bool> all(static_cast<std::size_t>(o.n), true);
    auto close = [](double a, double b) { return std::fabs(a - b) <= 1e-12; };

    auto od = o.density(all);
    c.expect(od && close(density(net), *od), "density mismatch at trial " + std::to_string(trial));
    auto orr = o.reciprocity(all);
    if (orr) {
      c.expect(close(reciprocity(net), *orr),
               "reciprocity mismatch at trial " + std::to_string(trial));
      ++compared;
    }
    for (Stance g : {Stance::Pro, Stance::Anti}) {
      auto oe = o.ei(g);
      if (oe) {
        c.expect(close(ei_index(net, g).ei, *oe), "ei mismatch at trial " + std::to_string(trial));
        ++compared;
      }
      auto oc = o.ec(g);
      if (oc) {
        c.expect(close(echo_chamberness(net, g), *oc),
                 "ec mismatch at trial " + std::to_string(trial));
        ++compared;
      }
    }
  }
  c.expect(compared > 1000, "too few defined metric comparisons");
}

// ---------------------------------------------------------------- criterion 3

void criterion_3(Check& c) {
  HashtagGraph g;
  auto edge = [&](const std::string& a, const std::string& b, long long w) {
    g.nodes.insert(a);
    g.nodes.insert(b);
    g.adj[a][b] = w;
    g.adj[b][a] = w;
  };
  // documented trace: sweep order r,a,g,m,b,u by descending incident weight
  edge("a", "m", 3);
  edge("b", "m", 1);
  edge("a", "r", 5);
  edge("r", "g", 4);
  edge("b", "g", 1);
  edge("g", "u", 2);
  g = apply_seeds(std::move(g), {{"a", 1.0}, {"b", -1.0}});

  PropagationRun run = propagate(g);  // gamma = 50

  c.expect(run.order == std::vector<std::string>{"r", "a", "g", "m", "b", "u"},
           "sweep order differs from the documented trace");
  auto val = [&](const char* n) { return run.graph.valence.at(n); };
  c.expect(val("a") == 1.0 && val("b") == -1.0, "seeds not frozen");
  c.expect(val("m") == 0.5, "mixed-neighbor node: expected +0.5 exactly");
  c.expect(val("r") == 1.0, "slack-gated node: expected +1 exactly");
  c.expect(val("g") == 3.0 / 5.0, "async-visible node: expected 0.6 exactly");
  c.expect(val("u") == 3.0 / 5.0, "leaf node: expected 0.6 exactly");
  c.expect(run.labeled_at_slack.at("m") == 0, "m should label in the first sweep");
  c.expect(run.labeled_at_slack.at("r") == 1, "r should need slack 1");
  c.expect(run.labeled_at_slack.at("g") == 1, "g should label at slack 1 via async update");
  c.expect(run.labeled_at_slack.at("u") == 1, "u should label at slack 1");
  c.expect(run.final_slack == 3, "run should stop once slack covers the max degree");
}

// ---------------------------------------------------------------- criterion 4

struct SeedOutcome {
  bool recovery = false, z1_sig = false, z2_sig = false, ei_neg = false, ec_order = false;
  bool all() const { return recovery && z1_sig && z2_sig && ei_neg && ec_order; }
};

SeedOutcome run_planted_seed(std::uint64_t seed, const std::vector<LexicalCategory>& lexicons) {
  SynthParams params;
  params.users_per_group = 1000;
  params.tweets_per_user = 50;
  params.seed_hashtag_rate = 0.3;
  params.shared_hashtag_vocab = 30;
  params.category_rates["amplifiers"] = {0.30, 0.10};
  for (NetworkPlant* np : {&params.mention, &params.retweet, &params.reply}) {
    np->p_in_pro = 0.01;
    np->p_in_anti = 0.02;  // asymmetric plant: the anti analog is denser
    np->p_out = 0.001;
  }
  params.rng_seed = seed;

  std::ostringstream corpus_js, truth_js;
  generate(params, lexicons, corpus_js, truth_js);
  std::istringstream corpus_in(corpus_js.str());
  Corpus corpus = lemma_filter(parse_corpus(corpus_in));
  std::istringstream truth_in(truth_js.str());
  SynthTruth truth = load_truth(truth_in);

  HashtagGraph g = build_cooccurrence(corpus);
  g = apply_seeds(std::move(g), {{"vaccineswork", 1.0}, {"learntherisk", -1.0}});
  PropagationRun run = propagate(g);
  StanceAssignment st = assign_stances(corpus, run.graph.valence);

  SeedOutcome out;

  std::size_t scored = 0, correct = 0;
  for (const auto& [user, planted] : truth.user_group) {
    auto v = st.valence.find(user);
    if (v == st.valence.end()) continue;
    ++scored;
    if (st.label.at(user) == planted) ++correct;
  }
  out.recovery = scored > 0 && double(correct) / double(scored) >= 0.95;

  Corpus deduped = dedupe(corpus);
  Corpus pro, anti;
  for (const TweetRecord& t : deduped.tweets) {
    auto it = st.label.find(t.user_id);
    if (it == st.label.end()) continue;
    if (it->second == Stance::Pro) pro.tweets.push_back(t);
    if (it->second == Stance::Anti) anti.tweets.push_back(t);
  }
  pro.rebuild_user_index();
  anti.rebuild_user_index();
  auto rows = analyze(pro, anti, lexicons);
  for (const CategoryStats& r : rows) {
    if (r.category_id == "amplifiers") {
      out.z1_sig = r.significant_1 && r.z1 && *r.z1 > 0.0 && *r.p1 < 0.05;
      out.z2_sig = r.significant_2 && r.z2 && *r.z2 > 0.0 && *r.p2 < 0.05;
    }
  }

  Networks nets = build_networks(corpus, st);
  out.ei_neg = true;
  out.ec_order = true;
  for (const CommNetwork* net : {&nets.mention, &nets.retweet, &nets.reply}) {
    GroupNetworkMetrics m = group_metrics(*net);
    out.ei_neg = out.ei_neg && m.ei_pro && *m.ei_pro < 0.0 && m.ei_anti && *m.ei_anti < 0.0;
    out.ec_order = out.ec_order && m.ec_pro && m.ec_anti && *m.ec_anti > *m.ec_pro;
  }
  return out;
}

void criterion_4(Check& c) {
  std::vector<LexicalCategory> lexicons = default_lexicons();
  int passed = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SeedOutcome out = run_planted_seed(seed, lexicons);
    if (out.all()) {
      ++passed;
    } else {
      c.detail << "[seed " << seed << ": recovery=" << out.recovery << " z1=" << out.z1_sig
               << " z2=" << out.z2_sig << " ei=" << out.ei_neg << " ec=" << out.ec_order << "] ";
    }
  }
  c.expect(passed >= 19, "planted-recovery pass rate " + std::to_string(passed) + "/20 < 19/20");
}

// ---------------------------------------------------------------- criterion 5

void criterion_5(Check& c) {
  CategoryMatcher matcher(default_lexicons());
  std::ifstream in(std::filesystem::path(STANCEKIT_SOURCE_DIR) /
                   "tests/data/lexicon_golden.jsonl");
  if (!in) {
    c.expect(false, "golden file missing");
    return;
  }
  std::string line;
  std::size_t checked = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json rec = nlohmann::json::parse(line);
    std::set<std::string> expect(rec["expect"].begin(), rec["expect"].end());
    std::set<std::string> got = matcher.match(rec["text"].get<std::string>());
    if (got != expect) {
      c.expect(false, "mismatch on \"" + rec["text"].get<std::string>() + "\"");
    }
    ++checked;
  }
  c.expect(checked == 20, "expected 20 golden tweets, saw " + std::to_string(checked));
}

// ---------------------------------------------------------------- criterion 6

void criterion_6(Check& c) {
  for (int i = 0; i <= 40; ++i) {
    double x = -6.0 + 12.0 * i / 40.0;
    long double oracle = 0.5L * erfcl(-static_cast<long double>(x) / sqrtl(2.0L));
    double err = std::fabs(normal_cdf(x) - static_cast<double>(oracle));
    if (err > 1e-7) {
      char buf[96];
      std::snprintf(buf, sizeof(buf), "normal_cdf(%.2f) off by %.3g", x, err);
      c.expect(false, buf);
    }
  }
  c.expect(std::fabs(p_value(1.959964) - 0.05) <= 1e-4, "p_value(+1.959964) not 0.05 +- 1e-4");
  c.expect(std::fabs(p_value(-1.959964) - 0.05) <= 1e-4, "p_value(-1.959964) not 0.05 +- 1e-4");
}

// ---------------------------------------------------------------- criterion 7

void criterion_7(Check& c) {
  std::mt19937 rng(777);

  // z antisymmetry under group swap
  for (int i = 0; i < 200; ++i) {
    double p1 = (1 + rng() % 98) / 100.0, p2 = (1 + rng() % 98) / 100.0;
    long long n1 = 5 + rng() % 500, n2 = 5 + rng() % 500;
    c.expect(z_prop(p2, n2, p1, n1) == -z_prop(p1, n1, p2, n2), "z_prop not antisymmetric");
    double s1 = (1 + rng() % 40) / 100.0, s2 = (1 + rng() % 40) / 100.0;
    c.expect(z_means(p2, s2, n2 + 2, p1, s1, n1 + 2) == -z_means(p1, s1, n1 + 2, p2, s2, n2 + 2),
             "z_means not antisymmetric");
  }

  // propagation sign symmetry under seed negation
  for (int trial = 0; trial < 20; ++trial) {
    HashtagGraph g, neg;
    int n = 4 + static_cast<int>(rng() % 7);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (rng() % 3 == 0) {
          long long w = 1 + static_cast<long long>(rng() % 5);
          std::string a = "h" + std::to_string(i), b = "h" + std::to_string(j);
          for (HashtagGraph* gr : {&g, &neg}) {
            gr->nodes.insert(a);
            gr->nodes.insert(b);
            gr->adj[a][b] = w;
            gr->adj[b][a] = w;
          }
        }
      }
    }
    g.nodes.insert("h0");
    g.nodes.insert("h1");
    neg.nodes = g.nodes;
    g = apply_seeds(std::move(g), {{"h0", 1.0}, {"h1", -1.0}});
    neg = apply_seeds(std::move(neg), {{"h0", -1.0}, {"h1", 1.0}});
    PropagationRun r1 = propagate(g);
    PropagationRun r2 = propagate(neg);
    c.expect(r1.graph.valence.size() == r2.graph.valence.size(), "labeled sets differ");
    for (const auto& [node, v] : r1.graph.valence) {
      c.expect(r2.graph.valence.count(node) == 1 && r2.graph.valence.at(node) == -v,
               "valence not negated for " + node);
      Stance s1 = assign_stance(v), s2 = assign_stance(r2.graph.valence.at(node));
      bool swapped = (s1 == Stance::Pro && s2 == Stance::Anti) ||
                     (s1 == Stance::Anti && s2 == Stance::Pro) ||
                     (s1 == Stance::Unlabeled && s2 == Stance::Unlabeled);
      c.expect(swapped, "label swap violated for " + node);
    }
  }

  // stance-swap symmetry of the network metric bundle
  for (int trial = 0; trial < 20; ++trial) {
    int n = 6 + static_cast<int>(rng() % 14);
    std::vector<std::string> names;
    std::map<std::string, Stance> st, sw;
    for (int i = 0; i < n; ++i) {
      names.push_back("u" + std::to_string(i));
      Stance s = (i < 2) ? (i == 0 ? Stance::Pro : Stance::Anti)
                         : ((rng() % 2) ? Stance::Pro : Stance::Anti);
      st[names.back()] = s;
      sw[names.back()] = s == Stance::Pro ? Stance::Anti : Stance::Pro;
    }
    std::vector<std::pair<std::string, std::string>> edges;
    for (int i = 0; i < 4 * n; ++i) {
      edges.emplace_back(names[rng() % n], names[rng() % n]);
    }
    CommNetwork a = make_network(NetworkKind::reply, names, edges, st);
    CommNetwork b = make_network(NetworkKind::reply, names, edges, sw);
    GroupNetworkMetrics ma = group_metrics(a), mb = group_metrics(b);
    c.expect(ma.density_pro == mb.density_anti && ma.density_anti == mb.density_pro,
             "density swap violated");
    c.expect(ma.ei_pro == mb.ei_anti && ma.ei_anti == mb.ei_pro, "ei swap violated");
    c.expect(ma.ec_pro == mb.ec_anti && ma.ec_anti == mb.ec_pro, "ec swap violated");
  }

  // filter idempotence
  for (int trial = 0; trial < 10; ++trial) {
    Corpus c0;
    int n = 30 + static_cast<int>(rng() % 40);
    for (int i = 0; i < n; ++i) {
      TweetRecord t;
      t.tweet_id = "t" + std::to_string(i);
      t.user_id = "u" + std::to_string(rng() % 6);
      switch (rng() % 4) {
        case 0: t.text = "vacc note " + std::to_string(rng() % 9); break;
        case 1: t.text = "vacc  note   " + std::to_string(rng() % 9); break;
        case 2: t.text = "unrelated words"; break;
        default: t.text = "provaxx " + std::to_string(rng() % 9); break;
      }
      c0.tweets.push_back(t);
    }
    c0.rebuild_user_index();
    Corpus f1 = lemma_filter(c0);
    c.expect(lemma_filter(f1).tweets == f1.tweets, "lemma_filter not idempotent");
    Corpus d1 = dedupe(c0);
    c.expect(dedupe(d1).tweets == d1.tweets, "dedupe not idempotent");
  }
}

struct Criterion {
  int number;
  const char* description;
  void (*fn)(Check&);
  double budget_seconds;  // 0: no stated budget
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "Z1 recomputation from the published group comparison", criterion_1, 1.0},
      {2, "network metrics match the naive enumeration oracle on 1000 digraphs", criterion_2,
       10.0},
      {3, "label propagation six-node hand trace", criterion_3, 1.0},
      {4, "end-to-end planted recovery over 20 seeds", criterion_4, 60.0},
      {5, "lexicon golden file, 20 curated tweets", criterion_5, 0.0},
      {6, "normal CDF and two-sided p-value accuracy", criterion_6, 0.0},
      {7, "module invariant suites", criterion_7, 0.0},
  };

  int failures = 0;
  for (const Criterion& cr : criteria) {
    auto start = std::chrono::steady_clock::now();
    Check check;
    try {
      cr.fn(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    double elapsed = seconds_since(start);
    if (cr.budget_seconds > 0.0 && elapsed > cr.budget_seconds) {
      check.expect(false, "runtime " + std::to_string(elapsed) + "s over budget " +
                              std::to_string(cr.budget_seconds) + "s");
    }
    char timing[32];
    std::snprintf(timing, sizeof(timing), "%.2fs", elapsed);
    if (check.ok) {
      std::cout << "[PASS] criterion " << cr.number << ": " << cr.description << " (" << timing
                << ")\n";
    } else {
      ++failures;
      std::cout << "[FAIL] criterion " << cr.number << ": " << cr.description << " (" << timing
                << ") -- " << check.detail.str() << "\n";
    }
  }
  return failures == 0 ? 0 : 1;
}
