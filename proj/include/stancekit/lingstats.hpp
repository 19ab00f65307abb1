#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "stancekit/ingest.hpp"
#include "stancekit/lexicon.hpp"
#include "stancekit/log.hpp"

namespace stancekit {

struct StatsConfig {
  double alpha = 0.05;
  std::size_t min_user_tweets = 1;

  void validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) {
      throw std::invalid_argument("alpha must lie strictly between 0 and 1");
    }
  }
};

namespace detail {

// Rational Chebyshev approximation to erfc after W. J. Cody (Math. Comp.
// 23, 1969). Three regimes; relative accuracy near machine precision.
inline double cody_erfc(double x) {
  static constexpr double kA[5] = {3.1611237438705656, 113.864154151050156, 377.485237685302021,
                                   3209.37758913846947, 0.185777706184603153};
  static constexpr double kB[4] = {23.6012909523441209, 244.024637934444173, 1282.61652607737228,
                                   2844.23683343917062};
  static constexpr double kC[9] = {0.564188496988670089, 8.88314979438837594, 66.1191906371416295,
                                   298.635138197400131,  881.95222124176909,  1712.04761263407058,
                                   2051.07837782607147,  1230.33935479799725, 2.15311535474403846e-8};
  static constexpr double kD[8] = {15.7449261107098347, 117.693950891312499, 537.181101862009858,
                                   1621.38957456669019, 3290.79923573345963, 4362.61909014324716,
                                   3439.36767414372164, 1230.33935480374942};
  static constexpr double kP[6] = {0.305326634961232344, 0.360344899949804439,
                                   0.125781726111229246, 0.0160837851487422766,
                                   6.58749161529837803e-4, 0.0163153871373020978};
  static constexpr double kQ[5] = {2.56852019228982242, 1.87295284992346047, 0.527905102951428412,
                                   0.0605183413124413191, 0.00233520497626869185};
  static constexpr double kSqrtPiInv = 0.56418958354775628695;

  const double y = std::fabs(x);
  double result = 0.0;
  if (y <= 0.46875) {
    double ysq = y > 1.11e-16 ? y * y : 0.0;
    double xnum = kA[4] * ysq;
    double xden = ysq;
    for (int i = 0; i < 3; ++i) {
      xnum = (xnum + kA[i]) * ysq;
      xden = (xden + kB[i]) * ysq;
    }
    return 1.0 - x * (xnum + kA[3]) / (xden + kB[3]);
  }
  if (y <= 4.0) {
    double xnum = kC[8] * y;
    double xden = y;
    for (int i = 0; i < 7; ++i) {
      xnum = (xnum + kC[i]) * y;
      xden = (xden + kD[i]) * y;
    }
    result = (xnum + kC[7]) / (xden + kD[7]);
    double ysq = std::trunc(y * 16.0) / 16.0;
    double del = (y - ysq) * (y + ysq);
    result *= std::exp(-ysq * ysq) * std::exp(-del);
  } else if (y < 26.543) {
    double ysq = 1.0 / (y * y);
    double xnum = kP[5] * ysq;
    double xden = ysq;
    for (int i = 0; i < 4; ++i) {
      xnum = (xnum + kP[i]) * ysq;
      xden = (xden + kQ[i]) * ysq;
    }
    result = ysq * (xnum + kP[4]) / (xden + kQ[4]);
    result = (kSqrtPiInv - result) / y;
    double yq = std::trunc(y * 16.0) / 16.0;
    double del = (y - yq) * (y + yq);
    result *= std::exp(-yq * yq) * std::exp(-del);
  }
  return x < 0.0 ? 2.0 - result : result;
}

}  // namespace detail

/// Standard normal CDF.
inline double normal_cdf(double x) {
  return 0.5 * detail::cody_erfc(-x / std::sqrt(2.0));
}

/// Two-sided p-value, floored at 1e-15 so extreme z-scores stay positive.
inline double p_value(double z) {
  double p = 2.0 * (1.0 - normal_cdf(std::fabs(z)));
  return std::max(p, 1e-15);
}

/// Two-sample z-test for a difference of proportions (pooled variance).
inline double z_prop(double p1, long long n1, double p2, long long n2) {
  if (n1 <= 0 || n2 <= 0) throw std::invalid_argument("z_prop: group sizes must be positive");
  double pooled = (p1 * static_cast<double>(n1) + p2 * static_cast<double>(n2)) /
                  static_cast<double>(n1 + n2);
  if (pooled <= 0.0 || pooled >= 1.0) {
    throw std::domain_error("z_prop: degenerate pooled proportion");
  }
  double se = std::sqrt(pooled * (1.0 - pooled) *
                        (1.0 / static_cast<double>(n1) + 1.0 / static_cast<double>(n2)));
  return (p1 - p2) / se;
}

/// Independent (unpooled) z-test for a difference of means.
inline double z_means(double m1, double s1, long long n1, double m2, double s2, long long n2) {
  if (n1 < 2 || n2 < 2) throw std::invalid_argument("z_means: need at least 2 users per group");
  double var = s1 * s1 / static_cast<double>(n1) + s2 * s2 / static_cast<double>(n2);
  if (var <= 0.0) throw std::domain_error("z_means: combined variance is zero");
  return (m1 - m2) / std::sqrt(var);
}

/// Fraction of tweets whose match set contains the category.
inline double t1(const std::vector<std::set<std::string>>& match_sets, const std::string& category) {
  if (match_sets.empty()) throw std::invalid_argument("t1: group has no tweets");
  std::size_t hits = 0;
  for (const auto& s : match_sets) hits += s.count(category);
  return static_cast<double>(hits) / static_cast<double>(match_sets.size());
}

struct T2Result {
  double mean = 0.0;
  std::optional<double> sd;  // sample sd (n-1); absent for a single user
  std::size_t n_users = 0;
};

/// Mean over users of the per-user proportion of matching tweets. Users
/// with fewer than `min_user_tweets` tweets are excluded with a warning.
inline T2Result t2(const std::map<std::string, std::vector<std::set<std::string>>>& per_user,
                   const std::string& category, std::size_t min_user_tweets = 1) {
  std::vector<double> props;
  for (const auto& [user, sets] : per_user) {
    if (sets.size() < min_user_tweets || sets.empty()) {
      log_warn("t2: user \"" + user + "\" has " + std::to_string(sets.size()) +
               " tweets (< " + std::to_string(min_user_tweets) + "), excluded");
      continue;
    }
    std::size_t hits = 0;
    for (const auto& s : sets) hits += s.count(category);
    props.push_back(static_cast<double>(hits) / static_cast<double>(sets.size()));
  }
  if (props.empty()) throw std::invalid_argument("t2: no users with enough tweets");

  T2Result r;
  r.n_users = props.size();
  double sum = 0.0;
  for (double p : props) sum += p;
  r.mean = sum / static_cast<double>(props.size());
  if (props.size() >= 2) {
    double ss = 0.0;
    for (double p : props) ss += (p - r.mean) * (p - r.mean);
    r.sd = std::sqrt(ss / static_cast<double>(props.size() - 1));
  }
  return r;
}

/// One row of the linguistic comparison. Absent optionals mean the
/// statistic is undefined for this category (degenerate test or, for the
/// per-user block, a category that reports the tweet-level statistic only).
struct CategoryStats {
  std::string category_id;
  std::string display_name;

  std::optional<double> t1_pro, t1_anti;
  std::optional<double> z1, p1;
  bool significant_1 = false;

  std::optional<double> t2_pro, t2_anti;
  std::optional<double> sd_pro, sd_anti;
  std::size_t n_users_pro = 0, n_users_anti = 0;
  std::optional<double> z2, p2;
  bool significant_2 = false;
};

namespace detail {

struct GroupMatches {
  std::vector<std::vector<bool>> tweet_masks;
  std::map<std::string, std::vector<std::size_t>> user_tweets;  // user -> mask indices
};

inline GroupMatches match_group(const Corpus& corpus, const CategoryMatcher& matcher) {
  GroupMatches g;
  g.tweet_masks.reserve(corpus.tweets.size());
  for (const TweetRecord& t : corpus.tweets) {
    g.tweet_masks.push_back(matcher.match_mask(t.text));
  }
  for (const auto& [user, indices] : corpus.users) {
    g.user_tweets[user] = indices;
  }
  return g;
}

struct MeanSd {
  double mean = 0.0;
  std::optional<double> sd;
  std::size_t n = 0;
};

inline std::optional<MeanSd> user_mean_sd(const GroupMatches& g, std::size_t ci,
                                          std::size_t min_user_tweets) {
  std::vector<double> props;
  std::size_t excluded = 0;
  for (const auto& [user, indices] : g.user_tweets) {
    if (indices.size() < min_user_tweets || indices.empty()) {
      ++excluded;
      continue;
    }
    std::size_t hits = 0;
    for (std::size_t idx : indices) {
      if (g.tweet_masks[idx][ci]) ++hits;
    }
    props.push_back(static_cast<double>(hits) / static_cast<double>(indices.size()));
  }
  if (excluded > 0) {
    log_warn("analyze: excluded " + std::to_string(excluded) +
             " users below the per-user tweet minimum");
  }
  if (props.empty()) return std::nullopt;
  MeanSd r;
  r.n = props.size();
  double sum = 0.0;
  for (double p : props) sum += p;
  r.mean = sum / static_cast<double>(props.size());
  if (props.size() >= 2) {
    double ss = 0.0;
    for (double p : props) ss += (p - r.mean) * (p - r.mean);
    r.sd = std::sqrt(ss / static_cast<double>(props.size() - 1));
  }
  return r;
}

}  // namespace detail

/// Computes the full per-category comparison between the two groups: the
/// tweet-level proportion test and the per-user mean test, each with its
/// two-sided significance decision at `cfg.alpha`.
inline std::vector<CategoryStats> analyze(const Corpus& pro, const Corpus& anti,
                                          const std::vector<LexicalCategory>& categories,
                                          const StatsConfig& cfg = {}) {
  cfg.validate();
  if (pro.tweets.empty() || anti.tweets.empty()) {
    throw std::invalid_argument("analyze: both groups must be non-empty");
  }
  CategoryMatcher matcher(categories);
  detail::GroupMatches gp = detail::match_group(pro, matcher);
  detail::GroupMatches ga = detail::match_group(anti, matcher);

  const auto n_pro = static_cast<long long>(pro.tweets.size());
  const auto n_anti = static_cast<long long>(anti.tweets.size());

  std::vector<CategoryStats> rows;
  for (std::size_t ci = 0; ci < categories.size(); ++ci) {
    const LexicalCategory& cat = categories[ci];
    CategoryStats row;
    row.category_id = cat.id;
    row.display_name = cat.display_name;

    std::size_t hits_pro = 0, hits_anti = 0;
    for (const auto& m : gp.tweet_masks) hits_pro += m[ci];
    for (const auto& m : ga.tweet_masks) hits_anti += m[ci];
    row.t1_pro = static_cast<double>(hits_pro) / static_cast<double>(n_pro);
    row.t1_anti = static_cast<double>(hits_anti) / static_cast<double>(n_anti);
    try {
      row.z1 = z_prop(*row.t1_pro, n_pro, *row.t1_anti, n_anti);
      row.p1 = p_value(*row.z1);
      row.significant_1 = *row.p1 < cfg.alpha;
    } catch (const std::domain_error&) {
      // degenerate pooled proportion: leave the test absent
    }

    if (cat.t2_enabled) {
      auto mp = detail::user_mean_sd(gp, ci, cfg.min_user_tweets);
      auto ma = detail::user_mean_sd(ga, ci, cfg.min_user_tweets);
      if (mp && ma) {
        row.t2_pro = mp->mean;
        row.t2_anti = ma->mean;
        row.sd_pro = mp->sd;
        row.sd_anti = ma->sd;
        row.n_users_pro = mp->n;
        row.n_users_anti = ma->n;
        if (mp->sd && ma->sd) {
          try {
            row.z2 = z_means(mp->mean, *mp->sd, static_cast<long long>(mp->n), ma->mean, *ma->sd,
                             static_cast<long long>(ma->n));
            row.p2 = p_value(*row.z2);
            row.significant_2 = *row.p2 < cfg.alpha;
          } catch (const std::domain_error&) {
          } catch (const std::invalid_argument&) {
          }
        }
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace stancekit
