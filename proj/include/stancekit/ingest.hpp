#pragma once

#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "stancekit/util.hpp"

namespace stancekit {

/// One social-media post. Hashtags are stored normalized: lowercase, no
/// leading '#'. Interaction targets keep whatever the raw record said,
/// including self-references; those are filtered when networks are built.
struct TweetRecord {
  std::string tweet_id;
  std::string user_id;
  std::string text;
  std::optional<std::string> created_at;
  std::vector<std::string> hashtags;
  std::optional<std::string> retweet_of_user;
  std::optional<std::string> reply_to_user;
  std::vector<std::string> mentioned_users;

  bool operator==(const TweetRecord&) const = default;
};

struct Corpus {
  std::vector<TweetRecord> tweets;
  // author -> indices into tweets, in corpus order
  std::unordered_map<std::string, std::vector<std::size_t>> users;

  void rebuild_user_index() {
    users.clear();
    for (std::size_t i = 0; i < tweets.size(); ++i) {
      users[tweets[i].user_id].push_back(i);
    }
  }
};

// Seam for alternative corpus sources (live collectors, archives). The
// shipped implementation is file-based JSON Lines only.
struct CorpusSource {
  virtual ~CorpusSource() = default;
  virtual Corpus fetch() = 0;
};

namespace detail {

inline bool is_tag_word_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
         c == '_' || static_cast<unsigned char>(c) >= 0x80;
}

[[noreturn]] inline void parse_fail(std::size_t line_no, const std::string& what) {
  throw std::runtime_error("parse error at line " + std::to_string(line_no) + ": " + what);
}

inline std::string normalize_hashtag(std::string_view raw, std::size_t line_no) {
  std::string tag = lowercase_ascii(raw);
  std::size_t lead = 0;
  while (lead < tag.size() && tag[lead] == '#') ++lead;
  tag.erase(0, lead);
  for (char c : tag) {
    if (c == '#' || is_space_char(c)) {
      parse_fail(line_no, "field 'hashtags': malformed hashtag \"" + std::string(raw) + "\"");
    }
  }
  return tag;
}

// Maximal runs of word characters following '#'.
inline std::vector<std::string> extract_hashtags(std::string_view text) {
  std::vector<std::string> tags;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '#') continue;
    std::size_t j = i + 1;
    while (j < text.size() && is_tag_word_char(text[j])) ++j;
    if (j > i + 1) tags.push_back(lowercase_ascii(text.substr(i + 1, j - i - 1)));
    i = j - 1;
  }
  return tags;
}

inline std::string require_string_field(const nlohmann::json& rec, const char* key,
                                        std::size_t line_no) {
  auto it = rec.find(key);
  if (it == rec.end()) parse_fail(line_no, std::string("missing required field '") + key + "'");
  if (!it->is_string()) parse_fail(line_no, std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

inline std::optional<std::string> optional_string_field(const nlohmann::json& rec, const char* key,
                                                        std::size_t line_no) {
  auto it = rec.find(key);
  if (it == rec.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) parse_fail(line_no, std::string("field '") + key + "' must be a string");
  std::string v = it->get<std::string>();
  if (v.empty()) return std::nullopt;
  return v;
}

}  // namespace detail

/// Parses a JSON Lines stream (fields: id, user, text, created_at?,
/// hashtags?, retweet_of_user?, reply_to_user?, mentions?). Blank lines are
/// skipped. Malformed lines and duplicate tweet ids are hard errors naming
/// the line.
inline Corpus parse_corpus(std::istream& in) {
  Corpus corpus;
  std::unordered_set<std::string> seen_ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    nlohmann::json rec = nlohmann::json::parse(line, nullptr, false);
    if (rec.is_discarded()) detail::parse_fail(line_no, "invalid JSON");
    if (!rec.is_object()) detail::parse_fail(line_no, "record is not a JSON object");

    TweetRecord t;
    t.tweet_id = detail::require_string_field(rec, "id", line_no);
    if (t.tweet_id.empty()) detail::parse_fail(line_no, "field 'id' must be non-empty");
    t.user_id = detail::require_string_field(rec, "user", line_no);
    if (t.user_id.empty()) detail::parse_fail(line_no, "field 'user' must be non-empty");
    t.text = detail::require_string_field(rec, "text", line_no);
    t.created_at = detail::optional_string_field(rec, "created_at", line_no);
    t.retweet_of_user = detail::optional_string_field(rec, "retweet_of_user", line_no);
    t.reply_to_user = detail::optional_string_field(rec, "reply_to_user", line_no);

    if (auto it = rec.find("hashtags"); it != rec.end() && !it->is_null()) {
      if (!it->is_array()) detail::parse_fail(line_no, "field 'hashtags' must be an array");
      for (const auto& h : *it) {
        if (!h.is_string()) detail::parse_fail(line_no, "field 'hashtags' must contain strings");
        std::string tag = detail::normalize_hashtag(h.get<std::string>(), line_no);
        if (!tag.empty()) t.hashtags.push_back(std::move(tag));
      }
    } else {
      t.hashtags = detail::extract_hashtags(t.text);
    }

    if (auto it = rec.find("mentions"); it != rec.end() && !it->is_null()) {
      if (!it->is_array()) detail::parse_fail(line_no, "field 'mentions' must be an array");
      for (const auto& m : *it) {
        if (!m.is_string()) detail::parse_fail(line_no, "field 'mentions' must contain strings");
        std::string u = m.get<std::string>();
        if (!u.empty()) t.mentioned_users.push_back(std::move(u));
      }
    }

    corpus.tweets.push_back(std::move(t));
    if (!seen_ids.insert(corpus.tweets.back().tweet_id).second) {
      detail::parse_fail(line_no, "duplicate tweet id \"" + corpus.tweets.back().tweet_id + "\"");
    }
  }
  corpus.rebuild_user_index();
  return corpus;
}

inline Corpus parse_corpus_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open corpus file: " + path.string());
  return parse_corpus(in);
}

class JsonLinesSource final : public CorpusSource {
 public:
  explicit JsonLinesSource(std::filesystem::path path) : path_(std::move(path)) {}
  Corpus fetch() override { return parse_corpus_file(path_); }

 private:
  std::filesystem::path path_;
};

inline void serialize_tweet(const TweetRecord& t, nlohmann::ordered_json& rec) {
  rec["id"] = t.tweet_id;
  rec["user"] = t.user_id;
  rec["text"] = t.text;
  if (t.created_at) rec["created_at"] = *t.created_at;
  rec["hashtags"] = t.hashtags;
  if (t.retweet_of_user) rec["retweet_of_user"] = *t.retweet_of_user;
  if (t.reply_to_user) rec["reply_to_user"] = *t.reply_to_user;
  rec["mentions"] = t.mentioned_users;
}

/// Writes the corpus back out in the same JSON Lines schema it is read from.
inline void serialize_corpus(const Corpus& corpus, std::ostream& out) {
  for (const TweetRecord& t : corpus.tweets) {
    nlohmann::ordered_json rec;
    serialize_tweet(t, rec);
    out << rec.dump() << "\n";
  }
}

/// Keeps exactly the tweets whose lowercased text contains at least one of
/// the topical lemmas as a plain substring.
inline Corpus lemma_filter(const Corpus& corpus,
                           const std::vector<std::string>& lemmas = {"vacc", "vax"}) {
  if (lemmas.empty()) throw std::invalid_argument("lemma_filter: lemma list must be non-empty");
  for (const std::string& lemma : lemmas) {
    if (lemma.empty() || lemma != lowercase_ascii(lemma)) {
      throw std::invalid_argument("lemma_filter: lemmas must be non-empty and lowercase: \"" +
                                  lemma + "\"");
    }
  }
  Corpus out;
  for (const TweetRecord& t : corpus.tweets) {
    std::string lowered = lowercase_ascii(t.text);
    for (const std::string& lemma : lemmas) {
      if (contains_ci(lowered, lemma)) {
        out.tweets.push_back(t);
        break;
      }
    }
  }
  out.rebuild_user_index();
  return out;
}

/// Key under which texts are considered duplicates: surrounding whitespace
/// trimmed, internal whitespace runs collapsed to one space.
inline std::string dedupe_key(std::string_view text) { return collapse_whitespace(text); }

/// One tweet per distinct normalized text; first occurrence in corpus order
/// wins.
inline Corpus dedupe(const Corpus& corpus) {
  Corpus out;
  std::unordered_set<std::string> seen;
  for (const TweetRecord& t : corpus.tweets) {
    if (seen.insert(dedupe_key(t.text)).second) out.tweets.push_back(t);
  }
  out.rebuild_user_index();
  return out;
}

}  // namespace stancekit
