#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "stancekit/ingest.hpp"
#include "stancekit/util.hpp"

namespace stancekit {

enum class EntryKind { single_token, token_sequence, suffix_pattern, char_pattern };

/// One lexicon matcher. `value` keeps the config spelling ("-ass", "!");
/// sequences additionally carry their token list.
struct LexiconEntry {
  EntryKind kind = EntryKind::single_token;
  std::string value;
  std::vector<std::string> seq;

  bool operator==(const LexiconEntry&) const = default;
};

/// A named lexical category. Categories form a forest of depth <= 1; a
/// parent matches whenever any child or any of its own entries matches.
/// `t2_enabled` marks whether the per-user mean statistic applies (the
/// exclamation category reports the tweet-level statistic only).
struct LexicalCategory {
  std::string id;
  std::string display_name;
  std::optional<std::string> parent;
  bool t2_enabled = true;
  std::vector<LexiconEntry> entries;
};

/// Lowercased tokens with URLs, @-mentions, and #-hashtags removed.
/// Word-internal apostrophes and hyphens survive ("you're", "big-ass");
/// typographic apostrophes are normalized to ASCII.
struct TokenStream {
  std::vector<std::string> tokens;
  std::string raw_text;
};

namespace detail {

inline bool is_token_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '\'' || c == '-' ||
         static_cast<unsigned char>(c) >= 0x80;
}

inline bool is_handle_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' ||
         static_cast<unsigned char>(c) >= 0x80;
}

inline std::string normalize_apostrophes(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    // U+2018 / U+2019 -> '
    if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
        static_cast<unsigned char>(text[i + 1]) == 0x80 &&
        (static_cast<unsigned char>(text[i + 2]) == 0x98 ||
         static_cast<unsigned char>(text[i + 2]) == 0x99)) {
      out.push_back('\'');
      i += 2;
      continue;
    }
    out.push_back(text[i]);
  }
  return out;
}

inline std::string strip_outer_marks(std::string_view token) {
  std::size_t b = 0, e = token.size();
  while (b < e && (token[b] == '\'' || token[b] == '-')) ++b;
  while (e > b && (token[e - 1] == '\'' || token[e - 1] == '-')) --e;
  return std::string(token.substr(b, e - b));
}

}  // namespace detail

inline TokenStream tokenize(std::string_view text) {
  TokenStream ts;
  ts.raw_text = std::string(text);
  std::string lowered = lowercase_ascii(detail::normalize_apostrophes(text));

  std::size_t i = 0;
  const std::size_t n = lowered.size();
  while (i < n) {
    if (is_space_char(lowered[i])) {
      ++i;
      continue;
    }
    // one whitespace-delimited chunk
    std::size_t chunk_end = i;
    while (chunk_end < n && !is_space_char(lowered[chunk_end])) ++chunk_end;

    std::size_t p = i;
    while (p < chunk_end) {
      char c = lowered[p];
      if (c == '@' || c == '#') {
        ++p;
        while (p < chunk_end && detail::is_handle_char(lowered[p])) ++p;
        continue;
      }
      if (detail::is_token_char(c)) {
        std::size_t start = p;
        while (p < chunk_end && detail::is_token_char(lowered[p])) ++p;
        std::string token = detail::strip_outer_marks(
            std::string_view(lowered).substr(start, p - start));
        if (token.rfind("http", 0) == 0) {
          p = chunk_end;  // URL: discard the rest of the chunk
          continue;
        }
        if (!token.empty()) ts.tokens.push_back(std::move(token));
        continue;
      }
      ++p;
    }
    i = chunk_end;
  }
  return ts;
}

namespace detail {

inline LexiconEntry parse_entry(const std::string& raw, const std::string& where) {
  auto fail = [&](const std::string& what) -> LexiconEntry {
    throw std::runtime_error("lexicon config, " + where + ": " + what + " (\"" + raw + "\")");
  };
  std::string text = lowercase_ascii(normalize_apostrophes(raw));
  LexiconEntry e;
  if (text.rfind("seq:", 0) == 0) {
    e.kind = EntryKind::token_sequence;
    e.value = text.substr(4);
    for (const std::string& part : split(e.value, ' ')) {
      if (!part.empty()) e.seq.push_back(part);
    }
    if (e.seq.size() < 2) return fail("token sequence needs at least two tokens");
  } else if (text.rfind("suf:", 0) == 0) {
    e.kind = EntryKind::suffix_pattern;
    e.value = text.substr(4);
    if (e.value.size() < 2 || e.value[0] != '-') {
      return fail("suffix pattern must start with '-' and have a body");
    }
    for (char c : e.value) {
      if (is_space_char(c)) return fail("suffix pattern must not contain whitespace");
    }
  } else if (text.rfind("chr:", 0) == 0) {
    e.kind = EntryKind::char_pattern;
    e.value = text.substr(4);
    if (e.value.size() != 1) return fail("char pattern must be a single character");
  } else {
    e.kind = EntryKind::single_token;
    e.value = text;
    if (e.value.empty()) return fail("empty token");
    for (char c : e.value) {
      if (is_space_char(c)) return fail("single token must not contain whitespace");
    }
  }
  return e;
}

}  // namespace detail

/// Loads categories from the JSON config (array `categories`, each with
/// `id`, `display_name`, optional `parent`, optional `t2`, `entries`).
/// Entry strings use the prefixes `seq:`, `suf:`, `chr:`; everything else
/// is a single token.
inline std::vector<LexicalCategory> load_lexicons(std::istream& in) {
  nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw std::runtime_error("lexicon config: invalid JSON");
  if (!doc.is_object() || !doc.contains("categories") || !doc["categories"].is_array()) {
    throw std::runtime_error("lexicon config: expected top-level object with `categories` array");
  }

  std::vector<LexicalCategory> cats;
  std::set<std::string> ids;
  for (std::size_t idx = 0; idx < doc["categories"].size(); ++idx) {
    const nlohmann::json& c = doc["categories"][idx];
    std::string where = "category #" + std::to_string(idx);
    if (!c.is_object() || !c.contains("id") || !c["id"].is_string()) {
      throw std::runtime_error("lexicon config, " + where + ": missing string `id`");
    }
    LexicalCategory cat;
    cat.id = c["id"].get<std::string>();
    where = "category \"" + cat.id + "\"";
    if (!ids.insert(cat.id).second) {
      throw std::runtime_error("lexicon config, " + where + ": duplicate id");
    }
    cat.display_name = c.value("display_name", cat.id);
    if (c.contains("parent") && !c["parent"].is_null()) {
      if (!c["parent"].is_string()) {
        throw std::runtime_error("lexicon config, " + where + ": `parent` must be a string");
      }
      cat.parent = c["parent"].get<std::string>();
    }
    cat.t2_enabled = c.value("t2", true);
    if (c.contains("entries")) {
      if (!c["entries"].is_array()) {
        throw std::runtime_error("lexicon config, " + where + ": `entries` must be an array");
      }
      for (const auto& e : c["entries"]) {
        if (!e.is_string()) {
          throw std::runtime_error("lexicon config, " + where + ": entries must be strings");
        }
        cat.entries.push_back(detail::parse_entry(e.get<std::string>(), where));
      }
    }
    cats.push_back(std::move(cat));
  }

  for (const LexicalCategory& cat : cats) {
    if (!cat.parent) continue;
    auto parent = std::find_if(cats.begin(), cats.end(),
                               [&](const LexicalCategory& p) { return p.id == *cat.parent; });
    if (parent == cats.end()) {
      throw std::runtime_error("lexicon config, category \"" + cat.id + "\": unknown parent \"" +
                               *cat.parent + "\"");
    }
    if (parent->parent) {
      throw std::runtime_error("lexicon config, category \"" + cat.id +
                               "\": parent \"" + *cat.parent + "\" is itself a sub-category");
    }
  }
  return cats;
}

inline std::vector<LexicalCategory> load_lexicons_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open lexicon config: " + path.string());
  return load_lexicons(in);
}

/// Precompiled matcher over a fixed category list. Matching is pure; one
/// matcher can serve many threads.
class CategoryMatcher {
 public:
  explicit CategoryMatcher(std::vector<LexicalCategory> categories)
      : categories_(std::move(categories)) {
    for (std::size_t ci = 0; ci < categories_.size(); ++ci) {
      index_by_id_[categories_[ci].id] = ci;
    }
    parent_of_.assign(categories_.size(), -1);
    for (std::size_t ci = 0; ci < categories_.size(); ++ci) {
      const LexicalCategory& cat = categories_[ci];
      if (cat.parent) parent_of_[ci] = static_cast<int>(index_by_id_.at(*cat.parent));
      for (const LexiconEntry& e : cat.entries) {
        switch (e.kind) {
          case EntryKind::single_token: singles_[e.value].push_back(ci); break;
          case EntryKind::token_sequence: seqs_.emplace_back(e.seq, ci); break;
          case EntryKind::suffix_pattern: suffixes_.emplace_back(e.value.substr(1), ci); break;
          case EntryKind::char_pattern: chars_.emplace_back(e.value[0], ci); break;
        }
      }
    }
  }

  const std::vector<LexicalCategory>& categories() const { return categories_; }

  std::size_t category_index(const std::string& id) const {
    auto it = index_by_id_.find(id);
    if (it == index_by_id_.end()) throw std::invalid_argument("unknown category id \"" + id + "\"");
    return it->second;
  }

  /// Category membership as a mask aligned with categories().
  std::vector<bool> match_mask(std::string_view text) const {
    std::vector<bool> hit(categories_.size(), false);
    TokenStream ts = tokenize(text);

    for (const std::string& token : ts.tokens) {
      if (auto it = singles_.find(token); it != singles_.end()) {
        for (std::size_t ci : it->second) hit[ci] = true;
      }
      for (const auto& [body, ci] : suffixes_) {
        if (hit[ci]) continue;
        if (token.size() > body.size() + 1 && token.ends_with(body) &&
            token[token.size() - body.size() - 1] == '-') {
          hit[ci] = true;
        }
      }
    }
    for (const auto& [seq, ci] : seqs_) {
      if (hit[ci] || ts.tokens.size() < seq.size()) continue;
      for (std::size_t start = 0; start + seq.size() <= ts.tokens.size(); ++start) {
        if (std::equal(seq.begin(), seq.end(), ts.tokens.begin() + start)) {
          hit[ci] = true;
          break;
        }
      }
    }
    for (const auto& [ch, ci] : chars_) {
      if (!hit[ci] && ts.raw_text.find(ch) != std::string::npos) hit[ci] = true;
    }

    // child match implies parent match
    for (std::size_t ci = 0; ci < categories_.size(); ++ci) {
      if (hit[ci] && parent_of_[ci] >= 0) hit[static_cast<std::size_t>(parent_of_[ci])] = true;
    }
    return hit;
  }

  std::set<std::string> match(std::string_view text) const {
    std::vector<bool> mask = match_mask(text);
    std::set<std::string> ids;
    for (std::size_t ci = 0; ci < mask.size(); ++ci) {
      if (mask[ci]) ids.insert(categories_[ci].id);
    }
    return ids;
  }

 private:
  std::vector<LexicalCategory> categories_;
  std::unordered_map<std::string, std::size_t> index_by_id_;
  std::vector<int> parent_of_;
  std::unordered_map<std::string, std::vector<std::size_t>> singles_;
  std::vector<std::pair<std::vector<std::string>, std::size_t>> seqs_;
  std::vector<std::pair<std::string, std::size_t>> suffixes_;
  std::vector<std::pair<char, std::size_t>> chars_;
};

inline std::set<std::string> match_categories(const TweetRecord& tweet,
                                              const std::vector<LexicalCategory>& categories) {
  return CategoryMatcher(categories).match(tweet.text);
}

}  // namespace stancekit
