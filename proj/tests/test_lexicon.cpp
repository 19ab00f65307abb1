#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <random>
#include <sstream>

#include "stancekit/default_lexicon.hpp"
#include "stancekit/lexicon.hpp"

using namespace stancekit;

namespace {

std::vector<LexicalCategory> parse_config(const std::string& json) {
  std::istringstream in(json);
  return load_lexicons(in);
}

const LexicalCategory& category(const std::vector<LexicalCategory>& cats, const std::string& id) {
  auto it = std::find_if(cats.begin(), cats.end(),
                         [&](const LexicalCategory& c) { return c.id == id; });
  REQUIRE(it != cats.end());
  return *it;
}

bool has_single(const LexicalCategory& cat, const std::string& token) {
  return std::any_of(cat.entries.begin(), cat.entries.end(), [&](const LexiconEntry& e) {
    return e.kind == EntryKind::single_token && e.value == token;
  });
}

std::set<std::string> match_text(const CategoryMatcher& m, const std::string& text) {
  return m.match(text);
}

}  // namespace

TEST_CASE("tokenize strips mentions, hashtags, and lowercases") {
  TokenStream ts = tokenize("OMG you're SO wrong! #vax @bob");
  REQUIRE(ts.tokens == std::vector<std::string>{"omg", "you're", "so", "wrong"});
  REQUIRE(ts.raw_text == "OMG you're SO wrong! #vax @bob");
}

TEST_CASE("tokenize of empty text is empty") {
  REQUIRE(tokenize("").tokens.empty());
}

TEST_CASE("tokenize normalizes typographic apostrophes") {
  TokenStream ts = tokenize("it's... it\xE2\x80\x99s");
  REQUIRE(ts.tokens == std::vector<std::string>{"it's", "it's"});
}

TEST_CASE("tokenize drops whole URLs and keeps hyphenated words") {
  TokenStream ts = tokenize("see https://t.co/really-bad for a big-ass needle");
  REQUIRE(ts.tokens == std::vector<std::string>{"see", "for", "a", "big-ass", "needle"});
}

TEST_CASE("tokens never start with http, @ or #") {
  TokenStream ts = tokenize("http @a #b (http://x.y) word (#tag) a@b");
  for (const std::string& t : ts.tokens) {
    REQUIRE(t.rfind("http", 0) != 0);
    REQUIRE(t.find('@') == std::string::npos);
    REQUIRE(t.find('#') == std::string::npos);
  }
  REQUIRE(std::find(ts.tokens.begin(), ts.tokens.end(), "word") != ts.tokens.end());
}

TEST_CASE("default config transcribes the analysis lexicon") {
  std::vector<LexicalCategory> cats = default_lexicons();
  REQUIRE(cats.size() == 18);

  const LexicalCategory& amp = category(cats, "amplifiers");
  REQUIRE(amp.parent == "intensifiers");
  REQUIRE(has_single(amp, "really"));
  REQUIRE(has_single(amp, "very"));
  REQUIRE(has_single(amp, "hella"));
  REQUIRE(std::any_of(amp.entries.begin(), amp.entries.end(), [](const LexiconEntry& e) {
    return e.kind == EntryKind::suffix_pattern && e.value == "-ass";
  }));
  REQUIRE(amp.entries.size() == 54);

  const LexicalCategory& unc = category(cats, "uncertainty");
  REQUIRE(unc.entries.size() == 16);
  REQUIRE(has_single(unc, "may"));
  REQUIRE(has_single(unc, "might"));
  REQUIRE(has_single(unc, "perhaps"));
  std::size_t sequences = 0;
  for (const LexiconEntry& e : unc.entries) {
    if (e.kind == EntryKind::token_sequence) {
      ++sequences;
      REQUIRE((e.seq == std::vector<std::string>{"would", "be"} ||
               e.seq == std::vector<std::string>{"could", "be"}));
    }
  }
  REQUIRE(sequences == 2);

  // eleven pronoun sub-categories
  std::size_t pronoun_subs = 0;
  for (const LexicalCategory& c : cats) {
    if (c.parent == "pronouns") ++pronoun_subs;
  }
  REQUIRE(pronoun_subs == 11);

  REQUIRE_FALSE(category(cats, "exclamation").t2_enabled);
  REQUIRE(category(cats, "amplifiers").t2_enabled);
}

TEST_CASE("shipped lexicon file matches the built-in copy") {
  std::string shipped = read_file(std::filesystem::path(STANCEKIT_SOURCE_DIR) /
                                  "data/lexicons_default.json");
  REQUIRE(shipped == kDefaultLexiconJson);
}

TEST_CASE("empty config yields empty category list") {
  REQUIRE(parse_config(R"({"categories": []})").empty());
}

TEST_CASE("config errors name the offending category") {
  REQUIRE_THROWS_WITH(
      parse_config(R"({"categories": [{"id":"a"},{"id":"a"}]})"),
      Catch::Matchers::ContainsSubstring("duplicate id"));
  REQUIRE_THROWS_WITH(
      parse_config(R"({"categories": [{"id":"a","parent":"nope"}]})"),
      Catch::Matchers::ContainsSubstring("unknown parent"));
  REQUIRE_THROWS_WITH(
      parse_config(R"({"categories": [{"id":"a","entries":["seq:one"]}]})"),
      Catch::Matchers::ContainsSubstring("category \"a\""));
  REQUIRE_THROWS_WITH(
      parse_config(
          R"({"categories": [{"id":"g"},{"id":"p","parent":"g"},{"id":"c","parent":"p"}]})"),
      Catch::Matchers::ContainsSubstring("itself a sub-category"));
}

TEST_CASE("match_categories follows the documented entry semantics") {
  CategoryMatcher m(default_lexicons());

  REQUIRE(match_text(m, "This is really bad!") ==
          std::set<std::string>{"amplifiers", "demonstrative", "exclamation", "intensifiers",
                                "pronouns"});
  REQUIRE(match_text(m, "might be fine") == std::set<std::string>{"uncertainty"});
  REQUIRE(match_text(m, "classic pass").empty());
  REQUIRE(match_text(m, "a big-ass needle") ==
          std::set<std::string>{"amplifiers", "intensifiers"});
}

TEST_CASE("golden tweet file matches exactly") {
  CategoryMatcher m(default_lexicons());
  std::ifstream in(std::filesystem::path(STANCEKIT_SOURCE_DIR) / "tests/data/lexicon_golden.jsonl");
  REQUIRE(in.good());
  std::string line;
  std::size_t checked = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json rec = nlohmann::json::parse(line);
    std::set<std::string> expect(rec["expect"].begin(), rec["expect"].end());
    INFO("tweet: " << rec["text"].get<std::string>());
    REQUIRE(m.match(rec["text"].get<std::string>()) == expect);
    ++checked;
  }
  REQUIRE(checked == 20);
}

TEST_CASE("matching is case-insensitive") {
  CategoryMatcher m(default_lexicons());
  std::vector<std::string> samples{"Really Bad", "MIGHT happen", "You're Sure", "UH OH folks"};
  for (const std::string& s : samples) {
    REQUIRE(m.match(s) == m.match(lowercase_ascii(s)));
  }
}

TEST_CASE("adding an entry never removes a match") {
  std::vector<LexicalCategory> base = default_lexicons();
  std::vector<LexicalCategory> extended = base;
  for (LexicalCategory& c : extended) {
    if (c.id == "amplifiers") {
      c.entries.push_back({EntryKind::single_token, "zonkers", {}});
    }
  }
  CategoryMatcher mb(base), me(extended);
  std::vector<std::string> samples{"really bad", "nothing here", "zonkers indeed",
                                   "uh oh this might be it"};
  for (const std::string& s : samples) {
    std::set<std::string> before = mb.match(s);
    std::set<std::string> after = me.match(s);
    REQUIRE(std::includes(after.begin(), after.end(), before.begin(), before.end()));
  }
}

TEST_CASE("a child match always implies its parent") {
  CategoryMatcher m(default_lexicons());
  std::map<std::string, std::string> parent_of;
  for (const LexicalCategory& c : m.categories()) {
    if (c.parent) parent_of[c.id] = *c.parent;
  }
  std::vector<std::string> samples{"really bad!",     "uh oh",          "she told him",
                                   "maybe it's fine", "this and that",  "wow",
                                   "holy crap",       "yours and ours", "few of them"};
  for (const std::string& s : samples) {
    std::set<std::string> ids = m.match(s);
    for (const std::string& id : ids) {
      if (auto it = parent_of.find(id); it != parent_of.end()) {
        REQUIRE(ids.count(it->second) == 1);
      }
    }
  }
}

TEST_CASE("match result is independent of category list order") {
  std::vector<LexicalCategory> cats = default_lexicons();
  std::vector<LexicalCategory> shuffled = cats;
  std::mt19937 rng(17);
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  CategoryMatcher a(cats), b(shuffled);
  std::vector<std::string> samples{"This is really bad!", "might be fine", "she gave him her word",
                                   "wow omg", "it would be awful"};
  for (const std::string& s : samples) {
    REQUIRE(a.match(s) == b.match(s));
  }
}

TEST_CASE("free-function match_categories works on tweet records") {
  TweetRecord t;
  t.text = "holy moly!";
  std::set<std::string> ids = match_categories(t, default_lexicons());
  REQUIRE(ids == std::set<std::string>{"amplifiers", "exclamation", "intensifiers"});
}
