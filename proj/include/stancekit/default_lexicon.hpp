#pragma once

#include <sstream>
#include <string_view>

#include "stancekit/lexicon.hpp"

namespace stancekit {

// Built-in copy of data/lexicons_default.json, used when no lexicon file is
// given. A test keeps the two in sync.
inline constexpr std::string_view kDefaultLexiconJson = R"lexjson({
  "categories": [
    {
      "id": "intensifiers",
      "display_name": "Intensifiers",
      "entries": []
    },
    {
      "id": "amplifiers",
      "display_name": "Amplifiers",
      "parent": "intensifiers",
      "entries": ["amazingly", "suf:-ass", "astoundingly", "awful", "bare", "bloody", "crazy",
                  "dead", "dreadfully", "colossally", "especially", "exceptionally", "excessively",
                  "extremely", "extraordinary", "fantastically", "frightfully", "fucking", "fully",
                  "hella", "holy", "incredibly", "insanely", "mad", "mightily", "moderately",
                  "most", "outrageously", "phenomenally", "precious", "quite", "radically",
                  "rather", "real", "really", "remarkably", "ridiculously", "right", "sick", "so",
                  "somewhat", "strikingly", "super", "supremely", "surpassingly", "terribly",
                  "terrifically", "too", "totally", "uncommonly", "unusually", "veritable", "very",
                  "wicked"]
    },
    {
      "id": "swear_words",
      "display_name": "Swear words",
      "parent": "intensifiers",
      "entries": ["fuck", "fucking", "fucked", "shit", "shitty", "bullshit", "damn", "dammit",
                  "goddamn", "bitch", "bastard", "asshole", "crap", "piss", "pissed", "dick",
                  "prick", "wanker", "bollocks", "motherfucker"]
    },
    {
      "id": "interjections",
      "display_name": "General interjections",
      "parent": "intensifiers",
      "entries": ["wow", "hooray", "ouch", "seq:uh oh", "ew", "aw", "omg"]
    },
    {
      "id": "exclamation",
      "display_name": "Exclamation",
      "parent": "intensifiers",
      "t2": false,
      "entries": ["chr:!"]
    },
    {
      "id": "uncertainty",
      "display_name": "Uncertainty words",
      "entries": ["may", "might", "perhaps", "maybe", "potentially", "possibly", "likely",
                  "probably", "probable", "possible", "think", "seem", "believe", "presume",
                  "seq:would be", "seq:could be"]
    },
    {
      "id": "pronouns",
      "display_name": "Pronouns",
      "entries": []
    },
    {
      "id": "demonstrative",
      "display_name": "Demonstrative",
      "parent": "pronouns",
      "entries": ["this", "that", "these", "those"]
    },
    {
      "id": "possessive",
      "display_name": "Possessive",
      "parent": "pronouns",
      "entries": ["ours", "mine", "yours", "theirs", "his", "hers"]
    },
    {
      "id": "quantifier",
      "display_name": "Quantifier",
      "parent": "pronouns",
      "entries": ["few", "several", "some", "all", "much", "one", "fewer", "many", "more", "most",
                  "plenty", "less", "little", "enough"]
    },
    {
      "id": "reflexive",
      "display_name": "Reflexive",
      "parent": "pronouns",
      "entries": ["myself", "herself", "ourselves", "themselves", "yourself", "himself", "itself",
                  "yourselves"]
    },
    {
      "id": "first_person",
      "display_name": "First-Person",
      "parent": "pronouns",
      "entries": ["i", "we", "us", "me", "myself", "my", "mine", "our", "ours"]
    },
    {
      "id": "second_person",
      "display_name": "Second-Person",
      "parent": "pronouns",
      "entries": ["you", "yours", "you're", "your"]
    },
    {
      "id": "third_person",
      "display_name": "Third-Person",
      "parent": "pronouns",
      "entries": ["he", "she", "theirs", "themselves", "them", "her", "him", "his", "himself",
                  "hers", "herself", "it", "its", "itself", "they"]
    },
    {
      "id": "gendered_third_person",
      "display_name": "Gendered third-person",
      "parent": "pronouns",
      "entries": ["he", "she", "her", "him", "his", "himself", "hers", "herself"]
    },
    {
      "id": "subject",
      "display_name": "Subject",
      "parent": "pronouns",
      "entries": ["i", "she", "he", "they", "we", "you", "it"]
    },
    {
      "id": "object",
      "display_name": "Object",
      "parent": "pronouns",
      "entries": ["me", "us", "them", "him", "you", "her", "it"]
    },
    {
      "id": "it",
      "display_name": "IT",
      "parent": "pronouns",
      "entries": ["it", "it's", "its", "itself"]
    }
  ]
}
)lexjson";

inline std::vector<LexicalCategory> default_lexicons() {
  std::istringstream in{std::string(kDefaultLexiconJson)};
  return load_lexicons(in);
}

}  // namespace stancekit
