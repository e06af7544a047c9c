#pragma once

#include <string>
#include <vector>

#include "transit/detectors.hpp"
#include "transit/lexicon.hpp"
#include "transit/themes.hpp"

namespace transit::testing {

inline std::string roles_string(const std::vector<BodyPartMention>& mentions) {
  if (mentions.empty()) return "-";
  std::string out;
  for (const auto& m : mentions) {
    if (!out.empty()) out += ';';
    out += m.lemma + ":" + std::string(body_part_role_name(m.role));
  }
  return out;
}

// Compares every detector output with the sentence's gold_* comments and
// returns one line per disagreement.
inline std::vector<std::string> gold_mismatches(const Sentence& s,
                                                const LexiconSet& lex,
                                                const ToneOverrides& tones) {
  std::vector<std::string> out;
  const auto expect = [&](std::string_view key, const std::string& got) {
    const auto want = s.meta(key);
    if (!want) {
      out.push_back(s.sentence_id + ": no " + std::string(key));
    } else if (*want != got) {
      out.push_back(s.sentence_id + ": " + std::string(key) + " want '" + *want +
                    "' got '" + got + "'");
    }
  };
  const ClauseAnalysis a = analyze_clause(s, lex);
  expect("gold_voice", std::string(voice_name(detect_voice(a))));
  expect("gold_subject", a.subject ? a.subject->surface : "-");
  expect("gold_subject_kind", std::string(subject_kind_name(a.subject_kind)));
  expect("gold_process", a.main_verb
                             ? std::string(process_type_name(process_type(*a.main_verb, lex)))
                             : "-");
  expect("gold_constructions", detect_constructions(s, a, lex).to_string());
  const auto tone = tones.find({}, s.sentence_id);
  expect("gold_tone", std::string(tone_name(classify_tone(tone ? *tone : score_tone(s, lex)))));
  expect("gold_features", extract_features(s, lex, tone).to_bitstring());
  expect("gold_medical", is_medical(s, lex) ? "1" : "0");
  expect("gold_body_parts", roles_string(body_part_roles(s, lex)));
  return out;
}

}  // namespace transit::testing
