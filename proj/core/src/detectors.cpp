#include "transit/detectors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "transit/errors.hpp"

namespace transit {

namespace {

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

bool is_subject_rel(std::string_view deprel) {
  return deprel == "nsubj" || deprel == "nsubj:pass";
}

bool is_passive_rel(std::string_view deprel) {
  return deprel == "nsubj:pass" || deprel == "aux:pass";
}

// Personal pronouns that always denote people.
bool is_personal_pronoun(const Token& t) {
  static constexpr std::array<std::string_view, 6> kPronouns = {
      "i", "she", "he", "we", "they", "you"};
  if (t.upos != "PRON") return false;
  const auto lemma = t.lower_lemma();
  const auto surface = t.lower_surface();
  for (auto p : kPronouns)
    if (lemma == p || surface == p) return true;
  return false;
}

const Token* first_subject_of(const Sentence& s, int head) {
  for (const Token* t : s.dependents(head))
    if (is_subject_rel(t->deprel)) return t;
  return nullptr;
}

// Shallowest VERB in the tree below the root; ties go to the lower index.
const Token* highest_verb(const Sentence& s, const Token& root) {
  std::deque<const Token*> queue{&root};
  while (!queue.empty()) {
    std::vector<const Token*> level(queue.begin(), queue.end());
    queue.clear();
    const Token* best = nullptr;
    for (const Token* t : level) {
      if (t->upos == "VERB" && (!best || t->index < best->index)) best = t;
      for (const Token* d : s.dependents(t->index)) queue.push_back(d);
    }
    if (best) return best;
  }
  return nullptr;
}

bool has_by_case(const Sentence& s, const Token& oblique) {
  for (const Token* c : s.dependents(oblique.index))
    if (c->deprel == "case" && c->lower_lemma() == "by") return true;
  return false;
}

int count_hits(const Sentence& s, const Lexicon& cues) {
  int hits = 0;
  for (const auto& t : s.tokens)
    if (cues.contains(t) || cues.contains_term(t.surface)) ++hits;
  return hits;
}

}  // namespace

std::string_view subject_kind_name(SubjectKind kind) {
  switch (kind) {
    case SubjectKind::kHuman: return "Human";
    case SubjectKind::kBodyPart: return "BodyPart";
    case SubjectKind::kInanimate: return "Inanimate";
    case SubjectKind::kNone: return "None";
  }
  return "None";
}

std::string_view voice_name(Voice voice) {
  return voice == Voice::kActive ? "Active" : "Passive";
}

std::string_view process_type_name(ProcessType type) {
  switch (type) {
    case ProcessType::kMaterial: return "Material";
    case ProcessType::kMental: return "Mental";
    case ProcessType::kOther: return "Other";
  }
  return "Other";
}

std::string_view tone_name(Tone tone) {
  return tone == Tone::kEnergetic ? "Energetic" : "Static";
}

std::string_view construction_name(Construction c) {
  switch (c) {
    case Construction::kHumanActor: return "HA+P";
    case Construction::kBodyPart: return "BP+P";
    case Construction::kInanimateActor: return "IE+P";
    case Construction::kGoal: return "G+P";
  }
  return "";
}

std::string ConstructionSet::to_string() const {
  std::string out;
  const auto add = [&](bool on, Construction c) {
    if (!on) return;
    if (!out.empty()) out += ',';
    out += construction_name(c);
  };
  add(human_actor, Construction::kHumanActor);
  add(body_part, Construction::kBodyPart);
  add(inanimate_actor, Construction::kInanimateActor);
  add(goal, Construction::kGoal);
  return out.empty() ? "none" : out;
}

ClauseAnalysis analyze_clause(const Sentence& sentence, const LexiconSet& lex) {
  ClauseAnalysis a;
  const Token* root = sentence.root();
  if (!root) return a;

  a.main_verb = root->upos == "VERB" ? root : highest_verb(sentence, *root);

  // The root clause owns the subject; a non-verbal root (copula, fragment)
  // may still carry one.
  a.subject = first_subject_of(sentence, root->index);
  if (!a.subject && a.main_verb && a.main_verb != root)
    a.subject = first_subject_of(sentence, a.main_verb->index);

  std::vector<const Token*> clause = sentence.dependents(root->index);
  if (a.main_verb && a.main_verb != root) {
    auto more = sentence.dependents(a.main_verb->index);
    clause.insert(clause.end(), more.begin(), more.end());
  }
  a.passive_marked = std::any_of(clause.begin(), clause.end(), [](const Token* t) {
    return is_passive_rel(t->deprel);
  });
  if (a.passive_marked) {
    a.agent_phrase_present =
        std::any_of(clause.begin(), clause.end(), [&](const Token* t) {
          return t->deprel == "obl:agent" ||
                 (starts_with(t->deprel, "obl") && has_by_case(sentence, *t));
        });
  }

  if (!a.subject) {
    a.subject_kind = SubjectKind::kNone;
  } else if (lex.human_agents.contains(*a.subject) ||
             is_personal_pronoun(*a.subject)) {
    a.subject_kind = SubjectKind::kHuman;
  } else if (lex.body_parts.contains(*a.subject)) {
    a.subject_kind = SubjectKind::kBodyPart;
  } else {
    a.subject_kind = SubjectKind::kInanimate;
  }
  return a;
}

Voice detect_voice(const ClauseAnalysis& analysis) {
  return analysis.passive_marked ? Voice::kPassive : Voice::kActive;
}

ProcessType process_type(const Token& verb, const LexiconSet& lex) {
  if (verb.upos != "VERB")
    throw ContractError("process_type expects a VERB token, got '" +
                        verb.surface + "' tagged " + verb.upos);
  if (lex.material_verbs.contains(verb)) return ProcessType::kMaterial;
  if (lex.mental_verbs.contains(verb)) return ProcessType::kMental;
  return ProcessType::kOther;
}

ConstructionSet detect_constructions(const Sentence& /*sentence*/,
                                     const ClauseAnalysis& analysis,
                                     const LexiconSet& lex) {
  ConstructionSet out;
  if (!analysis.main_verb) return out;
  const ProcessType type = process_type(*analysis.main_verb, lex);
  if (type == ProcessType::kOther) return out;
  const bool active = detect_voice(analysis) == Voice::kActive;
  out.human_actor = analysis.subject_kind == SubjectKind::kHuman && active;
  out.body_part = analysis.subject_kind == SubjectKind::kBodyPart;
  out.inanimate_actor = analysis.subject_kind == SubjectKind::kInanimate;
  out.goal = analysis.passive_marked && !analysis.agent_phrase_present;
  return out;
}

Tone classify_tone(const ToneScore& tone) {
  const auto in_range = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in_range(tone.extroversion) || !in_range(tone.confidence)) {
    std::ostringstream msg;
    msg << "tone components must lie in [0,1], got (" << tone.extroversion
        << ", " << tone.confidence << ")";
    throw DomainError(msg.str());
  }
  return tone.extroversion > 0.8 && tone.confidence > 0.8 ? Tone::kEnergetic
                                                          : Tone::kStatic;
}

ToneScore score_tone(const Sentence& sentence, const LexiconSet& lex) {
  const auto scaled = [](int hits) { return std::min(1.0, hits / 3.0); };
  return {scaled(count_hits(sentence, lex.extroversion_cues)),
          scaled(count_hits(sentence, lex.confidence_cues))};
}

ToneOverrides ToneOverrides::from_json_text(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw LoadError({std::string("tone file is not valid JSON: ") + e.what()});
  }
  if (!j.is_object()) throw LoadError({"tone file must be a JSON object"});
  ToneOverrides out;
  std::vector<std::string> violations;
  for (const auto& [key, value] : j.items()) {
    if (!value.is_object() || !value.contains("extroversion") ||
        !value.contains("confidence") || !value["extroversion"].is_number() ||
        !value["confidence"].is_number()) {
      violations.push_back("tone entry '" + key +
                           "' needs numeric extroversion and confidence");
      continue;
    }
    ToneScore score{value["extroversion"].get<double>(),
                    value["confidence"].get<double>()};
    const auto ok = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!ok(score.extroversion) || !ok(score.confidence)) {
      violations.push_back("tone entry '" + key + "' outside [0,1]");
      continue;
    }
    out.set(key, score);
  }
  if (!violations.empty()) throw LoadError(std::move(violations));
  return out;
}

ToneOverrides ToneOverrides::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError({"cannot read tone file '" + path.string() + "'"});
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_json_text(buffer.str());
}

void ToneOverrides::set(std::string key, ToneScore score) {
  scores_[std::move(key)] = score;
}

std::optional<ToneScore> ToneOverrides::find(std::string_view essay_id,
                                             std::string_view sentence_id) const {
  if (!essay_id.empty()) {
    std::string qualified(essay_id);
    qualified += '/';
    qualified += sentence_id;
    if (auto it = scores_.find(qualified); it != scores_.end()) return it->second;
  }
  if (auto it = scores_.find(sentence_id); it != scores_.end()) return it->second;
  return std::nullopt;
}

FeatureVector extract_features(const Sentence& sentence, const LexiconSet& lex,
                               std::optional<ToneScore> tone) {
  const ClauseAnalysis a = analyze_clause(sentence, lex);
  FeatureVector v;
  const bool passive = detect_voice(a) == Voice::kPassive;
  v[Feature::kActive] = !passive;
  v[Feature::kPassive] = passive;
  if (a.main_verb) {
    const ProcessType type = process_type(*a.main_verb, lex);
    v[Feature::kMaterial] = type == ProcessType::kMaterial;
    v[Feature::kMental] = type == ProcessType::kMental;
  }
  const ConstructionSet c = detect_constructions(sentence, a, lex);
  v[Feature::kHumanActor] = c.human_actor;
  v[Feature::kBodyPart] = c.body_part;
  v[Feature::kInanimateActor] = c.inanimate_actor;
  v[Feature::kGoal] = c.goal;
  const Tone t = classify_tone(tone ? *tone : score_tone(sentence, lex));
  v[Feature::kEnergetic] = t == Tone::kEnergetic;
  v[Feature::kStatic] = t == Tone::kStatic;
  return v;
}

std::string_view body_part_role_name(BodyPartRole role) {
  switch (role) {
    case BodyPartRole::kSubject: return "subject";
    case BodyPartRole::kDirectObject: return "direct object";
    case BodyPartRole::kIndirectObject: return "indirect object";
    case BodyPartRole::kPrepositionalObject: return "prepositional object";
    case BodyPartRole::kOther: return "other";
  }
  return "other";
}

std::vector<BodyPartMention> body_part_roles(const Sentence& sentence,
                                             const LexiconSet& lex) {
  std::vector<BodyPartMention> out;
  for (const auto& t : sentence.tokens) {
    // "hand" as a verb ("handed them to me") is not a body part.
    if (t.upos != "NOUN" || !lex.body_parts.contains(t)) continue;
    BodyPartRole role = BodyPartRole::kOther;
    const std::string_view rel = t.deprel;
    if (starts_with(rel, "nsubj"))
      role = BodyPartRole::kSubject;
    else if (rel == "obj")
      role = BodyPartRole::kDirectObject;
    else if (rel == "iobj")
      role = BodyPartRole::kIndirectObject;
    else if (starts_with(rel, "obl") ||
             (starts_with(rel, "nmod") && rel != "nmod:poss"))
      role = BodyPartRole::kPrepositionalObject;
    out.push_back({t.lower_lemma(), role, t.index});
  }
  return out;
}

}  // namespace transit
