#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "transit/corpus.hpp"
#include "transit/lexicon.hpp"

namespace transit {

enum class SubjectKind { kHuman, kBodyPart, kInanimate, kNone };
enum class Voice { kActive, kPassive };
enum class ProcessType { kMaterial, kMental, kOther };
enum class Tone { kEnergetic, kStatic };

std::string_view subject_kind_name(SubjectKind kind);
std::string_view voice_name(Voice voice);
std::string_view process_type_name(ProcessType type);
std::string_view tone_name(Tone tone);

// Root-clause analysis. Pointers refer into the analysed Sentence, which must
// outlive this value.
struct ClauseAnalysis {
  const Token* main_verb = nullptr;
  const Token* subject = nullptr;
  SubjectKind subject_kind = SubjectKind::kNone;
  bool passive_marked = false;
  bool agent_phrase_present = false;
};

ClauseAnalysis analyze_clause(const Sentence& sentence, const LexiconSet& lex);

Voice detect_voice(const ClauseAnalysis& analysis);

// Throws ContractError when `verb` is not tagged VERB.
ProcessType process_type(const Token& verb, const LexiconSet& lex);

enum class Construction { kHumanActor, kBodyPart, kInanimateActor, kGoal };
std::string_view construction_name(Construction c);  // HA+P BP+P IE+P G+P

struct ConstructionSet {
  bool human_actor = false;
  bool body_part = false;
  bool inanimate_actor = false;
  bool goal = false;

  bool empty() const {
    return !(human_actor || body_part || inanimate_actor || goal);
  }
  std::string to_string() const;  // "HA+P,G+P" or "none"
  friend bool operator==(const ConstructionSet&,
                         const ConstructionSet&) = default;
};

ConstructionSet detect_constructions(const Sentence& sentence,
                                     const ClauseAnalysis& analysis,
                                     const LexiconSet& lex);

struct ToneScore {
  double extroversion = 0.0;
  double confidence = 0.0;
};

// Energetic iff both components strictly exceed 0.8. Throws DomainError if a
// component is outside [0,1].
Tone classify_tone(const ToneScore& tone);

// Default provider: each component is min(1, cue hits / 3).
ToneScore score_tone(const Sentence& sentence, const LexiconSet& lex);

// Scores supplied by an external tone analyser, keyed by sentence id or by
// "essay_id/sentence_id" (the qualified key wins).
class ToneOverrides {
 public:
  ToneOverrides() = default;
  static ToneOverrides load(const std::filesystem::path& path);
  static ToneOverrides from_json_text(std::string_view text);

  void set(std::string key, ToneScore score);
  std::optional<ToneScore> find(std::string_view essay_id,
                                std::string_view sentence_id) const;
  std::size_t size() const { return scores_.size(); }

 private:
  std::map<std::string, ToneScore, std::less<>> scores_;
};

FeatureVector extract_features(const Sentence& sentence, const LexiconSet& lex,
                               std::optional<ToneScore> tone = std::nullopt);

enum class BodyPartRole {
  kSubject,
  kDirectObject,
  kIndirectObject,
  kPrepositionalObject,
  kOther,
};
std::string_view body_part_role_name(BodyPartRole role);

struct BodyPartMention {
  std::string lemma;
  BodyPartRole role = BodyPartRole::kOther;
  int token_index = 0;
  friend bool operator==(const BodyPartMention&,
                         const BodyPartMention&) = default;
};

// Every nominal token whose lemma is a body part, with its grammatical role.
std::vector<BodyPartMention> body_part_roles(const Sentence& sentence,
                                             const LexiconSet& lex);

}  // namespace transit
