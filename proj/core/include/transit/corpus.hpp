#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace transit {

// One syntactic word of a dependency-parsed sentence. Columns mirror CoNLL-U;
// xpos/feats/deps are carried verbatim so documents round-trip.
struct Token {
  int index = 0;  // 1-based
  std::string surface;
  std::string lemma;
  std::string upos;
  std::string xpos = "_";
  std::string feats = "_";
  int head = 0;  // 0 = root
  std::string deprel;
  std::string deps = "_";
  std::string misc = "_";

  bool is_punct() const { return upos == "PUNCT"; }
  std::string lower_lemma() const;
  std::string lower_surface() const;

  friend bool operator==(const Token&, const Token&) = default;
};

bool is_ud_pos(std::string_view upos);
std::string to_lower(std::string_view text);

struct Sentence {
  std::string sentence_id;
  std::string raw_text;
  std::vector<Token> tokens;
  // "# key = value" comment lines other than sent_id/text, in file order.
  std::vector<std::pair<std::string, std::string>> metadata;

  const Token& token(int index) const { return tokens.at(index - 1); }
  const Token* root() const;
  std::vector<const Token*> dependents(int head_index) const;
  std::optional<std::string> meta(std::string_view key) const;
  std::size_t word_count() const;  // non-punctuation tokens
};

// Throws StructureError when the sentence is empty, a head points outside the
// sentence, a token heads itself, the head graph has a cycle or the number of
// roots is not exactly one. Token indices must be 1..n in order.
void validate_sentence(const Sentence& sentence);

struct Essay {
  std::string essay_id;
  std::vector<Sentence> sentences;
  double empathy_score = 1.0;
  std::size_t word_count = 0;
};

// Builds an Essay, validating the score range and filling word_count.
Essay make_essay(std::string essay_id, std::vector<Sentence> sentences,
                 double empathy_score);

struct EmpathyAnnotation {
  std::string essay_id;
  std::string sentence_id;
  bool empathic = false;
  // Fine-grained labels (cognitive/affective/prosocial) kept for reference.
  std::vector<std::string> fine_labels;
};

class AnnotationTable {
 public:
  AnnotationTable() = default;
  explicit AnnotationTable(std::vector<EmpathyAnnotation> annotations);

  // Unannotated sentences are non-empathic.
  bool is_empathic(std::string_view essay_id,
                   std::string_view sentence_id) const;
  const std::vector<EmpathyAnnotation>& entries() const { return entries_; }
  std::size_t empathic_count() const;

 private:
  std::vector<EmpathyAnnotation> entries_;
  std::map<std::pair<std::string, std::string>, bool, std::less<>> lookup_;
};

// Ten transitivity and stylistic features, in fixed column order.
enum class Feature : std::uint8_t {
  kActive,
  kPassive,
  kMaterial,
  kMental,
  kHumanActor,      // HA+P
  kBodyPart,        // BP+P
  kInanimateActor,  // IE+P
  kGoal,            // G+P
  kEnergetic,
  kStatic,
};

inline constexpr std::size_t kFeatureCount = 10;
inline constexpr std::array<Feature, kFeatureCount> kAllFeatures = {
    Feature::kActive,         Feature::kPassive,   Feature::kMaterial,
    Feature::kMental,         Feature::kHumanActor, Feature::kBodyPart,
    Feature::kInanimateActor, Feature::kGoal,      Feature::kEnergetic,
    Feature::kStatic};

// Column names: active passive material mental ha_p bp_p ie_p g_p energetic static
std::string_view feature_name(Feature feature);
// Display names as used in transitivity tables: Active ... HA+P ... Static.
std::string_view feature_label(Feature feature);
std::optional<Feature> parse_feature(std::string_view name);

struct FeatureVector {
  std::array<bool, kFeatureCount> bits{};

  bool operator[](Feature f) const { return bits[static_cast<std::size_t>(f)]; }
  bool& operator[](Feature f) { return bits[static_cast<std::size_t>(f)]; }

  // Empty when every structural implication holds.
  std::vector<std::string> invariant_violations() const;
  std::string to_bitstring() const;

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

enum class ThemeLabel : std::uint8_t {
  kMedicalProcedural,
  kEmpathetic,
  kBoth,
  kNeither,
};

inline constexpr std::size_t kThemeCount = 4;
inline constexpr std::array<ThemeLabel, kThemeCount> kAllThemes = {
    ThemeLabel::kMedicalProcedural, ThemeLabel::kEmpathetic, ThemeLabel::kBoth,
    ThemeLabel::kNeither};

std::string_view theme_name(ThemeLabel theme);  // medical empathetic both neither
std::optional<ThemeLabel> parse_theme(std::string_view name);

// Half-open score ranges [1,2) [2,3) [3,4) and the closed top range [4,5].
struct ScoreBucket {
  double low = 1.0;
  double high = 2.0;
  std::size_t index = 0;

  std::string label() const;  // "1-2", "2-3", "3-4", "4-5"
  friend bool operator==(const ScoreBucket&, const ScoreBucket&) = default;
};

inline constexpr std::size_t kBucketCount = 4;
const std::array<ScoreBucket, kBucketCount>& all_buckets();

// Boundary scores go to the higher bucket; 5.0 belongs to [4,5]. Throws
// DomainError naming `essay_id` when the score is outside [1,5].
ScoreBucket bucket_of(double score, std::string_view essay_id = {});
std::optional<ScoreBucket> parse_bucket(std::string_view label);

struct Corpus {
  std::vector<Essay> essays;
  AnnotationTable annotations;

  std::size_t sentence_count() const;
};

}  // namespace transit
