#include "transit/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "transit/errors.hpp"

namespace transit {

namespace {

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

LoadError::LoadError(std::vector<std::string> violations)
    : Error(violations.size() == 1
                ? violations.front()
                : std::to_string(violations.size()) +
                      " violations: " + join(violations, "; ")),
      violations_(std::move(violations)) {}

std::string to_lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string Token::lower_lemma() const { return to_lower(lemma); }
std::string Token::lower_surface() const { return to_lower(surface); }

bool is_ud_pos(std::string_view upos) {
  static constexpr std::string_view kTags[] = {
      "ADJ",  "ADP",   "ADV", "AUX",  "CCONJ", "DET",  "INTJ", "NOUN", "NUM",
      "PART", "PRON",  "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X"};
  return std::find(std::begin(kTags), std::end(kTags), upos) != std::end(kTags);
}

const Token* Sentence::root() const {
  for (const auto& t : tokens)
    if (t.head == 0) return &t;
  return nullptr;
}

std::vector<const Token*> Sentence::dependents(int head_index) const {
  std::vector<const Token*> out;
  for (const auto& t : tokens)
    if (t.head == head_index) out.push_back(&t);
  return out;
}

std::optional<std::string> Sentence::meta(std::string_view key) const {
  for (const auto& [k, v] : metadata)
    if (k == key) return v;
  return std::nullopt;
}

std::size_t Sentence::word_count() const {
  return static_cast<std::size_t>(std::count_if(
      tokens.begin(), tokens.end(), [](const Token& t) { return !t.is_punct(); }));
}

void validate_sentence(const Sentence& sentence) {
  const auto fail = [&](const std::string& what) {
    throw StructureError("sentence '" + sentence.sentence_id + "': " + what);
  };
  const int n = static_cast<int>(sentence.tokens.size());
  if (n == 0) fail("no tokens");
  int roots = 0;
  for (int i = 0; i < n; ++i) {
    const Token& t = sentence.tokens[i];
    if (t.index != i + 1)
      fail("token ids must run 1..n, found " + std::to_string(t.index) +
           " at position " + std::to_string(i + 1));
    if (t.head < 0 || t.head > n)
      fail("token " + std::to_string(t.index) + " has head " +
           std::to_string(t.head) + " outside the sentence");
    if (t.head == t.index)
      fail("token " + std::to_string(t.index) + " is its own head");
    if (t.head == 0) ++roots;
  }
  if (roots != 1)
    fail("expected exactly one root, found " + std::to_string(roots));
  // Every token must reach the root without revisiting a node.
  for (int i = 0; i < n; ++i) {
    int steps = 0;
    int cur = sentence.tokens[i].head;
    while (cur != 0) {
      if (++steps > n)
        fail("cyclic head graph through token " + std::to_string(i + 1));
      cur = sentence.tokens[cur - 1].head;
    }
  }
}

Essay make_essay(std::string essay_id, std::vector<Sentence> sentences,
                 double empathy_score) {
  if (!(empathy_score >= 1.0 && empathy_score <= 5.0)) {
    std::ostringstream msg;
    msg << "essay '" << essay_id << "': empathy score " << empathy_score
        << " outside [1,5]";
    throw DomainError(msg.str());
  }
  Essay essay;
  essay.essay_id = std::move(essay_id);
  essay.sentences = std::move(sentences);
  essay.empathy_score = empathy_score;
  for (const auto& s : essay.sentences) essay.word_count += s.word_count();
  return essay;
}

AnnotationTable::AnnotationTable(std::vector<EmpathyAnnotation> annotations)
    : entries_(std::move(annotations)) {
  for (const auto& a : entries_)
    lookup_[{a.essay_id, a.sentence_id}] = a.empathic;
}

bool AnnotationTable::is_empathic(std::string_view essay_id,
                                  std::string_view sentence_id) const {
  auto it = lookup_.find(std::pair<std::string, std::string>(essay_id, sentence_id));
  return it != lookup_.end() && it->second;
}

std::size_t AnnotationTable::empathic_count() const {
  return static_cast<std::size_t>(std::count_if(
      lookup_.begin(), lookup_.end(), [](const auto& kv) { return kv.second; }));
}

namespace {

constexpr std::array<std::string_view, kFeatureCount> kFeatureNames = {
    "active", "passive", "material", "mental",    "ha_p",
    "bp_p",   "ie_p",    "g_p",      "energetic", "static"};
constexpr std::array<std::string_view, kFeatureCount> kFeatureLabels = {
    "Active", "Passive", "Material", "Mental",    "HA+P",
    "BP+P",   "IE+P",    "G+P",      "Energetic", "Static"};
constexpr std::array<std::string_view, kThemeCount> kThemeNames = {
    "medical", "empathetic", "both", "neither"};

}  // namespace

std::string_view feature_name(Feature feature) {
  return kFeatureNames[static_cast<std::size_t>(feature)];
}

std::string_view feature_label(Feature feature) {
  return kFeatureLabels[static_cast<std::size_t>(feature)];
}

std::optional<Feature> parse_feature(std::string_view name) {
  const std::string lowered = to_lower(name);
  for (Feature f : kAllFeatures) {
    if (feature_name(f) == lowered || to_lower(feature_label(f)) == lowered)
      return f;
  }
  if (lowered == "static_") return Feature::kStatic;
  return std::nullopt;
}

std::vector<std::string> FeatureVector::invariant_violations() const {
  const FeatureVector& v = *this;
  std::vector<std::string> out;
  if (v[Feature::kActive] == v[Feature::kPassive])
    out.emplace_back("active XOR passive");
  if (v[Feature::kEnergetic] == v[Feature::kStatic])
    out.emplace_back("energetic XOR static");
  if (v[Feature::kGoal] && !v[Feature::kPassive])
    out.emplace_back("g_p implies passive");
  const bool process = v[Feature::kMaterial] || v[Feature::kMental];
  if (v[Feature::kHumanActor] && !process)
    out.emplace_back("ha_p implies material or mental");
  if (v[Feature::kBodyPart] && !process)
    out.emplace_back("bp_p implies material or mental");
  if (v[Feature::kInanimateActor] && !process)
    out.emplace_back("ie_p implies material or mental");
  return out;
}

std::string FeatureVector::to_bitstring() const {
  std::string out;
  for (bool b : bits) out += b ? '1' : '0';
  return out;
}

std::string_view theme_name(ThemeLabel theme) {
  return kThemeNames[static_cast<std::size_t>(theme)];
}

std::optional<ThemeLabel> parse_theme(std::string_view name) {
  const std::string lowered = to_lower(name);
  for (ThemeLabel t : kAllThemes)
    if (theme_name(t) == lowered) return t;
  if (lowered == "medicalprocedural" || lowered == "medical_procedural")
    return ThemeLabel::kMedicalProcedural;
  return std::nullopt;
}

std::string ScoreBucket::label() const {
  return std::to_string(static_cast<int>(low)) + "-" +
         std::to_string(static_cast<int>(high));
}

const std::array<ScoreBucket, kBucketCount>& all_buckets() {
  static const std::array<ScoreBucket, kBucketCount> buckets = {
      ScoreBucket{1.0, 2.0, 0}, ScoreBucket{2.0, 3.0, 1},
      ScoreBucket{3.0, 4.0, 2}, ScoreBucket{4.0, 5.0, 3}};
  return buckets;
}

ScoreBucket bucket_of(double score, std::string_view essay_id) {
  if (!(score >= 1.0 && score <= 5.0)) {
    std::ostringstream msg;
    msg << "score " << score << " outside [1,5]";
    if (!essay_id.empty()) msg << " for essay '" << essay_id << "'";
    throw DomainError(msg.str());
  }
  const auto& buckets = all_buckets();
  const auto idx =
      std::min<std::size_t>(static_cast<std::size_t>(std::floor(score)) - 1,
                            kBucketCount - 1);
  return buckets[idx];
}

std::optional<ScoreBucket> parse_bucket(std::string_view label) {
  for (const auto& b : all_buckets())
    if (b.label() == label) return b;
  return std::nullopt;
}

std::size_t Corpus::sentence_count() const {
  std::size_t n = 0;
  for (const auto& e : essays) n += e.sentences.size();
  return n;
}

}  // namespace transit
