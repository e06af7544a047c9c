#include "transit/vocab.hpp"

#include <algorithm>
#include <set>

#include "transit/errors.hpp"

namespace transit {

std::vector<std::string> unigrams(const Sentence& sentence) {
  std::vector<std::string> out;
  out.reserve(sentence.tokens.size());
  for (const auto& t : sentence.tokens)
    if (!t.is_punct()) out.push_back(t.lower_surface());
  return out;
}

std::vector<LabeledSentence> build_classification_data(
    const Corpus& corpus, const CorpusAnalysis& analysis) {
  std::vector<LabeledSentence> out;
  for (std::size_t e = 0; e < corpus.essays.size(); ++e) {
    const Essay& essay = corpus.essays[e];
    const auto& rows = analysis.essays.at(e).sentences;
    for (std::size_t i = 0; i < essay.sentences.size(); ++i) {
      LabeledSentence ls;
      ls.essay_id = essay.essay_id;
      ls.sentence_id = essay.sentences[i].sentence_id;
      ls.words = unigrams(essay.sentences[i]);
      ls.features = rows.at(i).features;
      ls.theme = rows.at(i).theme;
      out.push_back(std::move(ls));
    }
  }
  return out;
}

VocabIndex VocabIndex::from_terms(std::vector<std::string> terms) {
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  VocabIndex v;
  v.terms_ = std::move(terms);
  for (std::size_t i = 0; i < v.terms_.size(); ++i) v.index_[v.terms_[i]] = i;
  return v;
}

VocabIndex VocabIndex::build(std::span<const LabeledSentence* const> rows) {
  std::set<std::string> terms;
  for (const auto* r : rows) terms.insert(r->words.begin(), r->words.end());
  return from_terms({terms.begin(), terms.end()});
}

VocabIndex VocabIndex::build(std::span<const LabeledSentence> rows) {
  std::vector<const LabeledSentence*> ptrs;
  for (const auto& r : rows) ptrs.push_back(&r);
  return build(ptrs);
}

std::optional<std::size_t> VocabIndex::index_of(std::string_view term) const {
  auto it = index_.find(term);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

TaskSpec TaskSpec::four_way() {
  return {{kAllThemes.begin(), kAllThemes.end()}};
}

TaskSpec TaskSpec::binary() {
  return {{ThemeLabel::kMedicalProcedural, ThemeLabel::kEmpathetic}};
}

std::optional<int> TaskSpec::class_of(ThemeLabel theme) const {
  auto it = std::find(classes.begin(), classes.end(), theme);
  if (it == classes.end()) return std::nullopt;
  return static_cast<int>(it - classes.begin());
}

DesignMatrix::DesignMatrix(std::size_t width, std::size_t num_classes)
    : width_(width), num_classes_(num_classes) {}

void DesignMatrix::add_row(std::vector<Entry> entries, int label) {
  if (label < 0 || static_cast<std::size_t>(label) >= num_classes_)
    throw IntegrityError("row label " + std::to_string(label) +
                         " outside the task's classes");
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.col < b.col; });
  for (const auto& e : entries) {
    if (e.col >= width_)
      throw IntegrityError("column " + std::to_string(e.col) +
                           " outside matrix width " + std::to_string(width_));
  }
  entries_.insert(entries_.end(), entries.begin(), entries.end());
  offsets_.push_back(entries_.size());
  labels_.push_back(label);
}

std::vector<double> DesignMatrix::dense_row(std::size_t i) const {
  std::vector<double> out(width_, 0.0);
  for (const auto& e : row(i)) out[e.col] += e.value;
  return out;
}

DesignMatrix vectorize(std::span<const LabeledSentence* const> rows,
                       const VocabIndex& vocab, const AugmentOptions& augment,
                       const TaskSpec& task) {
  const std::size_t width = vocab.size() + (augment.enabled ? kFeatureCount : 0);
  DesignMatrix m(width, task.size());
  for (const auto* r : rows) {
    const auto label = task.class_of(r->theme);
    if (!label)
      throw ContractError("sentence '" + r->sentence_id + "' has theme '" +
                          std::string(theme_name(r->theme)) +
                          "' which the task does not include");
    std::map<std::size_t, double> counts;
    for (const auto& w : r->words)
      if (auto idx = vocab.index_of(w)) counts[*idx] += 1.0;
    std::vector<DesignMatrix::Entry> entries;
    entries.reserve(counts.size() + kFeatureCount);
    for (const auto& [col, value] : counts) entries.push_back({col, value});
    if (augment.enabled) {
      for (std::size_t f = 0; f < kFeatureCount; ++f)
        if (r->features.bits[f] && !augment.excluded[f])
          entries.push_back({vocab.size() + f, 1.0});
    }
    m.add_row(std::move(entries), *label);
  }
  return m;
}

DesignMatrix vectorize(std::span<const LabeledSentence> rows,
                       const VocabIndex& vocab, const AugmentOptions& augment,
                       const TaskSpec& task) {
  std::vector<const LabeledSentence*> ptrs;
  for (const auto& r : rows) ptrs.push_back(&r);
  return vectorize(ptrs, vocab, augment, task);
}

}  // namespace transit
