#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "transit/analysis.hpp"
#include "transit/corpus.hpp"

namespace transit {

// One classification instance: a sentence's unigrams, its construction
// features and its theme.
struct LabeledSentence {
  std::string essay_id;
  std::string sentence_id;
  std::vector<std::string> words;
  FeatureVector features;
  ThemeLabel theme = ThemeLabel::kNeither;
};

// Lowercased surface forms of non-punctuation tokens.
std::vector<std::string> unigrams(const Sentence& sentence);

std::vector<LabeledSentence> build_classification_data(
    const Corpus& corpus, const CorpusAnalysis& analysis);

// Dense, lexicographically ordered term index built from training rows only.
class VocabIndex {
 public:
  VocabIndex() = default;
  static VocabIndex build(std::span<const LabeledSentence* const> rows);
  static VocabIndex build(std::span<const LabeledSentence> rows);
  static VocabIndex from_terms(std::vector<std::string> terms);

  std::optional<std::size_t> index_of(std::string_view term) const;
  std::size_t size() const { return terms_.size(); }
  const std::vector<std::string>& terms() const { return terms_; }

 private:
  std::vector<std::string> terms_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

// Which theme labels the task distinguishes; class id = position in `classes`.
struct TaskSpec {
  std::vector<ThemeLabel> classes;

  static TaskSpec four_way();
  static TaskSpec binary();  // MedicalProcedural vs Empathetic
  std::optional<int> class_of(ThemeLabel theme) const;
  std::size_t size() const { return classes.size(); }
};

struct AugmentOptions {
  bool enabled = false;
  // Ablated features keep their column, zeroed.
  std::array<bool, kFeatureCount> excluded{};
};

// Row-compressed sparse matrix with one class id per row.
class DesignMatrix {
 public:
  struct Entry {
    std::size_t col;
    double value;
  };

  DesignMatrix(std::size_t width, std::size_t num_classes);

  void add_row(std::vector<Entry> entries, int label);

  std::size_t width() const { return width_; }
  std::size_t num_classes() const { return num_classes_; }
  std::size_t rows() const { return labels_.size(); }
  std::span<const Entry> row(std::size_t i) const {
    return {entries_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }
  const std::vector<int>& labels() const { return labels_; }
  std::vector<double> dense_row(std::size_t i) const;

 private:
  std::size_t width_;
  std::size_t num_classes_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Entry> entries_;
  std::vector<int> labels_;
};

// Unigram counts (out-of-vocabulary terms dropped), optionally followed by
// the ten construction Booleans in feature order.
DesignMatrix vectorize(std::span<const LabeledSentence* const> rows,
                       const VocabIndex& vocab, const AugmentOptions& augment,
                       const TaskSpec& task);
DesignMatrix vectorize(std::span<const LabeledSentence> rows,
                       const VocabIndex& vocab, const AugmentOptions& augment,
                       const TaskSpec& task);

}  // namespace transit
