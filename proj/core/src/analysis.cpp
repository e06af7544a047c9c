#include "transit/analysis.hpp"

#include "transit/parallel.hpp"

namespace transit {

std::vector<FeatureVector> CorpusAnalysis::features_of(std::size_t essay) const {
  std::vector<FeatureVector> out;
  for (const auto& s : essays.at(essay).sentences) out.push_back(s.features);
  return out;
}

std::vector<ThemeLabel> CorpusAnalysis::themes_of(std::size_t essay) const {
  std::vector<ThemeLabel> out;
  for (const auto& s : essays.at(essay).sentences) out.push_back(s.theme);
  return out;
}

CorpusAnalysis analyze_corpus(const Corpus& corpus, const LexiconSet& lex,
                              const AnalysisOptions& options) {
  CorpusAnalysis out;
  out.essays.resize(corpus.essays.size());
  parallel_for(corpus.essays.size(), options.jobs, [&](std::size_t i) {
    const Essay& essay = corpus.essays[i];
    auto& slots = out.essays[i].sentences;
    slots.reserve(essay.sentences.size());
    for (const auto& s : essay.sentences) {
      SentenceAnalysis a;
      std::optional<ToneScore> tone;
      if (options.tone_overrides)
        tone = options.tone_overrides->find(essay.essay_id, s.sentence_id);
      a.tone = tone ? *tone : score_tone(s, lex);
      a.features = extract_features(s, lex, a.tone);
      slots.push_back(a);
    }
  });
  out.themes = tag_corpus(corpus.essays, corpus.annotations, lex);
  std::size_t row = 0;
  for (auto& essay : out.essays) {
    for (auto& s : essay.sentences) {
      const auto& theme_row = out.themes.rows[row++];
      s.is_medical = theme_row.is_medical;
      s.is_empathic = theme_row.is_empathic;
      s.theme = theme_row.theme;
    }
  }
  return out;
}

}  // namespace transit
