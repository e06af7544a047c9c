#pragma once

#include <vector>

#include "transit/corpus.hpp"
#include "transit/detectors.hpp"
#include "transit/lexicon.hpp"
#include "transit/themes.hpp"

namespace transit {

// Per-sentence outputs of the detector and theme stages.
struct SentenceAnalysis {
  FeatureVector features;
  ToneScore tone;
  bool is_medical = false;
  bool is_empathic = false;
  ThemeLabel theme = ThemeLabel::kNeither;
};

struct EssayAnalysis {
  std::vector<SentenceAnalysis> sentences;  // parallel to Essay::sentences
};

struct CorpusAnalysis {
  std::vector<EssayAnalysis> essays;  // parallel to Corpus::essays
  ThemeTable themes;

  std::vector<FeatureVector> features_of(std::size_t essay) const;
  std::vector<ThemeLabel> themes_of(std::size_t essay) const;
};

struct AnalysisOptions {
  const ToneOverrides* tone_overrides = nullptr;
  unsigned jobs = 1;
};

CorpusAnalysis analyze_corpus(const Corpus& corpus, const LexiconSet& lex,
                              const AnalysisOptions& options = {});

}  // namespace transit
