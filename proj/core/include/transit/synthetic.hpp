#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <string_view>
#include <vector>

#include "transit/conllu.hpp"
#include "transit/corpus.hpp"

namespace transit {

using SignalSpec = std::map<Feature, double>;

// "bp_p=0.9,ha_p=0.2". Throws DomainError for unknown features or strengths
// outside [0,1].
SignalSpec parse_signal(std::string_view text);

struct SyntheticOptions {
  std::uint64_t seed = 7;
  std::size_t n_essays = 12;
  SignalSpec signal;
  std::size_t min_sentences = 8;
  std::size_t max_sentences = 12;
  double score_noise = 0.25;   // std-dev of the score noise
  double medical_rate = 0.35;  // chance a sentence carries a medical phrase
};

// A generated sentence with the labels its template guarantees.
struct SyntheticSentence {
  Sentence sentence;
  FeatureVector gold_features;
  bool gold_medical = false;
  std::size_t template_id = 0;
};

struct SyntheticCorpus {
  Corpus corpus;
  CorpusManifest manifest;
  std::vector<std::vector<SyntheticSentence>> sentences;  // per essay
};

// Sentences are assembled from parse templates. Empathic sentences prefer
// templates that exhibit signalled features; scores rise with the essay's
// empathic fraction plus seeded noise. Requires n_essays >= 5.
SyntheticCorpus generate(const SyntheticOptions& options);

// Template sampler on its own: `count` sentences from the base distribution.
std::vector<SyntheticSentence> generate_sentences(std::uint64_t seed,
                                                  std::size_t count,
                                                  double medical_rate = 0.35);

// Essay score from the empathic fraction: 1 + 4 * fraction + noise, clamped.
double synthetic_score(double empathic_fraction, double noise);

// Writes manifest.json plus essays/<id>.conllu under `dir`.
void write_synthetic(const SyntheticCorpus& corpus,
                     const std::filesystem::path& dir);

}  // namespace transit
