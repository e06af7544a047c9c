#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "transit/corpus.hpp"

namespace transit {

using FeatureFractions = std::array<double, kFeatureCount>;
using ThemeFractions = std::array<double, kThemeCount>;

struct EmpathyProfile {
  std::string essay_id;
  FeatureFractions feature_frequencies{};
  ThemeFractions theme_distribution{};
  double voice_active_fraction = 0.0;
  std::size_t sentence_count = 0;
};

// `features` and `themes` are parallel to essay.sentences. A short span is a
// coverage gap and raises IntegrityError naming the first uncovered sentence.
EmpathyProfile profile_essay(const Essay& essay,
                             std::span<const FeatureVector> features,
                             std::span<const ThemeLabel> themes);

struct BucketMeans {
  FeatureFractions feature_frequencies{};
  ThemeFractions theme_distribution{};
  double voice_active_fraction = 0.0;
};

struct BucketReport {
  ScoreBucket bucket;
  std::size_t essay_count = 0;
  std::optional<BucketMeans> means;  // empty when essay_count == 0
};

// Four reports in ascending bucket order; unweighted per-essay means.
// Throws ContractError when a profile has no score.
std::vector<BucketReport> bucket_report(
    std::span<const EmpathyProfile> profiles,
    const std::map<std::string, double, std::less<>>& scores);

// Profiles CSV: essay_id, 10 feature columns, 4 theme columns,
// voice_active_fraction, score. Fractions use 4 decimals.
void write_profile_csv(std::ostream& out,
                       std::span<const EmpathyProfile> profiles,
                       const std::map<std::string, double, std::less<>>& scores);
void write_bucket_csv(std::ostream& out,
                      std::span<const BucketReport> reports);

}  // namespace transit
