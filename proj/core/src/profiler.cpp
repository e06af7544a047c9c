#include "transit/profiler.hpp"

#include <iomanip>
#include <ostream>

#include "transit/errors.hpp"

namespace transit {

EmpathyProfile profile_essay(const Essay& essay,
                             std::span<const FeatureVector> features,
                             std::span<const ThemeLabel> themes) {
  const std::size_t n = essay.sentences.size();
  if (n == 0)
    throw IntegrityError("essay '" + essay.essay_id + "' has no sentences");
  if (features.size() < n || themes.size() < n) {
    const std::size_t missing = std::min(features.size(), themes.size());
    throw IntegrityError("essay '" + essay.essay_id +
                         "': no features/theme for sentence '" +
                         essay.sentences[missing].sentence_id + "'");
  }
  if (features.size() > n || themes.size() > n)
    throw IntegrityError("essay '" + essay.essay_id +
                         "': more feature rows than sentences");

  EmpathyProfile p;
  p.essay_id = essay.essay_id;
  p.sentence_count = n;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t f = 0; f < kFeatureCount; ++f)
      if (features[i].bits[f]) p.feature_frequencies[f] += 1.0;
    p.theme_distribution[static_cast<std::size_t>(themes[i])] += 1.0;
  }
  for (auto& v : p.feature_frequencies) v /= static_cast<double>(n);
  for (auto& v : p.theme_distribution) v /= static_cast<double>(n);
  p.voice_active_fraction =
      p.feature_frequencies[static_cast<std::size_t>(Feature::kActive)];
  return p;
}

std::vector<BucketReport> bucket_report(
    std::span<const EmpathyProfile> profiles,
    const std::map<std::string, double, std::less<>>& scores) {
  std::vector<BucketReport> reports;
  for (const auto& b : all_buckets()) reports.push_back({b, 0, std::nullopt});
  std::array<BucketMeans, kBucketCount> sums{};
  for (const auto& p : profiles) {
    auto it = scores.find(p.essay_id);
    if (it == scores.end())
      throw ContractError("no score for essay '" + p.essay_id + "'");
    const std::size_t b = bucket_of(it->second, p.essay_id).index;
    ++reports[b].essay_count;
    for (std::size_t f = 0; f < kFeatureCount; ++f)
      sums[b].feature_frequencies[f] += p.feature_frequencies[f];
    for (std::size_t t = 0; t < kThemeCount; ++t)
      sums[b].theme_distribution[t] += p.theme_distribution[t];
    sums[b].voice_active_fraction += p.voice_active_fraction;
  }
  for (std::size_t b = 0; b < kBucketCount; ++b) {
    const auto n = static_cast<double>(reports[b].essay_count);
    if (reports[b].essay_count == 0) continue;
    BucketMeans m = sums[b];
    for (auto& v : m.feature_frequencies) v /= n;
    for (auto& v : m.theme_distribution) v /= n;
    m.voice_active_fraction /= n;
    reports[b].means = m;
  }
  return reports;
}

namespace {

void write_fraction(std::ostream& out, double v) {
  out << ',' << std::fixed << std::setprecision(4) << v;
}

void write_header_columns(std::ostream& out) {
  for (Feature f : kAllFeatures) out << ',' << feature_name(f);
  for (ThemeLabel t : kAllThemes) out << ",theme_" << theme_name(t);
  out << ",voice_active_fraction";
}

}  // namespace

void write_profile_csv(std::ostream& out,
                       std::span<const EmpathyProfile> profiles,
                       const std::map<std::string, double, std::less<>>& scores) {
  out << "essay_id";
  write_header_columns(out);
  out << ",score\n";
  for (const auto& p : profiles) {
    out << p.essay_id;
    for (double v : p.feature_frequencies) write_fraction(out, v);
    for (double v : p.theme_distribution) write_fraction(out, v);
    write_fraction(out, p.voice_active_fraction);
    auto it = scores.find(p.essay_id);
    if (it != scores.end())
      write_fraction(out, it->second);
    else
      out << ',';
    out << '\n';
  }
}

void write_bucket_csv(std::ostream& out, std::span<const BucketReport> reports) {
  out << "bucket,essay_count";
  write_header_columns(out);
  out << '\n';
  for (const auto& r : reports) {
    out << r.bucket.label() << ',' << r.essay_count;
    if (r.means) {
      for (double v : r.means->feature_frequencies) write_fraction(out, v);
      for (double v : r.means->theme_distribution) write_fraction(out, v);
      write_fraction(out, r.means->voice_active_fraction);
    } else {
      for (std::size_t i = 0; i < kFeatureCount + kThemeCount + 1; ++i) out << ',';
    }
    out << '\n';
  }
}

}  // namespace transit
