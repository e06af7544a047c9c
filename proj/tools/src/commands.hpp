#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace transit::cli {

struct CommonOptions {
  std::filesystem::path manifest;
  std::filesystem::path out;  // empty: print to stdout where possible
  std::filesystem::path lexicon_dir;
  std::filesystem::path tone_file;
  std::filesystem::path config;
  std::optional<std::uint64_t> seed;
  unsigned jobs = 1;
};

struct HeatmapOptions {
  std::string theme = "all";   // medical|empathetic|both|all
  std::string bucket = "all";  // 1-2|2-3|3-4|4-5|all
  std::string format = "pgm";  // text|json|pgm
};

struct TrainFlags {
  std::optional<std::string> model;  // logreg|svm
  bool augment = false;
  bool binary = false;
};

struct FixtureOptions {
  std::size_t essays = 12;
  std::string signal;
};

// Each returns the process exit code; errors propagate as exceptions.
int run_analyze(const CommonOptions& common, std::ostream& out);
int run_profile(const CommonOptions& common, std::ostream& out);
int run_heatmap(const CommonOptions& common, const HeatmapOptions& opts,
                std::ostream& out);
int run_train(const CommonOptions& common, const TrainFlags& flags,
              std::ostream& out);
int run_ablate(const CommonOptions& common, const TrainFlags& flags,
               std::ostream& out);
int run_fixtures(const CommonOptions& common, const FixtureOptions& opts,
                 std::ostream& out);

}  // namespace transit::cli
