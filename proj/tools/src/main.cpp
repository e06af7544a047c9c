#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "transit/errors.hpp"
#include "transit/parallel.hpp"

namespace {

constexpr int kDataError = 1;
constexpr int kUsageError = 2;

void add_common(CLI::App* cmd, transit::cli::CommonOptions& c, bool manifest = true) {
  if (manifest)
    cmd->add_option("--manifest", c.manifest, "Corpus manifest JSON")->required();
  cmd->add_option("--out", c.out, "Output directory");
  cmd->add_option("--lexicon-dir", c.lexicon_dir,
                  "Directory of lexicon files overriding the shipped ones");
  cmd->add_option("--tone-file", c.tone_file, "JSON sidecar of external tone scores");
  cmd->add_option("--seed", c.seed, "Random seed");
  cmd->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--config", c.config, "Protocol config JSON");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace transit::cli;
  CLI::App app{"Transitivity and empathy corpus toolkit"};
  app.set_version_flag("--version", TRANSIT_VERSION);
  app.require_subcommand(1);

  CommonOptions common;
  common.jobs = transit::default_jobs();
  HeatmapOptions heatmap;
  TrainFlags train;
  FixtureOptions fixtures;

  auto* analyze_cmd = app.add_subcommand("analyze", "Per-sentence features and themes");
  add_common(analyze_cmd, common);

  auto* profile_cmd = app.add_subcommand("profile", "Per-essay profiles and score buckets");
  add_common(profile_cmd, common);

  auto* heatmap_cmd = app.add_subcommand("heatmap", "Theme position heatmaps");
  add_common(heatmap_cmd, common);
  heatmap_cmd->add_option("--theme", heatmap.theme, "medical|empathetic|both|all");
  heatmap_cmd->add_option("--bucket", heatmap.bucket, "1-2|2-3|3-4|4-5|all");
  heatmap_cmd->add_option("--format", heatmap.format, "text|json|pgm");

  auto* train_cmd = app.add_subcommand("train", "Train and evaluate a theme classifier");
  add_common(train_cmd, common);
  train_cmd->add_option("--model", train.model, "logreg|svm");
  train_cmd->add_flag("--augment", train.augment, "Append the construction features");
  train_cmd->add_flag("--binary", train.binary, "Medical vs empathetic only");

  auto* ablate_cmd = app.add_subcommand("ablate", "Leave-one-feature-out runs");
  add_common(ablate_cmd, common);
  ablate_cmd->add_option("--model", train.model, "logreg|svm");
  ablate_cmd->add_flag("--binary", train.binary, "Medical vs empathetic only");

  auto* fixtures_cmd = app.add_subcommand("fixtures", "Generate a synthetic corpus");
  add_common(fixtures_cmd, common, false);
  fixtures_cmd->add_option("--essays", fixtures.essays, "Number of essays");
  fixtures_cmd->add_option("--signal", fixtures.signal, "feature=strength,... e.g. bp_p=0.9");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*analyze_cmd) return run_analyze(common, std::cout);
    if (*profile_cmd) return run_profile(common, std::cout);
    if (*heatmap_cmd) return run_heatmap(common, heatmap, std::cout);
    if (*train_cmd) return run_train(common, train, std::cout);
    if (*ablate_cmd) return run_ablate(common, train, std::cout);
    if (*fixtures_cmd) return run_fixtures(common, fixtures, std::cout);
  } catch (const transit::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const transit::LoadError& e) {
    for (const auto& v : e.violations()) std::cerr << "error: " << v << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kUsageError;
}
