#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "transit/linear_model.hpp"
#include "transit/metrics.hpp"
#include "transit/vocab.hpp"

namespace transit {

struct ProtocolConfig {
  ModelKind model = ModelKind::kLogisticRegression;
  bool augment = false;
  std::uint64_t seed = 7;
  std::vector<double> l2_grid = {0.001, 0.01, 0.1, 1.0};
  bool binary = false;
  std::size_t folds = 5;
  double test_fraction = 0.2;
  int max_epochs = 5000;
  unsigned jobs = 1;
  std::array<bool, kFeatureCount> excluded{};

  // Keys: model, augment, seed, l2_grid, binary, folds, max_epochs.
  static ProtocolConfig from_json(const nlohmann::json& j);
  nlohmann::ordered_json to_json() const;
};

struct EssaySplit {
  std::vector<std::string> train_essays;
  std::vector<std::string> test_essays;
  std::vector<std::vector<std::string>> folds;  // partition of train_essays
};

// Seeded shuffle of distinct essay ids, round(test_fraction * n) held out,
// remaining essays dealt round-robin into folds.
EssaySplit split_essays(std::vector<std::string> essay_ids, std::uint64_t seed,
                        std::size_t folds, double test_fraction);

struct ProtocolResult {
  EssaySplit split;
  std::vector<double> cv_macro_f1;  // per l2_grid entry
  double selected_lambda = 0.0;
  std::vector<EvalReport> fold_reports;  // at the selected lambda
  EvalReport test_report;
  std::vector<int> test_truth;
  std::vector<int> test_predicted;
  // (essay_id, sentence_id) of each test row, parallel to test_truth.
  std::vector<std::pair<std::string, std::string>> test_ids;

  nlohmann::ordered_json to_json() const;
};

// Essay-level 80/20 split, k-fold CV over the training essays to choose
// l2_lambda, final model on all training essays reported on the test split.
// Throws ProtocolError for fewer than five essays.
ProtocolResult run_protocol(const std::vector<LabeledSentence>& data,
                            const ProtocolConfig& config);

// Same protocol restricted to MedicalProcedural vs Empathetic sentences.
ProtocolResult run_binary_protocol(const std::vector<LabeledSentence>& data,
                                   ProtocolConfig config);

struct AblationRow {
  std::string excluded;  // "none" for the full model, else the feature name
  ProtocolResult result;
  std::vector<double> f1_delta;  // ablated - full, per class
};

struct AblationTable {
  std::vector<std::string> class_names;
  std::vector<AblationRow> rows;  // full model first, then kAllFeatures order

  const AblationRow& row(std::string_view excluded) const;
};

// Full augmented model plus one run per excluded feature, identical splits.
AblationTable ablate(const std::vector<LabeledSentence>& data,
                     const ProtocolConfig& config);

void write_ablation_csv(std::ostream& out, const AblationTable& table);

}  // namespace transit
