#include "transit/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <random>
#include <set>

#include "transit/errors.hpp"
#include "transit/parallel.hpp"

namespace transit {

ProtocolConfig ProtocolConfig::from_json(const nlohmann::json& j) {
  ProtocolConfig c;
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  try {
    if (j.contains("model")) c.model = parse_model_kind(j["model"].get<std::string>());
    if (j.contains("augment")) c.augment = j["augment"].get<bool>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("l2_grid")) c.l2_grid = j["l2_grid"].get<std::vector<double>>();
    if (j.contains("binary")) c.binary = j["binary"].get<bool>();
    if (j.contains("folds")) c.folds = j["folds"].get<std::size_t>();
    if (j.contains("max_epochs")) c.max_epochs = j["max_epochs"].get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("invalid config: ") + e.what());
  }
  if (c.l2_grid.empty()) throw UsageError("config l2_grid must not be empty");
  for (double l : c.l2_grid)
    if (!(l >= 0.0)) throw UsageError("config l2_grid entries must be >= 0");
  if (c.folds < 2) throw UsageError("config folds must be at least 2");
  if (c.max_epochs < 1) throw UsageError("config max_epochs must be positive");
  return c;
}

nlohmann::ordered_json ProtocolConfig::to_json() const {
  nlohmann::ordered_json j;
  j["model"] = std::string(model_kind_name(model));
  j["augment"] = augment;
  j["seed"] = seed;
  j["l2_grid"] = l2_grid;
  j["binary"] = binary;
  j["folds"] = folds;
  j["max_epochs"] = max_epochs;
  std::vector<std::string> ex;
  for (Feature f : kAllFeatures)
    if (excluded[static_cast<std::size_t>(f)]) ex.emplace_back(feature_name(f));
  j["excluded"] = ex;
  return j;
}

EssaySplit split_essays(std::vector<std::string> essay_ids, std::uint64_t seed,
                        std::size_t folds, double test_fraction) {
  std::vector<std::string> ids;
  std::set<std::string> seen;
  for (auto& id : essay_ids)
    if (seen.insert(id).second) ids.push_back(std::move(id));
  if (ids.size() < 2) throw ProtocolError("need at least two essays to split");
  if (folds == 0) throw ProtocolError("fold count must be positive");
  std::mt19937_64 rng(seed);
  std::shuffle(ids.begin(), ids.end(), rng);
  auto n_test = static_cast<std::size_t>(
      std::llround(test_fraction * static_cast<double>(ids.size())));
  n_test = std::clamp<std::size_t>(n_test, 1, ids.size() - 1);
  EssaySplit split;
  split.test_essays.assign(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(n_test));
  split.train_essays.assign(ids.begin() + static_cast<std::ptrdiff_t>(n_test), ids.end());
  split.folds.assign(folds, {});
  for (std::size_t i = 0; i < split.train_essays.size(); ++i)
    split.folds[i % folds].push_back(split.train_essays[i]);
  return split;
}

nlohmann::ordered_json ProtocolResult::to_json() const {
  nlohmann::ordered_json j;
  j["train_essays"] = split.train_essays;
  j["test_essays"] = split.test_essays;
  j["folds"] = split.folds;
  j["cv_macro_f1"] = cv_macro_f1;
  j["selected_lambda"] = selected_lambda;
  j["fold_reports"] = nlohmann::ordered_json::array();
  for (const auto& r : fold_reports) j["fold_reports"].push_back(transit::to_json(r));
  j["test_report"] = transit::to_json(test_report);
  return j;
}

namespace {

using RowList = std::vector<const LabeledSentence*>;

RowList rows_for(const std::map<std::string, RowList>& by_essay,
                 const std::vector<std::string>& essays) {
  RowList out;
  for (const auto& id : essays) {
    auto it = by_essay.find(id);
    if (it != by_essay.end()) out.insert(out.end(), it->second.begin(), it->second.end());
  }
  return out;
}

struct RunOutput {
  EvalReport report;
  std::vector<int> truth;
  std::vector<int> predicted;
};

RunOutput train_and_evaluate(const RowList& train_rows, const RowList& test_rows,
                             const TaskSpec& task, const ProtocolConfig& config,
                             double lambda, const std::vector<std::string>& names,
                             int fold_id) {
  const VocabIndex vocab = VocabIndex::build(train_rows);
  AugmentOptions augment{config.augment, config.excluded};
  const DesignMatrix train_m = vectorize(train_rows, vocab, augment, task);
  const DesignMatrix test_m = vectorize(test_rows, vocab, augment, task);
  LinearModel model;
  try {
    model = train(train_m, config.model,
                  TrainOptions{lambda, config.max_epochs, 1e-6});
  } catch (const TrainingError& e) {
    throw ProtocolError(std::string("fold ") + std::to_string(fold_id) + ": " + e.what());
  }
  RunOutput out;
  out.truth = test_m.labels();
  out.predicted = predict_all(model, test_m);
  out.report = make_report(out.truth, out.predicted, names, fold_id);
  return out;
}

}  // namespace

ProtocolResult run_protocol(const std::vector<LabeledSentence>& data,
                            const ProtocolConfig& config) {
  const TaskSpec task = config.binary ? TaskSpec::binary() : TaskSpec::four_way();
  std::vector<std::string> names;
  for (ThemeLabel t : task.classes) names.emplace_back(theme_name(t));

  std::map<std::string, RowList> by_essay;
  std::vector<std::string> essay_order;
  std::set<int> classes_present;
  for (const auto& row : data) {
    const auto cls = task.class_of(row.theme);
    if (!cls) continue;
    classes_present.insert(*cls);
    auto [it, inserted] = by_essay.try_emplace(row.essay_id);
    if (inserted) essay_order.push_back(row.essay_id);
    it->second.push_back(&row);
  }
  if (config.binary && classes_present.size() < 2)
    throw ProtocolError("binary protocol needs both medical and empathetic sentences");
  if (essay_order.size() < 5)
    throw ProtocolError("protocol needs at least 5 essays, got " +
                        std::to_string(essay_order.size()));
  if (config.l2_grid.empty()) throw ProtocolError("empty l2 grid");

  ProtocolResult result;
  result.split = split_essays(essay_order, config.seed, config.folds,
                              config.test_fraction);
  const auto& split = result.split;

  // Every (lambda, fold) pair is an independent training run.
  const std::size_t grid = config.l2_grid.size();
  const std::size_t folds = split.folds.size();
  std::vector<std::optional<RunOutput>> cv(grid * folds);
  parallel_for(grid * folds, config.jobs, [&](std::size_t job) {
    const std::size_t l = job / folds;
    const std::size_t f = job % folds;
    if (split.folds[f].empty()) return;
    std::vector<std::string> fit_essays;
    for (std::size_t g = 0; g < folds; ++g)
      if (g != f)
        fit_essays.insert(fit_essays.end(), split.folds[g].begin(), split.folds[g].end());
    cv[job] = train_and_evaluate(rows_for(by_essay, fit_essays),
                                 rows_for(by_essay, split.folds[f]), task, config,
                                 config.l2_grid[l], names, static_cast<int>(f));
  });

  result.cv_macro_f1.assign(grid, 0.0);
  std::size_t best = 0;
  for (std::size_t l = 0; l < grid; ++l) {
    double sum = 0.0;
    std::size_t used = 0;
    for (std::size_t f = 0; f < folds; ++f) {
      if (!cv[l * folds + f]) continue;
      sum += cv[l * folds + f]->report.macro_f1();
      ++used;
    }
    result.cv_macro_f1[l] = used ? sum / static_cast<double>(used) : 0.0;
    if (result.cv_macro_f1[l] > result.cv_macro_f1[best]) best = l;
  }
  result.selected_lambda = config.l2_grid[best];
  for (std::size_t f = 0; f < folds; ++f)
    if (cv[best * folds + f]) result.fold_reports.push_back(cv[best * folds + f]->report);

  const RowList test_rows = rows_for(by_essay, split.test_essays);
  RunOutput final_run = train_and_evaluate(rows_for(by_essay, split.train_essays),
                                           test_rows, task, config,
                                           result.selected_lambda, names, -1);
  for (const auto* r : test_rows) result.test_ids.emplace_back(r->essay_id, r->sentence_id);
  result.test_report = std::move(final_run.report);
  result.test_truth = std::move(final_run.truth);
  result.test_predicted = std::move(final_run.predicted);
  return result;
}

ProtocolResult run_binary_protocol(const std::vector<LabeledSentence>& data,
                                   ProtocolConfig config) {
  config.binary = true;
  return run_protocol(data, config);
}

const AblationRow& AblationTable::row(std::string_view excluded) const {
  for (const auto& r : rows)
    if (r.excluded == excluded) return r;
  throw ContractError("ablation table has no row '" + std::string(excluded) + "'");
}

AblationTable ablate(const std::vector<LabeledSentence>& data,
                     const ProtocolConfig& config) {
  if (!config.augment)
    throw ProtocolError("ablation requires augment = true");
  AblationTable table;
  ProtocolConfig full = config;
  full.excluded.fill(false);
  AblationRow base{"none", run_protocol(data, full), {}};
  table.class_names = base.result.test_report.class_names;
  base.f1_delta.assign(table.class_names.size(), 0.0);
  table.rows.push_back(std::move(base));
  for (Feature f : kAllFeatures) {
    ProtocolConfig cfg = full;
    cfg.excluded[static_cast<std::size_t>(f)] = true;
    AblationRow row{std::string(feature_name(f)), run_protocol(data, cfg), {}};
    const auto& full_f1 = table.rows.front().result.test_report.f1;
    for (std::size_t c = 0; c < full_f1.size(); ++c)
      row.f1_delta.push_back(row.result.test_report.f1[c] - full_f1[c]);
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_ablation_csv(std::ostream& out, const AblationTable& table) {
  out << "excluded,selected_lambda,macro_f1";
  for (const auto& c : table.class_names) out << ",f1_" << c;
  for (const auto& c : table.class_names) out << ",delta_" << c;
  out << '\n';
  out << std::fixed << std::setprecision(4);
  for (const auto& r : table.rows) {
    out << r.excluded << ',' << r.result.selected_lambda << ','
        << r.result.test_report.macro_f1();
    for (double v : r.result.test_report.f1) out << ',' << v;
    for (double v : r.f1_delta) out << ',' << v;
    out << '\n';
  }
}

}  // namespace transit
