#include "transit/metrics.hpp"

#include <algorithm>

#include "transit/errors.hpp"

namespace transit {

std::size_t EvalReport::total() const {
  std::size_t n = 0;
  for (auto s : support) n += s;
  return n;
}

double EvalReport::accuracy() const {
  const std::size_t n = total();
  if (n == 0) return 0.0;
  std::size_t correct = 0;
  for (std::size_t c = 0; c < confusion.size(); ++c) correct += confusion[c][c];
  return static_cast<double>(correct) / static_cast<double>(n);
}

double EvalReport::micro_recall() const {
  std::size_t tp = 0, pos = 0;
  for (std::size_t c = 0; c < confusion.size(); ++c) {
    tp += confusion[c][c];
    pos += support[c];
  }
  return pos == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(pos);
}

double EvalReport::macro_f1() const {
  double sum = 0.0;
  std::size_t used = 0;
  for (std::size_t c = 0; c < confusion.size(); ++c) {
    std::size_t predicted = 0;
    for (std::size_t t = 0; t < confusion.size(); ++t) predicted += confusion[t][c];
    if (support[c] == 0 && predicted == 0) continue;
    sum += f1[c];
    ++used;
  }
  return used == 0 ? 0.0 : sum / static_cast<double>(used);
}

double EvalReport::f1_of(std::string_view class_name) const {
  auto it = std::find(class_names.begin(), class_names.end(), class_name);
  if (it == class_names.end())
    throw ContractError("report has no class '" + std::string(class_name) + "'");
  return f1[static_cast<std::size_t>(it - class_names.begin())];
}

EvalReport make_report(std::span<const int> truth, std::span<const int> predicted,
                       const std::vector<std::string>& class_names,
                       int fold_id) {
  if (truth.size() != predicted.size())
    throw IntegrityError("truth and prediction counts differ");
  const std::size_t k = class_names.size();
  EvalReport r;
  r.class_names = class_names;
  r.fold_id = fold_id;
  r.confusion.assign(k, std::vector<std::size_t>(k, 0));
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const auto t = static_cast<std::size_t>(truth[i]);
    const auto p = static_cast<std::size_t>(predicted[i]);
    if (t >= k || p >= k) throw IntegrityError("class id outside the report");
    ++r.confusion[t][p];
  }
  r.precision.assign(k, 0.0);
  r.recall.assign(k, 0.0);
  r.f1.assign(k, 0.0);
  r.support.assign(k, 0);
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t col = 0;
    for (std::size_t t = 0; t < k; ++t) {
      r.support[c] += r.confusion[c][t];
      col += r.confusion[t][c];
    }
    const double tp = static_cast<double>(r.confusion[c][c]);
    if (col > 0) r.precision[c] = tp / static_cast<double>(col);
    if (r.support[c] > 0) r.recall[c] = tp / static_cast<double>(r.support[c]);
    const double denom = r.precision[c] + r.recall[c];
    r.f1[c] = denom > 0.0 ? 2.0 * r.precision[c] * r.recall[c] / denom : 0.0;
  }
  return r;
}

std::vector<int> predict_all(const LinearModel& model, const DesignMatrix& x) {
  if (model.width != x.width())
    throw IntegrityError("model width " + std::to_string(model.width) +
                         " does not match matrix width " +
                         std::to_string(x.width()));
  std::vector<int> out(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) out[i] = model.predict(x.row(i));
  return out;
}

EvalReport evaluate(const LinearModel& model, const DesignMatrix& test,
                    const std::vector<std::string>& class_names, int fold_id) {
  const auto predicted = predict_all(model, test);
  return make_report(test.labels(), predicted, class_names, fold_id);
}

nlohmann::ordered_json to_json(const EvalReport& report) {
  nlohmann::ordered_json j;
  j["fold_id"] = report.fold_id;
  j["classes"] = nlohmann::ordered_json::array();
  for (std::size_t c = 0; c < report.class_names.size(); ++c) {
    nlohmann::ordered_json row;
    row["name"] = report.class_names[c];
    row["precision"] = report.precision[c];
    row["recall"] = report.recall[c];
    row["f1"] = report.f1[c];
    row["support"] = report.support[c];
    j["classes"].push_back(std::move(row));
  }
  j["confusion"] = report.confusion;
  j["accuracy"] = report.accuracy();
  j["macro_f1"] = report.macro_f1();
  return j;
}

}  // namespace transit
