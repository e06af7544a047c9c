#pragma once

#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "transit/linear_model.hpp"

namespace transit {

struct EvalReport {
  std::vector<std::string> class_names;
  std::vector<double> precision;
  std::vector<double> recall;
  std::vector<double> f1;
  std::vector<std::size_t> support;
  std::vector<std::vector<std::size_t>> confusion;  // [truth][predicted]
  int fold_id = -1;                                  // -1: held-out test split

  std::size_t total() const;
  double accuracy() const;
  double micro_recall() const;
  double macro_f1() const;  // over classes with support or predictions
  double f1_of(std::string_view class_name) const;
};

EvalReport make_report(std::span<const int> truth, std::span<const int> predicted,
                       const std::vector<std::string>& class_names,
                       int fold_id = -1);

std::vector<int> predict_all(const LinearModel& model, const DesignMatrix& x);
EvalReport evaluate(const LinearModel& model, const DesignMatrix& test,
                    const std::vector<std::string>& class_names,
                    int fold_id = -1);

nlohmann::ordered_json to_json(const EvalReport& report);

}  // namespace transit
