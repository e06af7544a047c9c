#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "transit/vocab.hpp"

namespace transit {

enum class ModelKind { kLogisticRegression, kLinearSvm };
std::string_view model_kind_name(ModelKind kind);  // "logreg" | "svm"
ModelKind parse_model_kind(std::string_view name);  // UsageError

struct TrainOptions {
  double l2_lambda = 0.01;
  int max_epochs = 5000;
  double gradient_tolerance = 1e-6;
};

// Regularized binary objective over targets in {-1, +1}:
//   logistic: mean log(1 + exp(-y f)) + lambda/2 |w|^2
//   hinge:    mean max(0, 1 - y f)     + lambda/2 |w|^2
// with f = w.x + b. The bias is not regularized.
struct Objective {
  double value = 0.0;
  double data_loss = 0.0;
  std::vector<double> grad_w;
  double grad_b = 0.0;
};

Objective binary_objective(ModelKind kind, const DesignMatrix& x,
                           std::span<const double> targets,
                           std::span<const double> weights, double bias,
                           double l2_lambda);

struct BinaryFit {
  std::vector<double> weights;
  double bias = 0.0;
  int epochs = 0;
  double gradient_norm = 0.0;
  // Objective (value, data loss) after every accepted step, starting at the
  // zero initialization.
  std::vector<double> objective_trace;
  std::vector<double> data_loss_trace;
};

// Logistic: full-batch gradient descent, Barzilai-Borwein trial steps with
// Armijo backtracking, so the objective never increases.
// SVM: full-batch subgradient descent, step 0.5/sqrt(t), best iterate kept.
// Both start from zeros and stop at gradient norm < tolerance or max_epochs.
BinaryFit fit_binary(ModelKind kind, const DesignMatrix& x,
                     std::span<const double> targets,
                     const TrainOptions& options);

struct LinearModel {
  ModelKind kind = ModelKind::kLogisticRegression;
  double l2_lambda = 0.0;
  std::size_t width = 0;
  // One-vs-rest, per class id. Classes absent from training are disabled and
  // never predicted.
  std::vector<std::vector<double>> weights;
  std::vector<double> bias;
  std::vector<bool> trained;

  std::size_t num_classes() const { return weights.size(); }
  std::vector<double> scores(std::span<const DesignMatrix::Entry> row) const;
  // Highest score; ties go to the lowest class id.
  int predict(std::span<const DesignMatrix::Entry> row) const;
};

// Throws TrainingError when fewer than two classes occur in `x`.
LinearModel train(const DesignMatrix& x, ModelKind kind,
                  const TrainOptions& options);

}  // namespace transit
