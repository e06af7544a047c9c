#include "transit/linear_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "transit/errors.hpp"

namespace transit {

namespace {

double softplus(double z) {
  // log(1 + exp(z)) without overflow
  return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double dot_row(std::span<const DesignMatrix::Entry> row,
               std::span<const double> w) {
  double s = 0.0;
  for (const auto& e : row) s += e.value * w[e.col];
  return s;
}

double squared_norm(std::span<const double> v) {
  return std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
}

double gradient_norm(const Objective& o) {
  return std::sqrt(squared_norm(o.grad_w) + o.grad_b * o.grad_b);
}

}  // namespace

std::string_view model_kind_name(ModelKind kind) {
  return kind == ModelKind::kLogisticRegression ? "logreg" : "svm";
}

ModelKind parse_model_kind(std::string_view name) {
  if (name == "logreg" || name == "logistic") return ModelKind::kLogisticRegression;
  if (name == "svm") return ModelKind::kLinearSvm;
  throw UsageError("unknown model '" + std::string(name) +
                   "' (expected logreg or svm)");
}

Objective binary_objective(ModelKind kind, const DesignMatrix& x,
                           std::span<const double> targets,
                           std::span<const double> weights, double bias,
                           double l2_lambda) {
  if (weights.size() != x.width())
    throw IntegrityError("weight vector has " + std::to_string(weights.size()) +
                         " entries for a matrix of width " +
                         std::to_string(x.width()));
  if (targets.size() != x.rows())
    throw IntegrityError("target count does not match matrix rows");
  Objective o;
  o.grad_w.assign(x.width(), 0.0);
  const std::size_t n = x.rows();
  if (n == 0) return o;
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = x.row(i);
    const double y = targets[i];
    const double margin = y * (dot_row(row, weights) + bias);
    double loss = 0.0;
    double dloss = 0.0;  // d loss / d f
    if (kind == ModelKind::kLogisticRegression) {
      loss = softplus(-margin);
      dloss = -y * sigmoid(-margin);
    } else if (margin < 1.0) {
      loss = 1.0 - margin;
      dloss = -y;
    }
    o.data_loss += loss;
    if (dloss != 0.0) {
      for (const auto& e : row) o.grad_w[e.col] += dloss * e.value * inv_n;
      o.grad_b += dloss * inv_n;
    }
  }
  o.data_loss *= inv_n;
  for (std::size_t j = 0; j < weights.size(); ++j)
    o.grad_w[j] += l2_lambda * weights[j];
  o.value = o.data_loss + 0.5 * l2_lambda * squared_norm(weights);
  return o;
}

namespace {

BinaryFit fit_logistic(const DesignMatrix& x, std::span<const double> targets,
                       const TrainOptions& options) {
  constexpr double kArmijo = 1e-4;
  BinaryFit fit;
  fit.weights.assign(x.width(), 0.0);
  Objective current = binary_objective(ModelKind::kLogisticRegression, x,
                                       targets, fit.weights, 0.0,
                                       options.l2_lambda);
  fit.objective_trace.push_back(current.value);
  fit.data_loss_trace.push_back(current.data_loss);
  double step = 1.0;
  std::vector<double> candidate(x.width());
  while (fit.epochs < options.max_epochs) {
    const double gnorm = gradient_norm(current);
    fit.gradient_norm = gnorm;
    if (gnorm < options.gradient_tolerance) break;
    ++fit.epochs;
    const double g2 = gnorm * gnorm;
    bool accepted = false;
    Objective next;
    double cand_bias = 0.0;
    while (step > 1e-14) {
      for (std::size_t j = 0; j < candidate.size(); ++j)
        candidate[j] = fit.weights[j] - step * current.grad_w[j];
      cand_bias = fit.bias - step * current.grad_b;
      next = binary_objective(ModelKind::kLogisticRegression, x, targets,
                              candidate, cand_bias, options.l2_lambda);
      if (next.value <= current.value - kArmijo * step * g2) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // no representable descent step left

    // Barzilai-Borwein trial step for the next epoch: s.s / s.y, where s is
    // the parameter change and y the gradient change.
    double ss = 0.0, sy = 0.0;
    for (std::size_t j = 0; j < candidate.size(); ++j) {
      const double sj = candidate[j] - fit.weights[j];
      ss += sj * sj;
      sy += sj * (next.grad_w[j] - current.grad_w[j]);
    }
    const double sb = cand_bias - fit.bias;
    ss += sb * sb;
    sy += sb * (next.grad_b - current.grad_b);
    step = sy > 0.0 ? std::clamp(ss / sy, 1e-10, 1e10) : std::min(step * 2.0, 1e6);

    fit.weights.swap(candidate);
    fit.bias = cand_bias;
    current = std::move(next);
    fit.objective_trace.push_back(current.value);
    fit.data_loss_trace.push_back(current.data_loss);
  }
  fit.gradient_norm = gradient_norm(current);
  return fit;
}

BinaryFit fit_svm(const DesignMatrix& x, std::span<const double> targets,
                  const TrainOptions& options) {
  constexpr double kInitialStep = 0.5;
  BinaryFit fit;
  std::vector<double> w(x.width(), 0.0);
  double b = 0.0;
  Objective current = binary_objective(ModelKind::kLinearSvm, x, targets, w, b,
                                       options.l2_lambda);
  fit.weights = w;
  double best = current.value;
  fit.objective_trace.push_back(best);
  fit.data_loss_trace.push_back(current.data_loss);
  while (fit.epochs < options.max_epochs) {
    fit.gradient_norm = gradient_norm(current);
    if (fit.gradient_norm < options.gradient_tolerance) break;
    ++fit.epochs;
    const double eta = kInitialStep / std::sqrt(static_cast<double>(fit.epochs));
    for (std::size_t j = 0; j < w.size(); ++j) w[j] -= eta * current.grad_w[j];
    b -= eta * current.grad_b;
    current = binary_objective(ModelKind::kLinearSvm, x, targets, w, b,
                               options.l2_lambda);
    // Subgradient steps are not monotone; keep the best iterate.
    if (current.value < best) {
      best = current.value;
      fit.weights = w;
      fit.bias = b;
      fit.objective_trace.push_back(best);
      fit.data_loss_trace.push_back(current.data_loss);
    }
  }
  return fit;
}

}  // namespace

BinaryFit fit_binary(ModelKind kind, const DesignMatrix& x,
                     std::span<const double> targets,
                     const TrainOptions& options) {
  if (options.l2_lambda < 0.0)
    throw TrainingError("l2_lambda must be nonnegative");
  return kind == ModelKind::kLogisticRegression
             ? fit_logistic(x, targets, options)
             : fit_svm(x, targets, options);
}

std::vector<double> LinearModel::scores(
    std::span<const DesignMatrix::Entry> row) const {
  std::vector<double> out(weights.size(),
                          -std::numeric_limits<double>::infinity());
  for (std::size_t c = 0; c < weights.size(); ++c)
    if (trained[c]) out[c] = dot_row(row, weights[c]) + bias[c];
  return out;
}

int LinearModel::predict(std::span<const DesignMatrix::Entry> row) const {
  const auto s = scores(row);
  int best = -1;
  for (std::size_t c = 0; c < s.size(); ++c) {
    if (!trained[c]) continue;
    if (best < 0 || s[c] > s[static_cast<std::size_t>(best)])
      best = static_cast<int>(c);
  }
  return best;
}

LinearModel train(const DesignMatrix& x, ModelKind kind,
                  const TrainOptions& options) {
  const std::size_t k = x.num_classes();
  std::vector<std::size_t> support(k, 0);
  for (int label : x.labels()) ++support[static_cast<std::size_t>(label)];
  const auto present = std::count_if(support.begin(), support.end(),
                                     [](std::size_t s) { return s > 0; });
  if (present < 2)
    throw TrainingError("training data must contain at least two classes, found " +
                        std::to_string(present));

  LinearModel model;
  model.kind = kind;
  model.l2_lambda = options.l2_lambda;
  model.width = x.width();
  model.weights.assign(k, std::vector<double>(x.width(), 0.0));
  model.bias.assign(k, 0.0);
  model.trained.assign(k, false);
  std::vector<double> targets(x.rows());
  for (std::size_t c = 0; c < k; ++c) {
    if (support[c] == 0) continue;
    for (std::size_t i = 0; i < x.rows(); ++i)
      targets[i] = x.labels()[i] == static_cast<int>(c) ? 1.0 : -1.0;
    BinaryFit fit = fit_binary(kind, x, targets, options);
    model.weights[c] = std::move(fit.weights);
    model.bias[c] = fit.bias;
    model.trained[c] = true;
  }
  return model;
}

}  // namespace transit
