#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace strel {

enum class ModelKind { ols, elasticnet };

std::string_view to_string(ModelKind kind);

// Linear model on the original feature scale: intercept + X * coefficients.
// feature_means/feature_scales record the standardization used while fitting.
struct FitModel {
  ModelKind kind = ModelKind::ols;
  double intercept = 0.0;
  Eigen::VectorXd coefficients;
  Eigen::VectorXd feature_means;
  Eigen::VectorXd feature_scales;
  double alpha = 0.0;
  double l1_ratio = 0.0;
  std::size_t n_iters_used = 0;
  bool converged = true;

  std::size_t n_features() const { return static_cast<std::size_t>(coefficients.size()); }

  // Flat `key=value` lines; vectors are space separated.
  void save(const std::filesystem::path& path) const;
  static FitModel load(const std::filesystem::path& path);
};

// Columns centered to zero mean and scaled to unit population variance.
// Constant columns are centered only (scale 1) and flagged.
struct Standardized {
  Eigen::MatrixXd x;
  Eigen::VectorXd means;
  Eigen::VectorXd scales;
  std::vector<bool> constant;
};

Standardized standardize(const Eigen::MatrixXd& x);

// Least squares with intercept. Solved on centered data through a complete
// orthogonal decomposition, so rank-deficient designs get the minimum-norm
// coefficient vector.
FitModel fit_ols(const Eigen::MatrixXd& x, const Eigen::VectorXd& y);

struct ElasticNetOptions {
  double alpha = 0.1;
  double l1_ratio = 0.5;
  double tol = 1e-6;
  std::size_t max_iter = 1000;
  // Called after every sweep with the objective on standardized data.
  std::function<void(std::size_t sweep, double objective)> on_sweep;
};

// Minimizes (1/2n)|y - b0 - Xb|^2 + alpha*(l1_ratio*|b|_1 + (1-l1_ratio)/2*|b|_2^2)
// by cyclic coordinate descent on standardized features with centered y.
// Stops when the largest coefficient change in a sweep drops below tol.
FitModel fit_elasticnet(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                        const ElasticNetOptions& options = {});

// Penalized objective above, evaluated for standardized coefficients.
double elasticnet_objective(const Eigen::MatrixXd& xs, const Eigen::VectorXd& ys,
                            const Eigen::VectorXd& beta, double alpha, double l1_ratio);

double soft_threshold(double z, double t);

Eigen::VectorXd predict(const FitModel& model, const Eigen::MatrixXd& x);

// Element-wise clamp into [0,1]. Throws ValidationError on non-finite input.
std::vector<double> clip_unit(std::span<const double> preds);

}  // namespace strel
