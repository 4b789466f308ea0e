#include "strel/regress.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <string>

#include "strel/errors.hpp"

namespace strel {
namespace {

void check_design(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  if (x.rows() != y.size()) {
    throw AlignmentError("design has " + std::to_string(x.rows()) + " rows but target has " +
                         std::to_string(y.size()));
  }
  if (x.rows() < 2) throw ValidationError("regression needs at least 2 rows");
  if (!x.allFinite() || !y.allFinite()) throw ValidationError("non-finite regression input");
}

std::string join(const Eigen::VectorXd& v) {
  std::string out;
  char buf[32];
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const auto res = std::to_chars(buf, buf + sizeof buf, v[i]);
    if (i) out.push_back(' ');
    out.append(buf, res.ptr);
  }
  return out;
}

double parse_double(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw FormatError("bad number '" + std::string(s) + "' in model file");
  }
  return v;
}

Eigen::VectorXd parse_vector(std::string_view s) {
  std::vector<double> vals;
  std::size_t pos = 0;
  while (pos < s.size()) {
    auto end = s.find(' ', pos);
    if (end == std::string_view::npos) end = s.size();
    if (end > pos) vals.push_back(parse_double(s.substr(pos, end - pos)));
    pos = end + 1;
  }
  return Eigen::Map<Eigen::VectorXd>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

}  // namespace

std::string_view to_string(ModelKind kind) {
  return kind == ModelKind::ols ? "ols" : "elasticnet";
}

Standardized standardize(const Eigen::MatrixXd& x) {
  Standardized s;
  const auto n = static_cast<double>(x.rows());
  s.means = x.colwise().mean().transpose();
  s.x = x.rowwise() - s.means.transpose();
  s.scales = Eigen::VectorXd::Ones(x.cols());
  s.constant.assign(static_cast<std::size_t>(x.cols()), false);
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double sd = std::sqrt(s.x.col(j).squaredNorm() / n);
    if (sd <= 1e-12 * std::max(1.0, std::abs(s.means[j]))) {
      s.constant[static_cast<std::size_t>(j)] = true;
      s.x.col(j).setZero();
    } else {
      s.scales[j] = sd;
      s.x.col(j) /= sd;
    }
  }
  return s;
}

FitModel fit_ols(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  check_design(x, y);
  FitModel m;
  m.kind = ModelKind::ols;
  m.feature_means = x.colwise().mean().transpose();
  m.feature_scales = Eigen::VectorXd::Ones(x.cols());
  const double y_mean = y.mean();
  const Eigen::MatrixXd xc = x.rowwise() - m.feature_means.transpose();
  const Eigen::VectorXd yc = y.array() - y_mean;
  if (x.cols() == 0) {
    m.coefficients.resize(0);
  } else {
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(xc);
    m.coefficients = cod.solve(yc);
  }
  m.intercept = y_mean - m.feature_means.dot(m.coefficients);
  m.n_iters_used = 1;
  return m;
}

double soft_threshold(double z, double t) {
  if (z > t) return z - t;
  if (z < -t) return z + t;
  return 0.0;
}

double elasticnet_objective(const Eigen::MatrixXd& xs, const Eigen::VectorXd& ys,
                            const Eigen::VectorXd& beta, double alpha, double l1_ratio) {
  const double n = static_cast<double>(xs.rows());
  const double loss = (ys - xs * beta).squaredNorm() / (2.0 * n);
  return loss + alpha * (l1_ratio * beta.lpNorm<1>() + 0.5 * (1.0 - l1_ratio) * beta.squaredNorm());
}

FitModel fit_elasticnet(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                        const ElasticNetOptions& opt) {
  if (!(opt.alpha >= 0.0) || !std::isfinite(opt.alpha)) {
    throw ConfigError("elasticnet alpha must be a finite value >= 0");
  }
  if (!(opt.l1_ratio >= 0.0 && opt.l1_ratio <= 1.0)) {
    throw ConfigError("elasticnet l1_ratio must lie in [0,1]");
  }
  if (!(opt.tol > 0.0)) throw ConfigError("elasticnet tol must be > 0");
  if (opt.max_iter < 1) throw ConfigError("elasticnet max_iter must be >= 1");
  check_design(x, y);

  const Standardized s = standardize(x);
  const double n = static_cast<double>(x.rows());
  const double y_mean = y.mean();
  const Eigen::VectorXd ys = y.array() - y_mean;
  const Eigen::Index p = x.cols();

  const double l1 = opt.alpha * opt.l1_ratio;
  const double l2 = opt.alpha * (1.0 - opt.l1_ratio);
  Eigen::VectorXd col_sq(p);
  for (Eigen::Index j = 0; j < p; ++j) col_sq[j] = s.x.col(j).squaredNorm() / n;

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd resid = ys;

  FitModel m;
  m.kind = ModelKind::elasticnet;
  m.alpha = opt.alpha;
  m.l1_ratio = opt.l1_ratio;
  m.converged = false;

  for (std::size_t sweep = 1; sweep <= opt.max_iter; ++sweep) {
    double max_change = 0.0;
    for (Eigen::Index j = 0; j < p; ++j) {
      if (s.constant[static_cast<std::size_t>(j)]) continue;
      const double old = beta[j];
      const double rho = s.x.col(j).dot(resid) / n + col_sq[j] * old;
      const double denom = col_sq[j] + l2;
      const double updated = denom > 0.0 ? soft_threshold(rho, l1) / denom : 0.0;
      if (updated != old) {
        resid.noalias() -= (updated - old) * s.x.col(j);
        beta[j] = updated;
        max_change = std::max(max_change, std::abs(updated - old));
      }
    }
    m.n_iters_used = sweep;
    if (opt.on_sweep) {
      opt.on_sweep(sweep, elasticnet_objective(s.x, ys, beta, opt.alpha, opt.l1_ratio));
    }
    if (max_change < opt.tol) {
      m.converged = true;
      break;
    }
  }

  m.feature_means = s.means;
  m.feature_scales = s.scales;
  m.coefficients = beta.array() / s.scales.array();
  m.intercept = y_mean - s.means.dot(m.coefficients);
  return m;
}

Eigen::VectorXd predict(const FitModel& model, const Eigen::MatrixXd& x) {
  if (static_cast<std::size_t>(x.cols()) != model.n_features()) {
    throw AlignmentError("model expects " + std::to_string(model.n_features()) +
                         " features, got " + std::to_string(x.cols()));
  }
  Eigen::VectorXd out = x * model.coefficients;
  out.array() += model.intercept;
  return out;
}

std::vector<double> clip_unit(std::span<const double> preds) {
  std::vector<double> out(preds.size());
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (!std::isfinite(preds[i])) {
      throw ValidationError("non-finite prediction at index " + std::to_string(i));
    }
    out[i] = std::min(std::max(preds[i], 0.0), 1.0);
  }
  return out;
}

void FitModel::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  char buf[32];
  auto num = [&](double v) {
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
  };
  out << "kind=" << to_string(kind) << '\n'
      << "alpha=" << num(alpha) << '\n'
      << "l1_ratio=" << num(l1_ratio) << '\n'
      << "intercept=" << num(intercept) << '\n'
      << "n_iters_used=" << n_iters_used << '\n'
      << "converged=" << (converged ? "true" : "false") << '\n'
      << "coefficients=" << join(coefficients) << '\n'
      << "feature_means=" << join(feature_means) << '\n'
      << "feature_scales=" << join(feature_scales) << '\n';
}

FitModel FitModel::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw FormatError(path.string() + ": line without '='");
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  auto get = [&](const std::string& key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end()) throw FormatError(path.string() + ": missing key '" + key + "'");
    return it->second;
  };

  FitModel m;
  const auto& kind = get("kind");
  if (kind == "ols") m.kind = ModelKind::ols;
  else if (kind == "elasticnet") m.kind = ModelKind::elasticnet;
  else throw FormatError(path.string() + ": unknown kind '" + kind + "'");
  m.alpha = parse_double(get("alpha"));
  m.l1_ratio = parse_double(get("l1_ratio"));
  m.intercept = parse_double(get("intercept"));
  m.coefficients = parse_vector(get("coefficients"));
  m.feature_means = kv.count("feature_means") ? parse_vector(kv["feature_means"])
                                              : Eigen::VectorXd::Zero(m.coefficients.size());
  m.feature_scales = kv.count("feature_scales") ? parse_vector(kv["feature_scales"])
                                                : Eigen::VectorXd::Ones(m.coefficients.size());
  if (kv.count("n_iters_used")) m.n_iters_used = static_cast<std::size_t>(parse_double(kv["n_iters_used"]));
  if (kv.count("converged")) m.converged = kv["converged"] == "true";
  if (m.feature_means.size() != m.coefficients.size() ||
      m.feature_scales.size() != m.coefficients.size()) {
    throw FormatError(path.string() + ": vector lengths disagree");
  }
  return m;
}

}  // namespace strel
