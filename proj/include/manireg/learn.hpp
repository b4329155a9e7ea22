#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "manireg/graph.hpp"
#include "manireg/kernels.hpp"
#include "manireg/rng.hpp"

namespace manireg {

/// N_L labeled points followed by N_U unlabeled ones; labels align with the
/// first N_L rows of points.
struct SemiSupervisedDataset {
  Matrix points;  // (N_L + N_U) x d
  Vector labels;  // length N_L

  int n_total() const { return static_cast<int>(points.rows()); }
  int n_labeled() const { return static_cast<int>(labels.size()); }
  int n_unlabeled() const { return n_total() - n_labeled(); }
  int dim() const { return static_cast<int>(points.cols()); }
};

/// Representer-form model: f(x) = sum_i a_i K(x_i, x) over the training points.
struct KernelModel {
  Kernel kernel;
  Matrix support_points;
  Vector coefficients;
};

struct SolverConfig {
  int max_iters = 5000;
  double grad_tol = 1e-6;
  double step_scale = 0.1;  // step = step_scale / (power-iteration curvature estimate)
  std::uint64_t seed = 0;
  bool record_trajectory = false;
};

struct FitDiagnostics {
  int iterations = 0;
  double grad_norm = 0;
  double objective = 0;
  bool converged = false;
  bool least_squares_fallback = false;
  double residual = 0;
  std::vector<double> trajectory;  // per-iteration objective when recorded
};

// ---------------------------------------------------------------------------
// Objectives and gradients
// ---------------------------------------------------------------------------

inline double softplus(double v) {
  return v > 0 ? v + std::log1p(std::exp(-v)) : std::log1p(std::exp(v));
}

inline double sigmoid(double v) {
  return v >= 0 ? 1.0 / (1.0 + std::exp(-v)) : std::exp(v) / (1.0 + std::exp(v));
}

/// (1/N) ||Ka - y||^2 + lambda a^T K a
inline double rls_objective(const Matrix& K, const Vector& y, double lambda, const Vector& a) {
  const double n = static_cast<double>(y.size());
  const Vector z = K * a;
  return (z - y).squaredNorm() / n + lambda * a.dot(z);
}

inline Vector rls_gradient(const Matrix& K, const Vector& y, double lambda, const Vector& a) {
  const double n = static_cast<double>(y.size());
  const Vector z = K * a;
  return K * ((2.0 / n) * (z - y) + 2.0 * lambda * a);
}

/// (1/N) sum log(1 + exp(-y_i (Ka)_i)) + lambda a^T K a
inline double logistic_objective(const Matrix& K, const Vector& y, double lambda, const Vector& a) {
  const int n = static_cast<int>(y.size());
  const Vector z = K * a;
  double loss = 0;
  for (int i = 0; i < n; ++i) loss += softplus(-y[i] * z[i]);
  return loss / n + lambda * a.dot(z);
}

inline Vector logistic_gradient(const Matrix& K, const Vector& y, double lambda, const Vector& a) {
  const int n = static_cast<int>(y.size());
  const Vector z = K * a;
  Vector s(n);
  for (int i = 0; i < n; ++i) s[i] = -y[i] * sigmoid(-y[i] * z[i]) / n;
  return K * (s + 2.0 * lambda * a);
}

/// Manifold-regularized least squares:
///   (1/N_L)(Y - JKa)^T (Y - JKa) + gamma_k a^T K a + (gamma_i / N^2) a^T K L K a
/// with Y zero-padded past the labeled block and J the labeled-block projector.
inline double lap_rls_objective(const Matrix& K, const Matrix& L, const Vector& labels,
                                double gamma_k, double gamma_i, const Vector& a) {
  const int n = static_cast<int>(K.rows());
  const int nl = static_cast<int>(labels.size());
  const Vector z = K * a;
  double data = 0;
  for (int i = 0; i < nl; ++i) {
    const double r = z[i] - labels[i];
    data += r * r;
  }
  return data / nl + gamma_k * a.dot(z) + gamma_i / (double(n) * n) * z.dot(L * z);
}

inline Vector lap_rls_gradient(const Matrix& K, const Matrix& L, const Vector& labels,
                               double gamma_k, double gamma_i, const Vector& a) {
  const int n = static_cast<int>(K.rows());
  const int nl = static_cast<int>(labels.size());
  const Vector z = K * a;
  Vector r = Vector::Zero(n);
  for (int i = 0; i < nl; ++i) r[i] = (2.0 / nl) * (z[i] - labels[i]);
  return K * (r + 2.0 * gamma_k * a + (2.0 * gamma_i / (double(n) * n)) * (L * z));
}

/// Hinge-loss objective shared by SVM (gamma_i = 0, all points labeled) and
/// Lap-SVM. The subgradient at the hinge kink is taken to be 0.
inline double lap_hinge_objective(const Matrix& K, const Matrix& L, const Vector& labels,
                                  double gamma_k, double gamma_i, const Vector& a) {
  const int n = static_cast<int>(K.rows());
  const int nl = static_cast<int>(labels.size());
  const Vector z = K * a;
  double loss = 0;
  for (int i = 0; i < nl; ++i) loss += std::max(0.0, 1.0 - labels[i] * z[i]);
  return loss / nl + gamma_k * a.dot(z) + gamma_i / (double(n) * n) * z.dot(L * z);
}

inline Vector lap_hinge_subgradient(const Matrix& K, const Matrix& L, const Vector& labels,
                                    double gamma_k, double gamma_i, const Vector& a) {
  const int n = static_cast<int>(K.rows());
  const int nl = static_cast<int>(labels.size());
  const Vector z = K * a;
  Vector s = Vector::Zero(n);
  for (int i = 0; i < nl; ++i)
    if (1.0 - labels[i] * z[i] > 0) s[i] = -labels[i] / nl;
  return K * (s + 2.0 * gamma_k * a + (2.0 * gamma_i / (double(n) * n)) * (L * z));
}

// ---------------------------------------------------------------------------
// Optimization machinery
// ---------------------------------------------------------------------------

/// Largest-eigenvalue estimate of a symmetric PSD operator by power iteration
/// with a fixed-seed start vector.
template <class MatVec>
double power_iteration_lmax(int n, const MatVec& apply, int iters = 100) {
  Rng rng(0x9e3779b97f4a7c15ULL);
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = uniform_double(rng) - 0.5;
  double norm = v.norm();
  if (norm == 0) return 0;
  v /= norm;
  double estimate = 0;
  for (int it = 0; it < iters; ++it) {
    const Vector w = apply(v);
    estimate = v.dot(w);
    const double wn = w.norm();
    if (wn <= 1e-300) return 0;
    v = w / wn;
  }
  return estimate;
}

/// Fixed-step (sub)gradient descent from a = 0 with best-iterate tracking.
/// Declares divergence after 10 consecutive objective increases.
template <class Objective, class Gradient>
Vector descend(int n, double step, const Objective& objective, const Gradient& gradient,
               const SolverConfig& cfg, FitDiagnostics* diag) {
  if (cfg.max_iters < 1) throw std::invalid_argument("solver config: max_iters must be >= 1");
  if (!(cfg.grad_tol >= 0)) throw std::invalid_argument("solver config: grad_tol must be >= 0");
  if (!(step > 0)) throw std::invalid_argument("solver config: step must be positive");
  Vector a = Vector::Zero(n);
  double obj = objective(a);
  Vector best = a;
  double best_obj = obj;
  double prev_obj = obj;
  int rising = 0;
  int it = 0;
  bool converged = false;
  if (diag && cfg.record_trajectory) diag->trajectory.push_back(obj);
  for (; it < cfg.max_iters; ++it) {
    const Vector g = gradient(a);
    if (g.norm() <= cfg.grad_tol) {
      converged = true;
      break;
    }
    a -= step * g;
    obj = objective(a);
    if (diag && cfg.record_trajectory) diag->trajectory.push_back(obj);
    if (obj < best_obj) {
      best_obj = obj;
      best = a;
    }
    if (obj > prev_obj) {
      if (++rising >= 10)
        throw std::runtime_error(
            "descent diverged: objective rose for 10 consecutive steps; lower step_scale");
    } else {
      rising = 0;
    }
    prev_obj = obj;
  }
  if (diag) {
    diag->iterations = it;
    diag->converged = converged;
    diag->objective = best_obj;
    diag->grad_norm = gradient(best).norm();
  }
  return best;
}

// ---------------------------------------------------------------------------
// Data-graph recipe for the semi-supervised solvers
// ---------------------------------------------------------------------------

struct GraphSpec {
  enum class Kind { knn, epsilon, gaussian };
  Kind kind = Kind::knn;
  int k = 8;
  double eps = 0.5;
  double t = 0.1;
  EdgeWeighting weighting = EdgeWeighting::unit;  // kNN edge weights

  DataGraph build(const Matrix& points) const {
    switch (kind) {
      case Kind::knn:
        return build_knn_graph(points, k, weighting, t);
      case Kind::epsilon:
        return build_epsilon_graph(points, eps);
      case Kind::gaussian:
        return build_gaussian_graph(points, t);
    }
    throw std::logic_error("GraphSpec: unreachable");
  }

  /// Forms: "knn:K", "knn:K:gaussian:T", "eps:E", "gaussian:T".
  static GraphSpec parse(const std::string& text) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t colon = text.find(':', start);
      if (colon == std::string::npos) {
        parts.push_back(text.substr(start));
        break;
      }
      parts.push_back(text.substr(start, colon - start));
      start = colon + 1;
    }
    GraphSpec spec;
    try {
      if (parts.size() >= 2 && parts[0] == "knn") {
        spec.kind = Kind::knn;
        spec.k = std::stoi(parts[1]);
        if (parts.size() == 2) return spec;
        if (parts.size() == 4 && parts[2] == "gaussian") {
          spec.weighting = EdgeWeighting::gaussian;
          spec.t = std::stod(parts[3]);
          return spec;
        }
      } else if (parts.size() == 2 && parts[0] == "eps") {
        spec.kind = Kind::epsilon;
        spec.eps = std::stod(parts[1]);
        return spec;
      } else if (parts.size() == 2 && parts[0] == "gaussian") {
        spec.kind = Kind::gaussian;
        spec.t = std::stod(parts[1]);
        return spec;
      }
    } catch (const std::exception&) {
      // fall through to the shared error below
    }
    throw std::invalid_argument("graph spec: expected knn:K[:gaussian:T], eps:E or gaussian:T, got \"" +
                                text + "\"");
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::knn:
        if (weighting == EdgeWeighting::gaussian)
          return "knn:" + std::to_string(k) + ":gaussian:" + std::to_string(t);
        return "knn:" + std::to_string(k);
      case Kind::epsilon:
        return "eps:" + std::to_string(eps);
      case Kind::gaussian:
        return "gaussian:" + std::to_string(t);
    }
    return "";
  }
};

// ---------------------------------------------------------------------------
// Solvers
// ---------------------------------------------------------------------------

namespace detail {

inline void check_binary_labels(const Vector& y) {
  for (int i = 0; i < y.size(); ++i)
    if (y[i] != 1.0 && y[i] != -1.0)
      throw std::invalid_argument("labels must be +1 or -1 for classification solvers");
}

/// Shared hinge-loss fitter. fit_svm passes gamma_i = 0 with a zero Laplacian
/// and every point labeled, so its iterates coincide exactly with Lap-SVM's in
/// that configuration.
inline Vector fit_hinge(const Matrix& K, const Matrix& L, const Vector& labels, double gamma_k,
                        double gamma_i, const SolverConfig& cfg, FitDiagnostics* diag) {
  const int n = static_cast<int>(K.rows());
  const int nl = static_cast<int>(labels.size());
  const double scale_i = gamma_i / (double(n) * n);
  const auto curvature = [&](const Vector& v) -> Vector {
    Vector kv = K * v;
    Vector masked = Vector::Zero(n);
    for (int i = 0; i < nl; ++i) masked[i] = kv[i] / nl;
    return K * (masked + 2.0 * gamma_k * v) + (2.0 * scale_i) * (K * (L * kv));
  };
  const double lmax = power_iteration_lmax(n, curvature);
  const double step = cfg.step_scale / std::max(lmax, 1e-12);
  const auto objective = [&](const Vector& a) {
    return lap_hinge_objective(K, L, labels, gamma_k, gamma_i, a);
  };
  const auto gradient = [&](const Vector& a) {
    return lap_hinge_subgradient(K, L, labels, gamma_k, gamma_i, a);
  };
  return descend(n, step, objective, gradient, cfg, diag);
}

}  // namespace detail

/// Closed-form regularized least squares: solves (K + lambda N I) a = y.
inline KernelModel fit_rls(const Kernel& kernel, const Matrix& points, const Vector& y,
                           double lambda, FitDiagnostics* diag = nullptr) {
  const int n = static_cast<int>(points.rows());
  if (n < 1) throw std::invalid_argument("fit_rls: need at least one labeled point");
  if (y.size() != n) throw std::invalid_argument("fit_rls: labels must match point count");
  if (!(lambda > 0)) throw std::invalid_argument("fit_rls: lambda must be positive");

  const GramMatrix gram = gram_matrix(kernel, points);
  const Matrix system = gram.entries + lambda * n * Matrix::Identity(n, n);
  Vector a = system.ldlt().solve(y);
  double residual = (system * a - y).norm();
  bool fallback = false;
  if (residual > 1e-8 * y.norm()) {
    a = system.colPivHouseholderQr().solve(y);
    residual = (system * a - y).norm();
    fallback = true;
    if (residual > 1e-8 * std::max(y.norm(), 1.0))
      throw std::runtime_error("fit_rls: linear solve failed the residual check");
  }
  if (diag) {
    diag->residual = residual;
    diag->least_squares_fallback = fallback;
    diag->converged = true;
    diag->objective = rls_objective(gram.entries, y, lambda, a);
    diag->grad_norm = rls_gradient(gram.entries, y, lambda, a).norm();
  }
  return KernelModel{kernel, points, std::move(a)};
}

/// Kernel logistic regression by gradient descent.
inline KernelModel fit_kernel_logistic(const Kernel& kernel, const Matrix& points, const Vector& y,
                                       double lambda, const SolverConfig& cfg = {},
                                       FitDiagnostics* diag = nullptr) {
  const int n = static_cast<int>(points.rows());
  if (n < 1) throw std::invalid_argument("fit_kernel_logistic: empty dataset");
  if (y.size() != n)
    throw std::invalid_argument("fit_kernel_logistic: labels must match point count");
  if (!(lambda > 0)) throw std::invalid_argument("fit_kernel_logistic: lambda must be positive");
  detail::check_binary_labels(y);

  const Matrix K = gram_matrix(kernel, points).entries;
  // Logistic curvature is at most K^2/(4N) + 2 lambda K.
  const auto curvature = [&](const Vector& v) -> Vector {
    return K * ((K * v) / (4.0 * n) + 2.0 * lambda * v);
  };
  const double lmax = power_iteration_lmax(n, curvature);
  const double step = cfg.step_scale / std::max(lmax, 1e-12);
  Vector a = descend(
      n, step, [&](const Vector& x) { return logistic_objective(K, y, lambda, x); },
      [&](const Vector& x) { return logistic_gradient(K, y, lambda, x); }, cfg, diag);
  return KernelModel{kernel, points, std::move(a)};
}

/// Kernel SVM by subgradient descent on the hinge objective.
inline KernelModel fit_svm(const Kernel& kernel, const Matrix& points, const Vector& y,
                           double lambda, const SolverConfig& cfg = {},
                           FitDiagnostics* diag = nullptr) {
  const int n = static_cast<int>(points.rows());
  if (n < 1) throw std::invalid_argument("fit_svm: empty dataset");
  if (y.size() != n) throw std::invalid_argument("fit_svm: labels must match point count");
  if (lambda < 0) throw std::invalid_argument("fit_svm: lambda must be nonnegative");
  detail::check_binary_labels(y);

  const Matrix K = gram_matrix(kernel, points).entries;
  const Matrix L = Matrix::Zero(n, n);
  Vector a = detail::fit_hinge(K, L, y, lambda, 0.0, cfg, diag);
  return KernelModel{kernel, points, std::move(a)};
}

/// Laplacian-regularized least squares over labeled + unlabeled points.
/// Solves the stationarity system
///   [(1/N_L) J K + gamma_k I + (gamma_i / N^2) L K] a = (1/N_L) Y,
/// whose solution zeroes the gradient of the Lap-RLS objective.
inline KernelModel fit_lap_rls(const Kernel& kernel, const SemiSupervisedDataset& data,
                               double gamma_k, double gamma_i, const GraphSpec& graph_spec,
                               FitDiagnostics* diag = nullptr) {
  const int n = data.n_total();
  const int nl = data.n_labeled();
  if (nl < 1) throw std::invalid_argument("fit_lap_rls: need at least one labeled point");
  if (!(gamma_k > 0)) throw std::invalid_argument("fit_lap_rls: gamma_k must be positive");
  if (gamma_i < 0) throw std::invalid_argument("fit_lap_rls: gamma_i must be nonnegative");

  const Matrix K = gram_matrix(kernel, data.points).entries;
  const Matrix L = laplacian(graph_spec.build(data.points)).matrix;
  Vector y_padded = Vector::Zero(n);
  y_padded.head(nl) = data.labels;

  Matrix system = gamma_k * Matrix::Identity(n, n);
  system.topRows(nl) += K.topRows(nl) / nl;
  system += (gamma_i / (double(n) * n)) * (L * K);

  Vector a = system.partialPivLu().solve(y_padded / nl);
  const double grad_tol = 1e-6 * std::max(1.0, y_padded.norm());
  double grad_norm = lap_rls_gradient(K, L, data.labels, gamma_k, gamma_i, a).norm();
  bool fallback = false;
  if (!(grad_norm <= grad_tol)) {
    a = system.colPivHouseholderQr().solve(y_padded / nl);
    grad_norm = lap_rls_gradient(K, L, data.labels, gamma_k, gamma_i, a).norm();
    fallback = true;
    if (!(grad_norm <= grad_tol))
      throw std::runtime_error("fit_lap_rls: solution failed the gradient-zero check");
  }
  if (diag) {
    diag->grad_norm = grad_norm;
    diag->least_squares_fallback = fallback;
    diag->converged = true;
    diag->objective = lap_rls_objective(K, L, data.labels, gamma_k, gamma_i, a);
  }
  return KernelModel{kernel, data.points, std::move(a)};
}

/// Laplacian-regularized SVM by subgradient descent.
inline KernelModel fit_lap_svm(const Kernel& kernel, const SemiSupervisedDataset& data,
                               double gamma_k, double gamma_i, const GraphSpec& graph_spec,
                               const SolverConfig& cfg = {}, FitDiagnostics* diag = nullptr) {
  const int nl = data.n_labeled();
  if (nl < 1) throw std::invalid_argument("fit_lap_svm: need at least one labeled point");
  if (!(gamma_k > 0)) throw std::invalid_argument("fit_lap_svm: gamma_k must be positive");
  if (gamma_i < 0) throw std::invalid_argument("fit_lap_svm: gamma_i must be nonnegative");
  detail::check_binary_labels(data.labels);

  const Matrix K = gram_matrix(kernel, data.points).entries;
  const Matrix L = laplacian(graph_spec.build(data.points)).matrix;
  Vector a = detail::fit_hinge(K, L, data.labels, gamma_k, gamma_i, cfg, diag);
  return KernelModel{kernel, data.points, std::move(a)};
}

// ---------------------------------------------------------------------------
// Prediction
// ---------------------------------------------------------------------------

inline double predict(const KernelModel& model, const Vector& x) {
  if (x.size() != model.support_points.cols())
    throw std::invalid_argument("predict: point dimension does not match the model");
  double value = 0;
  for (int i = 0; i < model.support_points.rows(); ++i)
    value += model.coefficients[i] * model.kernel(model.support_points.row(i).transpose(), x);
  return value;
}

inline Vector predict_batch(const KernelModel& model, const Matrix& points) {
  if (points.cols() != model.support_points.cols())
    throw std::invalid_argument("predict: point dimension does not match the model");
  return cross_gram(model.kernel, points, model.support_points) * model.coefficients;
}

/// sign(predict), with sign(0) = +1.
inline int classify(const KernelModel& model, const Vector& x) {
  return predict(model, x) >= 0 ? 1 : -1;
}

}  // namespace manireg
