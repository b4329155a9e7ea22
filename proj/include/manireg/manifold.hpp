#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "manireg/rng.hpp"

namespace manireg {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kPi = std::numbers::pi;

/// Sample manifolds with closed-form Laplace-Beltrami eigenpairs:
///  - circle of radius r embedded in R^2;
///  - flat 2-torus as the product of two unit circles, embedded in R^4.
struct AnalyticManifold {
  enum class Kind { circle, flat_torus_2d };
  Kind kind = Kind::circle;
  double radius = 1.0;

  static AnalyticManifold circle(double r = 1.0) {
    if (!(r > 0)) throw std::invalid_argument("circle: radius must be positive");
    return AnalyticManifold{Kind::circle, r};
  }
  static AnalyticManifold flat_torus() { return AnalyticManifold{Kind::flat_torus_2d, 1.0}; }

  int intrinsic_dim() const { return kind == Kind::circle ? 1 : 2; }
  int ambient_dim() const { return kind == Kind::circle ? 2 : 4; }
  double volume() const {
    return kind == Kind::circle ? 2.0 * kPi * radius : 4.0 * kPi * kPi;
  }
};

/// Embeds intrinsic angle coordinates into the ambient space.
inline Vector embed(const AnalyticManifold& m, const Vector& angles) {
  if (angles.size() != m.intrinsic_dim())
    throw std::invalid_argument("embed: expected " + std::to_string(m.intrinsic_dim()) +
                                " angle(s)");
  if (m.kind == AnalyticManifold::Kind::circle) {
    Vector p(2);
    p << m.radius * std::cos(angles[0]), m.radius * std::sin(angles[0]);
    return p;
  }
  Vector p(4);
  p << std::cos(angles[0]), std::sin(angles[0]), std::cos(angles[1]), std::sin(angles[1]);
  return p;
}

/// Recovers angle coordinates; rejects points further than 1e-9 off the manifold.
inline Vector angles_of(const AnalyticManifold& m, const Vector& point) {
  if (point.size() != m.ambient_dim())
    throw std::invalid_argument("angles_of: wrong ambient dimension");
  if (m.kind == AnalyticManifold::Kind::circle) {
    if (std::abs(point.norm() - m.radius) > 1e-9)
      throw std::invalid_argument("angles_of: point is off the circle");
    Vector a(1);
    a << std::atan2(point[1], point[0]);
    return a;
  }
  if (std::abs(point.head(2).norm() - 1.0) > 1e-9 || std::abs(point.tail(2).norm() - 1.0) > 1e-9)
    throw std::invalid_argument("angles_of: point is off the torus");
  Vector a(2);
  a << std::atan2(point[1], point[0]), std::atan2(point[3], point[2]);
  return a;
}

/// n i.i.d. samples from the uniform distribution, by uniform angles.
/// Deterministic for a given seed.
inline Matrix sample_manifold(const AnalyticManifold& m, int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_manifold: need n >= 1");
  Rng rng(seed);
  Matrix points(n, m.ambient_dim());
  Vector angles(m.intrinsic_dim());
  for (int i = 0; i < n; ++i) {
    for (int d = 0; d < m.intrinsic_dim(); ++d) angles[d] = 2.0 * kPi * uniform_double(rng);
    points.row(i) = embed(m, angles).transpose();
  }
  return points;
}

namespace detail {

/// Canonical dual-lattice directions for the torus eigenbasis, enumerated as
/// (0,1), (1,0), (1,-1), (1,1), (0,2), (2,0), ... : one representative per
/// {m, -m} pair, sorted by (|m|^2, m1, m2).
inline std::pair<int, int> torus_lattice_vector(int pair_index) {
  const int bound = pair_index + 2;
  std::vector<std::pair<int, int>> vecs;
  for (int m1 = 0; m1 <= bound; ++m1)
    for (int m2 = -bound; m2 <= bound; ++m2) {
      if (m1 == 0 && m2 <= 0) continue;
      vecs.emplace_back(m1, m2);
    }
  std::sort(vecs.begin(), vecs.end(), [](const auto& a, const auto& b) {
    const int na = a.first * a.first + a.second * a.second;
    const int nb = b.first * b.first + b.second * b.second;
    if (na != nb) return na < nb;
    return a < b;
  });
  return vecs.at(pair_index);
}

}  // namespace detail

/// Index of sin(<m, th>) (or cos) in the torus eigenbasis enumeration. The
/// lattice vector must be canonical: m1 > 0, or m1 = 0 and m2 > 0.
inline int torus_eigenfunction_index(int m1, int m2, bool sine) {
  if (!(m1 > 0 || (m1 == 0 && m2 > 0)))
    throw std::invalid_argument(
        "torus_eigenfunction_index: lattice vector must be canonical (m1 > 0, or m1 = 0, m2 > 0)");
  for (int pair = 0;; ++pair) {
    const auto v = detail::torus_lattice_vector(pair);
    if (v == std::pair<int, int>{m1, m2}) return sine ? 2 * pair + 1 : 2 * pair + 2;
    if (v.first * v.first + v.second * v.second > m1 * m1 + m2 * m2)
      throw std::logic_error("torus_eigenfunction_index: enumeration missed the vector");
  }
}

/// Eigenvalue of the index-th basis eigenfunction.
/// Circle (radius r): 1, sin(k th), cos(k th) with eigenvalues 0, (k/r)^2.
/// Flat torus: 1, sin(<m, th>), cos(<m, th>) with eigenvalues 0, |m|^2 over
/// the canonical lattice directions m.
inline double analytic_eigenvalue(const AnalyticManifold& m, int index) {
  if (index < 0) throw std::invalid_argument("analytic_eigenvalue: index must be nonnegative");
  if (index == 0) return 0.0;
  if (m.kind == AnalyticManifold::Kind::circle) {
    const int k = (index + 1) / 2;
    return (k / m.radius) * (k / m.radius);
  }
  const auto [m1, m2] = detail::torus_lattice_vector((index - 1) / 2);
  return double(m1 * m1 + m2 * m2);
}

struct EigenfunctionValue {
  double value = 0;            // f(point)
  double laplacian_value = 0;  // (Delta f)(point) = lambda f(point)
};

/// Evaluates the index-th analytic eigenfunction and its Laplacian at an
/// embedded point. Odd indices are sines, even indices cosines; index 0 is the
/// constant function 1.
inline EigenfunctionValue analytic_eigenfunction(const AnalyticManifold& m, int index,
                                                 const Vector& point) {
  const Vector angles = angles_of(m, point);
  if (index < 0) throw std::invalid_argument("analytic_eigenfunction: index must be nonnegative");
  if (index == 0) return {1.0, 0.0};
  double phase = 0;
  if (m.kind == AnalyticManifold::Kind::circle) {
    phase = ((index + 1) / 2) * angles[0];
  } else {
    const auto [m1, m2] = detail::torus_lattice_vector((index - 1) / 2);
    phase = m1 * angles[0] + m2 * angles[1];
  }
  const double value = (index % 2 == 1) ? std::sin(phase) : std::cos(phase);
  return {value, analytic_eigenvalue(m, index) * value};
}

// ---------------------------------------------------------------------------
// Pointwise Laplacian estimator
// ---------------------------------------------------------------------------

/// Bandwidth schedule t_n = n^{-1/(k+2+a)}.
inline double bandwidth_schedule(int n, int intrinsic_dim, double a) {
  if (n < 1 || !(a > 0)) throw std::invalid_argument("bandwidth_schedule: need n >= 1, a > 0");
  return std::pow(double(n), -1.0 / (intrinsic_dim + 2 + a));
}

/// Scaled Gaussian-weighted graph-Laplacian estimate of Delta f at z:
///   (1 / (n t (4 pi t)^{k/2})) [ f(z) sum_j w_j - sum_j f(x_j) w_j ],
/// w_j = exp(-||z - x_j||^2 / 4t), sums over all samples (a sample equal to z
/// contributes zero to the difference). Converges to Delta f(z) / vol(M).
inline double pointwise_laplacian_estimate_at(const Vector& z, double f_z, const Matrix& points,
                                              const Vector& f_values, double t,
                                              int intrinsic_dim) {
  if (!(t > 0)) throw std::invalid_argument("pointwise_laplacian_estimate: t must be positive");
  const int n = static_cast<int>(points.rows());
  if (n < 1) throw std::invalid_argument("pointwise_laplacian_estimate: empty sample");
  if (f_values.size() != n)
    throw std::invalid_argument("pointwise_laplacian_estimate: f_values size mismatch");
  if (z.size() != points.cols())
    throw std::invalid_argument("pointwise_laplacian_estimate: dimension mismatch");
  // Single-sum difference form of f(z) sum_j w_j - sum_j f(x_j) w_j: exactly
  // zero on constants, term by term.
  double acc = 0;
  for (int j = 0; j < n; ++j) {
    const double w = std::exp(-(points.row(j).transpose() - z).squaredNorm() / (4.0 * t));
    acc += (f_z - f_values[j]) * w;
  }
  const double scale = n * t * std::pow(4.0 * kPi * t, intrinsic_dim / 2.0);
  return acc / scale;
}

inline double pointwise_laplacian_estimate(const Matrix& points, const Vector& f_values,
                                           int z_index, double t, int intrinsic_dim) {
  if (z_index < 0 || z_index >= points.rows())
    throw std::invalid_argument("pointwise_laplacian_estimate: z_index out of range");
  return pointwise_laplacian_estimate_at(points.row(z_index).transpose(), f_values[z_index],
                                         points, f_values, t, intrinsic_dim);
}

// ---------------------------------------------------------------------------
// Convergence experiment
// ---------------------------------------------------------------------------

struct ConvergenceReport {
  int n = 0;
  double t = 0;
  Vector z;  // embedded evaluation point
  std::uint64_t seed = 0;
  double estimate = 0;
  double analytic_target = 0;
  double abs_error = 0;
};

/// Runs the estimator across the sample-size schedule: for each (n, seed),
/// draws n uniform samples, applies the estimator at z with t_n from the
/// bandwidth schedule, and compares against Delta f(z) / vol(M).
inline std::vector<ConvergenceReport> convergence_experiment(
    const AnalyticManifold& m, int f_index, const Vector& z_angles,
    const std::vector<int>& n_schedule, double a, const std::vector<std::uint64_t>& seeds) {
  if (!(a > 0)) throw std::invalid_argument("convergence_experiment: a must be positive");
  if (n_schedule.empty() || seeds.empty())
    throw std::invalid_argument("convergence_experiment: empty schedule");
  for (std::size_t i = 1; i < n_schedule.size(); ++i)
    if (n_schedule[i] <= n_schedule[i - 1])
      throw std::invalid_argument("convergence_experiment: n_schedule must be ascending");

  const int k = m.intrinsic_dim();
  const Vector z = embed(m, z_angles);
  const EigenfunctionValue at_z = analytic_eigenfunction(m, f_index, z);
  const double target = at_z.laplacian_value / m.volume();

  std::vector<ConvergenceReport> reports;
  reports.reserve(n_schedule.size() * seeds.size());
  for (const int n : n_schedule) {
    const double t = bandwidth_schedule(n, k, a);
    for (const std::uint64_t seed : seeds) {
      const Matrix pts = sample_manifold(m, n, seed);
      Vector f_values(n);
      for (int i = 0; i < n; ++i)
        f_values[i] = analytic_eigenfunction(m, f_index, pts.row(i).transpose()).value;
      const double estimate =
          pointwise_laplacian_estimate_at(z, at_z.value, pts, f_values, t, k);
      reports.push_back({n, t, z, seed, estimate, target, std::abs(estimate - target)});
    }
  }
  return reports;
}

/// Median |error| per sample size, keyed by n.
inline std::map<int, double> median_abs_error_by_n(const std::vector<ConvergenceReport>& reports) {
  std::map<int, std::vector<double>> errors;
  for (const auto& r : reports) errors[r.n].push_back(r.abs_error);
  std::map<int, double> medians;
  for (auto& [n, errs] : errors) {
    std::sort(errs.begin(), errs.end());
    const std::size_t half = errs.size() / 2;
    medians[n] =
        errs.size() % 2 == 1 ? errs[half] : 0.5 * (errs[half - 1] + errs[half]);
  }
  return medians;
}

}  // namespace manireg
