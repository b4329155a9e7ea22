#include <catch2/catch_amalgamated.hpp>

#include "manireg/graph.hpp"
#include "manireg/manifold.hpp"
#include "manireg/spectral.hpp"

using namespace manireg;
using Catch::Approx;

namespace {

Vector angles1(double theta) {
  Vector a(1);
  a << theta;
  return a;
}

Vector angles2(double t1, double t2) {
  Vector a(2);
  a << t1, t2;
  return a;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t half = v.size() / 2;
  return v.size() % 2 == 1 ? v[half] : 0.5 * (v[half - 1] + v[half]);
}

}  // namespace

TEST_CASE("manifold sampling") {
  const AnalyticManifold circle = AnalyticManifold::circle();
  const Matrix pts = sample_manifold(circle, 500, 7);
  for (int i = 0; i < pts.rows(); ++i)
    CHECK(std::abs(pts.row(i).norm() - 1.0) <= 1e-12);

  const Matrix big = sample_manifold(circle, 10000, 3);
  CHECK(big.colwise().mean().norm() <= 0.05);

  const Matrix again = sample_manifold(circle, 500, 7);
  CHECK((pts - again).cwiseAbs().maxCoeff() == 0.0);

  const AnalyticManifold torus = AnalyticManifold::flat_torus();
  const Matrix tp = sample_manifold(torus, 200, 11);
  for (int i = 0; i < tp.rows(); ++i) {
    CHECK(std::abs(tp.row(i).head(2).norm() - 1.0) <= 1e-12);
    CHECK(std::abs(tp.row(i).tail(2).norm() - 1.0) <= 1e-12);
  }

  const AnalyticManifold r2 = AnalyticManifold::circle(2.0);
  const Matrix rp = sample_manifold(r2, 50, 1);
  for (int i = 0; i < rp.rows(); ++i) CHECK(std::abs(rp.row(i).norm() - 2.0) <= 1e-12);
}

TEST_CASE("analytic eigenfunctions on the circle") {
  const AnalyticManifold circle = AnalyticManifold::circle();

  // index 1 = sin(theta): at theta = pi/2 both f and its laplacian equal 1
  const Vector north = embed(circle, angles1(kPi / 2));
  const EigenfunctionValue sin1 = analytic_eigenfunction(circle, 1, north);
  CHECK(sin1.value == Approx(1.0));
  CHECK(sin1.laplacian_value == Approx(1.0));

  const EigenfunctionValue constant = analytic_eigenfunction(circle, 0, north);
  CHECK(constant.value == Approx(1.0));
  CHECK(constant.laplacian_value == Approx(0.0).margin(1e-15));

  // index 4 = cos(2 theta): eigenvalue 4, so at theta = 0 it reports (1, 4)
  const Vector east = embed(circle, angles1(0.0));
  const EigenfunctionValue cos2 = analytic_eigenfunction(circle, 4, east);
  CHECK(cos2.value == Approx(1.0));
  CHECK(cos2.laplacian_value == Approx(4.0));

  CHECK(analytic_eigenvalue(circle, 1) == Approx(1.0));
  CHECK(analytic_eigenvalue(circle, 2) == Approx(1.0));
  CHECK(analytic_eigenvalue(circle, 3) == Approx(4.0));
  CHECK(analytic_eigenvalue(circle, 4) == Approx(4.0));

  Vector off(2);
  off << 1.5, 0.0;
  CHECK_THROWS_AS(analytic_eigenfunction(circle, 1, off), std::invalid_argument);
}

TEST_CASE("analytic eigenfunctions on the flat torus") {
  const AnalyticManifold torus = AnalyticManifold::flat_torus();
  // lattice enumeration starts (0,1), (1,0), (1,-1), (1,1), (0,2), ...
  CHECK(analytic_eigenvalue(torus, 0) == 0.0);
  CHECK(analytic_eigenvalue(torus, 1) == Approx(1.0));   // (0,1)
  CHECK(analytic_eigenvalue(torus, 3) == Approx(1.0));   // (1,0)
  CHECK(analytic_eigenvalue(torus, 5) == Approx(2.0));   // (1,-1)
  CHECK(analytic_eigenvalue(torus, 7) == Approx(2.0));   // (1,1)
  CHECK(analytic_eigenvalue(torus, 9) == Approx(4.0));   // (0,2)

  // index 3 is sin(theta_1): the analogue of the first sine on each factor
  const Vector p = embed(torus, angles2(kPi / 2, 1.0));
  const EigenfunctionValue v = analytic_eigenfunction(torus, 3, p);
  CHECK(v.value == Approx(1.0));
  CHECK(v.laplacian_value == Approx(1.0));

  Vector off(4);
  off << 1.0, 0.5, 1.0, 0.0;
  CHECK_THROWS_AS(analytic_eigenfunction(torus, 1, off), std::invalid_argument);
}

TEST_CASE("pointwise laplacian estimate is exactly zero on constants and linear in f") {
  const AnalyticManifold circle = AnalyticManifold::circle();
  const Matrix pts = sample_manifold(circle, 300, 5);
  const double t = 0.1;

  CHECK(pointwise_laplacian_estimate(pts, Vector::Constant(300, 2.5), 17, t, 1) == 0.0);

  Rng rng(401);
  Vector f(300), g(300);
  for (int i = 0; i < 300; ++i) {
    f[i] = uniform_range(rng, -1, 1);
    g[i] = uniform_range(rng, -1, 1);
  }
  const double alpha = 1.7, beta = -0.4;
  const double combined =
      pointwise_laplacian_estimate(pts, Vector(alpha * f + beta * g), 17, t, 1);
  const double separate = alpha * pointwise_laplacian_estimate(pts, f, 17, t, 1) +
                          beta * pointwise_laplacian_estimate(pts, g, 17, t, 1);
  CHECK(combined == Approx(separate).margin(1e-10));

  CHECK_THROWS_AS(pointwise_laplacian_estimate(pts, f, 17, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(pointwise_laplacian_estimate(pts, f, 300, 0.1, 1), std::invalid_argument);
}

TEST_CASE("estimator lands near the analytic target at desk scale") {
  const AnalyticManifold circle = AnalyticManifold::circle();
  const int n = 4000;
  const double t = bandwidth_schedule(n, 1, 1.0);
  const double target = 1.0 / (2.0 * kPi);  // (1/vol) * laplacian of sin at pi/2
  const Vector z = embed(circle, angles1(kPi / 2));

  std::vector<double> estimates;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Matrix pts = sample_manifold(circle, n, seed);
    Vector f(n);
    for (int i = 0; i < n; ++i)
      f[i] = analytic_eigenfunction(circle, 1, pts.row(i).transpose()).value;
    estimates.push_back(pointwise_laplacian_estimate_at(z, 1.0, pts, f, t, 1));
  }
  std::vector<double> errors;
  for (double e : estimates) errors.push_back(std::abs(e - target));
  CHECK(median(errors) / target <= 0.25);
}

TEST_CASE("bandwidth schedule") {
  CHECK(bandwidth_schedule(16, 1, 1.0) == Approx(std::pow(16.0, -0.25)));
  CHECK(bandwidth_schedule(100, 2, 1.0) == Approx(std::pow(100.0, -0.2)));
  CHECK_THROWS_AS(bandwidth_schedule(0, 1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(bandwidth_schedule(10, 1, 0.0), std::invalid_argument);
}

TEST_CASE("convergence experiment on constants reports zero error") {
  const AnalyticManifold circle = AnalyticManifold::circle();
  const auto reports =
      convergence_experiment(circle, 0, angles1(0.3), {50, 100}, 1.0, {1, 2, 3});
  for (const auto& r : reports) {
    CHECK(r.estimate == Approx(0.0).margin(1e-10));
    CHECK(r.abs_error <= 1e-10);
  }
}

TEST_CASE("convergence experiment error shrinks with sample size on the circle") {
  const AnalyticManifold circle = AnalyticManifold::circle();
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 1; s <= 10; ++s) seeds.push_back(s);
  const auto reports =
      convergence_experiment(circle, 1, angles1(kPi / 2), {500, 8000}, 1.0, seeds);
  const auto medians = median_abs_error_by_n(reports);
  CHECK(medians.at(8000) < medians.at(500));
  for (const auto& r : reports) {
    CHECK(r.analytic_target == Approx(1.0 / (2.0 * kPi)));
    CHECK(r.t == Approx(bandwidth_schedule(r.n, 1, 1.0)));
  }
}

TEST_CASE("convergence experiment error shrinks on the flat torus") {
  const AnalyticManifold torus = AnalyticManifold::flat_torus();
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 1; s <= 10; ++s) seeds.push_back(s);
  // index 3 = sin(theta_1), eigenvalue 1; target = 1 / (4 pi^2)
  const auto reports =
      convergence_experiment(torus, 3, angles2(kPi / 2, 1.0), {500, 8000}, 1.0, seeds);
  const auto medians = median_abs_error_by_n(reports);
  CHECK(medians.at(8000) < medians.at(500));
  for (const auto& r : reports)
    CHECK(r.analytic_target == Approx(1.0 / (4.0 * kPi * kPi)));
}

TEST_CASE("convergence experiment input validation") {
  const AnalyticManifold circle = AnalyticManifold::circle();
  CHECK_THROWS_AS(convergence_experiment(circle, 1, angles1(0), {100, 50}, 1.0, {1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(convergence_experiment(circle, 1, angles1(0), {100}, 0.0, {1}),
                  std::invalid_argument);
}

TEST_CASE("cycle graph spectra approach circle spectra") {
  const int n = 100;
  const SpectralDecomposition spec = spectrum(laplacian(make_cycle(n)));
  const double scale = (n / (2.0 * kPi)) * (n / (2.0 * kPi));

  for (int k = 1; k <= 3; ++k) {
    // eigenvalues come in pairs; both should scale to k^2 within 2%
    const double lo = scale * spec.eigenvalues[2 * k - 1];
    const double hi = scale * spec.eigenvalues[2 * k];
    CHECK(std::abs(lo - k * k) <= 0.02 * k * k);
    CHECK(std::abs(hi - k * k) <= 0.02 * k * k);

    // sampled eigenfunctions lie in the computed 2-d eigenspace: projection
    // keeps (almost) all of their mass
    const Matrix basis = spec.eigenvectors.middleCols(2 * k - 1, 2);
    Vector sampled_sin(n), sampled_cos(n);
    for (int i = 0; i < n; ++i) {
      sampled_sin[i] = std::sin(2.0 * kPi * k * i / n);
      sampled_cos[i] = std::cos(2.0 * kPi * k * i / n);
    }
    for (const Vector& v : {sampled_sin, sampled_cos}) {
      const double alignment = (basis * (basis.transpose() * v)).norm() / v.norm();
      CHECK(alignment >= 0.999);
    }
  }
}

TEST_CASE("equispaced quadrature consistency of the estimator") {
  // with equispaced points the estimate is a trapezoid-rule quadrature of the
  // continuum operator; at n = 4000 and the a = 0.5 schedule it lands within
  // 10% of (1/(2 pi r)) * laplacian of sin at z
  const AnalyticManifold circle = AnalyticManifold::circle();
  const int n = 4000;
  const double t = bandwidth_schedule(n, 1, 0.5);
  Matrix pts(n, 2);
  Vector f(n);
  for (int i = 0; i < n; ++i) {
    const double theta = 2.0 * kPi * i / n;
    pts(i, 0) = std::cos(theta);
    pts(i, 1) = std::sin(theta);
    f[i] = std::sin(theta);
  }
  const Vector z = embed(circle, angles1(kPi / 2));
  const double estimate = pointwise_laplacian_estimate_at(z, 1.0, pts, f, t, 1);
  const double target = 1.0 / (2.0 * kPi);
  CHECK(std::abs(estimate - target) <= 0.10 * target);
}
