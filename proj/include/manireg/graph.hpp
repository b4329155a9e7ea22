#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "manireg/parallel.hpp"

namespace manireg {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Zero-eigenvalue slack relative to the largest eigenvalue.
inline constexpr double kZeroTolRel = 1e-8;

/// Undirected weighted graph over data points: symmetric nonnegative weight
/// matrix with zero diagonal, optionally carrying the vertex coordinates.
struct DataGraph {
  Matrix weights;
  std::optional<Matrix> points;

  int size() const { return static_cast<int>(weights.rows()); }

  double degree(int i) const { return weights.row(i).sum(); }

  Vector degrees() const { return weights.rowwise().sum(); }

  /// Total edge weight; equals |E| for unit weights.
  double total_edge_weight() const { return weights.sum() / 2.0; }

  bool has_edge(int i, int j) const { return weights(i, j) > 0; }

  /// True when every entry is exactly 0 or 1 (a simple unweighted graph).
  bool is_unweighted() const {
    for (int i = 0; i < size(); ++i)
      for (int j = 0; j < size(); ++j)
        if (weights(i, j) != 0.0 && weights(i, j) != 1.0) return false;
    return true;
  }
};

inline void check_square_graph_invariants(const Matrix& w) {
  if (w.rows() != w.cols()) throw std::invalid_argument("graph: weight matrix must be square");
  for (int i = 0; i < w.rows(); ++i) {
    if (w(i, i) != 0.0) throw std::invalid_argument("graph: diagonal weights must be zero");
    for (int j = 0; j < i; ++j) {
      if (w(i, j) != w(j, i)) throw std::invalid_argument("graph: weights must be symmetric");
      if (w(i, j) < 0) throw std::invalid_argument("graph: weights must be nonnegative");
    }
  }
}

inline DataGraph make_graph(Matrix weights, std::optional<Matrix> points = std::nullopt) {
  check_square_graph_invariants(weights);
  return DataGraph{std::move(weights), std::move(points)};
}

// ---------------------------------------------------------------------------
// Classic graphs
// ---------------------------------------------------------------------------

inline DataGraph make_empty(int n) { return DataGraph{Matrix::Zero(n, n), std::nullopt}; }

inline DataGraph make_complete(int n) {
  Matrix w = Matrix::Ones(n, n);
  w.diagonal().setZero();
  return DataGraph{std::move(w), std::nullopt};
}

inline DataGraph make_path(int n) {
  Matrix w = Matrix::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) w(i, i + 1) = w(i + 1, i) = 1.0;
  return DataGraph{std::move(w), std::nullopt};
}

inline DataGraph make_cycle(int n) {
  DataGraph g = make_path(n);
  if (n > 2) g.weights(0, n - 1) = g.weights(n - 1, 0) = 1.0;
  return g;
}

/// Star with the hub at vertex 0.
inline DataGraph make_star(int n) {
  Matrix w = Matrix::Zero(n, n);
  for (int i = 1; i < n; ++i) w(0, i) = w(i, 0) = 1.0;
  return DataGraph{std::move(w), std::nullopt};
}

inline DataGraph make_complete_bipartite(int m, int n) {
  Matrix w = Matrix::Zero(m + n, m + n);
  for (int i = 0; i < m; ++i)
    for (int j = m; j < m + n; ++j) w(i, j) = w(j, i) = 1.0;
  return DataGraph{std::move(w), std::nullopt};
}

/// Complement of a simple unweighted graph.
inline DataGraph complement_graph(const DataGraph& g) {
  if (!g.is_unweighted())
    throw std::invalid_argument("complement_graph: defined for simple unweighted graphs");
  const int n = g.size();
  Matrix w = Matrix::Ones(n, n) - g.weights;
  w.diagonal().setZero();
  return DataGraph{std::move(w), std::nullopt};
}

/// Disjoint union (block-diagonal weights).
inline DataGraph disjoint_union(const DataGraph& a, const DataGraph& b) {
  const int n = a.size() + b.size();
  Matrix w = Matrix::Zero(n, n);
  w.topLeftCorner(a.size(), a.size()) = a.weights;
  w.bottomRightCorner(b.size(), b.size()) = b.weights;
  return DataGraph{std::move(w), std::nullopt};
}

// ---------------------------------------------------------------------------
// Data graphs from point clouds
// ---------------------------------------------------------------------------

enum class EdgeWeighting { unit, gaussian };

namespace detail {
inline Matrix squared_distances(const Matrix& pts) {
  const int n = static_cast<int>(pts.rows());
  Matrix d2(n, n);
  parallel_for(n, [&](int begin, int end) {
    for (int i = begin; i < end; ++i)
      for (int j = 0; j < n; ++j) d2(i, j) = (pts.row(i) - pts.row(j)).squaredNorm();
  });
  return d2;
}
}  // namespace detail

/// kNN graph, symmetrized by union: (i,j) is an edge when either endpoint
/// ranks the other among its k nearest. Distance ties break toward the lower
/// vertex index so builds are deterministic.
inline DataGraph build_knn_graph(const Matrix& points, int k,
                                 EdgeWeighting weighting = EdgeWeighting::unit,
                                 double t = 1.0) {
  const int n = static_cast<int>(points.rows());
  if (k < 1 || k >= n)
    throw std::invalid_argument("build_knn_graph: need 1 <= k < n");
  if (weighting == EdgeWeighting::gaussian && !(t > 0))
    throw std::invalid_argument("build_knn_graph: gaussian weighting needs t > 0");
  const Matrix d2 = detail::squared_distances(points);
  Matrix w = Matrix::Zero(n, n);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (d2(i, a) != d2(i, b)) return d2(i, a) < d2(i, b);
      return a < b;
    });
    int taken = 0;
    for (int idx : order) {
      if (idx == i) continue;
      const double weight =
          weighting == EdgeWeighting::unit ? 1.0 : std::exp(-d2(i, idx) / (4.0 * t));
      w(i, idx) = std::max(w(i, idx), weight);
      w(idx, i) = w(i, idx);
      if (++taken == k) break;
    }
  }
  return DataGraph{std::move(w), points};
}

/// epsilon-neighbor graph: unit edge iff ||x_i - x_j|| < eps (strict).
inline DataGraph build_epsilon_graph(const Matrix& points, double eps) {
  if (!(eps > 0)) throw std::invalid_argument("build_epsilon_graph: eps must be positive");
  const int n = static_cast<int>(points.rows());
  const Matrix d2 = detail::squared_distances(points);
  Matrix w = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (d2(i, j) < eps * eps) w(i, j) = w(j, i) = 1.0;
  return DataGraph{std::move(w), points};
}

/// Fully connected graph with Gaussian weights w_ij = exp(-||x_i-x_j||^2 / 4t).
inline DataGraph build_gaussian_graph(const Matrix& points, double t) {
  if (!(t > 0)) throw std::invalid_argument("build_gaussian_graph: t must be positive");
  const int n = static_cast<int>(points.rows());
  const Matrix d2 = detail::squared_distances(points);
  Matrix w = (-d2.array() / (4.0 * t)).exp().matrix();
  w.diagonal().setZero();
  // exp(-d2/4t) is symmetric up to representation; d2 is computed symmetrically.
  return DataGraph{std::move(w), points};
}

// ---------------------------------------------------------------------------
// Laplacians
// ---------------------------------------------------------------------------

struct Laplacian {
  Matrix matrix;
  bool normalized = false;

  int size() const { return static_cast<int>(matrix.rows()); }
};

/// L = D - W, or the normalized I - D^{-1/2} W D^{-1/2}. The normalized form
/// requires every vertex to have positive degree.
inline Laplacian laplacian(const DataGraph& g, bool normalized = false) {
  const int n = g.size();
  const Vector deg = g.degrees();
  if (!normalized) {
    Matrix m = -g.weights;
    m.diagonal() = deg;
    return Laplacian{std::move(m), false};
  }
  for (int i = 0; i < n; ++i)
    if (deg[i] <= 0)
      throw std::invalid_argument("laplacian: normalized form undefined for isolated vertex " +
                                  std::to_string(i));
  const Vector dinv_sqrt = deg.array().rsqrt().matrix();
  Matrix m = -(dinv_sqrt.asDiagonal() * g.weights * dinv_sqrt.asDiagonal());
  m.diagonal().array() += 1.0;
  // Mirror the upper triangle so roundoff cannot break exact symmetry.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) m(i, j) = m(j, i);
  return Laplacian{std::move(m), true};
}

inline double quadratic_form(const Laplacian& lap, const Vector& f) {
  if (f.size() != lap.size())
    throw std::invalid_argument("quadratic_form: vector length does not match vertex count");
  return f.dot(lap.matrix * f);
}

/// Edge-sum form of the smoothness functional for the unnormalized Laplacian:
/// sum over edges of w_ij (f(i) - f(j))^2.
inline double edge_sum_form(const DataGraph& g, const Vector& f) {
  if (f.size() != g.size())
    throw std::invalid_argument("edge_sum_form: vector length does not match vertex count");
  double s = 0;
  for (int i = 0; i < g.size(); ++i)
    for (int j = i + 1; j < g.size(); ++j) {
      const double d = f[i] - f[j];
      s += g.weights(i, j) * d * d;
    }
  return s;
}

/// Component count by traversal (edges are entries with positive weight).
inline int connected_components(const DataGraph& g) {
  const int n = g.size();
  std::vector<int> label(n, -1);
  int count = 0;
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (label[s] != -1) continue;
    stack.push_back(s);
    label[s] = count;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int u = 0; u < n; ++u)
        if (g.weights(v, u) > 0 && label[u] == -1) {
          label[u] = count;
          stack.push_back(u);
        }
    }
    ++count;
  }
  return count;
}

// ---------------------------------------------------------------------------
// Heat kernel
// ---------------------------------------------------------------------------

struct HeatKernel {
  double t = 0;
  Matrix matrix;
};

/// H_t = Phi exp(-t Lambda) Phi^T through the spectral decomposition of the
/// Laplacian; symmetric PSD, equals the identity at t = 0.
inline HeatKernel heat_kernel(const Laplacian& lap, double t) {
  if (t < 0) throw std::invalid_argument("heat_kernel: t must be nonnegative");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(lap.matrix);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("heat_kernel: eigendecomposition failed");
  const Vector decay = (-t * solver.eigenvalues().array()).exp().matrix();
  Matrix h = solver.eigenvectors() * decay.asDiagonal() * solver.eigenvectors().transpose();
  for (int i = 0; i < h.rows(); ++i)
    for (int j = 0; j < i; ++j) {
      const double v = 0.5 * (h(i, j) + h(j, i));
      h(i, j) = h(j, i) = v;
    }
  return HeatKernel{t, std::move(h)};
}

// ---------------------------------------------------------------------------
// Edge-list serialization: one "i j w" triple per line, 0-indexed, i < j.
// ---------------------------------------------------------------------------

inline void write_edge_list(const DataGraph& g, std::ostream& out) {
  char buf[64];
  for (int i = 0; i < g.size(); ++i)
    for (int j = i + 1; j < g.size(); ++j)
      if (g.weights(i, j) > 0) {
        std::snprintf(buf, sizeof buf, "%.17g", g.weights(i, j));
        out << i << ' ' << j << ' ' << buf << '\n';
      }
}

/// Reads an edge list. Vertex count is max index + 1 unless a larger n is
/// given. Accepts either orientation and symmetrizes.
inline DataGraph read_edge_list(std::istream& in, int n_hint = 0) {
  struct Edge {
    int i, j;
    double w;
  };
  std::vector<Edge> edges;
  int n = n_hint;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    Edge e;
    char extra;
    if (std::sscanf(line.c_str(), "%d %d %lf %c", &e.i, &e.j, &e.w, &extra) != 3)
      throw std::runtime_error("edge list: malformed line " + std::to_string(lineno));
    if (e.i < 0 || e.j < 0 || e.i == e.j || e.w < 0)
      throw std::runtime_error("edge list: invalid edge on line " + std::to_string(lineno));
    n = std::max({n, e.i + 1, e.j + 1});
    edges.push_back(e);
  }
  Matrix w = Matrix::Zero(n, n);
  for (const Edge& e : edges) w(e.i, e.j) = w(e.j, e.i) = e.w;
  return DataGraph{std::move(w), std::nullopt};
}

}  // namespace manireg
