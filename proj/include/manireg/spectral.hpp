#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "manireg/graph.hpp"
#include "manireg/parallel.hpp"

namespace manireg {

/// Full eigendecomposition of a symmetric operator: ascending eigenvalues,
/// orthonormal eigenvector columns.
struct SpectralDecomposition {
  Vector eigenvalues;
  Matrix eigenvectors;

  int size() const { return static_cast<int>(eigenvalues.size()); }

  double lambda_max() const { return eigenvalues[size() - 1]; }

  /// Multiplicity of the zero eigenvalue at slack 1e-8 * lambda_max.
  int zero_count() const {
    const double tol = kZeroTolRel * std::max(lambda_max(), 0.0);
    int c = 0;
    for (int i = 0; i < size(); ++i)
      if (eigenvalues[i] <= tol) ++c;
    return c;
  }
};

inline SpectralDecomposition spectrum(const Matrix& symmetric) {
  if (symmetric.rows() != symmetric.cols())
    throw std::invalid_argument("spectrum: matrix must be square");
  const double asym = (symmetric - symmetric.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12)
    throw std::invalid_argument("spectrum: matrix is asymmetric beyond 1e-12 (max |A - A^T| = " +
                                std::to_string(asym) + ")");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetric);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("spectrum: eigendecomposition failed to converge");
  return SpectralDecomposition{solver.eigenvalues(), solver.eigenvectors()};
}

inline SpectralDecomposition spectrum(const Laplacian& lap) { return spectrum(lap.matrix); }

// ---------------------------------------------------------------------------
// Complement lemma
// ---------------------------------------------------------------------------

/// Eigenvalues of the complement of a simple graph with the given ascending
/// spectrum: {0, n - lambda_n, ..., n - lambda_2}, sorted ascending.
/// Precondition: the spectrum came from a simple unweighted graph on n vertices.
inline Vector complement_spectrum(const SpectralDecomposition& spec, int n) {
  if (spec.size() != n)
    throw std::invalid_argument("complement_spectrum: spectrum size does not match n");
  Vector out(n);
  out[0] = 0.0;
  for (int i = 1; i < n; ++i) out[i] = n - spec.eigenvalues[n - i];
  std::sort(out.data(), out.data() + n);
  return out;
}

inline Vector complement_spectrum(const DataGraph& g) {
  if (!g.is_unweighted())
    throw std::invalid_argument("complement_spectrum: the lemma applies to simple unweighted graphs");
  return complement_spectrum(spectrum(laplacian(g)), g.size());
}

// ---------------------------------------------------------------------------
// Eigenvalue bounds
// ---------------------------------------------------------------------------

struct BoundsReport {
  int n = 0;
  double lambda2 = 0;
  double lambda_n = 0;
  double fiedler_upper = 0;          // (n/(n-1)) min_v d_v, bound on lambda2
  double merris_upper = 0;           // max_i (d_i + m(i)),  bound on lambda_n
  double anderson_morley_upper = 0;  // max_{(i,j) in E} (d_i + d_j)
  double trace_sum = 0;              // sum of eigenvalues
  double twice_edges = 0;            // 2 |E|
  bool fiedler_checked = false;      // skipped (false) when disconnected
  bool fiedler_holds = false;
  bool merris_holds = false;
  bool anderson_morley_holds = false;
  bool trace_holds = false;
  bool lambda_n_le_n = false;
};

/// Computes the classic degree-based spectral bounds for a simple unweighted
/// graph and checks each against the true spectrum. The Fiedler bound is
/// stated for connected graphs; on disconnected input it is reported but not
/// checked (fiedler_checked = false).
inline BoundsReport eigenvalue_bounds(const DataGraph& g) {
  if (!g.is_unweighted())
    throw std::invalid_argument("eigenvalue_bounds: bounds are stated for simple unweighted graphs");
  const int n = g.size();
  if (n < 2) throw std::invalid_argument("eigenvalue_bounds: need at least 2 vertices");

  const SpectralDecomposition spec = spectrum(laplacian(g));
  const Vector deg = g.degrees();

  BoundsReport r;
  r.n = n;
  r.lambda2 = spec.eigenvalues[1];
  r.lambda_n = spec.eigenvalues[n - 1];
  r.fiedler_upper = double(n) / double(n - 1) * deg.minCoeff();

  double merris = 0;
  double anderson = 0;
  for (int i = 0; i < n; ++i) {
    double neighbor_deg_sum = 0;
    int neighbor_count = 0;
    for (int j = 0; j < n; ++j)
      if (g.weights(i, j) > 0) {
        neighbor_deg_sum += deg[j];
        ++neighbor_count;
        if (j > i) anderson = std::max(anderson, deg[i] + deg[j]);
      }
    const double m_i = neighbor_count == 0 ? 0.0 : neighbor_deg_sum / neighbor_count;
    merris = std::max(merris, deg[i] + m_i);
  }
  r.merris_upper = merris;
  r.anderson_morley_upper = anderson;
  r.trace_sum = spec.eigenvalues.sum();
  r.twice_edges = 2.0 * g.total_edge_weight();

  const double slack = 1e-9 * std::max(1.0, r.lambda_n);
  r.fiedler_checked = connected_components(g) == 1;
  r.fiedler_holds = r.fiedler_checked && r.lambda2 <= r.fiedler_upper + slack;
  r.merris_holds = r.lambda_n <= r.merris_upper + slack;
  r.anderson_morley_holds = r.lambda_n <= r.anderson_morley_upper + slack;
  r.trace_holds = std::abs(r.trace_sum - r.twice_edges) <= 1e-8 * std::max(1.0, r.twice_edges);
  r.lambda_n_le_n = r.lambda_n <= n + slack;
  return r;
}

// ---------------------------------------------------------------------------
// Cheeger machinery
// ---------------------------------------------------------------------------

/// Total weight of edges leaving S.
inline double boundary_weight(const DataGraph& g, const std::vector<int>& subset) {
  std::vector<char> in_s(g.size(), 0);
  for (int v : subset) in_s.at(v) = 1;
  double w = 0;
  for (int i = 0; i < g.size(); ++i) {
    if (!in_s[i]) continue;
    for (int j = 0; j < g.size(); ++j)
      if (!in_s[j]) w += g.weights(i, j);
  }
  return w;
}

/// h_G(S) = |dS| / min(|S|, n - |S|).
inline double conductance(const DataGraph& g, const std::vector<int>& subset) {
  const int n = g.size();
  const int s = static_cast<int>(subset.size());
  if (s == 0 || s == n)
    throw std::invalid_argument("conductance: subset must be nonempty and proper");
  return boundary_weight(g, subset) / std::min(s, n - s);
}

/// Exact Cheeger constant by enumerating all nonempty proper subsets.
/// h_G(S) = h_G(V \ S), so only subsets containing vertex 0 are visited.
inline std::pair<double, std::vector<int>> cheeger_constant_bruteforce(const DataGraph& g) {
  const int n = g.size();
  if (n < 2) throw std::invalid_argument("cheeger_constant_bruteforce: need at least 2 vertices");
  if (n > 22)
    throw std::invalid_argument(
        "cheeger_constant_bruteforce: n > 22 is out of range; use sweep_cut instead");

  struct Edge {
    int i, j;
    double w;
  };
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (g.weights(i, j) > 0) edges.push_back({i, j, g.weights(i, j)});

  const std::uint32_t full = (1u << n) - 1;
  const std::int64_t candidates = std::int64_t(1) << (n - 1);  // masks with bit 0 set

  double best_h = std::numeric_limits<double>::infinity();
  std::uint32_t best_mask = 0;
  std::mutex merge_mutex;

  detail::parallel_for(static_cast<int>(candidates - 1),
                       [&](int begin, int end) {
                         double local_h = std::numeric_limits<double>::infinity();
                         std::uint32_t local_mask = 0;
                         for (int idx = begin; idx < end; ++idx) {
                           const std::uint32_t mask = 2u * std::uint32_t(idx) + 1u;
                           if (mask == full) continue;
                           double cut = 0;
                           for (const Edge& e : edges) {
                             const bool a = mask >> e.i & 1u;
                             const bool b = mask >> e.j & 1u;
                             if (a != b) cut += e.w;
                           }
                           const int size = std::popcount(mask);
                           const double h = cut / std::min(size, n - size);
                           if (h < local_h || (h == local_h && mask < local_mask)) {
                             local_h = h;
                             local_mask = mask;
                           }
                         }
                         std::lock_guard<std::mutex> lock(merge_mutex);
                         if (local_h < best_h || (local_h == best_h && local_mask < best_mask)) {
                           best_h = local_h;
                           best_mask = local_mask;
                         }
                       });

  std::vector<int> subset;
  for (int v = 0; v < n; ++v)
    if (best_mask >> v & 1u) subset.push_back(v);
  return {best_h, std::move(subset)};
}

struct CutResult {
  std::vector<int> subset;
  double conductance = 0;
  int sweep_threshold = 0;  // |S|: number of sorted vertices taken
};

/// Sparse cut from the second eigenvector: take f = D^{-1/2} f_2 with f_2 from
/// the normalized Laplacian, sort vertices by f, and return the prefix set of
/// minimum conductance over all n-1 sweep prefixes (ties to the smaller set).
inline CutResult sweep_cut(const DataGraph& g) {
  const int n = g.size();
  if (n < 2) throw std::invalid_argument("sweep_cut: need at least 2 vertices");
  if (connected_components(g) != 1)
    throw std::invalid_argument("sweep_cut: graph must be connected");

  const SpectralDecomposition spec = spectrum(laplacian(g, /*normalized=*/true));
  Vector f = spec.eigenvectors.col(1);
  const Vector deg = g.degrees();
  for (int i = 0; i < n; ++i) f[i] /= std::sqrt(deg[i]);
  // Canonical eigenvector orientation: first entry of noticeable size positive.
  for (int i = 0; i < n; ++i) {
    if (std::abs(f[i]) > 1e-12 * f.cwiseAbs().maxCoeff()) {
      if (f[i] < 0) f = -f;
      break;
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (f[a] != f[b]) return f[a] < f[b];
    return a < b;
  });

  std::vector<char> in_s(n, 0);
  double cut = 0;
  double best_h = std::numeric_limits<double>::infinity();
  int best_size = 0;
  for (int i = 0; i + 1 < n; ++i) {
    const int v = order[i];
    double to_inside = 0;
    for (int u = 0; u < n; ++u)
      if (in_s[u]) to_inside += g.weights(v, u);
    cut += deg[v] - 2.0 * to_inside;
    in_s[v] = 1;
    const int size = i + 1;
    const double h = cut / std::min(size, n - size);
    if (h < best_h) {
      best_h = h;
      best_size = size;
    }
  }

  std::vector<int> subset(order.begin(), order.begin() + best_size);
  std::sort(subset.begin(), subset.end());
  CutResult result;
  result.subset = std::move(subset);
  result.conductance = conductance(g, result.subset);  // recomputed exactly
  result.sweep_threshold = best_size;
  return result;
}

// ---------------------------------------------------------------------------
// Edge-addition interlacing
// ---------------------------------------------------------------------------

struct InterlacingReport {
  Vector before;
  Vector after;
  bool chain_holds = false;
  double max_violation = 0;
  double trace_before = 0;
  double trace_after = 0;
  bool trace_diff_two = false;
};

/// Adds the absent edge (i, j) and checks that the new spectrum interlaces the
/// old one with slack 1e-8, and that the trace grows by exactly 2.
inline InterlacingReport check_interlacing(const DataGraph& g, int i, int j) {
  const int n = g.size();
  if (i < 0 || j < 0 || i >= n || j >= n || i == j)
    throw std::invalid_argument("check_interlacing: invalid vertex pair");
  if (!g.is_unweighted())
    throw std::invalid_argument("check_interlacing: stated for simple unweighted graphs");
  if (g.has_edge(i, j))
    throw std::invalid_argument("check_interlacing: edge is already present");

  DataGraph g2 = g;
  g2.weights(i, j) = g2.weights(j, i) = 1.0;

  InterlacingReport r;
  const Laplacian la = laplacian(g);
  const Laplacian lb = laplacian(g2);
  r.before = spectrum(la).eigenvalues;
  r.after = spectrum(lb).eigenvalues;
  r.trace_before = la.matrix.trace();
  r.trace_after = lb.matrix.trace();
  r.trace_diff_two = std::abs(r.trace_after - r.trace_before - 2.0) <= 1e-9;

  const double slack = 1e-8 * std::max(1.0, r.after[n - 1]);
  double violation = 0;
  for (int k = 0; k < n; ++k) {
    violation = std::max(violation, r.before[k] - r.after[k]);          // lambda_k(G) <= lambda_k(G')
    if (k + 1 < n) violation = std::max(violation, r.after[k] - r.before[k + 1]);
  }
  r.max_violation = violation;
  r.chain_holds = violation <= slack;
  return r;
}

// ---------------------------------------------------------------------------
// Rayleigh quotient bound
// ---------------------------------------------------------------------------

/// Upper bound on lambda_2 from a trial vector: centers the trial against the
/// constant vector, normalizes, and returns the quotient. Requires the
/// unnormalized Laplacian of a connected graph; a constant trial is rejected.
inline double rayleigh_lambda2(const Laplacian& lap, const Vector& trial) {
  if (lap.normalized)
    throw std::invalid_argument("rayleigh_lambda2: pass the unnormalized Laplacian");
  const int n = lap.size();
  if (trial.size() != n)
    throw std::invalid_argument("rayleigh_lambda2: trial length does not match vertex count");

  Vector centered = trial.array() - trial.mean();
  const double norm = centered.norm();
  if (norm <= 1e-12 * std::max(1.0, trial.norm()))
    throw std::invalid_argument("rayleigh_lambda2: trial vector is constant");
  centered /= norm;
  const double quotient = centered.dot(lap.matrix * centered);

  const SpectralDecomposition spec = spectrum(lap);
  if (spec.zero_count() != 1)
    throw std::invalid_argument("rayleigh_lambda2: graph must be connected");
  if (quotient < spec.eigenvalues[1] - 1e-8 * std::max(1.0, spec.lambda_max()))
    throw std::logic_error("rayleigh_lambda2: quotient fell below lambda_2");
  return quotient;
}

}  // namespace manireg
