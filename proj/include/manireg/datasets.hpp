#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "manireg/learn.hpp"
#include "manireg/manifold.hpp"
#include "manireg/rng.hpp"

namespace manireg {

/// Deterministic synthetic two-class datasets. Rows are ordered as the
/// labeled block (n_labeled_per_class of class +1, then of class -1) followed
/// by the unlabeled remainder in the same class order.
struct ToyDatasetSpec {
  enum class Kind { two_moons, concentric_circles, gaussian_blobs };
  Kind kind = Kind::two_moons;
  double noise = 0.1;    // two_moons: gaussian jitter scale
  double gap = 0.5;      // concentric_circles: radial separation
  int blob_count = 4;    // gaussian_blobs: blobs alternate class around a ring
  double spread = 0.3;   // gaussian_blobs: per-blob standard deviation
  int n_per_class = 100;
  int n_labeled_per_class = 1;
  std::uint64_t seed = 0;
};

struct ToyDataset {
  SemiSupervisedDataset data;
  Vector true_labels;  // ground truth for every row, labeled block first
};

namespace detail {

inline Matrix sample_two_moons_class(int n, bool upper, double noise, Rng& rng) {
  Matrix pts(n, 2);
  for (int i = 0; i < n; ++i) {
    const double angle = kPi * uniform_double(rng);
    const double g1 = gaussian_sample(rng);
    const double g2 = gaussian_sample(rng);
    if (upper) {
      pts(i, 0) = std::cos(angle) + noise * g1;
      pts(i, 1) = std::sin(angle) + noise * g2;
    } else {
      pts(i, 0) = 1.0 - std::cos(angle) + noise * g1;
      pts(i, 1) = 0.5 - std::sin(angle) + noise * g2;
    }
  }
  return pts;
}

inline Matrix sample_circle_class(int n, double radius, Rng& rng) {
  Matrix pts(n, 2);
  for (int i = 0; i < n; ++i) {
    const double angle = 2.0 * kPi * uniform_double(rng);
    pts(i, 0) = radius * std::cos(angle);
    pts(i, 1) = radius * std::sin(angle);
  }
  return pts;
}

inline Matrix sample_blob_class(int n, int class_id, int blob_count, double spread, Rng& rng) {
  Matrix pts(n, 2);
  int blob = class_id;  // class 0 owns blobs 0,2,4..., class 1 owns 1,3,5...
  for (int i = 0; i < n; ++i) {
    const double center_angle = 2.0 * kPi * blob / blob_count;
    pts(i, 0) = 3.0 * std::cos(center_angle) + spread * gaussian_sample(rng);
    pts(i, 1) = 3.0 * std::sin(center_angle) + spread * gaussian_sample(rng);
    blob += 2;
    if (blob >= blob_count) blob = class_id;
  }
  return pts;
}

}  // namespace detail

inline ToyDataset generate_toy_dataset(const ToyDatasetSpec& spec) {
  if (spec.n_per_class < 1)
    throw std::invalid_argument("generate_toy_dataset: n_per_class must be >= 1");
  if (spec.n_labeled_per_class < 1 || spec.n_labeled_per_class > spec.n_per_class)
    throw std::invalid_argument(
        "generate_toy_dataset: need 1 <= n_labeled_per_class <= n_per_class");

  Rng rng(spec.seed);
  Matrix pos, neg;
  switch (spec.kind) {
    case ToyDatasetSpec::Kind::two_moons:
      if (spec.noise < 0) throw std::invalid_argument("two_moons: noise must be nonnegative");
      pos = detail::sample_two_moons_class(spec.n_per_class, true, spec.noise, rng);
      neg = detail::sample_two_moons_class(spec.n_per_class, false, spec.noise, rng);
      break;
    case ToyDatasetSpec::Kind::concentric_circles:
      if (!(spec.gap > 0)) throw std::invalid_argument("concentric_circles: gap must be positive");
      pos = detail::sample_circle_class(spec.n_per_class, 1.0, rng);
      neg = detail::sample_circle_class(spec.n_per_class, 1.0 + spec.gap, rng);
      break;
    case ToyDatasetSpec::Kind::gaussian_blobs:
      if (spec.blob_count < 2)
        throw std::invalid_argument("gaussian_blobs: need at least 2 blobs");
      if (spec.spread < 0) throw std::invalid_argument("gaussian_blobs: spread must be nonnegative");
      pos = detail::sample_blob_class(spec.n_per_class, 0, spec.blob_count, spec.spread, rng);
      neg = detail::sample_blob_class(spec.n_per_class, 1, spec.blob_count, spec.spread, rng);
      break;
  }

  const int per = spec.n_per_class;
  const int labeled = spec.n_labeled_per_class;
  const int n = 2 * per;
  Matrix points(n, 2);
  Vector truth(n);
  int row = 0;
  const auto put = [&](const Matrix& src, int begin, int end, double label) {
    for (int i = begin; i < end; ++i, ++row) {
      points.row(row) = src.row(i);
      truth[row] = label;
    }
  };
  put(pos, 0, labeled, 1.0);
  put(neg, 0, labeled, -1.0);
  put(pos, labeled, per, 1.0);
  put(neg, labeled, per, -1.0);

  SemiSupervisedDataset data;
  data.points = std::move(points);
  data.labels = truth.head(2 * labeled);
  return ToyDataset{std::move(data), std::move(truth)};
}

}  // namespace manireg
