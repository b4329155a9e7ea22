#pragma once

#include <Eigen/Core>

#include <cmath>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "manireg/parallel.hpp"

namespace manireg {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// PSD slack for Gram matrices, relative to the largest diagonal entry.
inline constexpr double kPsdTolRel = 1e-8;

/// A positive symmetric similarity function on points of R^d.
///
/// Built-ins: linear, polynomial(c, p), gaussian(sigma2), exponential(gamma)
/// and min (nonnegative scalars only). Composites close the set under sum,
/// product, f(x)K(x,y)f(y), K(f(x),f(y)), exp(K) and normalization.
/// Kernels are immutable after construction and safe to share across threads.
class Kernel {
 public:
  double operator()(const Vector& x, const Vector& y) const {
    if (x.size() != y.size())
      throw std::invalid_argument("kernel: point dimensions differ (" +
                                  std::to_string(x.size()) + " vs " +
                                  std::to_string(y.size()) + ")");
    return node_->eval(x, y);
  }

  /// JSON description (kind + hyperparameters), as used in config files and
  /// model files. Throws for kernels built around arbitrary std::functions.
  nlohmann::json spec() const { return node_->spec(); }

  bool serializable() const { return node_->serializable(); }

  static Kernel linear() { return Kernel(std::make_shared<const LinearNode>()); }

  static Kernel polynomial(double c, int p) {
    if (p < 1) throw std::invalid_argument("polynomial kernel: degree must be a positive integer");
    if (c < 0) throw std::invalid_argument("polynomial kernel: offset c must be nonnegative");
    return Kernel(std::make_shared<const PolynomialNode>(c, p));
  }

  static Kernel gaussian(double sigma2) {
    if (!(sigma2 > 0)) throw std::invalid_argument("gaussian kernel: sigma2 must be positive");
    return Kernel(std::make_shared<const GaussianNode>(sigma2));
  }

  static Kernel exponential(double gamma) {
    if (!(gamma > 0)) throw std::invalid_argument("exponential kernel: gamma must be positive");
    return Kernel(std::make_shared<const ExponentialNode>(gamma));
  }

  static Kernel min() { return Kernel(std::make_shared<const MinNode>()); }

  static Kernel sum(Kernel a, Kernel b) {
    return Kernel(std::make_shared<const SumNode>(std::move(a.node_), std::move(b.node_)));
  }

  static Kernel product(Kernel a, Kernel b) {
    return Kernel(std::make_shared<const ProductNode>(std::move(a.node_), std::move(b.node_)));
  }

  /// f(x) K(x,y) f(y)
  static Kernel scaled_by(Kernel k, std::function<double(const Vector&)> f) {
    return Kernel(std::make_shared<const ScaleNode>(std::move(k.node_), std::move(f)));
  }

  /// K(f(x), f(y))
  static Kernel warped(Kernel k, std::function<Vector(const Vector&)> f) {
    return Kernel(std::make_shared<const WarpNode>(std::move(k.node_), std::move(f)));
  }

  static Kernel exp_of(Kernel k) {
    return Kernel(std::make_shared<const ExpOfNode>(std::move(k.node_)));
  }

  /// K(x,y) / sqrt(K(x,x) K(y,y)); errors at evaluation when K(x,x) = 0.
  static Kernel normalized(Kernel k) {
    return Kernel(std::make_shared<const NormalizedNode>(std::move(k.node_)));
  }

  static Kernel from_spec(const nlohmann::json& j);

 private:
  struct Node {
    virtual ~Node() = default;
    virtual double eval(const Vector& x, const Vector& y) const = 0;
    virtual nlohmann::json spec() const = 0;
    virtual bool serializable() const { return true; }
  };

  struct LinearNode final : Node {
    double eval(const Vector& x, const Vector& y) const override { return x.dot(y); }
    nlohmann::json spec() const override { return {{"kind", "linear"}}; }
  };

  struct PolynomialNode final : Node {
    double c;
    int p;
    PolynomialNode(double c_, int p_) : c(c_), p(p_) {}
    double eval(const Vector& x, const Vector& y) const override {
      const double base = c + x.dot(y);
      double out = 1.0;
      for (int i = 0; i < p; ++i) out *= base;
      return out;
    }
    nlohmann::json spec() const override {
      return {{"kind", "polynomial"}, {"c", c}, {"p", p}};
    }
  };

  struct GaussianNode final : Node {
    double sigma2;
    explicit GaussianNode(double s2) : sigma2(s2) {}
    double eval(const Vector& x, const Vector& y) const override {
      return std::exp(-(x - y).squaredNorm() / (2.0 * sigma2));
    }
    nlohmann::json spec() const override {
      return {{"kind", "gaussian"}, {"sigma2", sigma2}};
    }
  };

  struct ExponentialNode final : Node {
    double gamma;
    explicit ExponentialNode(double g) : gamma(g) {}
    double eval(const Vector& x, const Vector& y) const override {
      return 0.5 * std::exp(-gamma * (x - y).norm());
    }
    nlohmann::json spec() const override {
      return {{"kind", "exponential"}, {"gamma", gamma}};
    }
  };

  // Positive on nonnegative scalars (Brownian-motion covariance); rejects
  // anything outside that domain.
  struct MinNode final : Node {
    double eval(const Vector& x, const Vector& y) const override {
      if (x.size() != 1)
        throw std::invalid_argument("min kernel: defined on scalars only");
      if (x[0] < 0 || y[0] < 0)
        throw std::invalid_argument("min kernel: defined on nonnegative values only");
      return std::min(x[0], y[0]);
    }
    nlohmann::json spec() const override { return {{"kind", "min"}}; }
  };

  using NodePtr = std::shared_ptr<const Node>;

  struct SumNode final : Node {
    NodePtr a, b;
    SumNode(NodePtr a_, NodePtr b_) : a(std::move(a_)), b(std::move(b_)) {}
    double eval(const Vector& x, const Vector& y) const override {
      return a->eval(x, y) + b->eval(x, y);
    }
    nlohmann::json spec() const override {
      return {{"kind", "sum"}, {"first", a->spec()}, {"second", b->spec()}};
    }
    bool serializable() const override { return a->serializable() && b->serializable(); }
  };

  struct ProductNode final : Node {
    NodePtr a, b;
    ProductNode(NodePtr a_, NodePtr b_) : a(std::move(a_)), b(std::move(b_)) {}
    double eval(const Vector& x, const Vector& y) const override {
      return a->eval(x, y) * b->eval(x, y);
    }
    nlohmann::json spec() const override {
      return {{"kind", "product"}, {"first", a->spec()}, {"second", b->spec()}};
    }
    bool serializable() const override { return a->serializable() && b->serializable(); }
  };

  struct ScaleNode final : Node {
    NodePtr k;
    std::function<double(const Vector&)> f;
    ScaleNode(NodePtr k_, std::function<double(const Vector&)> f_)
        : k(std::move(k_)), f(std::move(f_)) {}
    double eval(const Vector& x, const Vector& y) const override {
      return f(x) * k->eval(x, y) * f(y);
    }
    nlohmann::json spec() const override {
      throw std::runtime_error("kernel: function-scaled kernels are not serializable");
    }
    bool serializable() const override { return false; }
  };

  struct WarpNode final : Node {
    NodePtr k;
    std::function<Vector(const Vector&)> f;
    WarpNode(NodePtr k_, std::function<Vector(const Vector&)> f_)
        : k(std::move(k_)), f(std::move(f_)) {}
    double eval(const Vector& x, const Vector& y) const override {
      return k->eval(f(x), f(y));
    }
    nlohmann::json spec() const override {
      throw std::runtime_error("kernel: warped kernels are not serializable");
    }
    bool serializable() const override { return false; }
  };

  struct ExpOfNode final : Node {
    NodePtr k;
    explicit ExpOfNode(NodePtr k_) : k(std::move(k_)) {}
    double eval(const Vector& x, const Vector& y) const override {
      return std::exp(k->eval(x, y));
    }
    nlohmann::json spec() const override {
      return {{"kind", "exp_of"}, {"inner", k->spec()}};
    }
    bool serializable() const override { return k->serializable(); }
  };

  struct NormalizedNode final : Node {
    NodePtr k;
    explicit NormalizedNode(NodePtr k_) : k(std::move(k_)) {}
    double eval(const Vector& x, const Vector& y) const override {
      const double kxx = k->eval(x, x);
      const double kyy = k->eval(y, y);
      if (kxx <= 0 || kyy <= 0)
        throw std::domain_error("normalized kernel: K(x,x) = 0 at a requested point");
      return k->eval(x, y) / (std::sqrt(kxx) * std::sqrt(kyy));
    }
    nlohmann::json spec() const override {
      return {{"kind", "normalized"}, {"inner", k->spec()}};
    }
    bool serializable() const override { return k->serializable(); }
  };

  explicit Kernel(NodePtr node) : node_(std::move(node)) {}

  NodePtr node_;
};

inline Kernel Kernel::from_spec(const nlohmann::json& j) {
  if (!j.contains("kind"))
    throw std::invalid_argument("kernel spec: missing \"kind\" field");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "linear") return linear();
  if (kind == "polynomial") return polynomial(j.at("c").get<double>(), j.at("p").get<int>());
  if (kind == "gaussian") return gaussian(j.at("sigma2").get<double>());
  if (kind == "exponential") return exponential(j.at("gamma").get<double>());
  if (kind == "min") return min();
  if (kind == "sum") return sum(from_spec(j.at("first")), from_spec(j.at("second")));
  if (kind == "product") return product(from_spec(j.at("first")), from_spec(j.at("second")));
  if (kind == "exp_of") return exp_of(from_spec(j.at("inner")));
  if (kind == "normalized") return normalized(from_spec(j.at("inner")));
  throw std::invalid_argument("kernel spec: unknown kind \"" + kind + "\"");
}

/// Pairwise kernel evaluations on a finite point set (points are rows).
struct GramMatrix {
  Matrix entries;
  Matrix points;
  int size() const { return static_cast<int>(entries.rows()); }
};

/// Assembles the Gram matrix. The upper triangle is computed and mirrored,
/// so the result is exactly symmetric. Rows are filled in parallel.
inline GramMatrix gram_matrix(const Kernel& kernel, const Matrix& points) {
  const int n = static_cast<int>(points.rows());
  if (n == 0) throw std::invalid_argument("gram_matrix: empty point set");
  Matrix entries(n, n);
  detail::parallel_for(n, [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      const Vector xi = points.row(i).transpose();
      for (int j = i; j < n; ++j) {
        entries(i, j) = kernel(xi, points.row(j).transpose());
      }
    }
  });
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) entries(i, j) = entries(j, i);
  return GramMatrix{std::move(entries), points};
}

/// Cross-kernel matrix: entries(i, j) = K(a_i, b_j).
inline Matrix cross_gram(const Kernel& kernel, const Matrix& a, const Matrix& b) {
  Matrix out(a.rows(), b.rows());
  detail::parallel_for(static_cast<int>(a.rows()), [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      const Vector xi = a.row(i).transpose();
      for (int j = 0; j < b.rows(); ++j) out(i, j) = kernel(xi, b.row(j).transpose());
    }
  });
  return out;
}

/// Distance induced by the kernel's feature-space embedding,
/// d(x,y) = sqrt(K(x,x) - 2 K(x,y) + K(y,y)).
inline double kernel_distance(const Kernel& kernel, const Vector& x, const Vector& y) {
  const double kxx = kernel(x, x);
  const double kyy = kernel(y, y);
  const double d2 = kxx - 2.0 * kernel(x, y) + kyy;
  const double slack = kPsdTolRel * std::max({kxx, kyy, 1.0});
  if (d2 < -slack)
    throw std::domain_error("kernel_distance: negative squared distance; kernel is not positive here");
  return std::sqrt(std::max(0.0, d2));
}

}  // namespace manireg
