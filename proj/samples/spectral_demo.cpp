// Spectral graph theory tour: the cycle's spectrum against the circle's,
// a sweep cut of a dumbbell graph, and heat diffusion toward the mean.

#include <cstdio>

#include "manireg/manireg.hpp"

using namespace manireg;

int main() {
  // cycle eigenvalues scaled by (n / 2 pi)^2 approach k^2
  const int n = 100;
  const SpectralDecomposition spec = spectrum(laplacian(make_cycle(n)));
  const double scale = (n / (2.0 * kPi)) * (n / (2.0 * kPi));
  std::printf("cycle n=%d vs circle eigenvalues:\n", n);
  for (int k = 1; k <= 3; ++k)
    std::printf("  k=%d: scaled lambda = %.4f (target %d)\n", k,
                scale * spec.eigenvalues[2 * k], k * k);

  // sweep cut of two K_5 cliques joined by a bridge
  DataGraph dumbbell = disjoint_union(make_complete(5), make_complete(5));
  dumbbell.weights(0, 5) = dumbbell.weights(5, 0) = 1.0;
  const CutResult cut = sweep_cut(dumbbell);
  const auto [h_exact, subset] = cheeger_constant_bruteforce(dumbbell);
  std::printf("dumbbell sweep cut: conductance %.3f (exact Cheeger constant %.3f)\n",
              cut.conductance, h_exact);

  // heat flow forgets the initial condition
  const Laplacian lap = laplacian(make_cycle(12));
  Vector f = Vector::Zero(12);
  f[0] = 1.0;
  for (double t : {0.0, 0.5, 2.0, 10.0, 100.0}) {
    const Vector diffused = heat_kernel(lap, t).matrix * f;
    std::printf("  t = %6.1f: max deviation from the mean = %.6f\n", t,
                (diffused.array() - f.mean()).abs().maxCoeff());
  }
  return 0;
}
