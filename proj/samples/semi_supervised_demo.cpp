// Semi-supervised learning on two moons: one labeled point per class plus
// 198 unlabeled points. Laplacian-regularized least squares recovers the
// moons; plain RLS on the two labeled points cannot.

#include <cstdio>

#include "manireg/manireg.hpp"

using namespace manireg;

int main() {
  ToyDatasetSpec spec;
  spec.kind = ToyDatasetSpec::Kind::two_moons;
  spec.noise = 0.06;
  spec.n_per_class = 100;
  spec.n_labeled_per_class = 1;
  spec.seed = 16;
  const ToyDataset toy = generate_toy_dataset(spec);

  const Kernel kernel = Kernel::gaussian(0.1);
  GraphSpec graph;
  graph.kind = GraphSpec::Kind::knn;
  graph.k = 8;

  const auto accuracy = [&](const KernelModel& model) {
    const Vector pred = predict_batch(model, toy.data.points);
    int ok = 0;
    for (int i = 0; i < pred.size(); ++i)
      if ((pred[i] >= 0 ? 1.0 : -1.0) == toy.true_labels[i]) ++ok;
    return double(ok) / pred.size();
  };

  const KernelModel lap_rls = fit_lap_rls(kernel, toy.data, 1e-6, 10.0, graph);
  const KernelModel lap_svm = fit_lap_svm(kernel, toy.data, 1e-4, 100.0, graph);
  const KernelModel rls =
      fit_rls(kernel, Matrix(toy.data.points.topRows(2)), toy.data.labels, 1e-6);

  std::printf("two moons, %d points, %d labeled\n", toy.data.n_total(), toy.data.n_labeled());
  std::printf("  lap-rls accuracy: %5.1f%%\n", accuracy(lap_rls) * 100);
  std::printf("  lap-svm accuracy: %5.1f%%\n", accuracy(lap_svm) * 100);
  std::printf("  rls (labeled only): %5.1f%%\n", accuracy(rls) * 100);
  return 0;
}
