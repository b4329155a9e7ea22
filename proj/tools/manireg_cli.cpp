// Command-line interface: dataset generation, training, prediction, and the
// spectral / manifold experiment reports. One binary with subcommands; every
// report embeds its configuration, seed, and the library version, so a run
// can be reproduced from its own output.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "manireg/manireg.hpp"

using nlohmann::json;
using namespace manireg;

namespace {

json report_shell(const std::string& command, json config) {
  json j;
  j["version"] = kVersion;
  j["command"] = command;
  j["config"] = std::move(config);
  return j;
}

void write_report(const json& report, const std::string& path) {
  write_text_file(path, report.dump(2) + "\n");
}

void write_meta(const std::string& command, const json& config, const std::string& out_path) {
  write_report(report_shell(command, config), out_path + ".meta.json");
}

json vector_to_json(const Vector& v) {
  json arr = json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) rows.push_back(vector_to_json(m.row(i).transpose()));
  return rows;
}

Kernel kernel_from_flags(const std::string& name, double sigma2, double c, int p, double gamma) {
  if (name == "gaussian") return Kernel::gaussian(sigma2);
  if (name == "linear") return Kernel::linear();
  if (name == "polynomial") return Kernel::polynomial(c, p);
  if (name == "exponential") return Kernel::exponential(gamma);
  if (name == "min") return Kernel::min();
  throw std::invalid_argument("unknown kernel \"" + name +
                              "\" (expected gaussian, linear, polynomial, exponential or min)");
}

// --f forms: "const"; "sin:k" / "cos:k" on the circle; "sin:m1,m2" /
// "cos:m1,m2" on the torus. Returns the eigenfunction index.
int parse_eigenfunction(const AnalyticManifold& m, const std::string& text) {
  if (text == "const") return 0;
  const std::size_t colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("--f must be const, sin:..., or cos:...");
  const std::string trig = text.substr(0, colon);
  if (trig != "sin" && trig != "cos")
    throw std::invalid_argument("--f must be const, sin:..., or cos:...");
  const bool is_sin = trig == "sin";
  const std::string rest = text.substr(colon + 1);

  if (m.kind == AnalyticManifold::Kind::circle) {
    const int k = std::stoi(rest);
    if (k < 1) throw std::invalid_argument("--f frequency must be >= 1");
    return is_sin ? 2 * k - 1 : 2 * k;
  }
  const std::size_t comma = rest.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument("--f on the torus needs two integers, e.g. sin:1,0");
  return torus_eigenfunction_index(std::stoi(rest.substr(0, comma)),
                                   std::stoi(rest.substr(comma + 1)), is_sin);
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string field =
        comma == std::string::npos ? text.substr(start) : text.substr(start, comma - start);
    values.push_back(std::stod(field));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return values;
}

// ---------------------------------------------------------------------------

int run_gen(const std::string& kind, int n_per_class, int labeled_per_class, double noise,
            double gap, int blobs, double spread, std::uint64_t seed, const std::string& out) {
  ToyDatasetSpec spec;
  if (kind == "two_moons")
    spec.kind = ToyDatasetSpec::Kind::two_moons;
  else if (kind == "concentric_circles")
    spec.kind = ToyDatasetSpec::Kind::concentric_circles;
  else if (kind == "gaussian_blobs")
    spec.kind = ToyDatasetSpec::Kind::gaussian_blobs;
  else
    throw std::invalid_argument("unknown dataset kind \"" + kind + "\"");
  spec.n_per_class = n_per_class;
  spec.n_labeled_per_class = labeled_per_class;
  spec.noise = noise;
  spec.gap = gap;
  spec.blob_count = blobs;
  spec.spread = spread;
  spec.seed = seed;

  const ToyDataset toy = generate_toy_dataset(spec);
  save_dataset(toy.data, out);
  const json config = {{"kind", kind},
                       {"n_per_class", n_per_class},
                       {"labeled_per_class", labeled_per_class},
                       {"noise", noise},
                       {"gap", gap},
                       {"blobs", blobs},
                       {"spread", spread},
                       {"seed", seed},
                       {"out", out}};
  write_meta("gen", config, out);
  std::cout << "wrote " << toy.data.n_total() << " points (" << toy.data.n_labeled()
            << " labeled) to " << out << "\n";
  return 0;
}

int run_train(const std::string& algo, const std::string& kernel_name, double sigma2, double c,
              int p, double kgamma, double lambda, double gamma_k, double gamma_i,
              const std::string& graph_text, const std::string& data_path, int labels_cap,
              int max_iters, double grad_tol, double step_scale, std::uint64_t seed,
              const std::string& out) {
  const Kernel kernel = kernel_from_flags(kernel_name, sigma2, c, p, kgamma);
  SemiSupervisedDataset data = load_dataset(data_path);
  if (labels_cap >= 0) {
    if (labels_cap > data.n_labeled())
      throw std::runtime_error("--labels asks for " + std::to_string(labels_cap) +
                               " labeled rows but the file has " +
                               std::to_string(data.n_labeled()));
    data.labels = data.labels.head(labels_cap).eval();
  }
  if (data.n_labeled() < 1) throw std::runtime_error("training needs at least one labeled row");

  SolverConfig cfg;
  cfg.max_iters = max_iters;
  cfg.grad_tol = grad_tol;
  cfg.step_scale = step_scale;
  cfg.seed = seed;

  json config = {{"algo", algo},          {"kernel", kernel.spec()},
                 {"data", data_path},     {"n_total", data.n_total()},
                 {"n_labeled", data.n_labeled()}, {"seed", seed},
                 {"out", out}};

  FitDiagnostics diag;
  const Matrix labeled_points = data.points.topRows(data.n_labeled());
  KernelModel model{kernel, labeled_points, Vector()};
  if (algo == "rls") {
    config["lambda"] = lambda;
    model = fit_rls(kernel, labeled_points, data.labels, lambda, &diag);
  } else if (algo == "logistic") {
    config["lambda"] = lambda;
    config["max_iters"] = max_iters;
    config["grad_tol"] = grad_tol;
    config["step_scale"] = step_scale;
    model = fit_kernel_logistic(kernel, labeled_points, data.labels, lambda, cfg, &diag);
  } else if (algo == "svm") {
    config["lambda"] = lambda;
    config["max_iters"] = max_iters;
    config["grad_tol"] = grad_tol;
    config["step_scale"] = step_scale;
    model = fit_svm(kernel, labeled_points, data.labels, lambda, cfg, &diag);
  } else if (algo == "lap-rls") {
    config["gamma_k"] = gamma_k;
    config["gamma_i"] = gamma_i;
    config["graph"] = graph_text;
    model = fit_lap_rls(kernel, data, gamma_k, gamma_i, GraphSpec::parse(graph_text), &diag);
  } else if (algo == "lap-svm") {
    config["gamma_k"] = gamma_k;
    config["gamma_i"] = gamma_i;
    config["graph"] = graph_text;
    config["max_iters"] = max_iters;
    config["grad_tol"] = grad_tol;
    config["step_scale"] = step_scale;
    model = fit_lap_svm(kernel, data, gamma_k, gamma_i, GraphSpec::parse(graph_text), cfg, &diag);
  } else {
    throw std::invalid_argument("unknown algorithm \"" + algo + "\"");
  }

  save_model(model, algo, config, out);
  std::cout << "trained " << algo << " on " << data.n_total() << " points ("
            << data.n_labeled() << " labeled); objective " << diag.objective
            << ", gradient norm " << diag.grad_norm << "; model written to " << out << "\n";
  return 0;
}

int run_predict(const std::string& model_path, const std::string& data_path,
                const std::string& out) {
  const LoadedModel loaded = load_model(model_path);
  const SemiSupervisedDataset data = load_dataset(data_path);
  const Vector scores = predict_batch(loaded.model, data.points);

  std::string csv = "score,sign\n";
  for (int i = 0; i < scores.size(); ++i) {
    csv += format_double(scores[i]);
    csv += scores[i] >= 0 ? ",1\n" : ",-1\n";
  }
  write_text_file(out, csv);
  write_meta("predict", {{"model", model_path}, {"data", data_path}, {"out", out}}, out);

  int positive = 0;
  for (int i = 0; i < scores.size(); ++i)
    if (scores[i] >= 0) ++positive;
  std::cout << "scored " << scores.size() << " points (" << positive << " positive) to " << out
            << "\n";
  return 0;
}

int run_graph(const std::string& points_path, const std::string& graph_text,
              const std::string& out) {
  const SemiSupervisedDataset data = load_dataset(points_path);
  const GraphSpec spec = GraphSpec::parse(graph_text);
  const DataGraph g = spec.build(data.points);
  save_edge_list(g, out);
  write_meta("graph", {{"points", points_path}, {"graph", graph_text}, {"out", out}}, out);

  int edges = 0;
  for (int i = 0; i < g.size(); ++i)
    for (int j = i + 1; j < g.size(); ++j)
      if (g.weights(i, j) > 0) ++edges;
  std::cout << "built " << graph_text << " graph: " << g.size() << " vertices, " << edges
            << " edges, " << connected_components(g) << " component(s); edge list in " << out
            << "\n";
  return 0;
}

int run_spectrum(const std::string& edges_path, bool normalized, const std::string& out) {
  const DataGraph g = load_edge_list(edges_path);
  const SpectralDecomposition spec = spectrum(laplacian(g, normalized));
  json report =
      report_shell("spectrum", {{"edges", edges_path}, {"normalized", normalized}, {"out", out}});
  report["n"] = g.size();
  report["eigenvalues"] = vector_to_json(spec.eigenvalues);
  report["zero_multiplicity"] = spec.zero_count();
  report["connected_components"] = connected_components(g);
  write_report(report, out);
  std::cout << "spectrum of " << edges_path << ": n = " << g.size() << ", lambda_2 = "
            << (g.size() > 1 ? spec.eigenvalues[1] : 0.0) << ", lambda_n = " << spec.lambda_max()
            << "; report in " << out << "\n";
  return 0;
}

int run_bounds(const std::string& edges_path, const std::string& out) {
  const DataGraph g = load_edge_list(edges_path);
  const BoundsReport r = eigenvalue_bounds(g);
  json report = report_shell("bounds", {{"edges", edges_path}, {"out", out}});
  report["n"] = r.n;
  report["lambda2"] = r.lambda2;
  report["lambda_n"] = r.lambda_n;
  report["fiedler_upper"] = r.fiedler_upper;
  report["merris_upper"] = r.merris_upper;
  report["anderson_morley_upper"] = r.anderson_morley_upper;
  report["trace_sum"] = r.trace_sum;
  report["twice_edges"] = r.twice_edges;
  report["checks"] = {{"fiedler_checked", r.fiedler_checked},
                      {"fiedler_holds", r.fiedler_holds},
                      {"merris_holds", r.merris_holds},
                      {"anderson_morley_holds", r.anderson_morley_holds},
                      {"trace_holds", r.trace_holds},
                      {"lambda_n_le_n", r.lambda_n_le_n}};
  write_report(report, out);
  std::cout << "bounds for " << edges_path << ": lambda_2 = " << r.lambda2 << " <= "
            << r.fiedler_upper << " (Fiedler), lambda_n = " << r.lambda_n << " <= "
            << r.merris_upper << " (Merris); report in " << out << "\n";
  return 0;
}

int run_cheeger(const std::string& edges_path, const std::string& out) {
  const DataGraph g = load_edge_list(edges_path);
  const auto [h, subset] = cheeger_constant_bruteforce(g);
  json report = report_shell("cheeger", {{"edges", edges_path}, {"out", out}});
  report["n"] = g.size();
  report["h"] = h;
  report["subset"] = subset;
  write_report(report, out);
  std::cout << "cheeger constant of " << edges_path << ": h = " << h << " with |S| = "
            << subset.size() << "; report in " << out << "\n";
  return 0;
}

int run_sweep(const std::string& edges_path, const std::string& out) {
  const DataGraph g = load_edge_list(edges_path);
  const CutResult cut = sweep_cut(g);
  json report = report_shell("sweep", {{"edges", edges_path}, {"out", out}});
  report["n"] = g.size();
  report["subset"] = cut.subset;
  report["conductance"] = cut.conductance;
  report["sweep_threshold"] = cut.sweep_threshold;

  const SpectralDecomposition spec = spectrum(laplacian(g));
  report["lambda2"] = spec.eigenvalues[1];
  if (g.size() <= 22) {
    const auto [h_exact, subset_exact] = cheeger_constant_bruteforce(g);
    report["h_exact"] = h_exact;
    report["sweep_at_least_exact"] = cut.conductance >= h_exact - 1e-12;
  }
  const Vector deg = g.degrees();
  const bool regular = g.is_unweighted() && deg.minCoeff() == deg.maxCoeff();
  report["regular"] = regular;
  if (regular) {
    const double bound = std::sqrt(2.0 * deg[0] * spec.eigenvalues[1]);
    report["cheeger_upper_bound"] = bound;
    report["within_cheeger_bound"] = cut.conductance <= bound + 1e-12;
  }
  write_report(report, out);
  std::cout << "sweep cut of " << edges_path << ": conductance " << cut.conductance
            << " with |S| = " << cut.subset.size() << "; report in " << out << "\n";
  return 0;
}

int run_interlace(const std::string& edges_path, const std::string& edge_text,
                  const std::string& out) {
  const DataGraph g = load_edge_list(edges_path);
  const std::size_t comma = edge_text.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("--edge must be i,j");
  const int i = std::stoi(edge_text.substr(0, comma));
  const int j = std::stoi(edge_text.substr(comma + 1));
  const InterlacingReport r = check_interlacing(g, i, j);
  json report =
      report_shell("interlace", {{"edges", edges_path}, {"edge", edge_text}, {"out", out}});
  report["before"] = vector_to_json(r.before);
  report["after"] = vector_to_json(r.after);
  report["chain_holds"] = r.chain_holds;
  report["max_violation"] = r.max_violation;
  report["trace_before"] = r.trace_before;
  report["trace_after"] = r.trace_after;
  report["trace_diff_two"] = r.trace_diff_two;
  write_report(report, out);
  std::cout << "interlacing after adding (" << i << "," << j << "): chain "
            << (r.chain_holds ? "holds" : "FAILS") << ", trace difference "
            << (r.trace_after - r.trace_before) << "; report in " << out << "\n";
  return 0;
}

int run_heat(const std::string& edges_path, double t, bool normalized, const std::string& out) {
  const DataGraph g = load_edge_list(edges_path);
  const HeatKernel h = heat_kernel(laplacian(g, normalized), t);
  json report = report_shell(
      "heat", {{"edges", edges_path}, {"t", t}, {"normalized", normalized}, {"out", out}});
  report["n"] = g.size();
  report["matrix"] = matrix_to_json(h.matrix);
  write_report(report, out);
  std::cout << "heat kernel at t = " << t << " for " << edges_path << "; report in " << out
            << "\n";
  return 0;
}

int run_converge(const std::string& manifold_name, double radius, const std::string& f_text,
                 const std::string& z_text, const std::string& n_text, double a, int seed_count,
                 const std::string& out) {
  AnalyticManifold manifold = AnalyticManifold::circle(radius);
  if (manifold_name == "flat_torus")
    manifold = AnalyticManifold::flat_torus();
  else if (manifold_name != "circle")
    throw std::invalid_argument("unknown manifold \"" + manifold_name + "\"");

  const int f_index = parse_eigenfunction(manifold, f_text);
  const std::vector<double> z_values = parse_double_list(z_text);
  if (static_cast<int>(z_values.size()) != manifold.intrinsic_dim())
    throw std::invalid_argument("--z needs " + std::to_string(manifold.intrinsic_dim()) +
                                " angle(s)");
  Vector z_angles(manifold.intrinsic_dim());
  for (int i = 0; i < z_angles.size(); ++i) z_angles[i] = z_values[i];

  std::vector<int> schedule;
  for (double v : parse_double_list(n_text)) schedule.push_back(static_cast<int>(v));
  if (seed_count < 1) throw std::invalid_argument("--seeds must be >= 1");
  std::vector<std::uint64_t> seeds(seed_count);
  std::iota(seeds.begin(), seeds.end(), 1);

  const auto reports = convergence_experiment(manifold, f_index, z_angles, schedule, a, seeds);

  std::string csv = "n,t_n,seed,estimate,target,abs_error\n";
  for (const auto& r : reports) {
    csv += std::to_string(r.n) + ',' + format_double(r.t) + ',' + std::to_string(r.seed) + ',' +
           format_double(r.estimate) + ',' + format_double(r.analytic_target) + ',' +
           format_double(r.abs_error) + '\n';
  }
  write_text_file(out, csv);
  write_meta("converge",
             {{"manifold", manifold_name},
              {"radius", radius},
              {"f", f_text},
              {"z", z_text},
              {"n", n_text},
              {"a", a},
              {"seeds", seed_count},
              {"out", out}},
             out);

  const auto medians = median_abs_error_by_n(reports);
  std::cout << "convergence of the pointwise laplacian estimate (target "
            << reports.front().analytic_target << "):\n";
  for (const auto& [n, med] : medians)
    std::cout << "  n = " << n << ": median |error| = " << med << "\n";
  const double first = medians.begin()->second;
  const double last = medians.rbegin()->second;
  std::cout << "total error reduction: " << (last > 0 ? first / last : 0.0) << "x; report in "
            << out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kernel and graph-laplacian learning toolkit"};
  app.require_subcommand(1);

  // gen
  std::string gen_kind = "two_moons", gen_out = "data.csv";
  int gen_n = 100, gen_labeled = 1, gen_blobs = 4;
  double gen_noise = 0.1, gen_gap = 0.5, gen_spread = 0.3;
  std::uint64_t gen_seed = 0;
  auto* gen = app.add_subcommand("gen", "generate a toy dataset");
  gen->add_option("--kind", gen_kind, "two_moons, concentric_circles or gaussian_blobs");
  gen->add_option("--n-per-class", gen_n);
  gen->add_option("--labeled-per-class", gen_labeled);
  gen->add_option("--noise", gen_noise);
  gen->add_option("--gap", gen_gap);
  gen->add_option("--blobs", gen_blobs);
  gen->add_option("--spread", gen_spread);
  gen->add_option("--seed", gen_seed);
  gen->add_option("--out", gen_out)->required();

  // train
  std::string tr_algo = "rls", tr_kernel = "gaussian", tr_graph = "knn:8", tr_data, tr_out;
  double tr_sigma2 = 1.0, tr_c = 1.0, tr_kgamma = 1.0, tr_lambda = 0.1, tr_gk = 0.1, tr_gi = 1.0;
  double tr_grad_tol = 1e-6, tr_step = 0.1;
  int tr_p = 2, tr_labels = -1, tr_iters = 5000;
  std::uint64_t tr_seed = 0;
  auto* train = app.add_subcommand("train", "fit a kernel model");
  train->add_option("--algo", tr_algo, "rls, logistic, svm, lap-rls or lap-svm");
  train->add_option("--kernel", tr_kernel, "gaussian, linear, polynomial, exponential or min");
  train->add_option("--sigma2", tr_sigma2, "gaussian kernel bandwidth");
  train->add_option("--c", tr_c, "polynomial kernel offset");
  train->add_option("--p", tr_p, "polynomial kernel degree");
  train->add_option("--kernel-gamma", tr_kgamma, "exponential kernel rate");
  train->add_option("--lambda", tr_lambda, "regularization for rls/logistic/svm");
  train->add_option("--gamma-k", tr_gk, "ambient regularization for lap-rls/lap-svm");
  train->add_option("--gamma-i", tr_gi, "intrinsic regularization for lap-rls/lap-svm");
  train->add_option("--graph", tr_graph, "knn:K[:gaussian:T], eps:E or gaussian:T");
  train->add_option("--data", tr_data)->required();
  train->add_option("--labels", tr_labels, "use only the first N labeled rows");
  train->add_option("--max-iters", tr_iters);
  train->add_option("--grad-tol", tr_grad_tol);
  train->add_option("--step-scale", tr_step);
  train->add_option("--seed", tr_seed);
  train->add_option("--out", tr_out)->required();

  // predict
  std::string pr_model, pr_data, pr_out;
  auto* predict_cmd = app.add_subcommand("predict", "score points with a saved model");
  predict_cmd->add_option("--model", pr_model)->required();
  predict_cmd->add_option("--data", pr_data)->required();
  predict_cmd->add_option("--out", pr_out)->required();

  // graph
  std::string gr_points, gr_graph = "knn:8", gr_out;
  auto* graph_cmd = app.add_subcommand("graph", "build a data graph from a point cloud");
  graph_cmd->add_option("--points", gr_points)->required();
  graph_cmd->add_option("--graph", gr_graph);
  graph_cmd->add_option("--out", gr_out)->required();

  // spectrum
  std::string sp_edges, sp_out;
  bool sp_normalized = false;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "laplacian eigenvalues of a graph");
  spectrum_cmd->add_option("--edges", sp_edges)->required();
  spectrum_cmd->add_flag("--normalized", sp_normalized);
  spectrum_cmd->add_option("--out", sp_out)->required();

  // bounds
  std::string bo_edges, bo_out;
  auto* bounds_cmd = app.add_subcommand("bounds", "degree-based eigenvalue bounds");
  bounds_cmd->add_option("--edges", bo_edges)->required();
  bounds_cmd->add_option("--out", bo_out)->required();

  // cheeger
  std::string ch_edges, ch_out;
  auto* cheeger_cmd = app.add_subcommand("cheeger", "exact Cheeger constant (n <= 22)");
  cheeger_cmd->add_option("--edges", ch_edges)->required();
  cheeger_cmd->add_option("--out", ch_out)->required();

  // sweep
  std::string sw_edges, sw_out;
  auto* sweep_cmd = app.add_subcommand("sweep", "sparse cut from the second eigenvector");
  sweep_cmd->add_option("--edges", sw_edges)->required();
  sweep_cmd->add_option("--out", sw_out)->required();

  // interlace
  std::string in_edges, in_edge, in_out;
  auto* interlace_cmd = app.add_subcommand("interlace", "edge-addition interlacing check");
  interlace_cmd->add_option("--edges", in_edges)->required();
  interlace_cmd->add_option("--edge", in_edge, "absent edge i,j")->required();
  interlace_cmd->add_option("--out", in_out)->required();

  // heat
  std::string he_edges, he_out;
  double he_t = 1.0;
  bool he_normalized = false;
  auto* heat_cmd = app.add_subcommand("heat", "graph heat kernel at time t");
  heat_cmd->add_option("--edges", he_edges)->required();
  heat_cmd->add_option("--t", he_t)->required();
  heat_cmd->add_flag("--normalized", he_normalized);
  heat_cmd->add_option("--out", he_out)->required();

  // converge
  std::string co_manifold = "circle", co_f = "sin:1", co_z = "1.5707963267948966";
  std::string co_n = "500,1000,2000,4000,8000", co_out;
  double co_radius = 1.0, co_a = 1.0;
  int co_seeds = 10;
  auto* converge_cmd =
      app.add_subcommand("converge", "graph-laplacian to manifold-laplacian convergence");
  converge_cmd->add_option("--manifold", co_manifold, "circle or flat_torus");
  converge_cmd->add_option("--radius", co_radius, "circle radius");
  converge_cmd->add_option("--f", co_f, "const, sin:k, cos:k (torus: sin:m1,m2)");
  converge_cmd->add_option("--z", co_z, "evaluation angle(s)");
  converge_cmd->add_option("--n", co_n, "ascending sample sizes");
  converge_cmd->add_option("--a", co_a, "bandwidth schedule constant");
  converge_cmd->add_option("--seeds", co_seeds, "number of seeds (1..S)");
  converge_cmd->add_option("--out", co_out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gen->parsed())
      return run_gen(gen_kind, gen_n, gen_labeled, gen_noise, gen_gap, gen_blobs, gen_spread,
                     gen_seed, gen_out);
    if (train->parsed())
      return run_train(tr_algo, tr_kernel, tr_sigma2, tr_c, tr_p, tr_kgamma, tr_lambda, tr_gk,
                       tr_gi, tr_graph, tr_data, tr_labels, tr_iters, tr_grad_tol, tr_step,
                       tr_seed, tr_out);
    if (predict_cmd->parsed()) return run_predict(pr_model, pr_data, pr_out);
    if (graph_cmd->parsed()) return run_graph(gr_points, gr_graph, gr_out);
    if (spectrum_cmd->parsed()) return run_spectrum(sp_edges, sp_normalized, sp_out);
    if (bounds_cmd->parsed()) return run_bounds(bo_edges, bo_out);
    if (cheeger_cmd->parsed()) return run_cheeger(ch_edges, ch_out);
    if (sweep_cmd->parsed()) return run_sweep(sw_edges, sw_out);
    if (interlace_cmd->parsed()) return run_interlace(in_edges, in_edge, in_out);
    if (heat_cmd->parsed()) return run_heat(he_edges, he_t, he_normalized, he_out);
    if (converge_cmd->parsed())
      return run_converge(co_manifold, co_radius, co_f, co_z, co_n, co_a, co_seeds, co_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
