#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "manireg/graph.hpp"
#include "manireg/learn.hpp"
#include "manireg/version.hpp"

namespace manireg {

/// Canonical float formatting for CSV output: 17 significant digits, enough
/// to reproduce any double exactly on reload.
inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

// ---------------------------------------------------------------------------
// Dataset CSV: header "x1,...,xd,label"; the label field is empty on
// unlabeled rows. Labeled rows must form a contiguous block at the top.
// ---------------------------------------------------------------------------

inline std::string dataset_to_csv(const SemiSupervisedDataset& data) {
  std::ostringstream out;
  for (int d = 0; d < data.dim(); ++d) out << 'x' << d + 1 << ',';
  out << "label\n";
  for (int i = 0; i < data.n_total(); ++i) {
    for (int d = 0; d < data.dim(); ++d) out << format_double(data.points(i, d)) << ',';
    if (i < data.n_labeled()) out << format_double(data.labels[i]);
    out << '\n';
  }
  return out.str();
}

inline void save_dataset(const SemiSupervisedDataset& data, const std::string& path) {
  write_text_file(path, dataset_to_csv(data));
}

namespace detail {
inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

inline double parse_double_field(const std::string& field, int lineno) {
  try {
    std::size_t used = 0;
    const double v = std::stod(field, &used);
    if (used != field.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("csv line " + std::to_string(lineno) + ": bad number \"" + field +
                             "\"");
  }
}
}  // namespace detail

/// Loads a dataset CSV. A file with no labeled rows loads with N_L = 0, which
/// is valid as prediction input; the solvers reject it for training.
inline SemiSupervisedDataset load_dataset(const std::string& path) {
  std::istringstream in(read_text_file(path));
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = detail::split_csv_line(line);
  const int d = static_cast<int>(header.size()) - 1;
  if (d < 1 || header.back() != "label")
    throw std::runtime_error(path + ": header must be x1,...,xd,label");

  std::vector<std::vector<double>> rows;
  std::vector<double> labels;
  bool seen_unlabeled = false;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = detail::split_csv_line(line);
    if (static_cast<int>(fields.size()) != d + 1)
      throw std::runtime_error(path + ": line " + std::to_string(lineno) + ": expected " +
                               std::to_string(d + 1) + " columns, got " +
                               std::to_string(fields.size()));
    std::vector<double> row(d);
    for (int c = 0; c < d; ++c) row[c] = detail::parse_double_field(fields[c], lineno);
    if (fields.back().empty()) {
      seen_unlabeled = true;
    } else {
      if (seen_unlabeled)
        throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                                 ": labeled row after unlabeled rows; the labeled block must come first");
      labels.push_back(detail::parse_double_field(fields.back(), lineno));
    }
    rows.push_back(std::move(row));
  }

  SemiSupervisedDataset data;
  data.points = Matrix(static_cast<int>(rows.size()), d);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int c = 0; c < d; ++c) data.points(static_cast<int>(i), c) = rows[i][c];
  data.labels = Vector::Map(labels.data(), static_cast<int>(labels.size()));
  return data;
}

// ---------------------------------------------------------------------------
// Model JSON
// ---------------------------------------------------------------------------

struct LoadedModel {
  KernelModel model;
  std::string algo;
  nlohmann::json config;
};

inline nlohmann::json model_to_json(const KernelModel& model, const std::string& algo,
                                    const nlohmann::json& config) {
  nlohmann::json j;
  j["format"] = "manireg-model";
  j["version"] = kVersion;
  j["algo"] = algo;
  j["kernel"] = model.kernel.spec();
  auto& pts = j["support_points"] = nlohmann::json::array();
  for (int i = 0; i < model.support_points.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < model.support_points.cols(); ++c) row.push_back(model.support_points(i, c));
    pts.push_back(std::move(row));
  }
  auto& coeffs = j["coefficients"] = nlohmann::json::array();
  for (int i = 0; i < model.coefficients.size(); ++i) coeffs.push_back(model.coefficients[i]);
  j["config"] = config;
  return j;
}

inline void save_model(const KernelModel& model, const std::string& algo,
                       const nlohmann::json& config, const std::string& path) {
  write_text_file(path, model_to_json(model, algo, config).dump(2) + "\n");
}

inline LoadedModel load_model(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(path + ": not valid JSON: " + e.what());
  }
  for (const char* field : {"kernel", "support_points", "coefficients"})
    if (!j.contains(field))
      throw std::runtime_error(path + ": model is missing the \"" + std::string(field) +
                               "\" field");

  const auto& pts = j.at("support_points");
  const int n = static_cast<int>(pts.size());
  if (n == 0) throw std::runtime_error(path + ": model has no support points");
  const int d = static_cast<int>(pts.at(0).size());
  Matrix support(n, d);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(pts.at(i).size()) != d)
      throw std::runtime_error(path + ": support point " + std::to_string(i) +
                               " has inconsistent dimension");
    for (int c = 0; c < d; ++c) support(i, c) = pts.at(i).at(c).get<double>();
  }
  const auto& cj = j.at("coefficients");
  if (static_cast<int>(cj.size()) != n)
    throw std::runtime_error(path + ": coefficient count does not match support points");
  Vector coeffs(n);
  for (int i = 0; i < n; ++i) coeffs[i] = cj.at(i).get<double>();

  LoadedModel out{KernelModel{Kernel::from_spec(j.at("kernel")), std::move(support),
                              std::move(coeffs)},
                  j.value("algo", ""), j.value("config", nlohmann::json::object())};
  return out;
}

// ---------------------------------------------------------------------------
// Edge-list files
// ---------------------------------------------------------------------------

inline DataGraph load_edge_list(const std::string& path, int n_hint = 0) {
  std::istringstream in(read_text_file(path));
  try {
    return read_edge_list(in, n_hint);
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

inline void save_edge_list(const DataGraph& g, const std::string& path) {
  std::ostringstream out;
  write_edge_list(g, out);
  write_text_file(path, out.str());
}

}  // namespace manireg
