#include "ssrsc/dataio.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>

namespace ssrsc {

void SyntheticSpec::validate() const {
  if (ambient_dim < 1) throw ConfigError("synthetic: ambient dimension must be >= 1");
  if (subspace_dim < 1 || subspace_dim >= ambient_dim) {
    throw ConfigError("synthetic: subspace dimension must satisfy 1 <= d < D");
  }
  if (n_subspaces < 1) throw ConfigError("synthetic: need at least one subspace");
  if (points_per_subspace < subspace_dim) {
    throw ConfigError("synthetic: points per subspace must be >= subspace dimension");
  }
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
    throw ConfigError("synthetic: noise sigma must be finite and non-negative");
  }
  if (orthogonal_subspaces &&
      static_cast<long>(n_subspaces) * subspace_dim > ambient_dim) {
    throw ConfigError("synthetic: orthogonal subspaces need n * d <= D");
  }
}

namespace {

Matrix gaussian(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
  }
  return m;
}

Matrix orthonormal_columns(Index rows, Index cols, std::mt19937_64& rng) {
  const Matrix g = gaussian(rows, cols, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  return qr.householderQ() * Matrix::Identity(rows, cols);
}

std::vector<Matrix> draw_bases(const SyntheticSpec& spec, std::mt19937_64& rng) {
  const Index D = spec.ambient_dim;
  const Index d = spec.subspace_dim;
  std::vector<Matrix> bases;
  bases.reserve(static_cast<std::size_t>(spec.n_subspaces));
  if (spec.orthogonal_subspaces) {
    const Matrix frame = orthonormal_columns(D, d * spec.n_subspaces, rng);
    for (int j = 0; j < spec.n_subspaces; ++j) bases.push_back(frame.middleCols(j * d, d));
  } else {
    for (int j = 0; j < spec.n_subspaces; ++j) bases.push_back(orthonormal_columns(D, d, rng));
  }
  return bases;
}

}  // namespace

std::vector<Matrix> synthetic_bases(const SyntheticSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  return draw_bases(spec, rng);
}

LabeledDataset generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  const std::vector<Matrix> bases = draw_bases(spec, rng);

  const Index ppc = spec.points_per_subspace;
  const Index n_points = ppc * spec.n_subspaces;
  Matrix x(spec.ambient_dim, n_points);
  std::vector<int> labels(static_cast<std::size_t>(n_points));
  for (int j = 0; j < spec.n_subspaces; ++j) {
    Matrix coeffs = gaussian(spec.subspace_dim, ppc, rng);
    coeffs.colwise().normalize();
    x.middleCols(j * ppc, ppc) = bases[static_cast<std::size_t>(j)] * coeffs;
    std::fill_n(labels.begin() + j * ppc, ppc, j);
  }
  if (spec.noise_sigma > 0.0) {
    x += spec.noise_sigma * gaussian(x.rows(), x.cols(), rng);
  }
  return LabeledDataset{DataMatrix(std::move(x)), std::move(labels)};
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(line.substr(start, comma == std::string_view::npos
                                            ? std::string_view::npos
                                            : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::string_view trim(std::string_view v) {
  while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
  while (!v.empty() && (v.back() == ' ' || v.back() == '\t' || v.back() == '\r')) {
    v.remove_suffix(1);
  }
  return v;
}

double parse_number(std::string_view cell, std::size_t row, std::size_t col) {
  cell = trim(cell);
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw ParseError("non-numeric cell '" + std::string(cell) + "'", row, col);
  }
  if (!std::isfinite(value)) throw ParseError("non-finite cell", row, col);
  return value;
}

int parse_label(std::string_view cell, std::size_t row, std::size_t col) {
  cell = trim(cell);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size() || value < 0) {
    throw ParseError("label must be a non-negative integer, got '" + std::string(cell) + "'",
                     row, col);
  }
  return value;
}

}  // namespace

LabeledDataset load_csv(const std::filesystem::path& path, bool has_header) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'", 0, 0);

  std::string line;
  std::size_t row = 0;
  bool label_column = false;
  std::size_t width = 0;

  if (has_header) {
    while (std::getline(in, line)) {
      ++row;
      if (!trim(line).empty()) break;
    }
    if (trim(line).empty()) throw ParseError("empty file", row, 0);
    const auto header = split_fields(line);
    width = header.size();
    label_column = trim(header.back()) == "label";
  }

  std::vector<std::vector<double>> points;
  std::vector<int> labels;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (width == 0) width = fields.size();
    if (fields.size() != width) {
      throw ParseError("expected " + std::to_string(width) + " fields, got " +
                       std::to_string(fields.size()),
                       row, std::min(fields.size(), width) + 1);
    }
    const std::size_t features = label_column ? width - 1 : width;
    std::vector<double> point(features);
    for (std::size_t c = 0; c < features; ++c) point[c] = parse_number(fields[c], row, c + 1);
    if (label_column) labels.push_back(parse_label(fields.back(), row, width));
    points.push_back(std::move(point));
  }

  if (points.empty()) throw ParseError("no data rows", row, 0);
  const std::size_t features = points.front().size();
  if (features == 0) throw ParseError("no feature columns", row, 0);

  Matrix x(static_cast<Index>(features), static_cast<Index>(points.size()));
  for (std::size_t j = 0; j < points.size(); ++j) {
    for (std::size_t i = 0; i < features; ++i) {
      x(static_cast<Index>(i), static_cast<Index>(j)) = points[j][i];
    }
  }
  LabeledDataset out{DataMatrix(std::move(x)), std::nullopt};
  if (label_column) out.labels = std::move(labels);
  return out;
}

void save_csv(const LabeledDataset& dataset, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path.string() + "'", 0, 0);
  const Matrix& x = dataset.data.values();
  if (dataset.labels && dataset.labels->size() != static_cast<std::size_t>(x.cols())) {
    throw ShapeError("save_csv: label count does not match point count");
  }

  for (Index i = 0; i < x.rows(); ++i) out << (i ? "," : "") << 'x' << i;
  if (dataset.labels) out << ",label";
  out << '\n';

  char buf[32];
  for (Index j = 0; j < x.cols(); ++j) {
    for (Index i = 0; i < x.rows(); ++i) {
      const auto res = std::to_chars(buf, buf + sizeof buf, x(i, j),
                                     std::chars_format::general, 17);
      if (i) out << ',';
      out.write(buf, res.ptr - buf);
    }
    if (dataset.labels) out << ',' << (*dataset.labels)[static_cast<std::size_t>(j)];
    out << '\n';
  }
  if (!out) throw ParseError("write to '" + path.string() + "' failed", 0, 0);
}

PcaModel pca_fit(const DataMatrix& data, int target_dim) {
  const Index limit = std::min(data.dim(), data.size());
  if (target_dim < 1 || target_dim > limit) {
    throw ConfigError("pca: target dimension must be in [1, " + std::to_string(limit) +
                      "], got " + std::to_string(target_dim));
  }
  PcaModel model;
  model.mean = data.values().rowwise().mean();
  const Matrix centered = data.values().colwise() - model.mean;

  Eigen::BDCSVD<Matrix> svd(centered, Eigen::ComputeThinU);
  model.components = svd.matrixU().leftCols(target_dim);
  model.singular_values = svd.singularValues().head(target_dim);
  for (Index c = 0; c < model.components.cols(); ++c) {
    Index arg = 0;
    model.components.col(c).cwiseAbs().maxCoeff(&arg);
    if (model.components(arg, c) < 0.0) model.components.col(c) *= -1.0;
  }
  model.coordinates = model.components.transpose() * centered;
  return model;
}

DataMatrix pca_project(const DataMatrix& data, int target_dim) {
  return DataMatrix(pca_fit(data, target_dim).coordinates);
}

}  // namespace ssrsc
