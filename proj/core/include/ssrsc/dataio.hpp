#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "ssrsc/core.hpp"

namespace ssrsc {

struct SyntheticSpec {
  int ambient_dim = 30;         // D
  int subspace_dim = 4;         // d
  int n_subspaces = 3;          // n
  int points_per_subspace = 50;
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;
  // Draw all bases from one orthonormal frame so distinct subspaces are
  // mutually orthogonal. Needs n * d <= D.
  bool orthogonal_subspaces = false;

  void validate() const;
};

struct LabeledDataset {
  DataMatrix data;
  std::optional<std::vector<int>> labels;
};

/// Points grouped by subspace, subspace j occupying columns
/// [j * points_per_subspace, (j + 1) * points_per_subspace). Each clean point
/// is basis * g / ||g|| for Gaussian g, then isotropic Gaussian noise is added.
LabeledDataset generate_synthetic(const SyntheticSpec& spec);

/// Orthonormal bases used by generate_synthetic for `spec`, one D x d block per
/// subspace, in the same order.
std::vector<Matrix> synthetic_bases(const SyntheticSpec& spec);

// One point per CSV row. With a header whose last field is "label", that
// column becomes the ground-truth labels. Throws ParseError with a 1-based
// row and column on malformed input.
LabeledDataset load_csv(const std::filesystem::path& path, bool has_header);

// Writes a header row (x0,...,x{D-1}[,label]) followed by one row per point,
// values printed with 17 significant digits.
void save_csv(const LabeledDataset& dataset, const std::filesystem::path& path);

struct PcaModel {
  Vector mean;         // D
  Matrix components;   // D x d, orthonormal columns, descending variance
  Vector singular_values;  // d leading singular values of the centered data
  Matrix coordinates;  // d x N
};

/// PCA by SVD of the mean-centered data. Each component is signed so its
/// largest-magnitude entry is positive.
PcaModel pca_fit(const DataMatrix& data, int target_dim);

/// The d x N coordinates from pca_fit.
DataMatrix pca_project(const DataMatrix& data, int target_dim);

}  // namespace ssrsc
