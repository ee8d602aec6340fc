#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <variant>

#include "ssrsc/core.hpp"
#include "ssrsc/dataio.hpp"
#include "ssrsc/spectral.hpp"

namespace ssrsc {

struct CsvSource {
  std::filesystem::path path;
  bool has_header = true;
};

using InputSource = std::variant<CsvSource, SyntheticSpec>;

// One end-to-end clustering run: load or generate, optional PCA, solve,
// build the affinity, spectral clustering, and scoring when labels exist.
struct RunManifest {
  SolverConfig config;
  SpectralConfig spectral;
  // When false the affinity mode is chosen per model (see affinity_mode_for).
  bool affinity_explicit = false;
  InputSource source = SyntheticSpec{};
  std::optional<int> pca_dim;
  std::optional<std::filesystem::path> output;
  std::optional<std::filesystem::path> labels_csv;
  int threads = 1;
};

LabeledDataset load_input(const InputSource& source);

/// Runs the manifest. Writes the result document to manifest.output and the
/// label CSV to manifest.labels_csv when set, and prints one summary line to
/// `summary` when non-null.
ClusteringResult run_pipeline(const RunManifest& manifest, std::ostream* summary = nullptr);

/// The versioned result document. Contains no timing so that repeated runs of
/// one manifest are byte-identical.
std::string format_result_document(const RunManifest& manifest,
                                   const ClusteringResult& result, Index n_points,
                                   Index dim);

}  // namespace ssrsc
