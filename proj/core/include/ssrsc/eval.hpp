#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "ssrsc/core.hpp"
#include "ssrsc/dataio.hpp"
#include "ssrsc/spectral.hpp"

namespace ssrsc {

/// Minimum-cost perfect assignment on a square integer cost matrix
/// (Hungarian method, O(n^3)). Returns column index assigned to each row.
std::vector<int> optimal_assignment(const std::vector<std::vector<long long>>& cost);

/// Fraction of points misassigned under the best one-to-one matching between
/// predicted and true label names. Labels are arbitrary non-negative ints.
double clustering_error(std::span<const int> pred, std::span<const int> truth);

struct AffinityMass {
  double within = 0.0;   // off-diagonal, same true cluster
  double between = 0.0;  // different true clusters
  double diag = 0.0;
};

/// Shares of total affinity mass; they sum to 1. A zero matrix reports all 0.
AffinityMass affinity_diagnostics(const AffinityMatrix& a, std::span<const int> truth);

struct AblationRow {
  std::string model;
  double lambda = 0.0;
  double s = 0.0;
  std::optional<double> error_rate;  // empty when the row failed
  double wall_time_seconds = 0.0;
  int iterations_used = 0;
  std::string failure;  // "<kind>: <message>" for failed rows

  bool ok() const noexcept { return error_rate.has_value(); }
};

struct AblationReport {
  std::vector<AblationRow> rows;

  void write_csv(std::ostream& out) const;
  void write_table(std::ostream& out) const;
};

// Affinity used for a model's coefficients: the requested mode for models
// whose output is non-negative, absolute symmetrization otherwise.
AffinityMode affinity_mode_for(Model model, AffinityMode requested);

/// Every model in {SSRSC, NLSR, SLSR, LSR} crossed with `lambdas`, other
/// fields copied from `base`.
std::vector<SolverConfig> ablation_grid(const SolverConfig& base,
                                        std::span<const double> lambdas);

/// solve -> affinity -> spectral_cluster -> clustering_error per grid row.
/// Rows may run on `threads` workers; row order follows grid order.
AblationReport run_ablation(const LabeledDataset& dataset, std::span<const SolverConfig> grid,
                            const SpectralConfig& spectral, int threads = 1);

}  // namespace ssrsc
