#pragma once

#include <cstdint>
#include <vector>

#include "ssrsc/core.hpp"

namespace ssrsc {

enum class AffinityMode {
  Symmetric,          // (C + C^T) / 2
  AbsoluteSymmetric,  // (|C| + |C^T|) / 2
};

struct SpectralConfig {
  int n_clusters = 1;
  AffinityMode affinity_mode = AffinityMode::Symmetric;
  int kmeans_restarts = 20;
  int kmeans_max_iters = 300;
  std::uint64_t seed = 0;
};

AffinityMatrix build_affinity(const CoefficientMatrix& c, AffinityMode mode);

struct EigenDecomposition {
  Vector values;   // ascending
  Matrix vectors;  // column i pairs with values[i]
};

// Throws ShapeError if m is not square or not symmetric within 1e-10.
EigenDecomposition symmetric_eigendecomposition(const Matrix& m);

/// I - D^{-1/2} A D^{-1/2}, with D^{-1/2} taken as 0 on zero-degree nodes.
Matrix normalized_laplacian(const AffinityMatrix& a);

struct KMeansOptions {
  int k = 1;
  int restarts = 20;
  int max_iters = 300;
  std::uint64_t seed = 0;
};

struct KMeansResult {
  std::vector<int> labels;
  Matrix centroids;                     // k x dim
  double objective = 0.0;               // within-cluster sum of squares
  std::vector<double> objective_trace;  // after each assignment step
  int restart = 0;                      // index of the winning restart
};

/// Lloyd's k-means over the rows of `points` with D^2-weighted seeding.
/// Restarts are independent and seeded from (seed, restart index); the
/// lowest-objective restart wins with ties going to the lower index, so the
/// result does not depend on `threads`.
KMeansResult kmeans(const Matrix& points, const KMeansOptions& options, int threads = 1);

/// Normalized spectral clustering: bottom n_clusters eigenvectors of the
/// normalized Laplacian, rows scaled to unit length, then k-means.
std::vector<int> spectral_cluster(const AffinityMatrix& a, const SpectralConfig& cfg,
                                  int threads = 1);

}  // namespace ssrsc
