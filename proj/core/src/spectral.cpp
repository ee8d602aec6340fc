#include "ssrsc/spectral.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "ssrsc/parallel.hpp"

namespace ssrsc {

AffinityMatrix build_affinity(const CoefficientMatrix& c, AffinityMode mode) {
  const Matrix& m = c.values();
  const Index n = m.rows();
  Matrix a(n, n);
  // Fill one triangle and mirror it so the result is bitwise symmetric.
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i <= j; ++i) {
      const double v = mode == AffinityMode::Symmetric
                           ? (m(i, j) + m(j, i)) / 2.0
                           : (std::abs(m(i, j)) + std::abs(m(j, i))) / 2.0;
      a(i, j) = v;
      a(j, i) = v;
    }
  }
  return detail::make_affinity_unchecked(std::move(a));
}

EigenDecomposition symmetric_eigendecomposition(const Matrix& m) {
  if (m.rows() != m.cols()) throw ShapeError("eigendecomposition needs a square matrix");
  require_finite(m, "eigendecomposition input");
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10) {
    throw ShapeError("eigendecomposition input is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw NumericError("symmetric eigensolver did not converge");
  }
  return EigenDecomposition{solver.eigenvalues(), solver.eigenvectors()};
}

Matrix normalized_laplacian(const AffinityMatrix& a) {
  const Matrix& w = a.values();
  if (w.minCoeff() < 0.0) {
    throw DomainError("spectral clustering needs a non-negative affinity matrix");
  }
  const Vector degree = w.rowwise().sum();
  const Vector inv_sqrt = degree.unaryExpr(
      [](double d) { return d > 0.0 ? 1.0 / std::sqrt(d) : 0.0; });
  Matrix lap = -(inv_sqrt.asDiagonal() * w * inv_sqrt.asDiagonal());
  lap.diagonal().array() += 1.0;
  // Round-off in the products above can leave lap slightly asymmetric.
  return (lap + lap.transpose()) / 2.0;
}

namespace {

struct Lloyd {
  const Matrix& points;
  int k;
  int max_iters;

  // Nearest centroid per row, ties to the lowest centroid index.
  double assign(const Matrix& centroids, std::vector<int>& labels) const {
    double total = 0.0;
    for (Index i = 0; i < points.rows(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      int arg = 0;
      for (int c = 0; c < k; ++c) {
        const double d = (points.row(i) - centroids.row(c)).squaredNorm();
        if (d < best) {
          best = d;
          arg = c;
        }
      }
      labels[static_cast<std::size_t>(i)] = arg;
      total += best;
    }
    return total;
  }

  Matrix seed(std::mt19937_64& rng) const {
    const Index n = points.rows();
    Matrix centroids(k, points.cols());
    std::uniform_int_distribution<Index> first(0, n - 1);
    centroids.row(0) = points.row(first(rng));
    Vector nearest = (points.rowwise() - centroids.row(0)).rowwise().squaredNorm();
    for (int c = 1; c < k; ++c) {
      const double mass = nearest.sum();
      Index pick = 0;
      if (mass > 0.0) {
        std::uniform_real_distribution<double> u(0.0, mass);
        const double r = u(rng);
        double acc = 0.0;
        pick = n - 1;
        for (Index i = 0; i < n; ++i) {
          acc += nearest[i];
          if (r < acc) {
            pick = i;
            break;
          }
        }
      } else {
        pick = first(rng);
      }
      centroids.row(c) = points.row(pick);
      nearest = nearest.cwiseMin(
          (points.rowwise() - centroids.row(c)).rowwise().squaredNorm());
    }
    return centroids;
  }

  KMeansResult run(std::mt19937_64& rng) const {
    KMeansResult out;
    out.centroids = seed(rng);
    out.labels.assign(static_cast<std::size_t>(points.rows()), 0);
    out.objective = assign(out.centroids, out.labels);
    out.objective_trace.push_back(out.objective);

    for (int it = 0; it < max_iters; ++it) {
      // Empty clusters keep their previous centroid.
      Matrix sums = Matrix::Zero(k, points.cols());
      std::vector<Index> counts(static_cast<std::size_t>(k), 0);
      for (Index i = 0; i < points.rows(); ++i) {
        const int c = out.labels[static_cast<std::size_t>(i)];
        sums.row(c) += points.row(i);
        ++counts[static_cast<std::size_t>(c)];
      }
      for (int c = 0; c < k; ++c) {
        if (counts[static_cast<std::size_t>(c)] > 0) {
          out.centroids.row(c) = sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
        }
      }

      std::vector<int> labels(out.labels.size());
      const double objective = assign(out.centroids, labels);
      if (objective > out.objective * (1.0 + 1e-12) + 1e-300) {
        throw NumericError("k-means objective increased from " +
                           std::to_string(out.objective) + " to " +
                           std::to_string(objective));
      }
      out.objective_trace.push_back(objective);
      const bool stable = labels == out.labels;
      out.labels = std::move(labels);
      out.objective = objective;
      if (stable) break;
    }
    return out;
  }
};

}  // namespace

KMeansResult kmeans(const Matrix& points, const KMeansOptions& options, int threads) {
  if (options.k < 1 || options.k > points.rows()) {
    throw ConfigError("k-means: k must be in [1, " + std::to_string(points.rows()) + "]");
  }
  if (options.restarts < 1) throw ConfigError("k-means: restarts must be at least 1");
  if (options.max_iters < 0) throw ConfigError("k-means: max_iters must be non-negative");
  require_finite(points, "k-means input");

  const Lloyd lloyd{points, options.k, options.max_iters};
  std::vector<KMeansResult> runs(static_cast<std::size_t>(options.restarts));
  parallel_for(runs.size(), threads, [&](std::size_t r) {
    std::seed_seq seq{static_cast<std::uint32_t>(options.seed),
                      static_cast<std::uint32_t>(options.seed >> 32),
                      static_cast<std::uint32_t>(r)};
    std::mt19937_64 rng(seq);
    runs[r] = lloyd.run(rng);
    runs[r].restart = static_cast<int>(r);
  });

  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r) {
    if (runs[r].objective < runs[best].objective) best = r;
  }
  return std::move(runs[best]);
}

std::vector<int> spectral_cluster(const AffinityMatrix& a, const SpectralConfig& cfg,
                                  int threads) {
  const Index n = a.size();
  if (cfg.n_clusters < 1 || cfg.n_clusters > n) {
    throw ConfigError("n_clusters must be in [1, " + std::to_string(n) + "], got " +
                      std::to_string(cfg.n_clusters));
  }
  if (cfg.n_clusters == 1) return std::vector<int>(static_cast<std::size_t>(n), 0);

  const EigenDecomposition eig = symmetric_eigendecomposition(normalized_laplacian(a));
  Matrix embedding = eig.vectors.leftCols(cfg.n_clusters);
  for (Index i = 0; i < n; ++i) {
    const double norm = embedding.row(i).norm();
    if (norm > 0.0) embedding.row(i) /= norm;
  }

  const KMeansOptions options{cfg.n_clusters, cfg.kmeans_restarts, cfg.kmeans_max_iters,
                              cfg.seed};
  return kmeans(embedding, options, threads).labels;
}

}  // namespace ssrsc
