#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "ssrsc/error.hpp"

namespace ssrsc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// D x N data points, one point per column.
class DataMatrix {
 public:
  explicit DataMatrix(Matrix values);

  Index dim() const noexcept { return values_.rows(); }
  Index size() const noexcept { return values_.cols(); }
  const Matrix& values() const noexcept { return values_; }
  auto point(Index j) const { return values_.col(j); }

 private:
  Matrix values_;
};

enum class CoefficientRole { C, Z, Delta };

/// N x N self-expressive coefficients (or an ADMM auxiliary of the same shape).
class CoefficientMatrix {
 public:
  CoefficientMatrix(Matrix values, CoefficientRole role);

  Index size() const noexcept { return values_.rows(); }
  CoefficientRole role() const noexcept { return role_; }
  const Matrix& values() const noexcept { return values_; }

 private:
  Matrix values_;
  CoefficientRole role_;
};

class AffinityMatrix;

namespace detail {
// For constructors that produce symmetry by construction.
AffinityMatrix make_affinity_unchecked(Matrix values);
}  // namespace detail

/// Symmetric similarity graph. Only build_affinity() and from_symmetric()
/// produce one, so symmetry is exact rather than measured.
class AffinityMatrix {
 public:
  // Throws ShapeError unless `values` is square and bitwise symmetric.
  static AffinityMatrix from_symmetric(Matrix values);

  Index size() const noexcept { return values_.rows(); }
  const Matrix& values() const noexcept { return values_; }

 private:
  explicit AffinityMatrix(Matrix values) : values_(std::move(values)) {}
  friend AffinityMatrix detail::make_affinity_unchecked(Matrix values);

  Matrix values_;
};

enum class Model { SSRSC, NLSR, SLSR, LSR };

// How (X^T X + shift I)^{-1} is formed. Auto picks Woodbury when D < N.
enum class GramInverseMode { Auto, Woodbury, Direct };

std::string_view to_string(Model model) noexcept;
Model parse_model(std::string_view name);

struct SolverConfig {
  Model model = Model::SSRSC;
  double lambda = 0.01;
  double s = 0.5;
  double rho = 0.5;
  int max_iters = 5;
  double tol = 0.01;
  bool zero_diagonal = false;
  GramInverseMode use_woodbury = GramInverseMode::Auto;
  std::uint64_t seed = 0;

  // Throws ConfigError on any out-of-range hyperparameter.
  void validate() const;
};

// Residuals recorded after each ADMM iteration k -> k+1.
struct ResidualTriple {
  double primal;    // ||C_{k+1} - Z_{k+1}||_F
  double c_change;  // ||C_{k+1} - C_k||_F
  double z_change;  // ||Z_{k+1} - Z_k||_F

  bool within(double tol) const noexcept {
    return primal <= tol && c_change <= tol && z_change <= tol;
  }
};

struct ClusteringResult {
  std::vector<int> labels;
  std::vector<ResidualTriple> residual_history;
  int iterations_used = 0;
  bool converged = false;
  double wall_time_seconds = 0.0;
  std::optional<double> error_rate;
};

double frobenius_distance(const Matrix& a, const Matrix& b);
double frobenius_distance(const CoefficientMatrix& a, const CoefficientMatrix& b);

// Throws NumericError naming `what` if any entry is NaN or infinite.
void require_finite(const Matrix& m, std::string_view what);

}  // namespace ssrsc
