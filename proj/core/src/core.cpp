#include "ssrsc/core.hpp"

#include <cmath>
#include <string>

namespace ssrsc {

void require_finite(const Matrix& m, std::string_view what) {
  if (!m.allFinite()) {
    throw NumericError(std::string(what) + " contains non-finite values");
  }
}

DataMatrix::DataMatrix(Matrix values) : values_(std::move(values)) {
  if (values_.rows() < 1 || values_.cols() < 1) {
    throw ShapeError("data matrix needs at least one row and one column, got " +
                     std::to_string(values_.rows()) + "x" +
                     std::to_string(values_.cols()));
  }
  require_finite(values_, "data matrix");
}

CoefficientMatrix::CoefficientMatrix(Matrix values, CoefficientRole role)
    : values_(std::move(values)), role_(role) {
  if (values_.rows() != values_.cols()) {
    throw ShapeError("coefficient matrix must be square, got " +
                     std::to_string(values_.rows()) + "x" +
                     std::to_string(values_.cols()));
  }
  require_finite(values_, "coefficient matrix");
}

AffinityMatrix AffinityMatrix::from_symmetric(Matrix values) {
  if (values.rows() != values.cols()) {
    throw ShapeError("affinity matrix must be square");
  }
  require_finite(values, "affinity matrix");
  for (Index j = 0; j < values.cols(); ++j) {
    for (Index i = 0; i < j; ++i) {
      if (values(i, j) != values(j, i)) {
        throw ShapeError("affinity matrix is not exactly symmetric");
      }
    }
  }
  return AffinityMatrix(std::move(values));
}

namespace detail {
AffinityMatrix make_affinity_unchecked(Matrix values) {
  return AffinityMatrix(std::move(values));
}
}  // namespace detail

std::string_view to_string(Model model) noexcept {
  switch (model) {
    case Model::SSRSC: return "ssrsc";
    case Model::NLSR: return "nlsr";
    case Model::SLSR: return "slsr";
    case Model::LSR: return "lsr";
  }
  return "unknown";
}

Model parse_model(std::string_view name) {
  if (name == "ssrsc") return Model::SSRSC;
  if (name == "nlsr") return Model::NLSR;
  if (name == "slsr") return Model::SLSR;
  if (name == "lsr") return Model::LSR;
  throw ConfigError("unknown model '" + std::string(name) + "'");
}

void SolverConfig::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(lambda)) throw ConfigError("lambda must be positive");
  if (!positive(s)) throw ConfigError("s must be positive");
  if (!positive(rho)) throw ConfigError("rho must be positive");
  if (!positive(tol)) throw ConfigError("tol must be positive");
  if (max_iters < 1) throw ConfigError("max_iters must be at least 1");
  if (zero_diagonal && model != Model::SSRSC) {
    throw ConfigError("zero_diagonal is only defined for the ssrsc model");
  }
}

double frobenius_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError("frobenius_distance: shapes " + std::to_string(a.rows()) +
                     "x" + std::to_string(a.cols()) + " and " +
                     std::to_string(b.rows()) + "x" + std::to_string(b.cols()) +
                     " differ");
  }
  return (a - b).norm();
}

double frobenius_distance(const CoefficientMatrix& a, const CoefficientMatrix& b) {
  return frobenius_distance(a.values(), b.values());
}

}  // namespace ssrsc
