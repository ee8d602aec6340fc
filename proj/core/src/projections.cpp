#include "ssrsc/projections.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "ssrsc/parallel.hpp"

namespace ssrsc {

namespace {

void check_input(const Eigen::Ref<const Vector>& v, const char* what) {
  if (v.size() < 1) throw ShapeError(std::string(what) + ": empty vector");
  if (!v.allFinite()) throw NumericError(std::string(what) + ": non-finite input");
}

}  // namespace

Vector project_scaled_simplex(const Eigen::Ref<const Vector>& u, double s) {
  check_input(u, "project_scaled_simplex");
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw ConfigError("project_scaled_simplex: s must be positive");
  }

  const Index n = u.size();
  std::vector<double> w(u.data(), u.data() + n);
  std::stable_sort(w.begin(), w.end(), std::greater<>());

  // j = 1 always qualifies since w_1 + (s - w_1) = s > 0.
  double prefix = 0.0;
  double alpha_prefix = w[0];
  Index alpha = 1;
  for (Index j = 1; j <= n; ++j) {
    prefix += w[static_cast<std::size_t>(j - 1)];
    if (w[static_cast<std::size_t>(j - 1)] + (s - prefix) / static_cast<double>(j) > 0.0) {
      alpha = j;
      alpha_prefix = prefix;
    }
  }
  const double beta = (s - alpha_prefix) / static_cast<double>(alpha);
  return (u.array() + beta).max(0.0).matrix();
}

Vector project_scaled_affine(const Eigen::Ref<const Vector>& v, double s) {
  check_input(v, "project_scaled_affine");
  if (!std::isfinite(s)) throw NumericError("project_scaled_affine: non-finite s");
  const double beta = (s - v.sum()) / static_cast<double>(v.size());
  return (v.array() + beta).matrix();
}

Matrix project_nonneg(const Matrix& m) {
  require_finite(m, "project_nonneg input");
  return m.cwiseMax(0.0);
}

Matrix project_columns(const Matrix& m, const ProjectionTarget& target, int threads) {
  if (target.kind == ProjectionKind::NonNegativeOrthant) return project_nonneg(m);

  Matrix out(m.rows(), m.cols());
  parallel_for(static_cast<std::size_t>(m.cols()), threads, [&](std::size_t j) {
    const auto col = static_cast<Index>(j);
    out.col(col) = target.kind == ProjectionKind::ScaledSimplex
                       ? project_scaled_simplex(m.col(col), target.s)
                       : project_scaled_affine(m.col(col), target.s);
  });
  return out;
}

}  // namespace ssrsc
