#pragma once

#include "ssrsc/core.hpp"

namespace ssrsc {

enum class ProjectionKind { ScaledSimplex, ScaledAffine, NonNegativeOrthant };

struct ProjectionTarget {
  ProjectionKind kind = ProjectionKind::ScaledSimplex;
  double s = 1.0;  // ignored for NonNegativeOrthant
};

/// Euclidean projection of `u` onto {z : z >= 0, sum(z) = s}.
///
/// Sort-and-threshold in O(N log N): with w the values of u sorted
/// descending, alpha is the largest j such that
/// w_j + (s - sum_{i<=j} w_i) / j > 0, beta = (s - sum_{i<=alpha} w_i) / alpha,
/// and z_i = max(u_i + beta, 0). Entries of the result are >= 0 exactly.
Vector project_scaled_simplex(const Eigen::Ref<const Vector>& u, double s);

/// Euclidean projection onto the hyperplane {z : sum(z) = s}: a uniform shift
/// by (s - sum(v)) / N, without clipping.
Vector project_scaled_affine(const Eigen::Ref<const Vector>& v, double s);

/// Entrywise max(0, m).
Matrix project_nonneg(const Matrix& m);

/// Applies `target` to every column of `m`. Columns are independent, so the
/// result does not depend on `threads`.
Matrix project_columns(const Matrix& m, const ProjectionTarget& target,
                       int threads = 1);

}  // namespace ssrsc
