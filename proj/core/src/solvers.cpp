#include "ssrsc/solvers.hpp"

#include <cmath>
#include <string>

#include "ssrsc/parallel.hpp"
#include "ssrsc/projections.hpp"

namespace ssrsc {

namespace {

Matrix spd_inverse(const Matrix& m, const char* what) {
  Eigen::LLT<Matrix> llt(m);
  if (llt.info() != Eigen::Success) {
    throw NumericError(std::string(what) + ": system is not positive definite");
  }
  return llt.solve(Matrix::Identity(m.rows(), m.cols()));
}

bool use_woodbury(GramInverseMode mode, const DataMatrix& x) {
  switch (mode) {
    case GramInverseMode::Woodbury: return true;
    case GramInverseMode::Direct: return false;
    case GramInverseMode::Auto: break;
  }
  return x.dim() < x.size();
}

void check_model(const SolverConfig& cfg, Model expected) {
  cfg.validate();
  if (cfg.model != expected) {
    throw ConfigError("solver for '" + std::string(to_string(expected)) +
                      "' called with model '" + std::string(to_string(cfg.model)) + "'");
  }
}

// Z column for the zero-diagonal variant: entry j fixed at 0, the rest on
// the s-simplex.
Vector project_simplex_without(const Eigen::Ref<const Vector>& u, Index j, double s) {
  const Index n = u.size();
  Vector rest(n - 1);
  rest << u.head(j), u.tail(n - j - 1);
  const Vector p = project_scaled_simplex(rest, s);
  Vector z(n);
  z << p.head(j), 0.0, p.tail(n - j - 1);
  return z;
}

Matrix update_z(const Matrix& c_next, const Matrix& delta, const SolverConfig& cfg,
                int threads) {
  const double rho = cfg.rho;
  if (cfg.model == Model::NLSR) {
    return project_nonneg(c_next - delta / rho);
  }

  const Matrix target = (rho / (2.0 * cfg.lambda + rho)) * (c_next - delta / rho);
  require_finite(target, "ADMM Z-update target");
  if (cfg.model == Model::SLSR) {
    return project_columns(target, {ProjectionKind::ScaledAffine, cfg.s}, threads);
  }
  if (!cfg.zero_diagonal) {
    return project_columns(target, {ProjectionKind::ScaledSimplex, cfg.s}, threads);
  }

  Matrix z(target.rows(), target.cols());
  parallel_for(static_cast<std::size_t>(target.cols()), threads, [&](std::size_t jj) {
    const auto j = static_cast<Index>(jj);
    z.col(j) = project_simplex_without(target.col(j), j, cfg.s);
  });
  return z;
}

SolveResult run_admm(const DataMatrix& x, const SolverConfig& cfg, int threads) {
  const Index n = x.size();
  if (cfg.zero_diagonal && n < 2) {
    throw ConfigError("zero_diagonal needs at least two points");
  }

  const double shift = cfg.model == Model::NLSR ? (2.0 * cfg.lambda + cfg.rho) / 2.0
                                                : cfg.rho / 2.0;
  const PrecomputedKernel kernel = PrecomputedKernel::build(x, shift, cfg.use_woodbury);
  const Matrix kernel_gram = kernel.inverse_factor * kernel.gram;

  AdmmState state = AdmmState::zeros(n);
  std::vector<ResidualTriple> history;
  history.reserve(static_cast<std::size_t>(cfg.max_iters));
  bool converged = false;

  while (state.iteration < cfg.max_iters) {
    Matrix c_next =
        kernel_gram + kernel.inverse_factor * (0.5 * cfg.rho * state.Z + 0.5 * state.Delta);
    if (!c_next.allFinite()) {
      throw DivergenceError("C iterate became non-finite at iteration " +
                            std::to_string(state.iteration + 1));
    }
    Matrix z_next = update_z(c_next, state.Delta, cfg, threads);
    state.Delta += cfg.rho * (z_next - c_next);
    if (!z_next.allFinite() || !state.Delta.allFinite()) {
      throw DivergenceError("Z or multiplier iterate became non-finite at iteration " +
                            std::to_string(state.iteration + 1));
    }

    const ResidualTriple r{(c_next - z_next).norm(), (c_next - state.C).norm(),
                           (z_next - state.Z).norm()};
    history.push_back(r);
    state.C = std::move(c_next);
    state.Z = std::move(z_next);
    ++state.iteration;
    if (r.within(cfg.tol)) {
      converged = true;
      break;
    }
  }

  return SolveResult{CoefficientMatrix(std::move(state.Z), CoefficientRole::Z),
                     std::move(history), state.iteration, converged};
}

}  // namespace

Matrix regularized_gram_inverse(const DataMatrix& x, double shift, GramInverseMode mode) {
  if (!(shift > 0.0) || !std::isfinite(shift)) {
    throw ConfigError("regularized_gram_inverse: shift must be positive");
  }
  const Matrix& X = x.values();
  if (!use_woodbury(mode, x)) {
    Matrix system = X.transpose() * X;
    system.diagonal().array() += shift;
    return spd_inverse(system, "regularized_gram_inverse (direct)");
  }

  const double inv = 1.0 / shift;
  Matrix inner = inv * (X * X.transpose());
  inner.diagonal().array() += 1.0;
  const Matrix inner_inv = spd_inverse(inner, "regularized_gram_inverse (woodbury)");
  Matrix out = -(inv * inv) * (X.transpose() * inner_inv * X);
  out.diagonal().array() += inv;
  return out;
}

PrecomputedKernel PrecomputedKernel::build(const DataMatrix& x, double shift,
                                           GramInverseMode mode) {
  PrecomputedKernel k;
  k.gram = x.values().transpose() * x.values();
  k.inverse_factor = regularized_gram_inverse(x, shift, mode);
  k.shift = shift;
  return k;
}

AdmmState AdmmState::zeros(Index n) {
  return AdmmState{Matrix::Zero(n, n), Matrix::Zero(n, n), Matrix::Zero(n, n), 0};
}

CoefficientMatrix solve_lsr(const DataMatrix& x, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ConfigError("solve_lsr: lambda must be positive");
  }
  const Matrix gram = x.values().transpose() * x.values();
  Matrix system = gram;
  system.diagonal().array() += lambda;
  Eigen::LLT<Matrix> llt(system);
  if (llt.info() != Eigen::Success) {
    throw NumericError("solve_lsr: system is not positive definite");
  }
  return CoefficientMatrix(llt.solve(gram), CoefficientRole::C);
}

SolveResult solve_ssrsc(const DataMatrix& x, const SolverConfig& cfg, int threads) {
  check_model(cfg, Model::SSRSC);
  return run_admm(x, cfg, threads);
}

SolveResult solve_nlsr(const DataMatrix& x, const SolverConfig& cfg, int threads) {
  check_model(cfg, Model::NLSR);
  return run_admm(x, cfg, threads);
}

SolveResult solve_slsr(const DataMatrix& x, const SolverConfig& cfg, int threads) {
  check_model(cfg, Model::SLSR);
  return run_admm(x, cfg, threads);
}

SolveResult solve(const DataMatrix& x, const SolverConfig& cfg, int threads) {
  switch (cfg.model) {
    case Model::SSRSC: return solve_ssrsc(x, cfg, threads);
    case Model::NLSR: return solve_nlsr(x, cfg, threads);
    case Model::SLSR: return solve_slsr(x, cfg, threads);
    case Model::LSR:
      cfg.validate();
      return SolveResult{solve_lsr(x, cfg.lambda), {}, 0, true};
  }
  throw ConfigError("unknown model");
}

double representation_objective(const DataMatrix& x, const Matrix& c, double lambda) {
  if (c.rows() != x.size() || c.cols() != x.size()) {
    throw ShapeError("representation_objective: coefficient shape does not match data");
  }
  return (x.values() - x.values() * c).squaredNorm() + lambda * c.squaredNorm();
}

}  // namespace ssrsc
