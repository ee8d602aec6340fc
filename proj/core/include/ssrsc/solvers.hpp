#pragma once

#include <vector>

#include "ssrsc/core.hpp"

namespace ssrsc {

/// (X^T X + shift I)^{-1}.
///
/// Direct mode factors the N x N system. Woodbury mode inverts the D x D
/// system instead:
///   (1/shift) I - (1/shift)^2 X^T (I_D + (1/shift) X X^T)^{-1} X.
/// Auto selects Woodbury when D < N.
Matrix regularized_gram_inverse(const DataMatrix& x, double shift,
                                GramInverseMode mode = GramInverseMode::Auto);

/// Factors shared by every C-update of one ADMM run, computed once up front.
struct PrecomputedKernel {
  Matrix gram;            // X^T X
  Matrix inverse_factor;  // (X^T X + shift I)^{-1}
  double shift = 0.0;

  static PrecomputedKernel build(const DataMatrix& x, double shift,
                                 GramInverseMode mode);
};

struct AdmmState {
  Matrix C;
  Matrix Z;
  Matrix Delta;
  int iteration = 0;

  static AdmmState zeros(Index n);
};

struct SolveResult {
  CoefficientMatrix coefficients;
  std::vector<ResidualTriple> history;
  int iterations_used = 0;
  bool converged = false;
};

/// Closed-form ridge self-representation (X^T X + lambda I)^{-1} X^T X.
CoefficientMatrix solve_lsr(const DataMatrix& x, double lambda);

// The three ADMM solvers share one loop: C-update, Z-update, multiplier
// ascent Delta += rho (Z - C), stopping once all residuals are <= tol or after
// max_iters iterations. Each returns the feasible iterate Z.
//
// SSRSC: Z column = simplex projection of rho/(2 lambda + rho) (C - Delta/rho).
//        With zero_diagonal, the diagonal entry is pinned to 0 and the other
//        N-1 entries are projected onto the s-simplex.
SolveResult solve_ssrsc(const DataMatrix& x, const SolverConfig& cfg, int threads = 1);
// NLSR:  lambda moves into the C-update shift; Z = max(0, C - Delta/rho).
SolveResult solve_nlsr(const DataMatrix& x, const SolverConfig& cfg, int threads = 1);
// SLSR:  like SSRSC with the hyperplane projection in place of the simplex.
SolveResult solve_slsr(const DataMatrix& x, const SolverConfig& cfg, int threads = 1);

/// Dispatches on cfg.model. LSR reports zero iterations and converged=true.
SolveResult solve(const DataMatrix& x, const SolverConfig& cfg, int threads = 1);

/// ||X - XC||_F^2 + lambda ||C||_F^2.
double representation_objective(const DataMatrix& x, const Matrix& c, double lambda);

}  // namespace ssrsc
