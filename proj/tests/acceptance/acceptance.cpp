// Acceptance criteria for the toolkit. Run without arguments for the full
// table, or with --criterion N for one line. Each criterion checks its
// numerical condition and its wall-clock budget.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles/oracles.hpp"
#include "ssrsc/eval.hpp"
#include "ssrsc/pipeline.hpp"
#include "ssrsc/projections.hpp"
#include "ssrsc/solvers.hpp"

using namespace ssrsc;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

std::string format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

SolverConfig long_run(Model model, double lambda) {
  SolverConfig cfg;
  cfg.model = model;
  cfg.lambda = lambda;
  cfg.max_iters = 20000;
  cfg.tol = 1e-10;
  return cfg;
}

SyntheticSpec fixture(double sigma, std::uint64_t seed) {
  return SyntheticSpec{30, 4, 3, 50, sigma, seed};
}

SpectralConfig spectral_for(std::uint64_t seed) {
  SpectralConfig sc;
  sc.n_clusters = 3;
  sc.seed = seed;
  return sc;
}

// 1. Simplex projection vs support enumeration, N = 1..8, 1000 vectors each.
Outcome simplex_oracle() {
  std::mt19937_64 rng(1001);
  std::uniform_real_distribution<double> scale(0.05, 3.0);
  double worst = 0.0;
  for (Index n = 1; n <= 8; ++n) {
    for (int k = 0; k < 1000; ++k) {
      const Vector u = 2.0 * oracle::gaussian(n, 1, rng).col(0);
      const double s = scale(rng);
      const Vector got = project_scaled_simplex(u, s);
      const Vector want = oracle::simplex_projection_enumerate(u, s);
      worst = std::max(worst, (got - want).cwiseAbs().maxCoeff());
    }
  }
  return {worst <= 1e-8, format("max coordinate deviation %.3g (tol 1e-8) over 8000 vectors", worst)};
}

// 2. Feasibility of solve_ssrsc output at default settings.
Outcome admm_feasibility() {
  std::mt19937_64 rng(1002);
  double worst_sum = 0.0;
  double min_entry = 0.0;
  for (int k = 0; k < 50; ++k) {
    const DataMatrix x(oracle::gaussian(5, 12, rng));
    const Matrix z = solve_ssrsc(x, SolverConfig{}).coefficients.values();
    worst_sum = std::max(worst_sum, (z.colwise().sum().array() - 0.5).abs().maxCoeff());
    min_entry = std::min(min_entry, z.minCoeff());
  }
  const bool pass = worst_sum <= 1e-8 * 12 && min_entry >= 0.0;
  return {pass, format("max |colsum - s| %.3g (tol %.3g), min entry %.3g", worst_sum, 1.2e-7, min_entry)};
}

// 3. Per-column QP oracles for SSRSC, NLSR and SLSR on 20 instances each.
Outcome column_oracles() {
  std::mt19937_64 rng(1003);
  std::uniform_int_distribution<int> width(4, 10);
  double dev_ssrsc = 0.0, dev_nlsr = 0.0, dev_slsr = 0.0;
  for (int k = 0; k < 20; ++k) {
    const Index n = width(rng);
    const Index d = std::max<Index>(2, n / 2);
    const DataMatrix x(oracle::gaussian(d, n, rng));
    const Matrix zs = solve_ssrsc(x, long_run(Model::SSRSC, 0.01)).coefficients.values();
    const Matrix zn = solve_nlsr(x, long_run(Model::NLSR, 0.1)).coefficients.values();
    const Matrix za = solve_slsr(x, long_run(Model::SLSR, 0.1)).coefficients.values();
    for (Index j = 0; j < n; ++j) {
      const auto target = x.point(j);
      dev_ssrsc = std::max(dev_ssrsc,
                           (zs.col(j) - oracle::simplex_qp_projected_gradient(
                                            x.values(), target, 0.01, 0.5, 100000))
                               .cwiseAbs().maxCoeff());
      dev_nlsr = std::max(dev_nlsr, (zn.col(j) - oracle::nonneg_ridge(x.values(), target, 0.1))
                                        .cwiseAbs().maxCoeff());
      dev_slsr = std::max(dev_slsr,
                          (za.col(j) - oracle::affine_ls_kkt(x.values(), target, 0.1, 0.5))
                              .cwiseAbs().maxCoeff());
    }
  }
  const bool pass = dev_ssrsc <= 1e-3 && dev_nlsr <= 1e-3 && dev_slsr <= 1e-3;
  return {pass, format("max entry deviation ssrsc %.3g, nlsr %.3g, slsr %.3g (tol 1e-3)",
                       dev_ssrsc, dev_nlsr, dev_slsr)};
}

// 4. Woodbury vs direct inverse, and end-to-end solver agreement.
Outcome woodbury_equivalence() {
  std::mt19937_64 rng(1004);
  std::uniform_int_distribution<int> size(2, 50);
  double worst_inverse = 0.0;
  double worst_solver = 0.0;
  for (int k = 0; k < 100; ++k) {
    const Index n = size(rng);
    const Index d = std::uniform_int_distribution<Index>(1, n - 1)(rng);
    const DataMatrix x(oracle::gaussian(d, n, rng));
    const double shift = 0.25;
    worst_inverse = std::max(worst_inverse,
                             (regularized_gram_inverse(x, shift, GramInverseMode::Woodbury) -
                              regularized_gram_inverse(x, shift, GramInverseMode::Direct)).norm());
    SolverConfig cfg;
    cfg.use_woodbury = GramInverseMode::Woodbury;
    const Matrix a = solve_ssrsc(x, cfg).coefficients.values();
    cfg.use_woodbury = GramInverseMode::Direct;
    const Matrix b = solve_ssrsc(x, cfg).coefficients.values();
    worst_solver = std::max(worst_solver, (a - b).norm());
  }
  const bool pass = worst_inverse <= 1e-8 && worst_solver <= 1e-6;
  return {pass, format("inverse max ||W - D||_F %.3g (tol 1e-8), solver %.3g (tol 1e-6)",
                       worst_inverse, worst_solver)};
}

// 5. All three residuals <= 0.01 within 5 iterations on the noiseless fixture.
Outcome convergence_speed() {
  int reached = 0;
  std::vector<double> worst_final;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto data = generate_synthetic(fixture(0.0, seed));
    const auto r = solve_ssrsc(data.data, SolverConfig{});
    if (r.converged && r.iterations_used <= 5) ++reached;
    const auto& last = r.history.back();
    worst_final.push_back(std::max({last.primal, last.c_change, last.z_change}));
  }
  return {reached >= 18,
          format("%d/20 seeds reached tol 0.01 in 5 iterations (need 18); median largest "
                 "final residual %.3g",
                 reached, median(worst_final))};
}

// 6. Median clustering error on the sigma = 0.01 fixture.
Outcome clustering_quality() {
  std::vector<double> errors;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto data = generate_synthetic(fixture(0.01, seed));
    const auto z = solve_ssrsc(data.data, SolverConfig{}).coefficients;
    const auto labels = spectral_cluster(build_affinity(z, AffinityMode::Symmetric), spectral_for(seed));
    errors.push_back(clustering_error(labels, *data.labels));
  }
  const double med = median(errors);
  return {med <= 0.05, format("median error %.4f (limit 0.05), max %.4f", med,
                              *std::max_element(errors.begin(), errors.end()))};
}

// 7. Best-lambda median errors order as SSRSC <= {NLSR, SLSR} <= LSR + 0.02.
Outcome ablation_ordering() {
  const std::vector<double> lambdas{0.001, 0.01, 0.1};
  const auto grid = ablation_grid(SolverConfig{}, lambdas);
  std::vector<std::vector<double>> per_row(grid.size());
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto data = generate_synthetic(fixture(0.05, seed));
    const auto report = run_ablation(data, grid, spectral_for(seed));
    for (std::size_t r = 0; r < grid.size(); ++r) {
      if (!report.rows[r].ok()) return {false, "row failed: " + report.rows[r].failure};
      per_row[r].push_back(*report.rows[r].error_rate);
    }
  }
  auto best = [&](Model m) {
    double b = 1.0;
    for (std::size_t r = 0; r < grid.size(); ++r) {
      if (grid[r].model == m) b = std::min(b, median(per_row[r]));
    }
    return b;
  };
  const double ssrsc = best(Model::SSRSC), nlsr = best(Model::NLSR);
  const double slsr = best(Model::SLSR), lsr = best(Model::LSR);
  const bool pass = ssrsc <= nlsr && nlsr <= lsr + 0.02 && ssrsc <= slsr && slsr <= lsr + 0.02;
  return {pass, format("best-lambda median error ssrsc %.4f, nlsr %.4f, slsr %.4f, lsr %.4f",
                       ssrsc, nlsr, slsr, lsr)};
}

// 8. When the hyperplane optimum of a column is infeasible, the simplex optimum
// has a zero entry. The ADMM solution is checked against the same oracle.
Outcome boundary_property() {
  std::mt19937_64 rng(1008);
  std::uniform_int_distribution<int> width(3, 8);
  int cases = 0;
  double worst_min = -1.0;
  double worst_admm = 0.0;
  while (cases < 100) {
    const Index n = width(rng);
    const Index d = std::uniform_int_distribution<Index>(2, 5)(rng);
    const DataMatrix x(oracle::gaussian(d, n, rng));
    Matrix z;
    for (Index j = 0; j < n && cases < 100; ++j) {
      const Vector plane = oracle::affine_ls_kkt(x.values(), x.point(j), 0.05, 0.5);
      if (plane.minCoeff() >= 0.0) continue;
      if (z.size() == 0) z = solve_ssrsc(x, long_run(Model::SSRSC, 0.05)).coefficients.values();
      const Vector exact = oracle::simplex_qp_enumerate(x.values(), x.point(j), 0.05, 0.5);
      worst_min = std::max(worst_min, exact.minCoeff());
      worst_admm = std::max(worst_admm, (z.col(j) - exact).cwiseAbs().maxCoeff());
      ++cases;
    }
  }
  const bool pass = worst_min <= 1e-6 && worst_admm <= 1e-3;
  return {pass, format("largest min-entry %.3g over 100 columns (tol 1e-6); ADMM vs exact %.3g",
                       worst_min, worst_admm)};
}

// 9. Optimal-assignment error equals exhaustive permutation search.
Outcome metric_correctness() {
  std::mt19937_64 rng(1009);
  int mismatches = 0;
  for (int k = 0; k < 500; ++k) {
    const int n = 1 + k % 5;
    std::uniform_int_distribution<int> pick(0, n - 1);
    const std::size_t len = 5 + static_cast<std::size_t>(k % 40);
    std::vector<int> p(len), t(len);
    for (auto& v : p) v = pick(rng);
    for (auto& v : t) v = pick(rng);
    if (clustering_error(p, t) != oracle::clustering_error_exhaustive(p, t)) ++mismatches;
  }
  return {mismatches == 0, format("%d/500 label pairs differ from exhaustive search", mismatches)};
}

// 10. run_pipeline output is bitwise stable across runs and thread counts.
Outcome determinism() {
  namespace fs = std::filesystem;
  auto run = [](int threads, const char* name) {
    RunManifest m;
    m.source = fixture(0.01, 7);
    m.spectral = spectral_for(7);
    m.threads = threads;
    m.output = fs::temp_directory_path() / name;
    run_pipeline(m);
    std::ifstream in(*m.output, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  };
  const std::string a = run(1, "ssrsc_acc_a.txt");
  const std::string b = run(1, "ssrsc_acc_b.txt");
  const std::string c = run(4, "ssrsc_acc_c.txt");
  const bool pass = !a.empty() && a == b && a == c;
  return {pass, format("%zu-byte documents; repeat %s, 4 threads %s", a.size(),
                       a == b ? "identical" : "DIFFERENT", a == c ? "identical" : "DIFFERENT")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "simplex projection oracle equivalence", 30, simplex_oracle},
      {2, "ADMM feasibility", 10, admm_feasibility},
      {3, "per-column QP oracles", 120, column_oracles},
      {4, "Woodbury equivalence", 30, woodbury_equivalence},
      {5, "convergence within 5 iterations", 60, convergence_speed},
      {6, "end-to-end clustering quality", 120, clustering_quality},
      {7, "ablation ordering", 600, ablation_ordering},
      {8, "boundary-of-simplex property", 60, boundary_property},
      {9, "metric correctness", 10, metric_correctness},
      {10, "pipeline determinism", 60, determinism},
  };

  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--criterion N]\n";
      return 2;
    }
  }

  int failures = 0;
  int ran = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    ++ran;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("threw: ") + e.what()};
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = elapsed <= c.budget_seconds;
    const bool pass = outcome.pass && in_budget;
    failures += pass ? 0 : 1;
    std::printf("[%s] AC%-2d %s: %s (%.2f s, budget %.0f s%s)\n", pass ? "PASS" : "FAIL", c.id,
                c.name, outcome.detail.c_str(), elapsed, c.budget_seconds,
                in_budget ? "" : ", OVER BUDGET");
    std::fflush(stdout);
  }
  if (ran == 0) {
    std::cerr << "no criterion numbered " << only << '\n';
    return 2;
  }
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
