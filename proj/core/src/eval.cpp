#include "ssrsc/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iomanip>
#include <limits>
#include <map>

#include "ssrsc/parallel.hpp"
#include "ssrsc/solvers.hpp"

namespace ssrsc {

std::vector<int> optimal_assignment(const std::vector<std::vector<long long>>& cost) {
  const std::size_t n = cost.size();
  for (const auto& row : cost) {
    if (row.size() != n) throw ShapeError("optimal_assignment needs a square cost matrix");
  }
  if (n == 0) return {};

  // Potentials formulation with 1-based sentinel column 0.
  constexpr long long inf = std::numeric_limits<long long>::max() / 4;
  std::vector<long long> u(n + 1, 0), v(n + 1, 0);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::vector<long long> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = match[j0];
      long long delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const long long cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> assignment(n, -1);
  for (std::size_t j = 1; j <= n; ++j) {
    assignment[match[j] - 1] = static_cast<int>(j - 1);
  }
  return assignment;
}

namespace {

std::vector<int> compact(std::span<const int> labels, std::size_t& distinct) {
  std::map<int, int> ids;
  for (int l : labels) {
    if (l < 0) throw DomainError("labels must be non-negative");
    ids.emplace(l, 0);
  }
  int next = 0;
  for (auto& [label, id] : ids) id = next++;
  distinct = ids.size();
  std::vector<int> out(labels.size());
  std::transform(labels.begin(), labels.end(), out.begin(),
                 [&](int l) { return ids.at(l); });
  return out;
}

}  // namespace

double clustering_error(std::span<const int> pred, std::span<const int> truth) {
  if (pred.size() != truth.size()) {
    throw ShapeError("clustering_error: " + std::to_string(pred.size()) +
                     " predicted labels vs " + std::to_string(truth.size()) + " true labels");
  }
  if (pred.empty()) throw ShapeError("clustering_error: empty label vectors");

  std::size_t n_pred = 0, n_truth = 0;
  const auto p = compact(pred, n_pred);
  const auto t = compact(truth, n_truth);
  const std::size_t n = std::max(n_pred, n_truth);

  std::vector<std::vector<long long>> cost(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < p.size(); ++i) {
    --cost[static_cast<std::size_t>(p[i])][static_cast<std::size_t>(t[i])];
  }
  const auto assignment = optimal_assignment(cost);
  long long matched = 0;
  for (std::size_t r = 0; r < n; ++r) {
    matched -= cost[r][static_cast<std::size_t>(assignment[r])];
  }
  const auto total = static_cast<long long>(pred.size());
  return static_cast<double>(total - matched) / static_cast<double>(total);
}

AffinityMass affinity_diagnostics(const AffinityMatrix& a, std::span<const int> truth) {
  const Matrix& w = a.values();
  if (static_cast<std::size_t>(w.rows()) != truth.size()) {
    throw ShapeError("affinity_diagnostics: label count does not match affinity size");
  }
  if (w.size() > 0 && w.minCoeff() < 0.0) {
    throw DomainError("affinity_diagnostics needs a non-negative affinity matrix");
  }

  AffinityMass mass;
  for (Index j = 0; j < w.cols(); ++j) {
    for (Index i = 0; i < w.rows(); ++i) {
      if (i == j) {
        mass.diag += w(i, j);
      } else if (truth[static_cast<std::size_t>(i)] == truth[static_cast<std::size_t>(j)]) {
        mass.within += w(i, j);
      } else {
        mass.between += w(i, j);
      }
    }
  }
  const double total = mass.within + mass.between + mass.diag;
  if (total > 0.0) {
    mass.within /= total;
    mass.between /= total;
    mass.diag /= total;
  }
  return mass;
}

AffinityMode affinity_mode_for(Model model, AffinityMode requested) {
  return (model == Model::SSRSC || model == Model::NLSR) ? requested
                                                          : AffinityMode::AbsoluteSymmetric;
}

std::vector<SolverConfig> ablation_grid(const SolverConfig& base,
                                        std::span<const double> lambdas) {
  std::vector<SolverConfig> grid;
  for (Model m : {Model::SSRSC, Model::NLSR, Model::SLSR, Model::LSR}) {
    for (double lambda : lambdas) {
      SolverConfig cfg = base;
      cfg.model = m;
      cfg.lambda = lambda;
      if (m != Model::SSRSC) cfg.zero_diagonal = false;
      grid.push_back(cfg);
    }
  }
  return grid;
}

AblationReport run_ablation(const LabeledDataset& dataset, std::span<const SolverConfig> grid,
                            const SpectralConfig& spectral, int threads) {
  if (!dataset.labels) throw ConfigError("ablation needs ground-truth labels");
  const auto& truth = *dataset.labels;

  AblationReport report;
  report.rows.resize(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t r) {
    const SolverConfig& cfg = grid[r];
    AblationRow& row = report.rows[r];
    row.model = std::string(to_string(cfg.model));
    row.lambda = cfg.lambda;
    row.s = cfg.s;

    const auto start = std::chrono::steady_clock::now();
    try {
      const SolveResult solved = solve(dataset.data, cfg);
      SpectralConfig sc = spectral;
      sc.affinity_mode = affinity_mode_for(cfg.model, spectral.affinity_mode);
      const auto labels =
          spectral_cluster(build_affinity(solved.coefficients, sc.affinity_mode), sc);
      row.error_rate = clustering_error(labels, truth);
      row.iterations_used = solved.iterations_used;
    } catch (const Error& e) {
      row.failure = std::string(e.kind()) + ": " + e.what();
    }
    row.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  });
  return report;
}

void AblationReport::write_csv(std::ostream& out) const {
  out << "model,lambda,s,error_rate,wall_time_seconds,iterations_used,status\n";
  char buf[64];
  for (const auto& row : rows) {
    out << row.model << ',';
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,", row.lambda, row.s);
    out << buf;
    if (row.error_rate) {
      std::snprintf(buf, sizeof buf, "%.17g", *row.error_rate);
      out << buf;
    }
    std::snprintf(buf, sizeof buf, ",%.6f,%d,", row.wall_time_seconds, row.iterations_used);
    out << buf;
    if (row.ok()) {
      out << "ok";
    } else {
      // Quote the failure text; it may contain commas.
      std::string msg = row.failure;
      for (std::size_t pos = 0; (pos = msg.find('"', pos)) != std::string::npos; pos += 2) {
        msg.insert(pos, 1, '"');
      }
      out << '"' << msg << '"';
    }
    out << '\n';
  }
}

void AblationReport::write_table(std::ostream& out) const {
  const auto flags = out.flags();
  out << std::left << std::setw(8) << "model" << std::right << std::setw(10) << "lambda"
      << std::setw(8) << "s" << std::setw(10) << "error%" << std::setw(10) << "time_s"
      << std::setw(7) << "iters" << "  status\n";
  for (const auto& row : rows) {
    out << std::left << std::setw(8) << row.model << std::right << std::setw(10)
        << std::setprecision(4) << std::defaultfloat << row.lambda << std::setw(8) << row.s;
    if (row.error_rate) {
      out << std::setw(10) << std::fixed << std::setprecision(2) << 100.0 * *row.error_rate;
    } else {
      out << std::setw(10) << "-";
    }
    out << std::setw(10) << std::fixed << std::setprecision(3) << row.wall_time_seconds
        << std::setw(7) << row.iterations_used << "  " << (row.ok() ? "ok" : row.failure)
        << '\n';
    out << std::defaultfloat;
  }
  out.flags(flags);
}

}  // namespace ssrsc
