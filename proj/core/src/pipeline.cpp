#include "ssrsc/pipeline.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ssrsc/eval.hpp"
#include "ssrsc/solvers.hpp"

namespace ssrsc {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* to_string(AffinityMode m) {
  return m == AffinityMode::Symmetric ? "sym" : "abs";
}

const char* to_string(GramInverseMode m) {
  switch (m) {
    case GramInverseMode::Auto: return "auto";
    case GramInverseMode::Woodbury: return "on";
    case GramInverseMode::Direct: return "off";
  }
  return "auto";
}

std::string describe(const InputSource& source) {
  if (const auto* csv = std::get_if<CsvSource>(&source)) return "csv " + csv->path.string();
  const auto& s = std::get<SyntheticSpec>(source);
  return "synthetic " + std::to_string(s.ambient_dim) + "," + std::to_string(s.subspace_dim) +
         "," + std::to_string(s.n_subspaces) + "," + std::to_string(s.points_per_subspace) +
         "," + fmt(s.noise_sigma);
}

AffinityMode effective_affinity(const RunManifest& m) {
  return m.affinity_explicit ? m.spectral.affinity_mode
                             : affinity_mode_for(m.config.model, AffinityMode::Symmetric);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw ParseError("cannot write '" + path.string() + "'", 0, 0);
}

}  // namespace

LabeledDataset load_input(const InputSource& source) {
  if (const auto* csv = std::get_if<CsvSource>(&source)) {
    return load_csv(csv->path, csv->has_header);
  }
  return generate_synthetic(std::get<SyntheticSpec>(source));
}

std::string format_result_document(const RunManifest& m, const ClusteringResult& r,
                                   Index n_points, Index dim) {
  std::ostringstream out;
  out << "format_version: 1\n"
      << "model: " << ssrsc::to_string(m.config.model) << '\n'
      << "lambda: " << fmt(m.config.lambda) << '\n'
      << "s: " << fmt(m.config.s) << '\n'
      << "rho: " << fmt(m.config.rho) << '\n'
      << "max_iters: " << m.config.max_iters << '\n'
      << "tol: " << fmt(m.config.tol) << '\n'
      << "zero_diagonal: " << (m.config.zero_diagonal ? "true" : "false") << '\n'
      << "woodbury: " << to_string(m.config.use_woodbury) << '\n'
      << "affinity: " << to_string(effective_affinity(m)) << '\n'
      << "source: " << describe(m.source) << '\n'
      << "pca_dim: " << (m.pca_dim ? std::to_string(*m.pca_dim) : "none") << '\n'
      << "seed: " << m.spectral.seed << '\n'
      << "n_points: " << n_points << '\n'
      << "dim: " << dim << '\n'
      << "n_clusters: " << m.spectral.n_clusters << '\n'
      << "iterations_used: " << r.iterations_used << '\n'
      << "converged: " << (r.converged ? "true" : "false") << '\n'
      << "error_rate: " << (r.error_rate ? fmt(*r.error_rate) : "none") << '\n'
      << "labels:";
  for (int l : r.labels) out << ' ' << l;
  out << '\n' << "residual_history: " << r.residual_history.size() << '\n';
  for (std::size_t k = 0; k < r.residual_history.size(); ++k) {
    const auto& t = r.residual_history[k];
    out << k + 1 << ' ' << fmt(t.primal) << ' ' << fmt(t.c_change) << ' ' << fmt(t.z_change)
        << '\n';
  }
  return out.str();
}

ClusteringResult run_pipeline(const RunManifest& m, std::ostream* summary) {
  m.config.validate();
  const auto start = std::chrono::steady_clock::now();

  LabeledDataset dataset = load_input(m.source);
  if (m.spectral.n_clusters < 1 || m.spectral.n_clusters > dataset.data.size()) {
    throw ConfigError("n_clusters must be in [1, " + std::to_string(dataset.data.size()) +
                      "], got " + std::to_string(m.spectral.n_clusters));
  }
  if (m.pca_dim) dataset.data = pca_project(dataset.data, *m.pca_dim);

  const SolveResult solved = solve(dataset.data, m.config, m.threads);
  SpectralConfig sc = m.spectral;
  sc.affinity_mode = effective_affinity(m);
  const AffinityMatrix affinity = build_affinity(solved.coefficients, sc.affinity_mode);

  ClusteringResult result;
  result.labels = spectral_cluster(affinity, sc, m.threads);
  result.residual_history = solved.history;
  result.iterations_used = solved.iterations_used;
  result.converged = solved.converged;
  if (dataset.labels) result.error_rate = clustering_error(result.labels, *dataset.labels);
  result.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (m.output) {
    write_file(*m.output,
               format_result_document(m, result, dataset.data.size(), dataset.data.dim()));
  }
  if (m.labels_csv) {
    std::ostringstream out;
    out << "point,label" << (dataset.labels ? ",truth" : "") << '\n';
    for (std::size_t i = 0; i < result.labels.size(); ++i) {
      out << i << ',' << result.labels[i];
      if (dataset.labels) out << ',' << (*dataset.labels)[i];
      out << '\n';
    }
    write_file(*m.labels_csv, out.str());
  }
  if (summary) {
    char buf[64];
    *summary << "model=" << ssrsc::to_string(m.config.model)
             << " points=" << dataset.data.size() << " clusters=" << sc.n_clusters
             << " iterations=" << result.iterations_used
             << " converged=" << (result.converged ? "true" : "false");
    if (result.error_rate) {
      std::snprintf(buf, sizeof buf, " error_rate=%.4f", *result.error_rate);
      *summary << buf;
    }
    std::snprintf(buf, sizeof buf, " time=%.3fs", result.wall_time_seconds);
    *summary << buf << '\n';
  }
  return result;
}

}  // namespace ssrsc
