// ssrsc: subspace clustering from the command line.
//
//   ssrsc --synthetic 30,4,3,50,0.01 --seed 7 --output run.txt
//   ssrsc --input points.csv --clusters 5 --model nlsr --lambda 0.1
//   ssrsc --synthetic 30,4,3,50,0.05 --ablation --output grid.csv
//
// Exit codes: 0 success, 2 config error, 3 parse error, 4 numeric error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ssrsc/eval.hpp"
#include "ssrsc/pipeline.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitParse = 3;
constexpr int kExitNumeric = 4;

int exit_code_for(const ssrsc::Error& e) {
  if (dynamic_cast<const ssrsc::ParseError*>(&e)) return kExitParse;
  if (dynamic_cast<const ssrsc::NumericError*>(&e)) return kExitNumeric;
  return kExitConfig;
}

int fail(const char* kind, const std::string& message, int code) {
  std::string line = message;
  for (auto& ch : line) {
    if (ch == '\n') ch = ' ';
  }
  std::cerr << "error: " << kind << ": " << line << '\n';
  return code;
}

ssrsc::SyntheticSpec parse_synthetic(const std::string& text, std::uint64_t seed) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) parts.push_back(item);
  if (parts.size() != 5) {
    throw ssrsc::ConfigError("--synthetic expects \"D,d,n,ppc,sigma\", got '" + text + "'");
  }
  ssrsc::SyntheticSpec spec;
  try {
    spec.ambient_dim = std::stoi(parts[0]);
    spec.subspace_dim = std::stoi(parts[1]);
    spec.n_subspaces = std::stoi(parts[2]);
    spec.points_per_subspace = std::stoi(parts[3]);
    spec.noise_sigma = std::stod(parts[4]);
  } catch (const std::exception&) {
    throw ssrsc::ConfigError("--synthetic has a non-numeric field: '" + text + "'");
  }
  spec.seed = seed;
  spec.validate();
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subspace clustering with scaled simplex representations"};

  ssrsc::RunManifest manifest;
  std::string model = "ssrsc";
  std::string affinity;
  std::string woodbury = "auto";
  std::string synthetic;
  std::string input;
  std::string output;
  std::string labels_csv;
  std::uint64_t seed = 0;
  int clusters = 0;
  int pca_dim = 0;
  bool no_header = false;
  bool ablation = false;
  std::vector<double> ablation_lambdas{0.001, 0.01, 0.1};

  auto& cfg = manifest.config;
  app.add_option("--model", model, "Coefficient model")
      ->check(CLI::IsMember({"ssrsc", "nlsr", "slsr", "lsr"}))
      ->capture_default_str();
  app.add_option("--lambda", cfg.lambda, "Ridge weight lambda")->capture_default_str();
  app.add_option("--s", cfg.s, "Column sum s of the coefficients")->capture_default_str();
  app.add_option("--rho", cfg.rho, "ADMM penalty rho")->capture_default_str();
  app.add_option("--iters", cfg.max_iters, "Maximum ADMM iterations K")->capture_default_str();
  app.add_option("--tol", cfg.tol, "ADMM residual tolerance")->capture_default_str();
  app.add_flag("--zero-diagonal", cfg.zero_diagonal, "Forbid self-representation (ssrsc)");
  app.add_option("--woodbury", woodbury, "Gram inverse route")
      ->check(CLI::IsMember({"auto", "on", "off"}))
      ->capture_default_str();
  app.add_option("--clusters", clusters, "Number of clusters (default: synthetic n)");
  app.add_option("--affinity", affinity,
                 "sym = (C+C^T)/2, abs = (|C|+|C^T|)/2 (default: sym for ssrsc/nlsr, abs otherwise)")
      ->check(CLI::IsMember({"sym", "abs"}));
  app.add_option("--kmeans-restarts", manifest.spectral.kmeans_restarts, "k-means restarts")
      ->capture_default_str();
  app.add_option("--pca-dim", pca_dim, "Project onto this many principal components first");
  app.add_option("--seed", seed, "Seed for data generation and k-means")->capture_default_str();
  auto* synth_opt =
      app.add_option("--synthetic", synthetic, "Generate data: \"D,d,n,ppc,sigma\"");
  auto* input_opt = app.add_option("--input", input, "CSV file, one point per row");
  app.add_flag("--no-header", no_header, "The CSV file has no header row");
  app.add_option("--output", output, "Result document (or ablation CSV with --ablation)");
  app.add_option("--labels-csv", labels_csv, "Also write predicted labels as CSV");
  app.add_option("--threads", manifest.threads, "Worker threads")->capture_default_str();
  app.add_flag("--ablation", ablation, "Run the model x lambda grid instead of one solve");
  app.add_option("--ablation-lambdas", ablation_lambdas, "Lambda values for --ablation")
      ->delimiter(',');
  synth_opt->excludes(input_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("config", e.what(), kExitConfig);
  }

  try {
    cfg.model = ssrsc::parse_model(model);
    cfg.seed = seed;
    cfg.use_woodbury = woodbury == "on"    ? ssrsc::GramInverseMode::Woodbury
                       : woodbury == "off" ? ssrsc::GramInverseMode::Direct
                                           : ssrsc::GramInverseMode::Auto;
    if (!affinity.empty()) {
      manifest.affinity_explicit = true;
      manifest.spectral.affinity_mode = affinity == "abs"
                                            ? ssrsc::AffinityMode::AbsoluteSymmetric
                                            : ssrsc::AffinityMode::Symmetric;
    }
    manifest.spectral.seed = seed;

    if (synthetic.empty() == input.empty()) {
      throw ssrsc::ConfigError("exactly one of --synthetic or --input is required");
    }
    if (!synthetic.empty()) {
      const auto spec = parse_synthetic(synthetic, seed);
      manifest.source = spec;
      if (clusters == 0) clusters = spec.n_subspaces;
    } else {
      manifest.source = ssrsc::CsvSource{input, !no_header};
      if (clusters == 0) throw ssrsc::ConfigError("--clusters is required with --input");
    }
    manifest.spectral.n_clusters = clusters;
    if (pca_dim != 0) manifest.pca_dim = pca_dim;
    if (manifest.threads < 1) throw ssrsc::ConfigError("--threads must be at least 1");

    if (ablation) {
      ssrsc::LabeledDataset data = ssrsc::load_input(manifest.source);
      if (manifest.pca_dim) data.data = ssrsc::pca_project(data.data, *manifest.pca_dim);
      if (clusters > data.data.size()) {
        throw ssrsc::ConfigError("n_clusters exceeds the number of points");
      }
      const auto grid = ssrsc::ablation_grid(cfg, ablation_lambdas);
      const auto report = ssrsc::run_ablation(data, grid, manifest.spectral, manifest.threads);
      report.write_table(std::cout);
      if (!output.empty()) {
        std::ofstream out(output);
        report.write_csv(out);
        if (!out) throw ssrsc::ParseError("cannot write '" + output + "'", 0, 0);
      }
      return EXIT_SUCCESS;
    }

    if (!output.empty()) manifest.output = output;
    if (!labels_csv.empty()) manifest.labels_csv = labels_csv;
    ssrsc::run_pipeline(manifest, &std::cout);
  } catch (const ssrsc::Error& e) {
    return fail(e.kind(), e.what(), exit_code_for(e));
  } catch (const std::exception& e) {
    return fail("internal", e.what(), kExitNumeric);
  }
  return EXIT_SUCCESS;
}
