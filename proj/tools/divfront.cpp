// Copyright 2026 The divfront Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Parses flags and hands a RunConfig to
// divfront::cli::run.

#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "divfront/cli.hpp"

namespace {

void add_common(CLI::App* sub, divfront::cli::RunConfig& cfg) {
  sub->add_option("-o,--output", cfg.output, "Output file (directory for pipeline)")->required();
}

template <class T>
void add_optional(CLI::App* sub, const std::string& name, std::optional<T>& slot,
                  const std::string& help) {
  sub->add_option_function<T>(name, [&slot](const T& v) { slot = v; }, help);
}

}  // namespace

int main(int argc, char** argv) {
  divfront::cli::RunConfig cfg;
  CLI::App app{"divfront: precision-recall divergence frontiers"};
  app.set_version_flag("--version", divfront::kVersion);
  app.require_subcommand(1);

  auto* fit = app.add_subcommand("fit", "Fit a Gaussian to a sample CSV");
  fit->add_option("--samples", cfg.samples, "Sample CSV (no header)")->required();
  add_optional(fit, "--ridge", cfg.ridge, "Ridge added to the covariance diagonal");
  add_common(fit, cfg);

  auto* frontier = app.add_subcommand("frontier", "Divergence frontier between two distributions");
  frontier->add_option("--p", cfg.p, "Target distribution JSON")->required();
  frontier->add_option("--q", cfg.q, "Model distribution JSON")->required();
  frontier->add_option("--alpha", cfg.alphas, "Order(s): 0, 1, inf or a positive decimal");
  add_optional(frontier, "--side", cfg.side, "exclusive or inclusive");
  add_optional(frontier, "--grid-size", cfg.grid_size, "Number of curve parameters");
  add_common(frontier, cfg);

  auto* prd = app.add_subcommand("prd", "Precision-recall curve of two histograms");
  prd->add_option("--p", cfg.p, "Target histogram JSON")->required();
  prd->add_option("--q", cfg.q, "Model histogram JSON")->required();
  add_optional(prd, "--grid-size", cfg.grid_size, "Number of curve parameters");
  add_common(prd, cfg);

  auto* endpoints = app.add_subcommand("endpoints", "Precision and recall losses D(Q,P), D(P,Q)");
  endpoints->add_option("--p", cfg.p, "Target distribution JSON");
  endpoints->add_option("--q", cfg.q, "Model distribution JSON");
  endpoints->add_option("--samples-p", cfg.samples_p, "Target sample CSV (fitted with a Gaussian)");
  endpoints->add_option("--samples-q", cfg.samples_q, "Model sample CSV (fitted with a Gaussian)");
  endpoints->add_option("--alpha", cfg.alphas, "Order, default 1");
  add_optional(endpoints, "--ridge", cfg.ridge, "Ridge for the Gaussian fits");
  add_common(endpoints, cfg);

  auto* knn = app.add_subcommand("knn", "k-NN support precision and recall");
  knn->add_option("--samples-p", cfg.samples_p, "Target sample CSV")->required();
  knn->add_option("--samples-q", cfg.samples_q, "Model sample CSV")->required();
  add_optional(knn, "--knn-k", cfg.knn_k, "Neighbour count");
  add_common(knn, cfg);

  auto* oracle = app.add_subcommand("oracle-check", "Certify a frontier against a simplex grid");
  oracle->add_option("--p", cfg.p, "Target histogram JSON")->required();
  oracle->add_option("--q", cfg.q, "Model histogram JSON")->required();
  oracle->add_option("--alpha", cfg.alphas, "Order, default 1");
  add_optional(oracle, "--side", cfg.side, "exclusive or inclusive");
  add_optional(oracle, "--grid-denominator", cfg.grid_denominator, "Simplex grid denominator m");
  add_optional(oracle, "--grid-size", cfg.grid_size, "Number of curve parameters");
  add_common(oracle, cfg);

  auto* pipeline = app.add_subcommand("pipeline", "Full evaluation of two sample sets");
  pipeline->add_option("--samples-p", cfg.samples_p, "Target sample CSV")->required();
  pipeline->add_option("--samples-q", cfg.samples_q, "Model sample CSV")->required();
  pipeline->add_option("--config", cfg.config, "JSON config");
  pipeline->add_option("--alpha", cfg.alphas, "Orders for the discrete frontiers");
  add_optional(pipeline, "--k-clusters", cfg.k_clusters, "k-means cluster count");
  add_optional(pipeline, "--knn-k", cfg.knn_k, "Neighbour count");
  add_optional(pipeline, "--ridge", cfg.ridge, "Ridge for the Gaussian fits");
  add_optional(pipeline, "--grid-size", cfg.grid_size, "Number of curve parameters");
  add_optional(pipeline, "--seed", cfg.seed, "k-means seed");
  add_common(pipeline, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : divfront::cli::kParseFailure;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  return divfront::cli::run(cfg);
}
