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
#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "divfront/alpha.hpp"
#include "divfront/divergence.hpp"
#include "divfront/errors.hpp"
#include "divfront/estimation.hpp"
#include "divfront/expfam_frontier.hpp"
#include "divfront/frontier.hpp"
#include "divfront/io.hpp"
#include "divfront/oracle.hpp"
#include "divfront/prd.hpp"
#include "divfront/version.hpp"

namespace divfront::cli {

using nlohmann::json;

/// Exit statuses of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kParseFailure = 2,
  kDimensionMismatch = 3,
  kUndefined = 4,
};

/// Everything one CLI invocation needs. Unset optionals fall back to
/// documented defaults, and every fallback is logged and recorded in the
/// run manifest.
struct RunConfig {
  std::string command;  // fit, frontier, prd, endpoints, knn, oracle-check, pipeline
  std::string p;        // distribution JSON
  std::string q;
  std::string samples;  // CSV for `fit`
  std::string samples_p;
  std::string samples_q;
  std::string config;  // pipeline JSON config
  std::vector<std::string> alphas;
  std::optional<std::string> side;
  std::optional<int> grid_size;
  std::optional<int> k_clusters;
  std::optional<int> knn_k;
  std::optional<int> grid_denominator;
  std::optional<double> ridge;
  std::optional<std::uint64_t> seed;
  std::string output;
};

inline constexpr double kDefaultRidge = 1e-6;
inline constexpr int kDefaultGridDenominator = 60;

namespace detail {

class Runner {
 public:
  Runner(const RunConfig& cfg, std::ostream& log) : cfg_(cfg), log_(log) {}

  int operator()() {
    manifest_["tool"] = "divfront";
    manifest_["version"] = kVersion;
    manifest_["command"] = cfg_.command;
    manifest_["defaults"] = json::array();
    if (cfg_.output.empty()) throw ParameterError("--output is required");
    const auto& c = cfg_.command;
    if (c == "fit") return fit();
    if (c == "frontier") return frontier_cmd();
    if (c == "prd") return prd();
    if (c == "endpoints") return endpoints();
    if (c == "knn") return knn();
    if (c == "oracle-check") return oracle_cmd();
    if (c == "pipeline") return pipeline();
    throw ParameterError("unknown command '" + c + "'");
  }

 private:
  template <class T>
  T resolve(const std::optional<T>& value, T fallback, const char* name) {
    if (value) {
      manifest_["config"][name] = *value;
      return *value;
    }
    log_ << "divfront: " << name << " not set, using default " << json(fallback).dump() << '\n';
    manifest_["config"][name] = fallback;
    manifest_["defaults"].push_back(name);
    return fallback;
  }

  std::string require_input(const std::string& path, const char* flag) {
    if (path.empty()) throw ParameterError(std::string("missing required input ") + flag);
    if (!std::filesystem::exists(path)) {
      throw Error(std::string("input file for ") + flag + " does not exist: " + path);
    }
    manifest_["inputs"][flag] = path;
    return path;
  }

  FrontierSide side() {
    return parse_side(resolve<std::string>(cfg_.side, "exclusive", "side"));
  }

  int grid_size() { return resolve(cfg_.grid_size, kDefaultGridSize, "grid_size"); }

  std::vector<Alpha> alphas(std::vector<std::string> fallback) {
    std::vector<std::string> texts = cfg_.alphas;
    if (texts.empty()) {
      if (fallback.empty()) throw ParameterError("at least one --alpha is required");
      log_ << "divfront: alpha not set, using default " << json(fallback).dump() << '\n';
      manifest_["defaults"].push_back("alpha");
      texts = fallback;
    }
    std::vector<Alpha> out;
    json rec = json::array();
    for (const auto& t : texts) {
      out.push_back(Alpha::parse(t));
      rec.push_back(out.back().to_string());
    }
    manifest_["config"]["alpha"] = rec;
    return out;
  }

  std::ofstream open_output(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    outputs_.push_back(path.string());
    return out;
  }

  void write_json(const std::filesystem::path& path, const json& j) {
    auto out = open_output(path);
    out << j.dump(2) << '\n';
  }

  int finish(const std::filesystem::path& manifest_path) {
    manifest_["outputs"] = outputs_;
    std::ofstream out(manifest_path, std::ios::binary);
    if (!out) throw Error("cannot write '" + manifest_path.string() + "'");
    out << manifest_.dump(2) << '\n';
    return kOk;
  }

  int finish() { return finish(cfg_.output + ".manifest.json"); }

  int fit() {
    const auto samples = io::load_samples_csv(require_input(cfg_.samples, "--samples"));
    const double ridge = resolve(cfg_.ridge, kDefaultRidge, "ridge");
    write_json(cfg_.output, io::to_json(fit_gaussian(samples, ridge)));
    return finish();
  }

  static std::filesystem::path with_alpha_suffix(const std::string& output, const Alpha& a) {
    std::filesystem::path path(output);
    auto stem = path.stem().string() + ".alpha-" + a.to_string();
    return path.parent_path() / (stem + path.extension().string());
  }

  int frontier_cmd() {
    const auto p = io::load_distribution(require_input(cfg_.p, "--p"));
    const auto q = io::load_distribution(require_input(cfg_.q, "--q"));
    const auto orders = alphas({});
    const FrontierSide s = side();
    const int grid = grid_size();
    for (const Alpha& a : orders) {
      FrontierCurve curve;
      if (std::holds_alternative<Histogram>(p) && std::holds_alternative<Histogram>(q)) {
        curve = frontier(std::get<Histogram>(p), std::get<Histogram>(q), a, s, grid);
      } else if (std::holds_alternative<GaussianParams>(p) &&
                 std::holds_alternative<GaussianParams>(q)) {
        curve = frontier_gaussian(std::get<GaussianParams>(p), std::get<GaussianParams>(q), a, s,
                                  grid);
      } else {
        throw ParameterError("--p and --q must both be histograms or both be gaussians");
      }
      const auto path = orders.size() == 1 ? std::filesystem::path(cfg_.output)
                                           : with_alpha_suffix(cfg_.output, a);
      auto out = open_output(path);
      io::write_frontier_csv(out, curve);
    }
    return finish();
  }

  int prd() {
    const auto p = io::load_distribution(require_input(cfg_.p, "--p"));
    const auto q = io::load_distribution(require_input(cfg_.q, "--q"));
    if (!std::holds_alternative<Histogram>(p) || !std::holds_alternative<Histogram>(q)) {
      throw ParameterError("prd needs two histograms");
    }
    const int grid = grid_size();
    const auto curve = prd_from_infinity_frontier(frontier(
        std::get<Histogram>(p), std::get<Histogram>(q), Alpha::infinity(),
        FrontierSide::Exclusive, grid));
    auto out = open_output(cfg_.output);
    io::write_prd_csv(out, curve);
    return finish();
  }

  /// Either two distribution specs (--p/--q) or two sample files fitted with
  /// Gaussians (--samples-p/--samples-q).
  std::pair<io::Distribution, io::Distribution> endpoint_operands() {
    if (!cfg_.p.empty() || !cfg_.q.empty()) {
      return {io::load_distribution(require_input(cfg_.p, "--p")),
              io::load_distribution(require_input(cfg_.q, "--q"))};
    }
    const auto sp = io::load_samples_csv(require_input(cfg_.samples_p, "--samples-p"));
    const auto sq = io::load_samples_csv(require_input(cfg_.samples_q, "--samples-q"));
    require_same_dim(sp, sq);
    const double ridge = resolve(cfg_.ridge, kDefaultRidge, "ridge");
    return {fit_gaussian(sp, ridge), fit_gaussian(sq, ridge)};
  }

  int endpoints() {
    const auto [p, q] = endpoint_operands();
    const auto orders = alphas({"1"});
    if (orders.size() != 1) throw ParameterError("endpoints takes a single --alpha");
    const Alpha a = orders.front();
    double precision_loss = 0.0;
    double recall_loss = 0.0;
    if (std::holds_alternative<Histogram>(p) && std::holds_alternative<Histogram>(q)) {
      const auto& hp = std::get<Histogram>(p);
      const auto& hq = std::get<Histogram>(q);
      precision_loss = renyi_discrete(hq, hp, a);
      recall_loss = renyi_discrete(hp, hq, a);
    } else if (std::holds_alternative<GaussianParams>(p) &&
               std::holds_alternative<GaussianParams>(q)) {
      const auto& gp = std::get<GaussianParams>(p);
      const auto& gq = std::get<GaussianParams>(q);
      precision_loss = renyi_gaussian(gq, gp, a);
      recall_loss = renyi_gaussian(gp, gq, a);
    } else {
      throw ParameterError("--p and --q must both be histograms or both be gaussians");
    }
    auto out = open_output(cfg_.output);
    out << "precision_loss,recall_loss\n"
        << io::format_number(precision_loss) << ',' << io::format_number(recall_loss) << '\n';
    return finish();
  }

  int knn() {
    const auto sp = io::load_samples_csv(require_input(cfg_.samples_p, "--samples-p"));
    const auto sq = io::load_samples_csv(require_input(cfg_.samples_q, "--samples-q"));
    const int k = resolve(cfg_.knn_k, kDefaultKnnK, "knn_k");
    const auto m = knn_support_metrics(sp, sq, k);
    write_json(cfg_.output, {{"precision", m.precision}, {"recall", m.recall}});
    return finish();
  }

  int oracle_cmd() {
    const auto p = io::load_distribution(require_input(cfg_.p, "--p"));
    const auto q = io::load_distribution(require_input(cfg_.q, "--q"));
    if (!std::holds_alternative<Histogram>(p) || !std::holds_alternative<Histogram>(q)) {
      throw ParameterError("oracle-check needs two histograms");
    }
    const auto orders = alphas({"1"});
    if (orders.size() != 1) throw ParameterError("oracle-check takes a single --alpha");
    const FrontierSide s = side();
    const int m = resolve(cfg_.grid_denominator, kDefaultGridDenominator, "grid_denominator");
    const int grid = grid_size();
    const auto v = oracle::oracle_check(std::get<Histogram>(p), std::get<Histogram>(q),
                                        orders.front(), s, m, grid);
    write_json(cfg_.output, {{"max_dominance_violation", io::number_to_json(v.max_dominance_violation)},
                             {"hausdorff_distance", io::number_to_json(v.hausdorff_distance)},
                             {"pass", v.pass}});
    return finish();
  }

  PipelineConfig pipeline_config() {
    PipelineConfig pc;
    json file = json::object();
    if (!cfg_.config.empty()) file = io::load_json_file(require_input(cfg_.config, "--config"));
    if (!file.is_object()) throw ParseError("pipeline config must be a JSON object", 1);
    auto pick_int = [&](const char* key, const std::optional<int>& flag, int fallback) {
      if (flag) return resolve(flag, fallback, key);
      if (file.contains(key)) {
        if (!file.at(key).is_number_integer()) {
          throw ParseError(std::string("config field '") + key + "' must be an integer", 0);
        }
        return resolve(std::optional<int>(file.at(key).get<int>()), fallback, key);
      }
      return resolve(std::optional<int>{}, fallback, key);
    };
    pc.k_clusters = pick_int("k_clusters", cfg_.k_clusters, pc.k_clusters);
    pc.knn_k = pick_int("knn_k", cfg_.knn_k, pc.knn_k);
    pc.grid_size = pick_int("grid_size", cfg_.grid_size, pc.grid_size);

    std::optional<double> ridge = cfg_.ridge;
    if (!ridge && file.contains("ridge")) ridge = io::number_from_json(file.at("ridge"), "ridge");
    pc.ridge = resolve(ridge, pc.ridge, "ridge");

    std::optional<std::uint64_t> seed = cfg_.seed;
    if (!seed && file.contains("seed")) {
      if (!file.at("seed").is_number_unsigned()) {
        throw ParseError("config field 'seed' must be a nonnegative integer", 0);
      }
      seed = file.at("seed").get<std::uint64_t>();
    }
    pc.seed = resolve(seed, pc.seed, "seed");

    std::vector<std::string> fallback;
    for (const auto& a : pc.alphas) fallback.push_back(a.to_string());
    if (cfg_.alphas.empty() && file.contains("alphas")) {
      if (!file.at("alphas").is_array()) throw ParseError("config field 'alphas' must be an array", 0);
      std::vector<std::string> texts;
      for (const auto& a : file.at("alphas")) {
        texts.push_back(a.is_string() ? a.get<std::string>() : io::format_number(a.get<double>()));
      }
      std::vector<Alpha> out;
      json rec = json::array();
      for (const auto& t : texts) {
        out.push_back(Alpha::parse(t));
        rec.push_back(out.back().to_string());
      }
      manifest_["config"]["alpha"] = rec;
      pc.alphas = out;
    } else {
      pc.alphas = alphas(fallback);
    }
    return pc;
  }

  int pipeline() {
    const auto sp = io::load_samples_csv(require_input(cfg_.samples_p, "--samples-p"));
    const auto sq = io::load_samples_csv(require_input(cfg_.samples_q, "--samples-q"));
    const PipelineConfig pc = pipeline_config();
    const PipelineReport r = evaluate_pipeline(sp, sq, pc);
    const std::filesystem::path dir(cfg_.output);
    std::filesystem::create_directories(dir);

    json report;
    report["fitted_p"] = io::to_json(r.fitted_p);
    report["fitted_q"] = io::to_json(r.fitted_q);
    report["kl_endpoints"] = {{"precision_loss", io::number_to_json(r.endpoints.precision_loss)},
                              {"recall_loss", io::number_to_json(r.endpoints.recall_loss)}};
    report["knn"] = {{"precision", r.knn.precision}, {"recall", r.knn.recall}};
    report["histogram_p"] = io::to_json(r.hist_p);
    report["histogram_q"] = io::to_json(r.hist_q);
    report["prd"] = io::to_json(r.prd);
    report["kl_frontier"] = io::to_json(r.kl_frontier);
    report["discrete_frontiers"] = json::array();
    for (const auto& c : r.discrete_frontiers) report["discrete_frontiers"].push_back(io::to_json(c));
    report["notes"] = r.notes;
    write_json(dir / "report.json", report);

    {
      auto out = open_output(dir / "kl_frontier.csv");
      io::write_frontier_csv(out, r.kl_frontier);
    }
    {
      auto out = open_output(dir / "prd.csv");
      io::write_prd_csv(out, r.prd);
    }
    for (const auto& c : r.discrete_frontiers) {
      auto out = open_output(dir / ("frontier_" + std::string(to_string(c.side)) + "_alpha-" +
                                    c.alpha.to_string() + ".csv"));
      io::write_frontier_csv(out, c);
    }
    return finish(dir / "manifest.json");
  }

  const RunConfig& cfg_;
  std::ostream& log_;
  json manifest_;
  std::vector<std::string> outputs_;
};

}  // namespace detail

/// Runs one command and returns its exit status. Errors are reported on
/// `log`: parse errors exit 2, dimension mismatches 3, undefined divergences
/// 4, anything else 1.
inline int run(const RunConfig& config, std::ostream& log = std::cerr) {
  try {
    return detail::Runner(config, log)();
  } catch (const ParseError& e) {
    log << "divfront: parse error: " << e.what() << '\n';
    return kParseFailure;
  } catch (const DimensionError& e) {
    log << "divfront: dimension mismatch: " << e.what() << '\n';
    return kDimensionMismatch;
  } catch (const DivergenceUndefined& e) {
    log << "divfront: divergence undefined: " << e.what()
        << " (the closed form has no finite value for this order; try a smaller order)\n";
    return kUndefined;
  } catch (const std::exception& e) {
    log << "divfront: error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace divfront::cli
