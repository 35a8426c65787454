// Copyright 2026 The balmix Authors
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

// balmix: generate synthetic long-tailed data, run imbalance-handling
// experiments, sweep the Balanced-MixUp alpha and report results.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "balmix/harness.hpp"
#include "balmix/report.hpp"
#include "balmix/synthdata.hpp"

namespace {

using namespace balmix;

int fail(const std::string& kind, const std::string& message, int code = 1) {
  nlohmann::json j = {{"error", {{"kind", kind}, {"message", message}}}};
  std::cerr << j.dump() << '\n';
  return code;
}

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::string records_text(const std::vector<ResultRecord>& records) {
  std::ostringstream out;
  write_records(records, out);
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Balanced-MixUp experiments on synthetic long-tailed data"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Write a synthetic long-tailed dataset as CSV");
  SyntheticSpec spec;
  double ratio = 10.0;
  std::string counts_csv, gen_out;
  gen->add_option("--classes", spec.num_classes, "number of classes")->default_val(5);
  gen->add_option("--dim", spec.dim, "feature dimension")->default_val(2);
  gen->add_option("--n-max", spec.n_max, "size of the largest class")->default_val(100);
  gen->add_option("--ratio", ratio, "imbalance ratio of the exponential profile")->default_val(10.0);
  gen->add_option("--counts", counts_csv, "explicit per-class counts, comma separated");
  gen->add_option("--separation", spec.class_separation, "norm of the class means")->default_val(3.0);
  gen->add_option("--noise", spec.noise_sigma, "isotropic noise standard deviation")->default_val(1.0);
  gen->add_option("--seed", spec.seed, "generator seed")->default_val(0);
  gen->add_option("--out", gen_out, "output CSV path")->required();

  // folds
  auto* folds_cmd = app.add_subcommand("folds", "Write a stratified fold plan for a CSV dataset");
  std::string folds_csv, folds_out;
  int n_folds = 5;
  std::uint64_t folds_seed = 0;
  double folds_val = 0.1;
  folds_cmd->add_option("--data", folds_csv, "dataset CSV")->required();
  folds_cmd->add_option("--folds", n_folds, "number of folds")->default_val(5);
  folds_cmd->add_option("--seed", folds_seed, "shuffle seed")->default_val(0);
  folds_cmd->add_option("--val-fraction", folds_val, "validation share of non-test rows")->default_val(0.1);
  folds_cmd->add_option("--out", folds_out, "output path (default stdout)");

  // run
  auto* run_cmd = app.add_subcommand("run", "Run the experiment(s) described by a config file");
  std::string run_config, run_out;
  int run_threads = 0;
  run_cmd->add_option("--config", run_config, "config file (JSON)")->required();
  run_cmd->add_option("--out", run_out, "records file, one JSON object per line (default stdout)");
  run_cmd->add_option("--threads", run_threads, "override the config's thread count");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a balanced_mixup config over an alpha grid");
  std::string sweep_config, sweep_out, sweep_alphas = "0.1,0.2,0.3";
  int sweep_threads = 0;
  sweep_cmd->add_option("--config", sweep_config, "config file (JSON)")->required();
  sweep_cmd->add_option("--alphas", sweep_alphas, "comma separated alpha grid")->default_val("0.1,0.2,0.3");
  sweep_cmd->add_option("--out", sweep_out, "records file (default stdout)");
  sweep_cmd->add_option("--threads", sweep_threads, "override the config's thread count");

  // report
  auto* report_cmd = app.add_subcommand("report", "Summarize records as a method x metric table");
  std::vector<std::string> report_inputs;
  std::string report_format = "text", report_out;
  report_cmd->add_option("--records", report_inputs, "records file(s)")->required();
  report_cmd->add_option("--format", report_format, "csv, json or text")->default_val("text");
  report_cmd->add_option("--out", report_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what(), 2);
  }

  try {
    if (*gen) {
      if (!counts_csv.empty()) {
        ExplicitCounts ec;
        for (double c : parse_list(counts_csv)) ec.counts.push_back(static_cast<std::int64_t>(c));
        spec.profile = ec;
      } else {
        spec.profile = ExponentialProfile{ratio};
      }
      save_csv(generate(spec), gen_out);
    } else if (*folds_cmd) {
      const Dataset ds = load_csv(folds_csv);
      write_output(folds_out,
                   fold_plan_to_json(stratified_kfold(ds, n_folds, folds_seed, folds_val)) + "\n");
    } else if (*run_cmd) {
      std::vector<ResultRecord> all;
      for (auto& cfg : load_config_file(run_config)) {
        if (run_threads > 0) cfg.threads = run_threads;
        auto recs = run(cfg);
        all.insert(all.end(), recs.begin(), recs.end());
      }
      write_output(run_out, records_text(all));
    } else if (*sweep_cmd) {
      const auto alphas = parse_list(sweep_alphas);
      std::vector<ResultRecord> all;
      for (auto& cfg : load_config_file(sweep_config)) {
        if (sweep_threads > 0) cfg.threads = sweep_threads;
        for (auto& [alpha, recs] : sweep_alpha(cfg, alphas)) {
          all.insert(all.end(), recs.begin(), recs.end());
        }
      }
      write_output(sweep_out, records_text(all));
    } else if (*report_cmd) {
      std::vector<ResultRecord> all;
      for (const auto& path : report_inputs) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open records file " + path);
        auto recs = read_records(in);
        all.insert(all.end(), recs.begin(), recs.end());
      }
      write_output(report_out, report(all, report_format_from_string(report_format)));
    }
  } catch (const CsvError& e) {
    return fail("csv", e.what());
  } catch (const ExperimentError& e) {
    return fail("experiment", e.what());
  } catch (const std::invalid_argument& e) {
    return fail("invalid_argument", e.what());
  } catch (const std::exception& e) {
    return fail("runtime", e.what());
  }
  return 0;
}
