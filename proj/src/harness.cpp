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

#include "balmix/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <memory>
#include <mutex>
#include <regex>
#include <thread>

#include <openssl/evp.h>

namespace balmix {

using nlohmann::json;

// ---------------------------------------------------------------- methods

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::instance: return "instance";
    case Method::class_based: return "class";
    case Method::sqrt: return "sqrt";
    case Method::focal: return "focal";
    case Method::class_balanced: return "class_balanced";
    case Method::mixup_classic: return "mixup_classic";
    case Method::balanced_mixup: return "balanced_mixup";
  }
  return "?";
}

namespace {

// Shortest %g rendering that round-trips, for readable labels.
std::string format_real(double v) {
  char buf[32];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

}  // namespace

std::string MethodSpec::label() const {
  if (uses_mixing()) return std::string(to_string(method)) + "(" + format_real(alpha) + ")";
  return std::string(to_string(method));
}

MethodSpec MethodSpec::parse(const std::string& label) {
  static const std::regex with_alpha(R"((mixup_classic|balanced_mixup)\(([^)]+)\))");
  std::smatch m;
  if (std::regex_match(label, m, with_alpha)) {
    MethodSpec s;
    s.method = m[1].str() == "mixup_classic" ? Method::mixup_classic : Method::balanced_mixup;
    std::size_t used = 0;
    const std::string a = m[2].str();
    try {
      s.alpha = std::stod(a, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != a.size() || !(s.alpha > 0.0)) {
      throw std::invalid_argument("method '" + label + "': alpha must be a positive number");
    }
    return s;
  }
  for (Method mm : {Method::instance, Method::class_based, Method::sqrt, Method::focal,
                    Method::class_balanced}) {
    if (label == to_string(mm)) return {mm, 0.0};
  }
  throw std::invalid_argument("unknown method '" + label + "'");
}

// ----------------------------------------------------------------- config

namespace {

json synthetic_to_json(const SyntheticSpec& s) {
  json j;
  j["num_classes"] = s.num_classes;
  j["dim"] = s.dim;
  j["n_max"] = s.n_max;
  if (const auto* e = std::get_if<ExponentialProfile>(&s.profile)) {
    j["profile"] = {{"exponential", {{"ratio", e->ratio}}}};
  } else {
    j["profile"] = {{"counts", std::get<ExplicitCounts>(s.profile).counts}};
  }
  j["class_separation"] = s.class_separation;
  j["noise_sigma"] = s.noise_sigma;
  j["seed"] = s.seed;
  return j;
}

SyntheticSpec synthetic_from_json(const json& j) {
  SyntheticSpec s;
  s.num_classes = j.at("num_classes").get<int>();
  s.dim = j.at("dim").get<std::size_t>();
  s.n_max = j.value("n_max", std::int64_t{100});
  const auto& p = j.at("profile");
  if (p.contains("exponential")) {
    s.profile = ExponentialProfile{p.at("exponential").at("ratio").get<double>()};
  } else if (p.contains("counts")) {
    s.profile = ExplicitCounts{p.at("counts").get<std::vector<std::int64_t>>()};
  } else {
    throw std::invalid_argument("config: profile needs 'exponential' or 'counts'");
  }
  s.class_separation = j.value("class_separation", 3.0);
  s.noise_sigma = j.value("noise_sigma", 1.0);
  s.seed = j.value("seed", std::uint64_t{0});
  return s;
}

json core_config_json(const ExperimentConfig& cfg) {
  json j;
  j["schema_version"] = kConfigSchemaVersion;
  if (const auto* s = std::get_if<SyntheticSpec>(&cfg.data)) {
    j["data"] = {{"synthetic", synthetic_to_json(*s)}};
  } else {
    j["data"] = {{"csv", std::get<std::filesystem::path>(cfg.data).string()}};
  }
  j["method"] = cfg.method.label();
  j["architecture"] = cfg.architecture.descriptor();
  j["train"] = {{"learning_rate", cfg.learning_rate},
                {"batch_size", cfg.batch_size},
                {"cycles", cfg.cycles},
                {"epochs_per_cycle", cfg.epochs_per_cycle},
                {"selection_metric", std::string(to_string(cfg.selection_metric))}};
  json protocol;
  if (cfg.protocol.kind == EvaluationProtocol::Kind::kfold) {
    protocol = {{"kind", "kfold"}, {"folds", cfg.protocol.folds}};
  } else {
    protocol = {{"kind", "holdout"}, {"test_fraction", cfg.protocol.test_fraction}};
  }
  protocol["val_fraction"] = cfg.protocol.val_fraction;
  j["protocol"] = protocol;
  json metrics = json::array();
  for (Metric m : cfg.metrics) metrics.push_back(std::string(to_string(m)));
  j["metrics"] = metrics;
  j["loss"] = {{"focal_gamma", cfg.focal_gamma}, {"cb_beta", cfg.cb_beta}};
  j["mixup"] = {{"lambda_on", std::string(to_string(cfg.lambda_on))}};
  return j;
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.seeds.empty()) throw std::invalid_argument("config: at least one seed is required");
  if (cfg.metrics.empty()) throw std::invalid_argument("config: at least one metric is required");
  if (!(cfg.learning_rate > 0.0)) throw std::invalid_argument("config: learning_rate must be > 0");
  if (cfg.batch_size < 1) throw std::invalid_argument("config: batch_size must be >= 1");
  if (cfg.cycles < 1 || cfg.epochs_per_cycle < 1) {
    throw std::invalid_argument("config: cycles and epochs_per_cycle must be >= 1");
  }
  if (cfg.protocol.kind == EvaluationProtocol::Kind::kfold && cfg.protocol.folds < 2) {
    throw std::invalid_argument("config: kfold needs at least 2 folds");
  }
  if (cfg.method.uses_mixing() && !(cfg.method.alpha > 0.0)) {
    throw std::invalid_argument("config: mixup methods need alpha > 0");
  }
  if (cfg.threads < 1) throw std::invalid_argument("config: threads must be >= 1");
}

}  // namespace

json config_to_json(const ExperimentConfig& cfg) {
  json j = core_config_json(cfg);
  j["seeds"] = cfg.seeds;
  j["threads"] = cfg.threads;
  if (cfg.checkpoint_dir) j["checkpoint_dir"] = cfg.checkpoint_dir->string();
  return j;
}

std::vector<ExperimentConfig> configs_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
  if (j.value("schema_version", 0) != kConfigSchemaVersion) {
    throw std::invalid_argument("config: schema_version must be " +
                                std::to_string(kConfigSchemaVersion));
  }
  ExperimentConfig cfg;
  const auto& data = j.at("data");
  if (data.contains("synthetic")) {
    cfg.data = synthetic_from_json(data.at("synthetic"));
  } else if (data.contains("csv")) {
    cfg.data = std::filesystem::path(data.at("csv").get<std::string>());
  } else {
    throw std::invalid_argument("config: data needs 'synthetic' or 'csv'");
  }
  cfg.architecture = Architecture::parse(j.value("architecture", std::string("linear")));
  if (j.contains("train")) {
    const auto& t = j.at("train");
    cfg.learning_rate = t.value("learning_rate", cfg.learning_rate);
    cfg.batch_size = t.value("batch_size", cfg.batch_size);
    cfg.cycles = t.value("cycles", cfg.cycles);
    cfg.epochs_per_cycle = t.value("epochs_per_cycle", cfg.epochs_per_cycle);
    if (t.contains("selection_metric")) {
      cfg.selection_metric = metric_from_string(t.at("selection_metric").get<std::string>());
    }
  }
  if (j.contains("protocol")) {
    const auto& p = j.at("protocol");
    const auto kind = p.value("kind", std::string("kfold"));
    if (kind == "kfold") {
      cfg.protocol.kind = EvaluationProtocol::Kind::kfold;
    } else if (kind == "holdout") {
      cfg.protocol.kind = EvaluationProtocol::Kind::holdout;
    } else {
      throw std::invalid_argument("config: unknown protocol '" + kind + "'");
    }
    cfg.protocol.folds = p.value("folds", cfg.protocol.folds);
    cfg.protocol.test_fraction = p.value("test_fraction", cfg.protocol.test_fraction);
    cfg.protocol.val_fraction = p.value("val_fraction", cfg.protocol.val_fraction);
  }
  if (j.contains("seeds")) cfg.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
  if (j.contains("metrics")) {
    cfg.metrics.clear();
    for (const auto& m : j.at("metrics")) cfg.metrics.push_back(metric_from_string(m.get<std::string>()));
  }
  if (j.contains("loss")) {
    cfg.focal_gamma = j.at("loss").value("focal_gamma", cfg.focal_gamma);
    cfg.cb_beta = j.at("loss").value("cb_beta", cfg.cb_beta);
  }
  if (j.contains("mixup")) {
    cfg.lambda_on = lambda_on_from_string(
        j.at("mixup").value("lambda_on", std::string(to_string(cfg.lambda_on))));
  }
  cfg.threads = j.value("threads", cfg.threads);
  if (j.contains("checkpoint_dir") && !j.at("checkpoint_dir").is_null()) {
    cfg.checkpoint_dir = std::filesystem::path(j.at("checkpoint_dir").get<std::string>());
  }

  std::vector<std::string> methods;
  if (j.contains("methods")) {
    methods = j.at("methods").get<std::vector<std::string>>();
    if (methods.empty()) throw std::invalid_argument("config: 'methods' is empty");
  } else {
    methods.push_back(j.at("method").get<std::string>());
  }
  std::vector<ExperimentConfig> out;
  for (const auto& m : methods) {
    ExperimentConfig c = cfg;
    c.method = MethodSpec::parse(m);
    validate(c);
    out.push_back(std::move(c));
  }
  return out;
}

ExperimentConfig config_from_json(const json& j) {
  auto all = configs_from_json(j);
  if (all.size() != 1) throw std::invalid_argument("config: expected exactly one method");
  return all.front();
}

std::vector<ExperimentConfig> load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("config " + path.string() + ": " + e.what());
  }
  return configs_from_json(j);
}

std::string config_fingerprint(const ExperimentConfig& cfg) {
  const std::string canonical = core_config_json(cfg).dump();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(canonical.data(), canonical.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("config_fingerprint: SHA-256 failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < 8 && i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

// ---------------------------------------------------------------- records

json record_to_json(const ResultRecord& r) {
  return {{"fingerprint", r.fingerprint},
          {"method", r.method},
          {"architecture", r.architecture},
          {"alpha", r.alpha},
          {"seed", r.seed},
          {"fold", r.fold},
          {"metrics", r.metrics},
          {"degenerate", r.degenerate},
          {"sgd_steps", r.sgd_steps},
          {"best_step", r.best_step},
          {"validation_score", r.validation_score},
          {"wall_time_s", r.wall_time_s},
          {"checkpoint", r.checkpoint}};
}

ResultRecord record_from_json(const json& j) {
  ResultRecord r;
  r.fingerprint = j.at("fingerprint").get<std::string>();
  r.method = j.at("method").get<std::string>();
  r.architecture = j.at("architecture").get<std::string>();
  r.alpha = j.value("alpha", 0.0);
  r.seed = j.at("seed").get<std::uint64_t>();
  r.fold = j.at("fold").get<int>();
  r.metrics = j.at("metrics").get<std::map<std::string, double>>();
  if (j.contains("degenerate")) r.degenerate = j.at("degenerate").get<std::map<std::string, bool>>();
  r.sgd_steps = j.value("sgd_steps", std::int64_t{0});
  r.best_step = j.value("best_step", std::int64_t{0});
  r.validation_score = j.value("validation_score", 0.0);
  r.wall_time_s = j.value("wall_time_s", 0.0);
  r.checkpoint = j.value("checkpoint", std::string());
  return r;
}

void write_records(const std::vector<ResultRecord>& records, std::ostream& out) {
  for (const auto& r : records) out << record_to_json(r).dump() << '\n';
}

std::vector<ResultRecord> read_records(std::istream& in) {
  std::vector<ResultRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(record_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw std::invalid_argument("records: line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

// -------------------------------------------------------- batch pipelines

std::vector<Example> make_examples(const Dataset& ds) {
  std::vector<Example> out;
  out.reserve(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto r = ds.row(i);
    out.push_back(Example::make({r.begin(), r.end()}, ds.labels[i], ds.num_classes));
  }
  return out;
}

namespace {

MixedExample unmixed(const Example& e) { return {e.features, e.one_hot, 1.0}; }

std::vector<Example> gather(std::span<const Example> examples, const std::vector<std::size_t>& idx) {
  std::vector<Example> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(examples[i]);
  return out;
}

}  // namespace

SampledBatchSource::SampledBatchSource(std::span<const Example> examples, IndexSampler sampler)
    : examples_(examples), sampler_(std::move(sampler)) {}

std::vector<MixedExample> SampledBatchSource::next_batch(std::size_t batch_size) {
  std::vector<MixedExample> out;
  out.reserve(batch_size);
  for (std::size_t i : sampler_.next_batch(batch_size)) out.push_back(unmixed(examples_[i]));
  return out;
}

ClassicMixupSource::ClassicMixupSource(std::span<const Example> examples, IndexSampler first,
                                       IndexSampler second, double alpha, std::uint64_t seed)
    : examples_(examples),
      first_(std::move(first)),
      second_(std::move(second)),
      alpha_(alpha),
      rng_(seed) {}

std::vector<MixedExample> ClassicMixupSource::next_batch(std::size_t batch_size) {
  const auto a = gather(examples_, first_.next_batch(batch_size));
  const auto b = gather(examples_, second_.next_batch(batch_size));
  return classic_mixup_batch(a, b, alpha_, rng_);
}

BalancedMixupSource::BalancedMixupSource(std::span<const Example> examples,
                                         IndexSampler instance, IndexSampler balanced,
                                         double alpha, std::uint64_t seed, LambdaOn lambda_on)
    : examples_(examples),
      instance_(std::move(instance)),
      balanced_(std::move(balanced)),
      alpha_(alpha),
      rng_(seed),
      lambda_on_(lambda_on) {}

std::vector<MixedExample> BalancedMixupSource::next_batch(std::size_t batch_size) {
  const auto inst = gather(examples_, instance_.next_batch(batch_size));
  const auto bal = gather(examples_, balanced_.next_batch(batch_size));
  return balanced_mixup_batch(inst, bal, alpha_, rng_, lambda_on_);
}

// ------------------------------------------------------------------- runs

Dataset load_data(const ExperimentConfig& cfg) {
  if (const auto* s = std::get_if<SyntheticSpec>(&cfg.data)) return generate(*s);
  return load_csv(std::get<std::filesystem::path>(cfg.data));
}

namespace {

// Stream identifiers for derive_seed. Folds and initial weights depend only
// on (seed, fold), so every method in a comparison sees the same splits and
// the same starting point.
enum : std::uint64_t {
  kFoldStream = 1,
  kInitStream = 1000,
  kPrimarySamplerStream = 2000,
  kSecondSamplerStream = 3000,
  kMixStream = 4000,
};

std::unique_ptr<BatchSource> make_source(const ExperimentConfig& cfg,
                                         std::span<const Example> examples,
                                         std::span<const Label> labels, const ClassHistogram& h,
                                         std::uint64_t seed, int fold) {
  const auto f = static_cast<std::uint64_t>(fold);
  const auto primary = derive_seed(seed, kPrimarySamplerStream + f);
  const auto second = derive_seed(seed, kSecondSamplerStream + f);
  const auto mixing = derive_seed(seed, kMixStream + f);
  switch (cfg.method.method) {
    case Method::instance:
    case Method::focal:
    case Method::class_balanced:
      return std::make_unique<SampledBatchSource>(examples, make_sampler(labels, h, 1.0, primary));
    case Method::class_based:
      return std::make_unique<SampledBatchSource>(examples, make_sampler(labels, h, 0.0, primary));
    case Method::sqrt:
      return std::make_unique<SampledBatchSource>(examples, make_sampler(labels, h, 0.5, primary));
    case Method::mixup_classic:
      return std::make_unique<ClassicMixupSource>(examples, make_sampler(labels, h, 1.0, primary),
                                                  make_sampler(labels, h, 1.0, second),
                                                  cfg.method.alpha, mixing);
    case Method::balanced_mixup:
      return std::make_unique<BalancedMixupSource>(
          examples, make_sampler(labels, h, 1.0, primary), make_sampler(labels, h, 0.0, second),
          cfg.method.alpha, mixing, cfg.lambda_on);
  }
  throw std::logic_error("unhandled method");
}

LossConfig make_loss(const ExperimentConfig& cfg, const ClassHistogram& h) {
  LossConfig loss;
  loss.gamma = cfg.focal_gamma;
  loss.beta = cfg.cb_beta;
  if (cfg.method.method == Method::focal) {
    loss.kind = LossKind::focal;
  } else if (cfg.method.method == Method::class_balanced) {
    loss.kind = LossKind::class_balanced;
    loss.class_weights = class_balanced_weights(h, cfg.cb_beta);
  }
  return loss;
}

ResultRecord run_cell(const ExperimentConfig& cfg, const std::string& fingerprint,
                      const Dataset& data, const Fold& fold_rows, std::uint64_t seed, int fold) {
  const auto start = std::chrono::steady_clock::now();
  const Dataset train_split = data.subset(fold_rows.train);
  const Dataset val_split = data.subset(fold_rows.validation);
  const Dataset test_split = data.subset(fold_rows.test);
  const ClassHistogram h = train_split.histogram();
  const auto examples = make_examples(train_split);

  auto source = make_source(cfg, examples, train_split.labels, h, seed, fold);
  const LossConfig loss = make_loss(cfg, h);

  const auto steps_per_epoch = static_cast<std::int64_t>(
      (train_split.size() + cfg.batch_size - 1) / cfg.batch_size);
  TrainConfig tc;
  tc.learning_rate = cfg.learning_rate;
  tc.batch_size = cfg.batch_size;
  tc.cycles = cfg.cycles;
  tc.steps_per_cycle = steps_per_epoch * cfg.epochs_per_cycle;
  tc.seed = derive_seed(seed, kInitStream + static_cast<std::uint64_t>(fold));
  tc.selection_metric = cfg.selection_metric;

  Classifier model =
      Classifier::initialized(cfg.architecture, data.dim, data.num_classes, tc.seed);
  const TrainResult tr = train(model, *source, tc, loss, val_split);
  model.set_parameters(tr.best.parameters);

  ResultRecord rec;
  rec.fingerprint = fingerprint;
  rec.method = cfg.method.label();
  rec.architecture = cfg.architecture.descriptor();
  rec.alpha = cfg.method.alpha;
  rec.seed = seed;
  rec.fold = fold;
  rec.sgd_steps = tr.steps;
  rec.best_step = tr.best.step;
  rec.validation_score = tr.best.score;

  const PredictionSet preds = predict_all(model, test_split);
  for (Metric m : cfg.metrics) {
    const MetricResult r = evaluate(m, preds);
    rec.metrics[std::string(to_string(m))] = r.value;
    rec.degenerate[std::string(to_string(m))] = r.degenerate;
  }

  if (cfg.checkpoint_dir) {
    std::filesystem::create_directories(*cfg.checkpoint_dir);
    const auto path = *cfg.checkpoint_dir / (fingerprint + "_s" + std::to_string(seed) + "_f" +
                                             std::to_string(fold) + ".json");
    save_checkpoint(path, {cfg.architecture, data.dim, data.num_classes, tc.seed,
                           std::string(to_string(cfg.selection_metric)), tr.best});
    rec.checkpoint = path.string();
  }
  rec.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

}  // namespace

std::vector<ResultRecord> run(const ExperimentConfig& cfg) {
  validate(cfg);
  return run(cfg, load_data(cfg));
}

std::vector<ResultRecord> run(const ExperimentConfig& cfg, const Dataset& data) {
  validate(cfg);
  const std::string fingerprint = config_fingerprint(cfg);

  struct Cell {
    std::uint64_t seed;
    int fold;
    Fold rows;
  };
  std::vector<Cell> cells;
  for (std::uint64_t seed : cfg.seeds) {
    FoldPlan plan;
    try {
      const auto fold_seed = derive_seed(seed, kFoldStream);
      plan = cfg.protocol.kind == EvaluationProtocol::Kind::kfold
                 ? stratified_kfold(data, cfg.protocol.folds, fold_seed, cfg.protocol.val_fraction)
                 : stratified_holdout_plan(data, cfg.protocol.test_fraction, fold_seed,
                                           cfg.protocol.val_fraction);
    } catch (const std::exception& e) {
      throw ExperimentError("seed " + std::to_string(seed) + ", method " + cfg.method.label() +
                            ": fold planning failed: " + e.what());
    }
    for (std::size_t f = 0; f < plan.folds.size(); ++f) {
      cells.push_back({seed, static_cast<int>(f), std::move(plan.folds[f])});
    }
  }

  std::vector<ResultRecord> records(cells.size());
  std::vector<std::exception_ptr> errors(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      const Cell& c = cells[i];
      try {
        records[i] = run_cell(cfg, fingerprint, data, c.rows, c.seed, c.fold);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto n_threads = std::min<std::size_t>(static_cast<std::size_t>(cfg.threads), cells.size());
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      throw ExperimentError("seed " + std::to_string(cells[i].seed) + ", fold " +
                            std::to_string(cells[i].fold) + ", method " + cfg.method.label() +
                            ": " + e.what());
    }
  }
  return records;
}

std::vector<std::pair<double, std::vector<ResultRecord>>> sweep_alpha(
    const ExperimentConfig& cfg, std::span<const double> alphas) {
  if (alphas.empty()) throw std::invalid_argument("sweep_alpha: empty alpha list");
  if (cfg.method.method != Method::balanced_mixup) {
    throw std::invalid_argument("sweep_alpha: method must be balanced_mixup, got " +
                                cfg.method.label());
  }
  validate(cfg);
  const Dataset data = load_data(cfg);
  std::vector<std::pair<double, std::vector<ResultRecord>>> out;
  for (double a : alphas) {
    ExperimentConfig c = cfg;
    c.method.alpha = a;
    out.emplace_back(a, run(c, data));
  }
  return out;
}

}  // namespace balmix
