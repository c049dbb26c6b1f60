// Copyright 2026 The gkv Authors
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

// Command-line driver: bank generation, accuracy sweeps, and the
// iso-accuracy minimal-r search. Every command is a pure function of
// (flags, config file, seed) to output bytes.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gkv/episodes.hpp"
#include "gkv/errors.hpp"
#include "gkv/grid.hpp"
#include "gkv/harness.hpp"
#include "gkv/rng.hpp"
#include "gkv/sweep_io.hpp"

namespace {

constexpr std::uint64_t kBankStream = 0xBA;

struct BankOptions {
  std::string bank_path;
  int gen_classes = 0; // 0 = auto
  int gen_samples = 0; // 0 = auto
  double spread = gkv::GeneratorParams::kDefaultWithinClassSd;
  std::string proto_mode = "gaussian";
};

struct ExperimentOptions {
  BankOptions bank;
  int m = 20;
  int n = 5;
  int queries = 15;
  int episodes = 0; // 0 = per-command default
  int workers = 1;
  std::string precision = "real";
  std::string memory = "distributed";
  std::string codebook = "auto";
  bool real_queries = false;
  std::uint64_t seed = 1;
  std::uint64_t noise_seed = 0;
  gkv::PcmParams pcm; // device model of the pcm sweeps
  std::string out;
  std::string json_out;
};

std::uint64_t default_master_seed() {
  const char *env = std::getenv("GKV_SEED");
  if (!env || !*env)
    return 1;
  char *end = nullptr;
  const std::uint64_t value = std::strtoull(env, &end, 10);
  if (*end != '\0')
    throw CLI::ValidationError("GKV_SEED",
                               "must be an unsigned integer, got '" +
                                   std::string(env) + "'");
  return value;
}

gkv::GeneratorParams::PrototypeMode proto_mode_from_string(
    const std::string &name) {
  if (name == "gaussian")
    return gkv::GeneratorParams::PrototypeMode::GaussianUnit;
  if (name == "bipolar")
    return gkv::GeneratorParams::PrototypeMode::BipolarRandom;
  throw gkv::ParseError("unknown prototype mode '" + name +
                        "' (expected gaussian or bipolar)");
}

// Loads the bank file when given, otherwise synthesizes one sized for the
// largest problem the command will run.
std::shared_ptr<const gkv::EmbeddingBank>
resolve_bank(const ExperimentOptions &opts, int max_m, int max_n) {
  if (!opts.bank.bank_path.empty()) {
    return std::make_shared<gkv::EmbeddingBank>(
        gkv::import_bank_csv(opts.bank.bank_path));
  }
  gkv::GeneratorParams params;
  params.d = 512;
  params.num_classes = opts.bank.gen_classes > 0
                           ? opts.bank.gen_classes
                           : std::max(100, max_m);
  params.samples_per_class = opts.bank.gen_samples > 0
                                 ? opts.bank.gen_samples
                                 : std::max(20, max_n + opts.queries);
  params.within_class_sd = opts.bank.spread;
  params.prototype_mode = proto_mode_from_string(opts.bank.proto_mode);
  params.seed = gkv::derive_seed(opts.seed, kBankStream);
  return std::make_shared<gkv::EmbeddingBank>(gkv::generate_bank(params));
}

gkv::ExperimentSpec make_spec(const ExperimentOptions &opts,
                              int default_episodes, int max_m, int max_n) {
  gkv::ExperimentSpec spec;
  spec.memory_kind = gkv::memory_kind_from_string(opts.memory);
  spec.precision = gkv::precision_from_string(opts.precision);
  if (opts.codebook != "auto")
    spec.codebook_mode = gkv::codebook_mode_from_string(opts.codebook);
  spec.m = opts.m;
  spec.n = opts.n;
  spec.queries_per_class = opts.queries;
  spec.episodes = opts.episodes > 0 ? opts.episodes : default_episodes;
  spec.master_seed = opts.seed;
  spec.quantize_queries = !opts.real_queries;
  spec.workers = opts.workers;
  spec.noise.seed = opts.noise_seed;
  spec.noise.pcm = opts.pcm;
  spec.bank = resolve_bank(opts, max_m, max_n);
  return spec;
}

void add_bank_options(CLI::App *cmd, BankOptions &bank) {
  cmd->add_option("--bank", bank.bank_path,
                  "Embedding bank CSV; omit to generate a synthetic bank");
  cmd->add_option("--gen-classes", bank.gen_classes,
                  "Synthetic bank: number of classes (default: fits the run)");
  cmd->add_option("--gen-samples", bank.gen_samples,
                  "Synthetic bank: samples per class (default: fits the run)");
  cmd->add_option("--spread", bank.spread,
                  "Synthetic bank: within-class spread")
      ->capture_default_str();
  cmd->add_option("--proto-mode", bank.proto_mode,
                  "Synthetic bank: prototype mode (gaussian|bipolar)")
      ->capture_default_str();
}

void add_experiment_options(CLI::App *cmd, ExperimentOptions &opts,
                            std::uint64_t seed_default, bool with_mn = true) {
  opts.seed = seed_default;
  add_bank_options(cmd, opts.bank);
  if (with_mn) {
    cmd->add_option("--m", opts.m, "Number of classes per episode")
        ->capture_default_str();
    cmd->add_option("--n", opts.n, "Support samples per class")
        ->capture_default_str();
  }
  cmd->add_option("--queries", opts.queries, "Query samples per class")
      ->capture_default_str();
  cmd->add_option("--episodes", opts.episodes,
                  "Episodes per evaluated point (0 = command default)");
  cmd->add_option("--workers", opts.workers, "Worker threads")
      ->capture_default_str();
  cmd->add_option("--precision", opts.precision,
                  "Key precision (real|bipolar|binary)")
      ->capture_default_str();
  cmd->add_option("--memory", opts.memory, "Memory kind (local|distributed)")
      ->capture_default_str();
  cmd->add_option("--codebook", opts.codebook,
                  "Label codebook (auto|orthogonal|whitened|walsh|gaussian)")
      ->capture_default_str();
  cmd->add_flag("--real-queries", opts.real_queries,
                "Keep queries real-valued even for quantized memories");
  cmd->add_option("--seed", opts.seed, "Master seed (default: $GKV_SEED or 1)")
      ->capture_default_str();
  cmd->add_option("--noise-seed", opts.noise_seed,
                  "Extra seed folded into the noise streams")
      ->capture_default_str();
  cmd->add_option("--out", opts.out, "Output CSV path")->required();
  cmd->add_option("--json-out", opts.json_out, "Also write the result as JSON");
}

void add_pcm_options(CLI::App *cmd, gkv::PcmParams &pcm) {
  cmd->add_option("--pcm-t", pcm.t, "Seconds since programming")
      ->capture_default_str();
  cmd->add_option("--pcm-g0", pcm.g0, "Mean conductance at t = 1 s (S)")
      ->capture_default_str();
  cmd->add_option("--pcm-nu", pcm.nu, "Mean drift exponent")
      ->capture_default_str();
  cmd->add_option("--pcm-read-sd", pcm.g_read_sd,
                  "Additive read-noise SD (S)")
      ->capture_default_str();
  cmd->add_option("--pcm-drift-sd", pcm.nu_rel_sd,
                  "Relative drift-variation SD (fraction)")
      ->capture_default_str();
}

// The --config option is expanded manually before CLI11 parsing (CLI11's
// own config files are sectioned per subcommand; the format here is one
// flat key=value experiment per file). Registered per leaf for --help.
void attach_config(CLI::App *cmd) {
  static std::string ignored;
  cmd->add_option("--config", ignored,
                  "Flat key=value config file; flags take precedence");
}

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string trim(const std::string &text) {
  const auto begin = text.find_first_not_of(" \t\r");
  if (begin == std::string::npos)
    return "";
  const auto end = text.find_last_not_of(" \t\r");
  return text.substr(begin, end - begin + 1);
}

// key=value lines become --key=value tokens.
std::vector<std::string> read_config_tokens(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open config file '" + path + "'");
  std::vector<std::string> tokens;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#')
      continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(number) +
                        ": expected key=value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty())
      throw ConfigError(path + ":" + std::to_string(number) + ": empty key");
    tokens.push_back("--" + key + "=" + value);
  }
  return tokens;
}

// Splices config-file tokens in ahead of the explicit flags, so an option
// given both ways resolves to the flag (TakeLast policy).
std::vector<std::string> expand_config(int argc, char **argv) {
  std::vector<std::string> args;
  std::vector<std::string> config_tokens;
  bool config_seen = false;
  for (int i = 1; i < argc; ++i) {
    const std::string token = argv[i];
    std::string path;
    if (token == "--config") {
      if (i + 1 >= argc)
        throw ConfigError("--config requires a file path");
      path = argv[++i];
    } else if (token.rfind("--config=", 0) == 0) {
      path = token.substr(9);
    } else {
      args.push_back(token);
      continue;
    }
    if (config_seen)
      throw ConfigError("--config given more than once");
    config_seen = true;
    config_tokens = read_config_tokens(path);
  }
  auto first_flag = args.begin();
  while (first_flag != args.end() && first_flag->rfind("-", 0) != 0)
    ++first_flag;
  args.insert(first_flag, config_tokens.begin(), config_tokens.end());
  return args;
}

void apply_take_last(CLI::App *app) {
  for (CLI::Option *option : app->get_options()) {
    if (option->get_expected_max() <= 1)
      option->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  }
  for (CLI::App *sub : app->get_subcommands(nullptr))
    apply_take_last(sub);
}

void report_written(const std::string &path, std::size_t rows) {
  std::cout << "wrote " << path << " (" << rows << " rows)\n";
}

void write_outputs(const gkv::SweepResult &result,
                   const ExperimentOptions &opts) {
  gkv::write_sweep_csv(result, opts.out);
  if (!opts.json_out.empty())
    gkv::write_sweep_json(result, opts.json_out);
  report_written(opts.out, result.points.size());
}

// --- gen-bank -------------------------------------------------------------

struct GenBankOptions {
  int d = 512;
  int classes = 100;
  int samples = 20;
  double spread = gkv::GeneratorParams::kDefaultWithinClassSd;
  std::string proto_mode = "gaussian";
  std::uint64_t seed = 1;
  std::string out;
};

void run_gen_bank(const GenBankOptions &opts) {
  gkv::GeneratorParams params;
  params.d = opts.d;
  params.num_classes = opts.classes;
  params.samples_per_class = opts.samples;
  params.within_class_sd = opts.spread;
  params.prototype_mode = proto_mode_from_string(opts.proto_mode);
  params.seed = opts.seed;
  if (opts.spread == 0.0)
    std::cerr << "warning: --spread 0 duplicates every sample within a class\n";

  const gkv::EmbeddingBank bank = gkv::generate_bank(params);
  gkv::export_bank_csv(bank, opts.out);
  std::cout << "classes=" << bank.num_classes()
            << " samples_per_class=" << params.samples_per_class
            << " d=" << bank.d << " mean_between_class_cos="
            << gkv::format_double(gkv::mean_between_class_cosine(bank))
            << '\n';
  report_written(opts.out, static_cast<std::size_t>(bank.total_samples()));
}

// --- sweeps ---------------------------------------------------------------

void run_sweep_r(const ExperimentOptions &opts, const std::string &r_expr,
                 bool with_baseline) {
  const auto rs = gkv::parse_int_grid(r_expr);
  gkv::ExperimentSpec spec = make_spec(opts, 1000, opts.m, opts.n);
  const gkv::SweepResult result = gkv::sweep_r(spec, rs);
  if (with_baseline) {
    const gkv::AccuracyStats baseline = gkv::local_baseline(spec);
    std::cout << "local_baseline mean=" << gkv::format_double(baseline.mean)
              << " std_error=" << gkv::format_double(baseline.std_error)
              << '\n';
  }
  write_outputs(result, opts);
}

void run_sweep_snr(const ExperimentOptions &opts, const std::string &snr_expr,
                   const std::string &r_expr) {
  const auto snrs = gkv::parse_grid(snr_expr);
  std::vector<int> rs;
  if (gkv::memory_kind_from_string(opts.memory) ==
      gkv::MemoryKind::Distributed)
    rs = gkv::parse_int_grid(r_expr);
  gkv::ExperimentSpec spec = make_spec(opts, 100, opts.m, opts.n);
  write_outputs(gkv::sweep_snr(spec, snrs, rs), opts);
}

void run_sweep_pcm(const ExperimentOptions &opts,
                   const std::string &variation_expr,
                   const std::string &r_expr) {
  const auto variations = gkv::parse_grid(variation_expr);
  std::vector<int> rs;
  if (gkv::memory_kind_from_string(opts.memory) ==
      gkv::MemoryKind::Distributed)
    rs = gkv::parse_int_grid(r_expr);
  gkv::ExperimentSpec spec = make_spec(opts, 1000, opts.m, opts.n);
  write_outputs(gkv::sweep_pcm(spec, variations, rs), opts);
}

// --- iso-r ----------------------------------------------------------------

struct IsoOptions {
  ExperimentOptions experiment;
  std::string m_expr = "20";
  std::string n_expr = "5";
  std::string variation_expr = "0:0.1:2.0";
  std::string scaling; // "", "m", or "n"
  int r_max = 4096;
  double baseline = 0.0; // 0 = compute from the noiseless local memory
};

void run_iso_r(const IsoOptions &iso) {
  const auto ms = gkv::parse_int_grid(iso.m_expr);
  const auto ns = gkv::parse_int_grid(iso.n_expr);
  const auto variations = gkv::parse_grid(iso.variation_expr);
  const ExperimentOptions &opts = iso.experiment;

  if (iso.scaling.empty()) {
    if (ms.size() != 1 || ns.size() != 1)
      throw gkv::ParseError(
          "iso-r: --m and --n must be single values unless --scaling is set");
    ExperimentOptions single = opts;
    single.m = ms.front();
    single.n = ns.front();
    gkv::ExperimentSpec spec = make_spec(single, 1000, single.m, single.n);
    const double baseline = iso.baseline > 0.0
                                ? iso.baseline
                                : gkv::local_baseline(spec).mean;
    std::vector<gkv::IsoRResult> rows;
    for (double variation : variations)
      rows.push_back(gkv::find_iso_r(spec, variation, baseline, iso.r_max));
    gkv::write_iso_csv(rows, opts.out);
    report_written(opts.out, rows.size());
    return;
  }

  std::vector<std::pair<int, int>> sizes;
  if (iso.scaling == "n") {
    if (ms.size() != 1)
      throw gkv::ParseError("iso-r --scaling n: --m must be a single value");
    for (int n : ns)
      sizes.emplace_back(ms.front(), n);
  } else if (iso.scaling == "m") {
    if (ns.size() != 1)
      throw gkv::ParseError("iso-r --scaling m: --n must be a single value");
    for (int m : ms)
      sizes.emplace_back(m, ns.front());
  } else {
    throw gkv::ParseError("iso-r: --scaling must be 'm' or 'n'");
  }

  int max_m = 0;
  int max_n = 0;
  for (const auto &[m, n] : sizes) {
    max_m = std::max(max_m, m);
    max_n = std::max(max_n, n);
  }
  ExperimentOptions sized = opts;
  sized.m = sizes.front().first;
  sized.n = sizes.front().second;
  const int default_episodes = iso.scaling == "n" ? 3000 : 1000;
  gkv::ExperimentSpec spec = make_spec(sized, default_episodes, max_m, max_n);
  const auto rows = gkv::scaling_study(spec, sizes, variations, iso.r_max);
  gkv::write_scaling_csv(rows, opts.out);
  report_written(opts.out, rows.size());
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Key-value memory simulator: original and distributed "
               "(redundancy-adjustable) variants under white noise and "
               "device nonidealities"};
  app.require_subcommand(1);

  std::uint64_t seed_default = 1;
  try {
    seed_default = default_master_seed();
  } catch (const CLI::Error &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  // gen-bank
  GenBankOptions gen;
  gen.seed = seed_default;
  CLI::App *gen_cmd =
      app.add_subcommand("gen-bank", "Generate a synthetic embedding bank");
  gen_cmd->add_option("--d", gen.d, "Vector dimensionality")
      ->capture_default_str();
  gen_cmd->add_option("--classes", gen.classes, "Number of classes")
      ->capture_default_str();
  gen_cmd->add_option("--samples", gen.samples, "Samples per class")
      ->capture_default_str();
  gen_cmd->add_option("--spread", gen.spread, "Within-class spread")
      ->capture_default_str();
  gen_cmd->add_option("--proto-mode", gen.proto_mode,
                      "Prototype mode (gaussian|bipolar)")
      ->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "Generator seed")
      ->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output bank CSV path")->required();
  attach_config(gen_cmd);
  gen_cmd->callback([&] { run_gen_bank(gen); });

  // sweep r|snr|pcm
  CLI::App *sweep_cmd =
      app.add_subcommand("sweep", "Accuracy sweeps over r, SNR, or variation");
  sweep_cmd->require_subcommand(1);

  ExperimentOptions r_opts;
  std::string r_expr_r = "1:1:100";
  bool r_baseline = false;
  CLI::App *r_cmd = sweep_cmd->add_subcommand(
      "r", "Accuracy vs label dimensionality (noiseless)");
  add_experiment_options(r_cmd, r_opts, seed_default);
  r_cmd->add_option("--r", r_expr_r, "r values (list or start:step:stop)")
      ->capture_default_str();
  r_cmd->add_flag("--baseline", r_baseline,
                  "Also print the local-memory baseline accuracy");
  attach_config(r_cmd);
  r_cmd->callback([&] { run_sweep_r(r_opts, r_expr_r, r_baseline); });

  ExperimentOptions snr_opts;
  std::string snr_expr = "-20:2:20";
  std::string r_expr_snr = "50,100,150,200,400";
  CLI::App *snr_cmd = sweep_cmd->add_subcommand(
      "snr", "Accuracy vs white-noise SNR on the similarity vector");
  add_experiment_options(snr_cmd, snr_opts, seed_default);
  snr_cmd->add_option("--snr", snr_expr, "SNR grid in dB")
      ->capture_default_str();
  snr_cmd->add_option("--r", r_expr_snr, "r values (distributed memory)")
      ->capture_default_str();
  attach_config(snr_cmd);
  snr_cmd->callback([&] { run_sweep_snr(snr_opts, snr_expr, r_expr_snr); });

  ExperimentOptions pcm_opts;
  pcm_opts.precision = "bipolar";
  std::string variation_expr = "0:0.2:2.0";
  std::string r_expr_pcm = "50,100,150,200";
  CLI::App *pcm_cmd = sweep_cmd->add_subcommand(
      "pcm", "Accuracy vs conductance variation in the device model");
  add_experiment_options(pcm_cmd, pcm_opts, seed_default);
  pcm_cmd->add_option("--variation", variation_expr,
                      "Relative conductance variation grid (0-2 = 0-200%)")
      ->capture_default_str();
  pcm_cmd->add_option("--r", r_expr_pcm, "r values (distributed memory)")
      ->capture_default_str();
  add_pcm_options(pcm_cmd, pcm_opts.pcm);
  attach_config(pcm_cmd);
  pcm_cmd->callback(
      [&] { run_sweep_pcm(pcm_opts, variation_expr, r_expr_pcm); });

  // iso-r
  IsoOptions iso;
  iso.experiment.precision = "binary";
  CLI::App *iso_cmd = app.add_subcommand(
      "iso-r", "Minimal r maintaining the noiseless local-memory accuracy");
  // --m/--n accept lists in scaling mode, so they are declared as text here.
  add_experiment_options(iso_cmd, iso.experiment, seed_default,
                         /*with_mn=*/false);
  iso_cmd->add_option("--m", iso.m_expr, "Ways (list allowed with --scaling m)")
      ->capture_default_str();
  iso_cmd->add_option("--n", iso.n_expr,
                      "Shots (list allowed with --scaling n)")
      ->capture_default_str();
  iso_cmd->add_option("--variation", iso.variation_expr,
                      "Conductance variation grid")
      ->capture_default_str();
  iso_cmd->add_option("--scaling", iso.scaling,
                      "Scaling study over m or n (varied axis from --m/--n)");
  iso_cmd->add_option("--r-max", iso.r_max, "Search ceiling for r")
      ->capture_default_str();
  iso_cmd->add_option("--baseline", iso.baseline,
                      "Explicit baseline accuracy (default: computed)");
  add_pcm_options(iso_cmd, iso.experiment.pcm);
  attach_config(iso_cmd);
  iso_cmd->callback([&] { run_iso_r(iso); });

  apply_take_last(&app);

  try {
    std::vector<std::string> args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end()); // CLI11 consumes back-to-front
    app.parse(std::move(args));
  } catch (const ConfigError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const gkv::Error &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
