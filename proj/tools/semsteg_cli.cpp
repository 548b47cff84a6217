// semsteg command-line front end.
//
// Exit codes: 0 success, 1 usage error, 2 invalid input, 3 numerical
// failure, 4 I/O or other runtime failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "semsteg/errors.hpp"
#include "semsteg/harness.hpp"
#include "semsteg/secrets.hpp"

using namespace semsteg;

namespace {

enum Exit { kOk = 0, kUsage = 1, kInvalid = 2, kNumerical = 3, kRuntime = 4 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Overrides {
  std::optional<std::string> token, seed, predictor;
  std::optional<double> snr_db, eta, mixing_p, edit_strength, lambda;
  std::optional<int> steps;

  void apply(PipelineConfig& c) const {
    if (token) c.token = *token;
    if (seed) c.seed = *seed;
    if (predictor) c.predictor = parse_predictor_kind(*predictor);
    if (snr_db) c.snr_db = *snr_db;
    if (eta) c.eta = *eta;
    if (mixing_p) c.mixing_p = *mixing_p;
    if (edit_strength) c.edit_strength = *edit_strength;
    if (lambda) c.lambda = *lambda;
    if (steps) c.steps = *steps;
  }
};

void add_pipeline_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--token", o.token, "digital token");
  cmd->add_option("--snr-db", o.snr_db, "channel SNR in dB");
  cmd->add_option("--eta", o.eta, "mask density in [0,1]");
  cmd->add_option("--steps", o.steps, "diffusion steps T");
  cmd->add_option("--mixing-p", o.mixing_p, "EDICT mixing coefficient in (0,1]");
  cmd->add_option("--edit-strength", o.edit_strength, "fraction of the schedule used, (0,1]");
  cmd->add_option("--lambda", o.lambda, "reference guidance weight in [0,1]");
  cmd->add_option("--predictor", o.predictor, "zero | linear | tiny_mlp");
  cmd->add_option("--seed", o.seed, "base seed string for trial seeds");
}

std::vector<Scenario> parse_scenarios(const std::vector<std::string>& names) {
  std::vector<Scenario> out;
  for (const auto& n : names) out.push_back(parse_scenario(n));
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path);
  return f;
}

void print_report(std::ostream& os, const char* name, const MetricsReport& m) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%-6s psnr=%.2f dB  ssim=%.4f  mse=%.6g\n", name, m.psnr_db, m.ssim, m.mse);
  os << buf;
}

int cmd_run(const std::string& config, const Overrides& o, const std::string& secret_path,
            const std::vector<std::string>& scenario_names, const std::string& out) {
  PipelineConfig cfg;
  if (!config.empty()) {
    auto parsed = parse_config(config);
    if (!std::holds_alternative<PipelineConfig>(parsed)) {
      throw ValidationError("config", "run expects a single pipeline config, got a sweep");
    }
    cfg = std::get<PipelineConfig>(parsed);
  }
  o.apply(cfg);

  std::optional<LatentGrid> image;
  if (!secret_path.empty()) {
    image = load_pgm(secret_path);
    cfg.shape = image->shape();
  }
  cfg.validate();
  const Seed64 seed = trial_seed(cfg.seed, 0, 0);
  const LatentGrid secret = image ? *image : synthetic_secret(seed, cfg.shape);

  const Pipeline pipe(cfg);
  TrialRecord rec = pipe.run_trial(secret, seed);

  auto scenarios = parse_scenarios(scenario_names);
  if (scenarios.empty()) scenarios = {Scenario::Legit, Scenario::E1, Scenario::E2, Scenario::E3};
  std::cout << "token=" << cfg.token << " snr_db=" << cfg.snr_db << " eta=" << cfg.eta
            << " steps=" << cfg.steps << " shape=" << cfg.shape.str() << '\n';
  for (Scenario s : scenarios) print_report(std::cout, to_string(s).c_str(), rec.report(s));
  std::cout << "noiseless round-trip max error " << rec.edict_roundtrip_error << '\n';

  if (!out.empty()) {
    auto f = open_out(out);
    write_records(f, SweepResult{{rec}, {}});
  }
  return kOk;
}

int cmd_sweep(const std::string& config, const Overrides& o,
              const std::vector<std::string>& scenario_names, const std::string& out,
              const std::string& aggregates) {
  if (config.empty()) throw ValidationError("config", "sweep requires --config");
  auto parsed = parse_config(config);
  if (!std::holds_alternative<SweepSpec>(parsed)) {
    throw ValidationError("config", "sweep expects a file with an \"axes\" object");
  }
  SweepSpec spec = std::get<SweepSpec>(parsed);
  o.apply(spec.base);
  if (!scenario_names.empty()) spec.scenarios = parse_scenarios(scenario_names);
  spec.validate();

  std::ofstream file;
  if (!out.empty()) file = open_out(out);
  std::ostream& records = out.empty() ? std::cout : file;

  const auto result = run_sweep(spec);
  write_records(records, result);
  for (const auto& e : result.errors) {
    std::cerr << "trial " << e.point << ':' << e.trial << " failed: " << e.message << '\n';
  }
  if (!aggregates.empty() && !result.records.empty()) {
    auto f = open_out(aggregates);
    f << aggregate_table(result.records, spec.scenarios);
  }
  std::cerr << result.records.size() << " trials, " << result.errors.size() << " errors\n";
  return result.records.empty() && !result.errors.empty() ? kNumerical : kOk;
}

int cmd_export(const std::string& in_path, const std::string& kind,
               const std::vector<std::string>& scenario_names, const std::string& out) {
  std::ifstream in(in_path);
  if (!in) throw IoError("cannot read " + in_path);
  const auto result = read_records(in);
  const std::string csv = export_plot_data(result.records, parse_plot_kind(kind),
                                           parse_scenarios(scenario_names));
  if (out.empty()) {
    std::cout << csv;
  } else {
    auto f = open_out(out);
    f << csv;
  }
  return kOk;
}

int cmd_selftest() {
  bool ok = true;
  for (const auto& r : run_selftest()) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name;
    if (!r.detail.empty()) std::cout << "  (" << r.detail << ')';
    std::cout << '\n';
    ok = ok && r.passed;
  }
  return ok ? kOk : kNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coverless semantic steganography: hide, transmit and reveal latents"};
  app.require_subcommand(1);

  Overrides ov;
  std::string config, out, secret, in, kind = "snr_curves", aggregates;
  std::vector<std::string> scenarios;

  auto* run = app.add_subcommand("run", "hide, transmit and reveal one secret");
  add_pipeline_flags(run, ov);
  run->add_option("--config", config, "JSON pipeline config");
  run->add_option("--secret", secret, "PGM image to hide (default: synthetic)");
  run->add_option("--scenario", scenarios, "receivers to print: legit, E1, E2, E3");
  run->add_option("--out", out, "write the trial record (JSON lines)");

  auto* sweep = app.add_subcommand("sweep", "run a parameter sweep");
  add_pipeline_flags(sweep, ov);
  sweep->add_option("--config", config, "JSON sweep spec")->required();
  sweep->add_option("--scenario", scenarios, "receivers in the aggregate table");
  sweep->add_option("--out", out, "records file (JSON lines, default stdout)");
  sweep->add_option("--aggregates", aggregates, "aggregate CSV");

  auto* exp = app.add_subcommand("export", "turn records into a plot table");
  exp->add_option("--in", in, "records file (JSON lines)")->required();
  exp->add_option("--kind", kind, "snr_curves | eta_curves | scenario_bars");
  exp->add_option("--scenario", scenarios, "receivers to include");
  exp->add_option("--out", out, "CSV output (default stdout)");

  auto* self = app.add_subcommand("selftest", "run built-in consistency checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*run) return cmd_run(config, ov, secret, scenarios, out);
    if (*sweep) return cmd_sweep(config, ov, scenarios, out, aggregates);
    if (*exp) return cmd_export(in, kind, scenarios, out);
    if (*self) return cmd_selftest();
  } catch (const ValidationError& e) {
    std::cerr << "error[validation] " << e.field() << ": " << e.what() << '\n';
    return kInvalid;
  } catch (const NumericalError& e) {
    std::cerr << "error[numerical] step " << e.step() << ": " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error[runtime] " << e.what() << '\n';
    return kRuntime;
  }
  return kUsage;
}
