#pragma once

// Configuration files, parameter sweeps, record emission and plot tables.
//
// Config files are JSON. A file with an "axes" object is a sweep spec,
// anything else is a single pipeline config. Records are JSON lines, one
// trial per line; aggregate and plot tables are CSV with a header row.

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "semsteg/pipeline.hpp"

namespace semsteg {

struct SweepSpec {
  PipelineConfig base;
  std::vector<double> snr_db;
  std::vector<double> eta;
  std::vector<std::string> tokens;
  std::vector<std::string> seeds;
  // Reporting axis: selects the receiver groups written to aggregate tables.
  // Every trial evaluates all four receivers regardless.
  std::vector<Scenario> scenarios;
  std::size_t trials_per_point = 1;

  void validate() const;
  bool operator==(const SweepSpec&) const = default;
};

struct SweepPoint {
  std::size_t index = 0;
  PipelineConfig config;
};

// A trial that threw; the sweep records it and carries on.
struct ErrorRow {
  std::size_t point = 0;
  std::size_t trial = 0;
  Seed64 trial_seed{};
  PipelineConfig config;
  std::string message;

  bool operator==(const ErrorRow&) const = default;
};

struct SweepResult {
  std::vector<TrialRecord> records;  // sorted by (point, trial)
  std::vector<ErrorRow> errors;      // sorted by (point, trial)
};

// --- config ---------------------------------------------------------------

nlohmann::json to_json(const PipelineConfig& c);
// Missing keys take defaults; unknown keys and out-of-range values throw
// ValidationError naming the key.
PipelineConfig pipeline_config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SweepSpec& s);
SweepSpec sweep_spec_from_json(const nlohmann::json& j);

using ParsedConfig = std::variant<PipelineConfig, SweepSpec>;
ParsedConfig parse_config_text(const std::string& text);
ParsedConfig parse_config(const std::filesystem::path& path);

// --- records ----------------------------------------------------------------

nlohmann::json to_json(const TrialRecord& r);
TrialRecord trial_record_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ErrorRow& e);

void write_records(std::ostream& out, const SweepResult& result);
SweepResult read_records(std::istream& in);

// --- sweeps -----------------------------------------------------------------

std::vector<SweepPoint> expand_points(const SweepSpec& spec);

// hash_token(base ":" point ":" trial, "trial")
Seed64 trial_seed(const std::string& base, std::size_t point, std::size_t trial);

// Runs every (point, trial) pair, concurrently when OpenMP has threads. The
// callback, if given, sees rows in canonical (point, trial) order.
using RowCallback = std::function<void(const TrialRecord*, const ErrorRow*)>;
SweepResult run_sweep(const SweepSpec& spec, const RowCallback& on_row = {});

// --- aggregates and plot tables ----------------------------------------------

struct Stat {
  double mean = 0.0;
  double stddev = 0.0;  // sample (n - 1) deviation, 0 when n == 1
};

struct ReceiverStats {
  Stat psnr, ssim, mse;
};

struct AggregateRow {
  std::size_t point = 0;
  PipelineConfig config;
  std::size_t n = 0;
  ReceiverStats receivers[4];  // legit, E1, E2, E3
  Stat gap;                    // psnr_legit - psnr_E2
};

std::vector<AggregateRow> aggregate(const std::vector<TrialRecord>& records);

enum class PlotKind { SnrCurves, EtaCurves, ScenarioBars };
PlotKind parse_plot_kind(const std::string& name);

// Column order:
//   snr_curves / eta_curves:
//     point, <axis>, then for each of legit,e1,e2,e3:
//     <r>_psnr_mean, <r>_psnr_std, <r>_ssim_mean, <r>_ssim_std, <r>_mse_mean, <r>_mse_std,
//     then gap_mean, gap_std, n
//   scenario_bars:
//     point, snr_db, eta, scenario, psnr_mean, psnr_std, ssim_mean, ssim_std,
//     mse_mean, mse_std, n
// Only the listed scenarios are written (all four when empty).
std::string export_plot_data(const std::vector<TrialRecord>& records, PlotKind kind,
                             const std::vector<Scenario>& scenarios = {});

// Aggregate table written next to a sweep's records.
std::string aggregate_table(const std::vector<TrialRecord>& records,
                            const std::vector<Scenario>& scenarios = {});

// --- selftest ---------------------------------------------------------------

struct SelfTestResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<SelfTestResult> run_selftest();

}  // namespace semsteg
