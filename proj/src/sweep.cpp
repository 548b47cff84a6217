#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "semsteg/errors.hpp"
#include "semsteg/harness.hpp"
#include "semsteg/secrets.hpp"

namespace semsteg {

std::vector<SweepPoint> expand_points(const SweepSpec& spec) {
  // Nesting order, slowest first: token, seed, eta, snr_db.
  auto or_base = []<typename T>(const std::vector<T>& axis, const T& base) {
    return axis.empty() ? std::vector<T>{base} : axis;
  };
  const auto tokens = or_base(spec.tokens, spec.base.token);
  const auto seeds = or_base(spec.seeds, spec.base.seed);
  const auto etas = or_base(spec.eta, spec.base.eta);
  const auto snrs = or_base(spec.snr_db, spec.base.snr_db);

  std::vector<SweepPoint> points;
  for (const auto& token : tokens)
    for (const auto& seed : seeds)
      for (double eta : etas)
        for (double snr : snrs) {
          PipelineConfig c = spec.base;
          c.token = token;
          c.seed = seed;
          c.eta = eta;
          c.snr_db = snr;
          points.push_back({points.size(), std::move(c)});
        }
  return points;
}

Seed64 trial_seed(const std::string& base, std::size_t point, std::size_t trial) {
  return hash_token(base + ":" + std::to_string(point) + ":" + std::to_string(trial), domain::kTrial);
}

SweepResult run_sweep(const SweepSpec& spec, const RowCallback& on_row) {
  spec.validate();
  const auto points = expand_points(spec);
  const std::size_t trials = spec.trials_per_point;
  const std::size_t tasks = points.size() * trials;

  std::vector<std::unique_ptr<Pipeline>> pipelines(points.size());
  std::vector<std::string> point_errors(points.size());
  const auto np = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < np; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      pipelines[k] = std::make_unique<Pipeline>(points[k].config);
    } catch (const std::exception& e) {
      point_errors[k] = e.what();
    }
  }

  std::vector<std::optional<TrialRecord>> records(tasks);
  std::vector<std::optional<ErrorRow>> errors(tasks);
  const auto nt = static_cast<std::ptrdiff_t>(tasks);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < nt; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const std::size_t p = k / trials;
    const std::size_t t = k % trials;
    const PipelineConfig& cfg = points[p].config;
    const Seed64 seed = trial_seed(cfg.seed, p, t);
    try {
      if (!pipelines[p]) throw std::runtime_error(point_errors[p]);
      TrialRecord r = pipelines[p]->run_trial(synthetic_secret(seed, cfg.shape), seed);
      r.point = p;
      r.trial = t;
      records[k] = std::move(r);
    } catch (const std::exception& e) {
      errors[k] = ErrorRow{p, t, seed, cfg, e.what()};
    }
  }

  SweepResult result;
  for (std::size_t k = 0; k < tasks; ++k) {
    if (records[k]) {
      if (on_row) on_row(&*records[k], nullptr);
      result.records.push_back(std::move(*records[k]));
    } else {
      if (on_row) on_row(nullptr, &*errors[k]);
      result.errors.push_back(std::move(*errors[k]));
    }
  }
  return result;
}

namespace {

constexpr Scenario kAllScenarios[4] = {Scenario::Legit, Scenario::E1, Scenario::E2, Scenario::E3};
constexpr const char* kReceiverNames[4] = {"legit", "e1", "e2", "e3"};

Stat stat_of(const std::vector<double>& v) {
  Stat s;
  if (v.empty()) return s;
  double sum = 0.0;
  for (double x : v) sum += x;
  s.mean = sum / static_cast<double>(v.size());
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(v.size() - 1));
  }
  return s;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::vector<Scenario> selected(const std::vector<Scenario>& scenarios) {
  if (scenarios.empty()) return {std::begin(kAllScenarios), std::end(kAllScenarios)};
  std::vector<Scenario> out;
  for (Scenario s : kAllScenarios) {
    for (Scenario want : scenarios) {
      if (s == want) {
        out.push_back(s);
        break;
      }
    }
  }
  return out;
}

std::size_t idx(Scenario s) { return static_cast<std::size_t>(s); }

void append_stat(std::ostringstream& os, const Stat& s) { os << ',' << num(s.mean) << ',' << num(s.stddev); }

void append_receiver(std::ostringstream& os, const ReceiverStats& r) {
  append_stat(os, r.psnr);
  append_stat(os, r.ssim);
  append_stat(os, r.mse);
}

void receiver_header(std::ostringstream& os, const std::string& prefix) {
  for (const char* m : {"psnr", "ssim", "mse"}) os << ',' << prefix << m << "_mean," << prefix << m << "_std";
}

}  // namespace

std::vector<AggregateRow> aggregate(const std::vector<TrialRecord>& records) {
  std::map<std::size_t, std::vector<const TrialRecord*>> by_point;
  for (const auto& r : records) by_point[r.point].push_back(&r);

  std::vector<AggregateRow> rows;
  for (const auto& [point, group] : by_point) {
    AggregateRow row;
    row.point = point;
    row.config = group.front()->config;
    row.n = group.size();
    for (Scenario s : kAllScenarios) {
      std::vector<double> psnr, ssim, mse;
      for (const TrialRecord* r : group) {
        psnr.push_back(r->report(s).psnr_db);
        ssim.push_back(r->report(s).ssim);
        mse.push_back(r->report(s).mse);
      }
      row.receivers[idx(s)] = {stat_of(psnr), stat_of(ssim), stat_of(mse)};
    }
    std::vector<double> gap;
    for (const TrialRecord* r : group) gap.push_back(r->legit.psnr_db - r->eaves2.psnr_db);
    row.gap = stat_of(gap);
    rows.push_back(std::move(row));
  }
  return rows;
}

PlotKind parse_plot_kind(const std::string& name) {
  if (name == "snr_curves") return PlotKind::SnrCurves;
  if (name == "eta_curves") return PlotKind::EtaCurves;
  if (name == "scenario_bars") return PlotKind::ScenarioBars;
  throw ValidationError("kind", "unknown plot kind '" + name + "'");
}

std::string export_plot_data(const std::vector<TrialRecord>& records, PlotKind kind,
                             const std::vector<Scenario>& scenarios) {
  if (records.empty()) throw ValidationError("records", "nothing to export");
  const auto rows = aggregate(records);
  const auto which = selected(scenarios);
  std::ostringstream os;

  if (kind == PlotKind::ScenarioBars) {
    os << "point,snr_db,eta,scenario,psnr_mean,psnr_std,ssim_mean,ssim_std,mse_mean,mse_std,n\n";
    for (const auto& row : rows) {
      for (Scenario s : which) {
        os << row.point << ',' << num(row.config.snr_db) << ',' << num(row.config.eta) << ','
           << to_string(s);
        append_receiver(os, row.receivers[idx(s)]);
        os << ',' << row.n << '\n';
      }
    }
    return os.str();
  }

  const bool snr = kind == PlotKind::SnrCurves;
  os << "point," << (snr ? "snr_db" : "eta");
  for (Scenario s : which) receiver_header(os, std::string(kReceiverNames[idx(s)]) + "_");
  os << ",gap_mean,gap_std,n\n";
  for (const auto& row : rows) {
    os << row.point << ',' << num(snr ? row.config.snr_db : row.config.eta);
    for (Scenario s : which) append_receiver(os, row.receivers[idx(s)]);
    append_stat(os, row.gap);
    os << ',' << row.n << '\n';
  }
  return os.str();
}

std::string aggregate_table(const std::vector<TrialRecord>& records,
                            const std::vector<Scenario>& scenarios) {
  const auto rows = aggregate(records);
  const auto which = selected(scenarios);
  std::ostringstream os;
  os << "point,token,seed,eta,snr_db";
  for (Scenario s : which) receiver_header(os, std::string(kReceiverNames[idx(s)]) + "_");
  os << ",gap_mean,gap_std,n\n";
  for (const auto& row : rows) {
    os << row.point << ',' << row.config.token << ',' << row.config.seed << ','
       << num(row.config.eta) << ',' << num(row.config.snr_db);
    for (Scenario s : which) append_receiver(os, row.receivers[idx(s)]);
    append_stat(os, row.gap);
    os << ',' << row.n << '\n';
  }
  return os.str();
}

}  // namespace semsteg
