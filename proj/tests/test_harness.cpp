#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "semsteg/errors.hpp"
#include "semsteg/harness.hpp"

using namespace semsteg;

namespace {

SweepSpec small_spec() {
  SweepSpec s;
  s.base.token = "9000";
  s.base.steps = 10;
  s.snr_db = {5.0, 20.0};
  s.eta = {0.05, 0.2};
  s.trials_per_point = 3;
  return s;
}

std::string field_of(const std::string& text) {
  try {
    parse_config_text(text);
  } catch (const ValidationError& e) {
    return e.field();
  }
  return "<none>";
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST(Config, EmptyObjectNeedsToken) { EXPECT_EQ(field_of("{}"), "token"); }

TEST(Config, DefaultsTable) {
  const auto c = std::get<PipelineConfig>(parse_config_text(R"({"token": "9000"})"));
  EXPECT_EQ(c.lambda, 1.0);
  EXPECT_EQ(c.steps, 50);
  EXPECT_EQ(c.mixing_p, 0.93);
  EXPECT_EQ(c.eta, 0.05);
  EXPECT_EQ(c.snr_db, 10.0);
  EXPECT_EQ(c.channel_h, 1.0);
  EXPECT_EQ(c.predictor, PredictorKind::TinyMLP);
  EXPECT_EQ(c.shape, (Shape{4, 8, 8}));
  EXPECT_EQ(c.eavesdropper_token, "856427");
}

TEST(Config, ValidationNamesField) {
  EXPECT_EQ(field_of(R"({"token": "9000", "eta": 1.5})"), "eta");
  EXPECT_EQ(field_of(R"({"token": "9000", "mixing_p": 0})"), "mixing_p");
  EXPECT_EQ(field_of(R"({"token": "9000", "steps": 0})"), "steps");
  EXPECT_EQ(field_of(R"({"token": "9000", "channel_h": 0})"), "channel_h");
  EXPECT_EQ(field_of(R"({"token": "9000", "lambda": 2})"), "lambda");
  EXPECT_EQ(field_of(R"({"token": "9000", "colour": 1})"), "colour");
  EXPECT_EQ(field_of(R"({"token": "9000", "eta": "high"})"), "eta");
  EXPECT_EQ(field_of(R"({"token": "9000", "shape": [4, 8]})"), "shape");
  EXPECT_EQ(field_of(R"({"token": "9000", "predictor": "unet"})"), "predictor");
  EXPECT_EQ(field_of(R"({"token": "9000", )"), "config");
  EXPECT_EQ(field_of(R"({"axes": {"eta": [0.1, 1.5]}, "base": {"token": "a"}})"), "eta");
  EXPECT_EQ(field_of(R"({"axes": {"snr": [1]}, "base": {"token": "a"}})"), "snr");
}

TEST(Config, MissingFileIsValidationError) {
  EXPECT_THROW(parse_config("/nonexistent/semsteg.json"), ValidationError);
}

TEST(Config, PipelineRoundTrip) {
  PipelineConfig c;
  c.token = "76576";
  c.eta = 0.125;
  c.snr_db = -3.5;
  c.shape = {2, 6, 10};
  c.predictor = PredictorKind::Linear;
  c.complex_iq = true;
  c.predictor_seed = 0xFFFFFFFFFFFFFFFFull;
  const auto back = std::get<PipelineConfig>(parse_config_text(to_json(c).dump()));
  EXPECT_EQ(back, c);
}

TEST(Config, SweepRoundTripAndTokenInheritance) {
  const std::string text = R"({"axes": {"tokens": ["9000", "6718"], "snr_db": [5, 10],
                                "scenarios": ["legit", "E2"]}, "trials_per_point": 4})";
  const auto s = std::get<SweepSpec>(parse_config_text(text));
  EXPECT_EQ(s.base.token, "9000");
  EXPECT_EQ(s.trials_per_point, 4u);
  EXPECT_EQ(s.scenarios, (std::vector<Scenario>{Scenario::Legit, Scenario::E2}));
  EXPECT_EQ(std::get<SweepSpec>(parse_config_text(to_json(s).dump())), s);
}

TEST(Sweep, PointExpansionOrder) {
  SweepSpec s;
  s.base.token = "t";
  s.tokens = {"a", "b"};
  s.eta = {0.1, 0.2};
  s.snr_db = {0, 5, 10};
  const auto pts = expand_points(s);
  ASSERT_EQ(pts.size(), 12u);
  EXPECT_EQ(pts[1].config.snr_db, 5);
  EXPECT_EQ(pts[3].config.eta, 0.2);
  EXPECT_EQ(pts[6].config.token, "b");
  for (std::size_t i = 0; i < pts.size(); ++i) EXPECT_EQ(pts[i].index, i);
}

TEST(Sweep, TrialSeedsDistinct) {
  EXPECT_NE(trial_seed("0", 0, 1), trial_seed("0", 1, 0));
  EXPECT_NE(trial_seed("0", 0, 0), trial_seed("1", 0, 0));
  EXPECT_EQ(trial_seed("0", 2, 3), hash_token("0:2:3", domain::kTrial));
}

TEST(Sweep, RecordsAndAggregates) {
  SweepSpec s = small_spec();
  s.trials_per_point = 20;
  s.base.steps = 5;
  s.base.shape = {2, 8, 8};
  const auto r = run_sweep(s);
  EXPECT_TRUE(r.errors.empty());
  ASSERT_EQ(r.records.size(), 80u);
  const auto rows = aggregate(r.records);
  ASSERT_EQ(rows.size(), 4u);
  for (const auto& row : rows) EXPECT_EQ(row.n, 20u);
  for (std::size_t i = 0; i < r.records.size(); ++i) {
    EXPECT_EQ(r.records[i].point, i / 20);
    EXPECT_EQ(r.records[i].trial, i % 20);
  }
  EXPECT_EQ(count_lines(export_plot_data(r.records, PlotKind::SnrCurves)), 5u);
  EXPECT_EQ(count_lines(export_plot_data(r.records, PlotKind::ScenarioBars)), 17u);
  EXPECT_EQ(count_lines(export_plot_data(r.records, PlotKind::ScenarioBars, {Scenario::E2})), 5u);
}

TEST(Sweep, CallbackSeesCanonicalOrder) {
  std::vector<std::pair<std::size_t, std::size_t>> seen;
  run_sweep(small_spec(), [&](const TrialRecord* r, const ErrorRow*) {
    ASSERT_NE(r, nullptr);
    seen.emplace_back(r->point, r->trial);
  });
  ASSERT_EQ(seen.size(), 12u);
  EXPECT_TRUE(std::is_sorted(seen.begin(), seen.end()));
}

TEST(Sweep, ThreadCountDoesNotChangeOutput) {
  const auto spec = small_spec();
#ifdef _OPENMP
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
#endif
  const auto one = run_sweep(spec);
#ifdef _OPENMP
  omp_set_num_threads(4);
#endif
  const auto four = run_sweep(spec);
#ifdef _OPENMP
  omp_set_num_threads(saved);
#endif
  EXPECT_EQ(one.records, four.records);
  std::ostringstream a, b;
  write_records(a, one);
  write_records(b, four);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(export_plot_data(one.records, PlotKind::EtaCurves),
            export_plot_data(four.records, PlotKind::EtaCurves));
}

TEST(Sweep, RecordsRoundTripThroughJsonLines) {
  const auto r = run_sweep(small_spec());
  std::stringstream ss;
  write_records(ss, r);
  EXPECT_EQ(count_lines(ss.str()), r.records.size());
  const auto back = read_records(ss);
  EXPECT_EQ(back.records, r.records);
  EXPECT_EQ(export_plot_data(back.records, PlotKind::SnrCurves),
            export_plot_data(r.records, PlotKind::SnrCurves));
}

TEST(Sweep, FailingTrialsBecomeErrorRows) {
  // Near-zero mixing blows the coupled state up to infinity within the window.
  SweepSpec s;
  s.base.token = "9000";
  s.base.mixing_p = 1e-3;
  s.base.edit_strength = 1.0;
  s.base.steps = 100;
  s.base.shape = {1, 4, 4};
  s.snr_db = {5, 10};
  s.trials_per_point = 2;
  const auto r = run_sweep(s);
  EXPECT_TRUE(r.records.empty());
  ASSERT_EQ(r.errors.size(), 4u);
  EXPECT_EQ(r.errors[3].point, 1u);
  EXPECT_EQ(r.errors[3].trial, 1u);
  EXPECT_FALSE(r.errors[0].message.empty());

  std::stringstream ss;
  write_records(ss, r);
  const auto back = read_records(ss);
  EXPECT_EQ(back.errors, r.errors);
}

TEST(Aggregate, SingleTrialHasZeroSpread) {
  SweepSpec s = small_spec();
  s.trials_per_point = 1;
  const auto rows = aggregate(run_sweep(s).records);
  for (const auto& row : rows) {
    EXPECT_EQ(row.n, 1u);
    EXPECT_EQ(row.receivers[0].psnr.stddev, 0.0);
    EXPECT_EQ(row.gap.stddev, 0.0);
  }
}

TEST(Aggregate, HandComputedStats) {
  const auto recs = run_sweep(small_spec()).records;
  const auto rows = aggregate(recs);
  // point 0 holds trials 0..2
  double m = 0;
  for (int i = 0; i < 3; ++i) m += recs[i].legit.psnr_db;
  m /= 3;
  double v = 0;
  for (int i = 0; i < 3; ++i) v += std::pow(recs[i].legit.psnr_db - m, 2);
  EXPECT_NEAR(rows[0].receivers[0].psnr.mean, m, 1e-12);
  EXPECT_NEAR(rows[0].receivers[0].psnr.stddev, std::sqrt(v / 2), 1e-12);
  EXPECT_NEAR(rows[0].gap.mean, m - (recs[0].eaves2.psnr_db + recs[1].eaves2.psnr_db +
                                     recs[2].eaves2.psnr_db) / 3, 1e-12);
}

TEST(Export, EmptyInputRejected) {
  EXPECT_THROW(export_plot_data({}, PlotKind::SnrCurves), ValidationError);
  EXPECT_THROW(parse_plot_kind("histogram"), ValidationError);
}

TEST(Export, HeaderLayout) {
  const auto recs = run_sweep(small_spec()).records;
  const auto csv = export_plot_data(recs, PlotKind::SnrCurves, {Scenario::Legit});
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "point,snr_db,legit_psnr_mean,legit_psnr_std,legit_ssim_mean,legit_ssim_std,"
            "legit_mse_mean,legit_mse_std,gap_mean,gap_std,n");
}

TEST(Records, MalformedLineRejected) {
  std::stringstream ss("{\"point\": 0,\n");
  EXPECT_THROW(read_records(ss), ValidationError);
}

TEST(SelfTest, AllChecksPass) {
  for (const auto& r : run_selftest()) EXPECT_TRUE(r.passed) << r.name << ": " << r.detail;
}
