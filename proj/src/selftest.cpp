#include <cmath>
#include <functional>
#include <sstream>

#include "semsteg/edict.hpp"
#include "semsteg/harness.hpp"
#include "semsteg/link.hpp"
#include "semsteg/metrics.hpp"
#include "semsteg/secrets.hpp"
#include "semsteg/token.hpp"

namespace semsteg {

namespace {

struct Check {
  const char* name;
  std::function<std::pair<bool, std::string>()> body;
};

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

std::vector<SelfTestResult> run_selftest() {
  const std::vector<Check> checks = {
      {"sha256_empty_vector",
       [] {
         const Seed64 s = hash_token("", "");
         return std::pair{s.value == 0xE3B0C44298FC1C14ULL, to_hex(s)};
       }},
      {"gaussian_moments",
       [] {
         const auto v = gaussian_stream(hash_token("selftest", domain::kInit), 1'000'000);
         double m = 0, q = 0;
         for (double x : v) m += x;
         m /= static_cast<double>(v.size());
         for (double x : v) q += (x - m) * (x - m);
         q /= static_cast<double>(v.size());
         return std::pair{std::abs(m) < 0.005 && std::abs(q - 1.0) < 0.01,
                          "mean=" + fmt(m) + " var=" + fmt(q)};
       }},
      {"schedule_identities",
       [] {
         const auto s = build_schedule(50);
         double worst = 0;
         for (int t = 1; t <= 50; ++t) {
           worst = std::max(worst, std::abs(s.gamma(t) * s.a(t) - 1.0));
           worst = std::max(worst, std::abs(s.omega(t) - s.b(t) * s.gamma(t)));
         }
         return std::pair{worst <= 1e-15, "max deviation=" + fmt(worst)};
       }},
      {"edict_exact_inversion",
       [] {
         const Shape shape{4, 8, 8};
         const auto sched = build_schedule(50);
         const Predictor pred({PredictorKind::TinyMLP, Seed64{7}}, shape);
         const SamplerParams params{0.93, 1.0};
         double worst = 0;
         for (int i = 0; i < 5; ++i) {
           CoupledState x{init_latent("selftest-z" + std::to_string(i), shape),
                          init_latent("selftest-u" + std::to_string(i), shape)};
           const auto back = edict_reverse(edict_forward(x, sched, pred, nullptr, params), sched,
                                           pred, nullptr, params);
           worst = std::max({worst, max_abs_diff(back.z, x.z), max_abs_diff(back.u, x.u)});
         }
         return std::pair{worst < 1e-8, "max error=" + fmt(worst)};
       }},
      {"perturb_involution",
       [] {
         const Shape shape{4, 16, 16};
         const auto z = init_latent("selftest", shape);
         const auto m = build_mask("selftest", shape, 0.5);
         return std::pair{restore(perturb(z, m), m) == z, std::string("bit-exact")};
       }},
      {"channel_calibration",
       [] {
         std::vector<double> sig = gaussian_stream(hash_token("selftest", "signal"), 1'000'000);
         const SymbolFrame f = encode(sig);
         double worst = 0;
         for (double snr : {5.0, 10.0, 15.0, 20.0}) {
           ChannelConfig ch{snr, 1.0, hash_token("selftest", "noise")};
           const SymbolFrame rx = transmit(f, ch);
           worst = std::max(worst, std::abs(measured_snr_db(f.symbols, rx.symbols, 1.0) - snr));
         }
         return std::pair{worst <= 0.1, "max |dSNR| dB=" + fmt(worst)};
       }},
      {"metric_identities",
       [] {
         const Shape shape{1, 8, 8};
         const auto a = init_latent("a", shape);
         const auto b = init_latent("b", shape);
         const double lhs = psnr(a, b, 4.0);
         const double rhs = 10 * std::log10(16.0) - 10 * std::log10(mse(a, b));
         const bool ok = std::abs(lhs - rhs) < 1e-10 && ssim(a, a, 4.0) == 1.0 &&
                         psnr_from_mse(0.01, 1.0) == 20.0;
         return std::pair{ok, "psnr delta=" + fmt(std::abs(lhs - rhs))};
       }},
      {"keyed_recovery",
       [] {
         PipelineConfig cfg;
         cfg.token = "9000";
         const Pipeline p(cfg);
         const auto secret = synthetic_secret(Seed64{1}, cfg.shape);
         const double err = max_abs_diff(p.reveal(p.hide(secret)), secret);
         return std::pair{err < 1e-6, "max error=" + fmt(err)};
       }},
  };

  std::vector<SelfTestResult> out;
  for (const auto& c : checks) {
    SelfTestResult r{c.name, false, ""};
    try {
      auto [ok, detail] = c.body();
      r.passed = ok;
      r.detail = std::move(detail);
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace semsteg
