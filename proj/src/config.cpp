#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "semsteg/errors.hpp"
#include "semsteg/harness.hpp"

namespace semsteg {

using nlohmann::json;

namespace {

const std::set<std::string>& pipeline_keys() {
  static const std::set<std::string> keys = {
      "token", "public_key_text", "feature_text", "lambda", "steps", "beta_start", "beta_end",
      "predictor", "predictor_seed", "reference_predictor_seed", "reference_steps", "embed_dim",
      "mixing_p", "edit_strength", "eta", "perturb_both_chains", "snr_db", "channel_h",
      "noiseless", "complex_iq", "shape", "ssim_window", "eavesdropper_token",
      "default_reference_token", "seed"};
  return keys;
}

template <typename T>
void read(const json& j, const char* key, T& out) {
  auto it = j.find(key);
  if (it == j.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception& e) {
    throw ValidationError(key, std::string("wrong type: ") + e.what());
  }
}

void read_unsigned(const json& j, const char* key, std::uint64_t& out) {
  auto it = j.find(key);
  if (it == j.end()) return;
  if (!it->is_number_unsigned() && !(it->is_number_integer() && it->get<std::int64_t>() >= 0)) {
    throw ValidationError(key, "must be a non-negative integer");
  }
  out = it->get<std::uint64_t>();
}

void reject_unknown(const json& j, const std::set<std::string>& allowed, const char* where) {
  if (!j.is_object()) throw ValidationError(where, "must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    if (!allowed.contains(k)) throw ValidationError(k, std::string("unknown key in ") + where);
  }
}

}  // namespace

json to_json(const PipelineConfig& c) {
  return json{{"token", c.token},
              {"public_key_text", c.public_key_text},
              {"feature_text", c.feature_text},
              {"lambda", c.lambda},
              {"steps", c.steps},
              {"beta_start", c.beta_start},
              {"beta_end", c.beta_end},
              {"predictor", to_string(c.predictor)},
              {"predictor_seed", c.predictor_seed},
              {"reference_predictor_seed", c.reference_predictor_seed},
              {"reference_steps", c.reference_steps},
              {"embed_dim", c.embed_dim},
              {"mixing_p", c.mixing_p},
              {"edit_strength", c.edit_strength},
              {"eta", c.eta},
              {"perturb_both_chains", c.perturb_both_chains},
              {"snr_db", c.snr_db},
              {"channel_h", c.channel_h},
              {"noiseless", c.noiseless},
              {"complex_iq", c.complex_iq},
              {"shape", json::array({c.shape.channels, c.shape.height, c.shape.width})},
              {"ssim_window", c.ssim_window},
              {"eavesdropper_token", c.eavesdropper_token},
              {"default_reference_token", c.default_reference_token},
              {"seed", c.seed}};
}

PipelineConfig pipeline_config_from_json(const json& j) {
  reject_unknown(j, pipeline_keys(), "config");
  PipelineConfig c;
  read(j, "token", c.token);
  read(j, "public_key_text", c.public_key_text);
  read(j, "feature_text", c.feature_text);
  read(j, "lambda", c.lambda);
  read(j, "steps", c.steps);
  read(j, "beta_start", c.beta_start);
  read(j, "beta_end", c.beta_end);
  if (j.contains("predictor")) {
    std::string kind;
    read(j, "predictor", kind);
    c.predictor = parse_predictor_kind(kind);
  }
  read_unsigned(j, "predictor_seed", c.predictor_seed);
  read_unsigned(j, "reference_predictor_seed", c.reference_predictor_seed);
  read(j, "reference_steps", c.reference_steps);
  if (j.contains("embed_dim")) {
    std::uint64_t d = 0;
    read_unsigned(j, "embed_dim", d);
    c.embed_dim = static_cast<std::size_t>(d);
  }
  read(j, "mixing_p", c.mixing_p);
  read(j, "edit_strength", c.edit_strength);
  read(j, "eta", c.eta);
  read(j, "perturb_both_chains", c.perturb_both_chains);
  read(j, "snr_db", c.snr_db);
  read(j, "channel_h", c.channel_h);
  read(j, "noiseless", c.noiseless);
  read(j, "complex_iq", c.complex_iq);
  if (j.contains("shape")) {
    const json& s = j.at("shape");
    if (!s.is_array() || s.size() != 3) throw ValidationError("shape", "must be [C, H, W]");
    for (const auto& e : s) {
      if (!e.is_number_unsigned() || e.get<std::uint64_t>() == 0) {
        throw ValidationError("shape", "entries must be positive integers");
      }
    }
    c.shape = Shape{s[0].get<std::size_t>(), s[1].get<std::size_t>(), s[2].get<std::size_t>()};
  }
  if (j.contains("ssim_window")) {
    std::uint64_t w = 0;
    read_unsigned(j, "ssim_window", w);
    c.ssim_window = static_cast<std::size_t>(w);
  }
  read(j, "eavesdropper_token", c.eavesdropper_token);
  read(j, "default_reference_token", c.default_reference_token);
  read(j, "seed", c.seed);

  c.validate();
  if (c.ssim_window > c.shape.height || c.ssim_window > c.shape.width) {
    throw ValidationError("ssim_window", "larger than the latent grid");
  }
  return c;
}

void SweepSpec::validate() const {
  base.validate();
  if (snr_db.empty() && eta.empty() && tokens.empty() && seeds.empty() && scenarios.empty()) {
    throw ValidationError("axes", "at least one axis is required");
  }
  if (trials_per_point < 1) throw ValidationError("trials_per_point", "must be >= 1");
  for (double e : eta) {
    if (!(e >= 0.0 && e <= 1.0)) throw ValidationError("eta", "axis value outside [0,1]");
  }
  for (double s : snr_db) {
    if (!std::isfinite(s)) throw ValidationError("snr_db", "axis value must be finite");
  }
  for (const auto& t : tokens) {
    if (t.empty()) throw ValidationError("tokens", "empty token on axis");
  }
}

json to_json(const SweepSpec& s) {
  json axes = json::object();
  if (!s.snr_db.empty()) axes["snr_db"] = s.snr_db;
  if (!s.eta.empty()) axes["eta"] = s.eta;
  if (!s.tokens.empty()) axes["tokens"] = s.tokens;
  if (!s.seeds.empty()) axes["seeds"] = s.seeds;
  if (!s.scenarios.empty()) {
    json sc = json::array();
    for (Scenario x : s.scenarios) sc.push_back(to_string(x));
    axes["scenarios"] = sc;
  }
  return json{{"base", to_json(s.base)}, {"axes", axes}, {"trials_per_point", s.trials_per_point}};
}

SweepSpec sweep_spec_from_json(const json& j) {
  reject_unknown(j, {"base", "axes", "trials_per_point"}, "sweep");
  SweepSpec s;
  // Axis-driven fields may be absent from the base.
  json base = j.value("base", json::object());
  if (!base.is_object()) throw ValidationError("base", "must be a JSON object");
  if (!base.contains("token") && j.at("axes").contains("tokens")) {
    const auto& toks = j.at("axes").at("tokens");
    if (toks.is_array() && !toks.empty() && toks[0].is_string()) base["token"] = toks[0];
  }
  s.base = pipeline_config_from_json(base);

  const json& axes = j.at("axes");
  reject_unknown(axes, {"snr_db", "eta", "tokens", "seeds", "scenarios"}, "axes");
  read(axes, "snr_db", s.snr_db);
  read(axes, "eta", s.eta);
  read(axes, "tokens", s.tokens);
  read(axes, "seeds", s.seeds);
  if (axes.contains("scenarios")) {
    std::vector<std::string> names;
    read(axes, "scenarios", names);
    for (const auto& n : names) s.scenarios.push_back(parse_scenario(n));
  }
  if (j.contains("trials_per_point")) {
    std::uint64_t n = 0;
    read_unsigned(j, "trials_per_point", n);
    s.trials_per_point = static_cast<std::size_t>(n);
  }
  s.validate();
  return s;
}

ParsedConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError("config", std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("config", "top level must be an object");
  if (j.contains("axes")) return sweep_spec_from_json(j);
  return pipeline_config_from_json(j);
}

ParsedConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config", "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

namespace {

json to_json(const MetricsReport& m) {
  return json{{"mse", m.mse}, {"psnr_db", m.psnr_db}, {"ssim", m.ssim}};
}

MetricsReport metrics_from_json(const json& j) {
  return MetricsReport{j.at("mse").get<double>(), j.at("psnr_db").get<double>(),
                       j.at("ssim").get<double>()};
}

}  // namespace

json to_json(const TrialRecord& r) {
  return json{{"point", r.point},
              {"trial", r.trial},
              {"trial_seed", to_hex(r.trial_seed)},
              {"peak", r.peak},
              {"legit", to_json(r.legit)},
              {"eaves1", to_json(r.eaves1)},
              {"eaves2", to_json(r.eaves2)},
              {"eaves3", to_json(r.eaves3)},
              {"edict_roundtrip_error", r.edict_roundtrip_error},
              {"stego_distance", r.stego_distance},
              {"config", to_json(r.config)}};
}

TrialRecord trial_record_from_json(const json& j) {
  try {
    TrialRecord r;
    r.point = j.at("point").get<std::size_t>();
    r.trial = j.at("trial").get<std::size_t>();
    r.trial_seed = seed_from_hex(j.at("trial_seed").get<std::string>());
    r.peak = j.at("peak").get<double>();
    r.legit = metrics_from_json(j.at("legit"));
    r.eaves1 = metrics_from_json(j.at("eaves1"));
    r.eaves2 = metrics_from_json(j.at("eaves2"));
    r.eaves3 = metrics_from_json(j.at("eaves3"));
    r.edict_roundtrip_error = j.at("edict_roundtrip_error").get<double>();
    r.stego_distance = j.at("stego_distance").get<double>();
    r.config = pipeline_config_from_json(j.at("config"));
    return r;
  } catch (const json::exception& e) {
    throw ValidationError("record", e.what());
  }
}

json to_json(const ErrorRow& e) {
  return json{{"point", e.point},
              {"trial", e.trial},
              {"trial_seed", to_hex(e.trial_seed)},
              {"error", e.message},
              {"config", to_json(e.config)}};
}

void write_records(std::ostream& out, const SweepResult& result) {
  std::size_t ri = 0, ei = 0;
  auto key = [](std::size_t p, std::size_t t) { return std::pair{p, t}; };
  while (ri < result.records.size() || ei < result.errors.size()) {
    const bool take_record =
        ei == result.errors.size() ||
        (ri < result.records.size() &&
         key(result.records[ri].point, result.records[ri].trial) <
             key(result.errors[ei].point, result.errors[ei].trial));
    if (take_record) {
      out << to_json(result.records[ri++]).dump() << '\n';
    } else {
      out << to_json(result.errors[ei++]).dump() << '\n';
    }
  }
}

SweepResult read_records(std::istream& in) {
  SweepResult result;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ValidationError("records", "line " + std::to_string(lineno) + ": " + e.what());
    }
    if (j.contains("error")) {
      ErrorRow e;
      e.point = j.at("point").get<std::size_t>();
      e.trial = j.at("trial").get<std::size_t>();
      e.trial_seed = seed_from_hex(j.at("trial_seed").get<std::string>());
      e.message = j.at("error").get<std::string>();
      // The failing config may itself be invalid; keep the row either way.
      try {
        e.config = pipeline_config_from_json(j.at("config"));
      } catch (const std::exception&) {
      }
      result.errors.push_back(std::move(e));
    } else {
      result.records.push_back(trial_record_from_json(j));
    }
  }
  return result;
}

}  // namespace semsteg
