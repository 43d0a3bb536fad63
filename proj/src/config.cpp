#include "pesmc/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace pesmc {

using nlohmann::json;

namespace {

[[noreturn]] void parse_error(const std::string& key, const std::string& why) {
  throw Error(ErrorKind::Parse, "config key '" + key + "': " + why);
}

/// Reads one JSON object, remembering which keys were consumed so leftovers
/// can be reported as unknown.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string prefix) : j_(j), prefix_(std::move(prefix)) {
    if (!j_.is_object()) parse_error(prefix_.empty() ? "<root>" : prefix_, "expected an object");
  }

  bool has(const std::string& key) const { return j_.contains(key) && !j_.at(key).is_null(); }

  const json& raw(const std::string& key) {
    seen_.insert(key);
    if (!j_.contains(key)) parse_error(name(key), "missing");
    return j_.at(key);
  }

  double number(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_number()) parse_error(name(key), "expected a number");
    return v.get<double>();
  }
  double number(const std::string& key, double fallback) {
    mark(key);
    return has(key) ? number(key) : fallback;
  }

  long long integer(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_number_integer()) parse_error(name(key), "expected an integer");
    return v.get<long long>();
  }
  long long integer(const std::string& key, long long fallback) {
    mark(key);
    return has(key) ? integer(key) : fallback;
  }

  std::string text(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_string()) parse_error(name(key), "expected a string");
    return v.get<std::string>();
  }

  std::string text(const std::string& key, const std::string& fallback) {
    mark(key);
    return has(key) ? text(key) : fallback;
  }

  void mark(const std::string& key) { seen_.insert(key); }

  std::vector<double> numbers(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_array()) parse_error(name(key), "expected an array of numbers");
    std::vector<double> out;
    for (const json& e : v) {
      if (!e.is_number()) parse_error(name(key), "expected an array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  ObjectReader child(const std::string& key) { return ObjectReader(raw(key), name(key)); }

  std::string name(const std::string& key) const { return prefix_.empty() ? key : prefix_ + "." + key; }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) parse_error(name(key), "unknown key");
    }
  }

 private:
  const json& j_;
  std::string prefix_;
  std::set<std::string> seen_;
};

PhysicalParams read_params(ObjectReader r) {
  PhysicalParams p;
  p.gamma = r.number("gamma");
  p.rho = r.number("rho");
  p.alpha = r.number("alpha");
  p.beta = r.number("beta");
  r.finish();
  return p;
}

SignMode read_sign_mode(ObjectReader r) {
  const std::string kind = r.text("kind");
  SignMode m;
  if (kind == "ideal") {
    m = SignMode::ideal();
  } else if (kind == "saturation") {
    m = SignMode::saturation(r.number("eps"));
  } else if (kind == "smooth-tanh") {
    m = SignMode::smooth_tanh(r.number("eps"));
  } else {
    parse_error(r.name("kind"), "expected ideal, saturation or smooth-tanh");
  }
  r.finish();
  return m;
}

PsiSpec read_psi(ObjectReader r) {
  const std::string kind = r.text("kind");
  PsiSpec psi;
  if (kind == "constant-one") {
    psi.kind = PsiSpec::Kind::ConstantOne;
  } else if (kind == "polynomial") {
    psi.kind = PsiSpec::Kind::Polynomial;
    psi.values = r.numbers("coefficients");
  } else if (kind == "tabulated") {
    psi.kind = PsiSpec::Kind::Tabulated;
    psi.values = r.numbers("values");
  } else {
    parse_error(r.name("kind"), "expected constant-one, polynomial or tabulated");
  }
  r.finish();
  return psi;
}

ControllerSpec read_controller(ObjectReader r) {
  ControllerSpec c;
  c.gain = r.number("gain");
  const std::string law = r.text("law", "basic");
  if (law == "basic") {
    c.law = ControlLaw::Basic;
  } else if (law == "compensated") {
    c.law = ControlLaw::Compensated;
  } else {
    parse_error(r.name("law"), "expected basic or compensated");
  }
  r.mark("sign_mode");
  r.mark("psi");
  if (r.has("sign_mode")) c.sign_mode = read_sign_mode(r.child("sign_mode"));
  if (r.has("psi")) c.psi = read_psi(r.child("psi"));
  r.finish();
  return c;
}

DisturbanceModel read_disturbance(ObjectReader r) {
  const std::string kind = r.text("kind");
  DisturbanceModel m;
  if (kind == "zero") {
    m = DisturbanceModel::zero();
  } else if (kind == "constant") {
    m = DisturbanceModel::constant(r.number("level"));
  } else if (kind == "sinusoid") {
    m = DisturbanceModel::sinusoid(r.number("amplitude"), r.number("angular_frequency"),
                                   r.number("phase", 0.0));
  } else if (kind == "bounded-noise") {
    const long long seed = r.integer("seed");
    if (seed < 0) parse_error(r.name("seed"), "must be non-negative");
    m = DisturbanceModel::bounded_noise(r.number("amplitude"), static_cast<std::uint64_t>(seed),
                                        r.number("hold_interval"));
  } else {
    parse_error(r.name("kind"), "expected zero, constant, sinusoid or bounded-noise");
  }
  r.finish();
  return m;
}

InitialProfile read_profile(ObjectReader r) {
  const std::string kind = r.text("profile");
  InitialProfile p;
  if (kind == "sin-pi") {
    p.kind = InitialProfile::Kind::SinPi;
  } else if (kind == "cos-mode") {
    p.kind = InitialProfile::Kind::CosMode;
    p.mode = static_cast<int>(r.integer("mode"));
  } else if (kind == "constant") {
    p.kind = InitialProfile::Kind::Constant;
    p.value = r.number("value");
  } else if (kind == "tabulated") {
    p.kind = InitialProfile::Kind::Tabulated;
    p.values = r.numbers("values");
  } else {
    parse_error(r.name("profile"), "expected sin-pi, cos-mode, constant or tabulated");
  }
  r.finish();
  return p;
}

json fig1_base() {
  return {
      {"params", {{"gamma", 0.25}, {"rho", 1.0 / 3.0}, {"alpha", 0.25}, {"beta", 0.5}}},
      {"grid_n", 200},
      {"dt", 1e-4},
      {"u0", {{"profile", "sin-pi"}}},
      {"disturbance", {{"kind", "zero"}}},
      {"snapshot_stride", 0},
  };
}

json fig1_closed_loop() {
  json j = fig1_base();
  j["t_final"] = 10.0;
  j["controller"] = {
      {"gain", 2.0},
      {"law", "basic"},
      {"sign_mode", {{"kind", "saturation"}, {"eps", 1e-3}}},
      {"psi", {{"kind", "constant-one"}}},
  };
  j["disturbance"] = {{"kind", "sinusoid"}, {"amplitude", 1.0}, {"angular_frequency", 20.0}, {"phase", 0.0}};
  return j;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"fig1-open-loop", "fig1-closed-loop", "fig2-norms",
                                              "fig3-control-surface", "custom"};
  return names;
}

json scenario_preset(std::string_view name) {
  if (name == "fig1-open-loop") {
    json j = fig1_base();
    j["t_final"] = 6.0;
    j["snapshot_stride"] = 1000;
    return j;
  }
  if (name == "fig1-closed-loop") {
    json j = fig1_closed_loop();
    j["snapshot_stride"] = 1000;
    return j;
  }
  if (name == "fig2-norms" || name == "fig3-control-surface") return fig1_closed_loop();
  throw Error(ErrorKind::Validation, "scenario: no preset named '" + std::string(name) + "'");
}

// A tagged object whose tag changes is replaced rather than merged, so keys of
// the preset's variant do not leak into the override's.
static void drop_if_retagged(json& base, const json& patch, const char* key, const char* tag) {
  if (!base.is_object() || !patch.is_object() || !base.contains(key) || !patch.contains(key)) return;
  const json& b = base[key];
  const json& p = patch[key];
  if (b.is_object() && p.is_object() && p.contains(tag) && b.value(tag, json()) != p[tag]) {
    base.erase(key);
  }
}

SimConfig resolve_config(const json& doc) {
  if (!doc.is_object()) parse_error("<root>", "expected an object");
  json merged = json::object();
  json overrides = doc;
  std::string scenario = "custom";
  if (doc.contains("scenario")) {
    if (!doc["scenario"].is_string()) parse_error("scenario", "expected a string");
    scenario = doc["scenario"].get<std::string>();
    const auto& names = scenario_names();
    if (std::find(names.begin(), names.end(), scenario) == names.end()) {
      throw Error(ErrorKind::Validation, "scenario: unknown scenario '" + scenario + "'");
    }
    overrides.erase("scenario");
  }
  if (scenario != "custom") merged = scenario_preset(scenario);
  drop_if_retagged(merged, overrides, "disturbance", "kind");
  drop_if_retagged(merged, overrides, "u0", "profile");
  if (merged.contains("controller") && overrides.contains("controller")) {
    drop_if_retagged(merged["controller"], overrides["controller"], "sign_mode", "kind");
    drop_if_retagged(merged["controller"], overrides["controller"], "psi", "kind");
  }
  merged.merge_patch(overrides);

  ObjectReader r(merged, "");
  SimConfig cfg;
  cfg.params = read_params(r.child("params"));
  cfg.grid_n = static_cast<int>(r.integer("grid_n"));
  cfg.dt = r.number("dt");
  cfg.t_final = r.number("t_final");
  r.mark("controller");
  if (r.has("controller")) cfg.controller = read_controller(r.child("controller"));
  r.mark("disturbance");
  if (r.has("disturbance")) cfg.disturbance = read_disturbance(r.child("disturbance"));
  cfg.u0 = read_profile(r.child("u0"));
  cfg.snapshot_stride = static_cast<int>(r.integer("snapshot_stride", 0));
  r.finish();
  cfg.validate();
  return cfg;
}

SimConfig parse_config_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("malformed config: ") + e.what());
  }
  return resolve_config(doc);
}

SimConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config_text(buf.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

json to_json(const SimConfig& cfg) {
  json j;
  j["params"] = {{"gamma", cfg.params.gamma},
                 {"rho", cfg.params.rho},
                 {"alpha", cfg.params.alpha},
                 {"beta", cfg.params.beta}};
  j["grid_n"] = cfg.grid_n;
  j["dt"] = cfg.dt;
  j["t_final"] = cfg.t_final;
  if (cfg.controller) {
    const ControllerSpec& c = *cfg.controller;
    json sign;
    switch (c.sign_mode.kind) {
      case SignMode::Kind::Ideal: sign = {{"kind", "ideal"}}; break;
      case SignMode::Kind::Saturation: sign = {{"kind", "saturation"}, {"eps", c.sign_mode.eps}}; break;
      case SignMode::Kind::SmoothTanh: sign = {{"kind", "smooth-tanh"}, {"eps", c.sign_mode.eps}}; break;
    }
    json psi;
    switch (c.psi.kind) {
      case PsiSpec::Kind::ConstantOne: psi = {{"kind", "constant-one"}}; break;
      case PsiSpec::Kind::Polynomial: psi = {{"kind", "polynomial"}, {"coefficients", c.psi.values}}; break;
      case PsiSpec::Kind::Tabulated: psi = {{"kind", "tabulated"}, {"values", c.psi.values}}; break;
    }
    j["controller"] = {{"gain", c.gain},
                       {"law", c.law == ControlLaw::Basic ? "basic" : "compensated"},
                       {"sign_mode", sign},
                       {"psi", psi}};
  } else {
    j["controller"] = nullptr;
  }
  const DisturbanceModel& d = cfg.disturbance;
  switch (d.kind) {
    case DisturbanceModel::Kind::Zero: j["disturbance"] = {{"kind", "zero"}}; break;
    case DisturbanceModel::Kind::Constant: j["disturbance"] = {{"kind", "constant"}, {"level", d.level}}; break;
    case DisturbanceModel::Kind::Sinusoid:
      j["disturbance"] = {{"kind", "sinusoid"},
                          {"amplitude", d.amplitude},
                          {"angular_frequency", d.angular_frequency},
                          {"phase", d.phase}};
      break;
    case DisturbanceModel::Kind::BoundedNoise:
      j["disturbance"] = {{"kind", "bounded-noise"},
                          {"amplitude", d.amplitude},
                          {"seed", d.seed},
                          {"hold_interval", d.hold_interval}};
      break;
  }
  switch (cfg.u0.kind) {
    case InitialProfile::Kind::SinPi: j["u0"] = {{"profile", "sin-pi"}}; break;
    case InitialProfile::Kind::CosMode: j["u0"] = {{"profile", "cos-mode"}, {"mode", cfg.u0.mode}}; break;
    case InitialProfile::Kind::Constant: j["u0"] = {{"profile", "constant"}, {"value", cfg.u0.value}}; break;
    case InitialProfile::Kind::Tabulated: j["u0"] = {{"profile", "tabulated"}, {"values", cfg.u0.values}}; break;
  }
  j["snapshot_stride"] = cfg.snapshot_stride;
  return j;
}

}  // namespace pesmc
