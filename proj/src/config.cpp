#include "nhchain/config.hpp"

#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "nhchain/errors.hpp"

namespace nhchain::config {

namespace {

using nlohmann::json;

void require_keys(const json& j, const std::string& where,
                  const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ConfigError("config: '" + where + "' must be an object");
  for (const auto& [key, value] : j.items())
    if (!allowed.contains(key))
      throw ConfigError("config: unknown key '" + key + "' in '" + where + "'");
}

Complex complex_from(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError("config: '" + where + "' must be a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

json complex_to(Complex z) { return json::array({z.real(), z.imag()}); }

template <typename T>
T get_or(const json& j, const std::string& key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config: bad value for '" + key + "'");
  }
}

ChainParams parse_model(const json& j) {
  require_keys(j, "model",
               {"n", "delta", "v", "gamma", "bc", "w", "w1", "w2", "u1", "u2"});
  if (!j.contains("n")) throw ConfigError("config: model.n is required");
  ChainParams p;
  p.n = get_or<int>(j, "n", 1);
  p.delta = get_or<double>(j, "delta", 0.0);
  p.v = get_or<double>(j, "v", 0.0);
  p.gamma = get_or<double>(j, "gamma", 0.0);
  const std::string bc = get_or<std::string>(j, "bc", "obc");
  if (bc == "obc")
    p.bc = Boundary::Open;
  else if (bc == "pbc")
    p.bc = Boundary::Periodic;
  else
    throw ConfigError("config: model.bc must be 'obc' or 'pbc'");

  const bool shorthand = j.contains("w");
  const bool general =
      j.contains("w1") || j.contains("w2") || j.contains("u1") || j.contains("u2");
  if (shorthand && general)
    throw ConfigError("config: model.w (reducible shorthand) and w1/w2/u1/u2 "
                      "are mutually exclusive");
  if (shorthand) {
    const double w = get_or<double>(j, "w", 0.0);
    p.w1 = p.w2 = Complex{w, 0.0};
    p.u1 = Complex{0.0, w};
    p.u2 = Complex{0.0, -w};
  } else if (general) {
    if (j.contains("w1")) p.w1 = complex_from(j.at("w1"), "model.w1");
    if (j.contains("w2")) p.w2 = complex_from(j.at("w2"), "model.w2");
    if (j.contains("u1")) p.u1 = complex_from(j.at("u1"), "model.u1");
    if (j.contains("u2")) p.u2 = complex_from(j.at("u2"), "model.u2");
  }
  p.validate();
  return p;
}

}  // namespace

RunConfig RunConfig::from_json(const json& j) {
  require_keys(j, "<root>",
               {"model", "spectrum", "winding", "dynamics", "scattering", "optimize"});
  if (!j.contains("model")) throw ConfigError("config: 'model' block is required");

  RunConfig c;
  c.model = parse_model(j.at("model"));

  if (j.contains("spectrum")) {
    const json& s = j.at("spectrum");
    require_keys(s, "spectrum", {"k_samples"});
    c.spectrum.k_samples = get_or<int>(s, "k_samples", c.spectrum.k_samples);
  }
  if (j.contains("winding")) {
    const json& s = j.at("winding");
    require_keys(s, "winding", {"k_samples", "base_point"});
    c.winding.k_samples = get_or<int>(s, "k_samples", c.winding.k_samples);
    if (s.contains("base_point"))
      c.winding.base_point = complex_from(s.at("base_point"), "winding.base_point");
  }
  if (j.contains("dynamics")) {
    const json& s = j.at("dynamics");
    require_keys(s, "dynamics",
                 {"t_max", "dt_out", "direction", "phase", "snapshot_time",
                  "include_ports", "integrator"});
    c.dynamics.t_max = get_or<double>(s, "t_max", c.dynamics.t_max);
    c.dynamics.dt_out = get_or<double>(s, "dt_out", c.dynamics.dt_out);
    const std::string dir = get_or<std::string>(s, "direction", "forward");
    if (dir == "forward")
      c.dynamics.forward = true;
    else if (dir == "backward")
      c.dynamics.forward = false;
    else
      throw ConfigError("config: dynamics.direction must be 'forward' or 'backward'");
    if (s.contains("phase")) c.dynamics.phase = get_or<double>(s, "phase", 0.0);
    if (s.contains("snapshot_time"))
      c.dynamics.snapshot_time = get_or<double>(s, "snapshot_time", 0.0);
    c.dynamics.include_ports =
        get_or<bool>(s, "include_ports", c.dynamics.include_ports);
    c.dynamics.integrator = get_or<std::string>(s, "integrator", c.dynamics.integrator);
    if (c.dynamics.integrator != "expm" && c.dynamics.integrator != "rk45")
      throw ConfigError("config: dynamics.integrator must be 'expm' or 'rk45'");
  }
  if (j.contains("scattering")) {
    const json& s = j.at("scattering");
    require_keys(s, "scattering", {"grid_min", "grid_max", "grid_count"});
    c.scattering.grid_min = get_or<double>(s, "grid_min", c.scattering.grid_min);
    c.scattering.grid_max = get_or<double>(s, "grid_max", c.scattering.grid_max);
    c.scattering.grid_count = get_or<int>(s, "grid_count", c.scattering.grid_count);
    if (c.scattering.grid_count < 1)
      throw ConfigError("config: scattering.grid_count must be >= 1");
  }
  if (j.contains("optimize")) {
    const json& s = j.at("optimize");
    require_keys(s, "optimize", {"n_min", "n_max", "tolerance"});
    c.optimize.n_min = get_or<int>(s, "n_min", c.optimize.n_min);
    c.optimize.n_max = get_or<int>(s, "n_max", c.optimize.n_max);
    c.optimize.tolerance = get_or<double>(s, "tolerance", c.optimize.tolerance);
  }
  return c;
}

RunConfig RunConfig::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config: JSON parse error in " + path.string() + ": " + e.what());
  }
  return from_json(j);
}

nlohmann::json RunConfig::to_json() const {
  json j;
  json& m = j["model"];
  m["n"] = model.n;
  m["delta"] = model.delta;
  m["v"] = model.v;
  m["gamma"] = model.gamma;
  m["bc"] = model.bc == Boundary::Open ? "obc" : "pbc";
  m["w1"] = complex_to(model.w1);
  m["w2"] = complex_to(model.w2);
  m["u1"] = complex_to(model.u1);
  m["u2"] = complex_to(model.u2);

  j["spectrum"]["k_samples"] = spectrum.k_samples;
  j["winding"]["k_samples"] = winding.k_samples;
  if (winding.base_point) j["winding"]["base_point"] = complex_to(*winding.base_point);

  json& d = j["dynamics"];
  d["t_max"] = dynamics.t_max;
  d["dt_out"] = dynamics.dt_out;
  d["direction"] = dynamics.forward ? "forward" : "backward";
  if (dynamics.phase) d["phase"] = *dynamics.phase;
  if (dynamics.snapshot_time) d["snapshot_time"] = *dynamics.snapshot_time;
  d["include_ports"] = dynamics.include_ports;
  d["integrator"] = dynamics.integrator;

  json& s = j["scattering"];
  s["grid_min"] = scattering.grid_min;
  s["grid_max"] = scattering.grid_max;
  s["grid_count"] = scattering.grid_count;

  json& o = j["optimize"];
  o["n_min"] = optimize.n_min;
  o["n_max"] = optimize.n_max;
  o["tolerance"] = optimize.tolerance;
  return j;
}

}  // namespace nhchain::config
