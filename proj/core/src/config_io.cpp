#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "aoi/config.hpp"
#include "aoi/errors.hpp"
#include "aoi/units.hpp"

namespace aoi {

namespace {

using nlohmann::json;

enum class Dim { Count, Bits, Frequency, Time, Power, Energy, Length, Rate, Noise, Ratio, EnergyEff };

struct Unit {
  const char* name;
  Dim dim;
  double scale;
};

constexpr Unit kUnits[] = {
    {"Hz", Dim::Frequency, 1.0},   {"kHz", Dim::Frequency, 1e3},  {"MHz", Dim::Frequency, 1e6},
    {"GHz", Dim::Frequency, 1e9},  {"s", Dim::Time, 1.0},         {"ms", Dim::Time, 1e-3},
    {"us", Dim::Time, 1e-6},       {"W", Dim::Power, 1.0},        {"mW", Dim::Power, 1e-3},
    {"uW", Dim::Power, 1e-6},      {"J", Dim::Energy, 1.0},       {"mJ", Dim::Energy, 1e-3},
    {"uJ", Dim::Energy, 1e-6},     {"m", Dim::Length, 1.0},       {"km", Dim::Length, 1e3},
    {"bits", Dim::Bits, 1.0},      {"bit", Dim::Bits, 1.0},       {"pkt/s", Dim::Rate, 1.0},
    {"1/s", Dim::Rate, 1.0},       {"bits/J", Dim::EnergyEff, 1.0}, {"W/Hz", Dim::Noise, 1.0},
};

double parse_quantity(const std::string& key, const json& value, Dim dim) {
  if (value.is_number()) {
    const double v = value.get<double>();
    return dim == Dim::Noise ? units::dbm_per_hz_to_w_per_hz(v) : v;
  }
  if (!value.is_string()) throw ConfigError(key + ": expected a number or a \"<value> <unit>\" string");
  const std::string text = value.get<std::string>();
  std::istringstream in(text);
  double number = 0.0;
  std::string unit;
  if (!(in >> number)) throw ConfigError(key + ": cannot parse quantity '" + text + "'");
  in >> unit;
  std::string rest;
  if (in >> rest) throw ConfigError(key + ": trailing text in '" + text + "'");
  if (unit.empty()) return dim == Dim::Noise ? units::dbm_per_hz_to_w_per_hz(number) : number;
  if (dim == Dim::Noise && unit == "dBm/Hz") return units::dbm_per_hz_to_w_per_hz(number);
  for (const Unit& u : kUnits) {
    if (unit == u.name) {
      if (u.dim != dim) throw ConfigError(key + ": unit '" + unit + "' has the wrong dimension");
      return number * u.scale;
    }
  }
  throw ConfigError(key + ": unknown unit '" + unit + "'");
}

struct Field {
  Dim dim;
  std::function<double&(SystemConfig&)> real;
  std::function<int&(SystemConfig&)> integer;
};

const std::map<std::string, Field>& fields() {
  static const std::map<std::string, Field> table = [] {
    std::map<std::string, Field> t;
    auto r = [&t](const char* name, Dim dim, double SystemConfig::*member) {
      t[name] = Field{dim, [member](SystemConfig& c) -> double& { return c.*member; }, {}};
    };
    auto i = [&t](const char* name, int SystemConfig::*member) {
      t[name] = Field{Dim::Count, {}, [member](SystemConfig& c) -> int& { return c.*member; }};
    };
    i("n_devices", &SystemConfig::n_devices);
    r("packet_len_bits", Dim::Bits, &SystemConfig::packet_len_bits);
    r("bandwidth_hz", Dim::Frequency, &SystemConfig::bandwidth_hz);
    r("guard_band_hz", Dim::Frequency, &SystemConfig::guard_band_hz);
    r("noise_psd", Dim::Noise, &SystemConfig::noise_psd);
    r("carrier_hz", Dim::Frequency, &SystemConfig::carrier_hz);
    r("fading_param", Dim::Ratio, &SystemConfig::fading_param);
    r("pathloss_exp", Dim::Ratio, &SystemConfig::pathloss_exp);
    r("eh_efficiency", Dim::Ratio, &SystemConfig::eh_efficiency);
    r("eh_clamp_w", Dim::Power, &SystemConfig::eh_clamp_w);
    r("sic_threshold_w", Dim::Ratio, &SystemConfig::sic_threshold_w);
    r("tau_p_s", Dim::Time, &SystemConfig::tau_p_s);
    r("tau_b_max_s", Dim::Time, &SystemConfig::tau_b_max_s);
    r("tau_s_max_s", Dim::Time, &SystemConfig::tau_s_max_s);
    r("tau_s_min_s", Dim::Time, &SystemConfig::tau_s_min_s);
    r("lambda_min", Dim::Rate, &SystemConfig::lambda_min);
    r("lambda_max", Dim::Rate, &SystemConfig::lambda_max);
    r("phi_r_max_w", Dim::Power, &SystemConfig::phi_r_max_w);
    r("phi_t_max_w", Dim::Power, &SystemConfig::phi_t_max_w);
    r("battery_j", Dim::Energy, &SystemConfig::battery_j);
    r("capacity_gap", Dim::Ratio, &SystemConfig::capacity_gap);
    r("ee_min", Dim::EnergyEff, &SystemConfig::ee_min);
    r("power_active_w", Dim::Power, &SystemConfig::power_active_w);
    r("power_idle_w", Dim::Power, &SystemConfig::power_idle_w);
    r("power_switch_w", Dim::Power, &SystemConfig::power_switch_w);
    r("switch_ratio", Dim::Ratio, &SystemConfig::switch_ratio);
    i("m_min", &SystemConfig::m_min);
    i("m_max", &SystemConfig::m_max);
    return t;
  }();
  return table;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

json to_json_object(const SystemConfig& cfg) {
  json j = json::object();
  SystemConfig copy = cfg;
  for (const auto& [name, field] : fields()) {
    if (field.integer) {
      j[name] = field.integer(copy);
    } else if (field.dim == Dim::Noise) {
      j[name] = units::w_per_hz_to_dbm_per_hz(field.real(copy));
    } else {
      j[name] = field.real(copy);
    }
  }
  j["distances_m"] = cfg.distances_m;
  return j;
}

}  // namespace

SystemConfig parse_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end(), nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("malformed config: top level must be an object");

  SystemConfig cfg = default_config();
  if (!doc.contains("distances_m") && doc.contains("n_devices") && doc["n_devices"].is_number_integer()) {
    cfg = with_devices(cfg, doc["n_devices"].get<int>());
  }
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string& key = it.key();
    if (!key.empty() && key.front() == '_') continue;  // comment keys
    if (key == "distances_m") {
      if (!it->is_array()) throw ConfigError("distances_m must be an array");
      cfg.distances_m.clear();
      for (const json& d : *it) cfg.distances_m.push_back(parse_quantity(key, d, Dim::Length));
      continue;
    }
    auto f = fields().find(key);
    if (f == fields().end()) throw ConfigError("unknown config key '" + key + "'");
    if (f->second.integer) {
      if (!it->is_number_integer()) throw ConfigError(key + " must be an integer");
      f->second.integer(cfg) = it->get<int>();
    } else {
      f->second.real(cfg) = parse_quantity(key, *it, f->second.dim);
    }
  }
  return validate_config(cfg);
}

SystemConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string config_to_json(const SystemConfig& cfg, int indent) {
  return to_json_object(cfg).dump(indent);
}

std::string config_hash(const SystemConfig& cfg) {
  const std::string text = to_json_object(cfg).dump();
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return hex64(h);
}

}  // namespace aoi
