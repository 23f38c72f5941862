#include "run_config.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>

namespace floquet::cli {

std::string to_string(Model m) {
  switch (m) {
    case Model::CrossStitch:
      return "crossstitch";
    case Model::Kitaev:
      return "kitaev";
    case Model::PWave2D:
      return "pwave2d";
    case Model::SU3Flat:
      return "su3flat";
  }
  return "?";
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_real(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError(key + ": not a number: '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v)) throw ConfigError(key + ": not a finite number: '" + text + "'");
  return v;
}

int parse_integer(const std::string& key, const std::string& text) {
  const double v = parse_real(key, text);
  if (std::nearbyint(v) != v || std::abs(v) > std::numeric_limits<int>::max()) {
    throw ConfigError(key + ": must be an integer, got '" + text + "'");
  }
  return static_cast<int>(v);
}

Model parse_model(const std::string& text) {
  if (text == "crossstitch") return Model::CrossStitch;
  if (text == "kitaev") return Model::Kitaev;
  if (text == "pwave2d") return Model::PWave2D;
  if (text == "su3flat") return Model::SU3Flat;
  throw ConfigError("model: expected crossstitch, kitaev, pwave2d or su3flat, got '" + text + "'");
}

}  // namespace

KeyValues read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  KeyValues values;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(number) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(path + ":" + std::to_string(number) + ": empty key");
    values[key] = trim(line.substr(eq + 1));
  }
  return values;
}

RunConfig build_config(const KeyValues& values) {
  RunConfig c;
  const std::map<std::string, std::function<void(const std::string&, const std::string&)>> setters{
      {"model", [&](const auto&, const auto& v) { c.model = parse_model(v); }},
      {"alpha", [&](const auto& k, const auto& v) { c.alpha = parse_real(k, v); }},
      {"delta", [&](const auto& k, const auto& v) { c.delta = parse_real(k, v); }},
      {"omega", [&](const auto& k, const auto& v) { c.omega = parse_real(k, v); }},
      {"aplus2", [&](const auto& k, const auto& v) { c.aplus2 = parse_real(k, v); }},
      {"p", [&](const auto& k, const auto& v) { c.p = parse_integer(k, v); }},
      {"mu", [&](const auto& k, const auto& v) { c.mu = parse_real(k, v); }},
      {"hopping", [&](const auto& k, const auto& v) { c.hopping = parse_real(k, v); }},
      {"pairing", [&](const auto& k, const auto& v) { c.pairing = parse_real(k, v); }},
      {"kpoints", [&](const auto& k, const auto& v) { c.kpoints = parse_integer(k, v); }},
      {"tpoints", [&](const auto& k, const auto& v) { c.tpoints = parse_integer(k, v); }},
      {"periods", [&](const auto& k, const auto& v) { c.periods = parse_integer(k, v); }},
      {"tol", [&](const auto& k, const auto& v) { c.tol = parse_real(k, v); }},
      {"fourier_n", [&](const auto& k, const auto& v) { c.fourier_n = parse_integer(k, v); }},
      {"lattice_sites", [&](const auto& k, const auto& v) { c.lattice_sites = parse_integer(k, v); }},
      {"corrupt_fz", [&](const auto& k, const auto& v) { c.corrupt_fz = parse_real(k, v); }},
      {"out", [&](const auto&, const auto& v) { c.out = v; }},
  };
  for (const auto& [key, value] : values) {
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError("unknown configuration key '" + key + "'");
    it->second(key, value);
  }

  if (!(c.omega > 0.0)) throw ConfigError("omega must be positive");
  if (c.aplus2 < 0.0) throw ConfigError("aplus2 must be >= 0");
  if (c.kpoints < 2) throw ConfigError("kpoints must be >= 2");
  if (c.tpoints < 2) throw ConfigError("tpoints must be >= 2");
  if (c.periods < 1) throw ConfigError("periods must be >= 1");
  if (!(c.tol >= 1e-12 && c.tol <= 1e-4)) throw ConfigError("tol must lie in [1e-12, 1e-4]");
  if (c.fourier_n < 0) throw ConfigError("fourier_n must be >= 0");
  if (c.lattice_sites < 8) throw ConfigError("lattice_sites must be >= 8");
  if (c.out.empty()) throw ConfigError("out must not be empty");
  return c;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace floquet::cli
