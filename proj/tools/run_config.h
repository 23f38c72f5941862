#pragma once

// Flat key=value run configuration for the command-line tool.

#include <map>
#include <stdexcept>
#include <string>

namespace floquet::cli {

// Invalid configuration; the tool exits with status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Model { CrossStitch, Kitaev, PWave2D, SU3Flat };

std::string to_string(Model m);

struct RunConfig {
  Model model = Model::CrossStitch;
  double alpha = 1.0;
  double delta = 2.0;
  double omega = 8.0;
  double aplus2 = 2.0;
  int p = 3;
  // Kitaev chain and p-wave targets.
  double mu = 1.0;
  double hopping = 1.0;
  double pairing = 1.0;
  int kpoints = 64;
  int tpoints = 64;
  int periods = 1;
  double tol = 1e-9;
  int fourier_n = 40;
  int lattice_sites = 8;
  // Test hook: scales fz of the synthesised drive.
  double corrupt_fz = 1.0;
  std::string out = ".";
};

using KeyValues = std::map<std::string, std::string>;

// Parses "key = value" lines; '#' starts a comment, blank lines are skipped.
// Throws ConfigError on a malformed line or a missing file.
KeyValues read_config_file(const std::string& path);

// Builds a validated configuration. Throws ConfigError on unknown keys,
// unparsable numbers, a non-integer p or out-of-range grid sizes and tol.
RunConfig build_config(const KeyValues& values);

// Decimal rendering with 17 significant digits.
std::string format_number(double v);

}  // namespace floquet::cli
