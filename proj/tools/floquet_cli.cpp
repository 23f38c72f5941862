// floquet: synthesise, verify and tabulate exact Floquet driving protocols.
//
// Exit status: 0 success, 1 verification failed (report still written),
// 2 invalid configuration, 3 synthesis or integration error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "floquet/errors.h"
#include "floquet/lattice.h"
#include "floquet/propagate.h"
#include "floquet/spectra.h"
#include "floquet/su3.h"
#include "floquet/synth.h"
#include "run_config.h"

namespace fs = std::filesystem;
using floquet::cli::ConfigError;
using floquet::cli::format_number;
using floquet::cli::Model;
using floquet::cli::RunConfig;

namespace {

struct Overrides {
  std::optional<std::string> config;
  floquet::cli::KeyValues values;
};

void add_common_options(CLI::App& sub, Overrides& o) {
  sub.add_option_function<std::string>("--config", [&o](const std::string& v) { o.config = v; },
                                       "key = value configuration file");
  const std::vector<std::pair<std::string, std::string>> flags{
      {"--out", "output directory"},
      {"--omega", "driving frequency"},
      {"--alpha", "hopping alpha"},
      {"--delta", "flat-band energy Delta"},
      {"--aplus2", "gauge amplitude a+^2"},
      {"--p", "gauge winding p (integer)"},
      {"--kpoints", "momentum grid size"},
      {"--tpoints", "time samples per period"},
      {"--periods", "number of periods n"},
      {"--tol", "integrator tolerance"},
      {"--model", "crossstitch, kitaev, pwave2d or su3flat"},
      {"--mu", "chemical potential (kitaev, pwave2d)"},
      {"--hopping", "hopping t (kitaev)"},
      {"--pairing", "pairing |Delta| (kitaev, pwave2d)"},
      {"--fourier-n", "highest envelope Fourier index"},
      {"--lattice-sites", "sites per sub-lattice for the real-space check"},
      {"--corrupt-fz", "test hook: scale fz of the drive by this factor"},
  };
  for (const auto& [flag, help] : flags) {
    std::string key = flag.substr(2);
    for (char& ch : key) {
      if (ch == '-') ch = '_';
    }
    sub.add_option_function<std::string>(flag, [&o, key](const std::string& v) { o.values[key] = v; }, help);
  }
}

RunConfig resolve(const Overrides& o) {
  floquet::cli::KeyValues merged;
  if (o.config) merged = floquet::cli::read_config_file(*o.config);
  for (const auto& [key, value] : o.values) merged[key] = value;
  return floquet::cli::build_config(merged);
}

floquet::CrossStitchParams crossstitch_params(const RunConfig& c) {
  return {c.alpha, c.delta, c.omega, std::sqrt(c.aplus2), c.p};
}

floquet::GaugeParams default_gauge(const RunConfig& c) {
  floquet::GaugeParams g;
  g.a_plus = std::sqrt(c.aplus2);
  g.p = c.p;
  g.omega = c.omega;
  return g;
}

floquet::EtaProfile su3_eta(const RunConfig& c) { return floquet::EtaProfile::diagonal_chain(c.alpha, c.delta); }

floquet::HamiltonianSpec target_spec(const RunConfig& c) {
  switch (c.model) {
    case Model::CrossStitch:
      return floquet::HamiltonianSpec::cross_stitch(c.alpha, c.delta);
    case Model::Kitaev:
      return floquet::HamiltonianSpec::kitaev_chain(c.mu, c.hopping, c.pairing);
    case Model::PWave2D:
      return floquet::HamiltonianSpec::chiral_p_wave_2d(c.mu, c.pairing);
    case Model::SU3Flat:
      return floquet::HamiltonianSpec::su3_flat(su3_eta(c).eta);
  }
  throw ConfigError("unknown model");
}

floquet::DrivingProtocol make_protocol(const RunConfig& c) {
  floquet::DrivingProtocol protocol = [&] {
    switch (c.model) {
      case Model::CrossStitch:
        return floquet::make_crossstitch_protocol(crossstitch_params(c));
      case Model::SU3Flat:
        return floquet::make_su3_protocol(su3_eta(c).eta, c.omega, std::sqrt(c.aplus2), c.p);
      default:
        return floquet::make_general_protocol(floquet::HamiltonianSpec::zero(2), target_spec(c), default_gauge(c));
    }
  }();
  if (c.corrupt_fz != 1.0) protocol = floquet::with_scaled_fz(std::move(protocol), c.corrupt_fz);
  return protocol;
}

// Two-dimensional models are sampled along the diagonal kx = ky = k.
floquet::Momentum momentum(const RunConfig& c, double k) {
  return c.model == Model::PWave2D ? floquet::Momentum(k, k) : floquet::Momentum(k);
}

std::vector<double> time_grid(const RunConfig& c) {
  const double period = 2.0 * std::numbers::pi / c.omega;
  std::vector<double> t(c.tpoints);
  for (int j = 0; j < c.tpoints; ++j) t[j] = period * j / c.tpoints;
  return t;
}

std::string omega_tag(double omega) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", omega);
  return buf;
}

fs::path write_output(const RunConfig& c, const std::string& name, const std::string& content) {
  fs::create_directories(c.out);
  const fs::path path = fs::path(c.out) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path.string());
  return path;
}

std::string csv_row(std::initializer_list<double> values) {
  std::string row;
  for (double v : values) {
    if (!row.empty()) row += ',';
    row += format_number(v);
  }
  return row + '\n';
}

int cmd_synth(const RunConfig& c) {
  const floquet::DrivingProtocol protocol = make_protocol(c);
  const auto ks = floquet::brillouin_grid(c.kpoints);
  const auto ts = time_grid(c);
  std::string csv = "k,t,fx,fy,fz,f0\n";
  for (double k : ks) {
    const floquet::TimeDrive drive = protocol.at(momentum(c, k));
    for (double t : ts) {
      const floquet::DriveSample f = drive(t);
      csv += csv_row({k, t, f.fx, f.fy, f.fz, f.f0});
    }
  }
  const fs::path path = write_output(c, "drive_omega" + omega_tag(c.omega) + ".csv", csv);
  std::cout << "synth: model=" << to_string(c.model) << " rows=" << ks.size() * ts.size() << " file=" << path.string()
            << '\n';
  return 0;
}

int cmd_verify(const RunConfig& c) {
  const floquet::DrivingProtocol protocol = make_protocol(c);
  std::vector<floquet::Momentum> ks;
  for (double k : floquet::brillouin_grid(c.kpoints)) ks.push_back(momentum(c, k));
  floquet::VerifyOptions options;
  options.tol = c.tol;

  std::optional<floquet::Su3Verification> su3;
  floquet::VerificationReport report;
  if (c.model == Model::SU3Flat) {
    su3 = floquet::verify_su3_protocol(protocol, su3_eta(c), ks, options, c.periods);
    report = su3->report;
  } else {
    report = floquet::verify_protocol(protocol, ks, c.periods, options);
  }
  const bool passed = report.max_strobe_error <= c.tol;

  nlohmann::ordered_json j;
  j["model"] = to_string(c.model);
  j["omega"] = c.omega;
  j["periods"] = c.periods;
  j["tol"] = c.tol;
  j["k_points"] = report.k_points;
  j["t_steps"] = report.t_steps;
  j["strobe_phase"] = {report.strobe_phase.real(), report.strobe_phase.imag()};
  j["max_strobe_error"] = report.max_strobe_error;
  j["max_micromotion_error"] = report.max_micromotion_error;
  if (su3) {
    j["max_flat_phase_error"] = su3->max_flat_phase_error;
    j["max_outer_phase_error"] = su3->max_outer_phase_error;
    j["max_third_level_leak"] = su3->max_third_level_leak;
  }
  j["passed"] = passed;
  nlohmann::ordered_json worst = nlohmann::ordered_json::array();
  for (const auto& w : report.worst(5)) {
    worst.push_back({{"kx", w.k.x}, {"ky", w.k.y}, {"strobe_error", w.strobe_error},
                     {"micromotion_error", w.micromotion_error}, {"steps", w.steps}});
  }
  j["worst"] = worst;

  std::ostringstream text;
  text << "model=" << to_string(c.model) << '\n'
       << "omega=" << format_number(c.omega) << '\n'
       << "periods=" << c.periods << '\n'
       << "tol=" << format_number(c.tol) << '\n'
       << "k_points=" << report.k_points << '\n'
       << "t_steps=" << report.t_steps << '\n'
       << "strobe_phase=" << format_number(report.strobe_phase.real()) << ','
       << format_number(report.strobe_phase.imag()) << '\n'
       << "max_strobe_error=" << format_number(report.max_strobe_error) << '\n'
       << "max_micromotion_error=" << format_number(report.max_micromotion_error) << '\n';
  if (su3) {
    text << "max_flat_phase_error=" << format_number(su3->max_flat_phase_error) << '\n'
         << "max_outer_phase_error=" << format_number(su3->max_outer_phase_error) << '\n'
         << "max_third_level_leak=" << format_number(su3->max_third_level_leak) << '\n';
  }
  int rank = 1;
  for (const auto& w : report.worst(5)) {
    text << "worst_" << rank++ << "=k:" << format_number(w.k.x) << ",strobe_error:" << format_number(w.strobe_error)
         << '\n';
  }
  text << "passed=" << (passed ? "true" : "false") << '\n' << "[json]\n" << j.dump(2) << '\n';

  const fs::path path = write_output(c, "verify_omega" + omega_tag(c.omega) + ".txt", text.str());
  std::cout << "verify: model=" << to_string(c.model) << " omega=" << format_number(c.omega)
            << " periods=" << c.periods << " max_strobe_error=" << format_number(report.max_strobe_error)
            << (passed ? " PASS" : " FAIL") << " report=" << path.string() << '\n';
  return passed ? 0 : 1;
}

int cmd_bands(const RunConfig& c) {
  const floquet::HamiltonianSpec spec = target_spec(c);
  std::vector<floquet::Momentum> ks;
  for (double k : floquet::brillouin_grid(c.kpoints)) ks.push_back(momentum(c, k));
  const floquet::BandTable table = floquet::band_structure(spec, ks);
  std::string csv;
  if (c.model == Model::CrossStitch) {
    csv = "k,E_flat,E_disp\n";
    for (std::size_t i = 0; i < table.rows(); ++i) {
      const auto& e = table.energies[i];
      // The flat band is the eigenvalue at Delta; the other is dispersive.
      const bool low_is_flat = std::abs(e[0] - c.delta) < std::abs(e[1] - c.delta);
      csv += csv_row({ks[i].x, low_is_flat ? e[0] : e[1], low_is_flat ? e[1] : e[0]});
    }
  } else {
    csv = "k";
    for (int b = 0; b < spec.bands(); ++b) csv += ",E_" + std::to_string(b);
    csv += '\n';
    for (std::size_t i = 0; i < table.rows(); ++i) {
      std::string row = format_number(ks[i].x);
      for (double e : table.energies[i]) row += ',' + format_number(e);
      csv += row + '\n';
    }
  }
  const fs::path path = write_output(c, "bands.csv", csv);
  std::cout << "bands: model=" << to_string(c.model) << " rows=" << table.rows() << " file=" << path.string() << '\n';
  return 0;
}

int cmd_fourier(const RunConfig& c) {
  const floquet::FourierTable table = floquet::envelope_fourier(c.aplus2, c.fourier_n);
  std::string csv = "n,c_n\n";
  for (std::size_t i = 0; i < table.n.size(); ++i) csv += std::to_string(table.n[i]) + ',' + format_number(table.c[i]) + '\n';
  const fs::path path = write_output(c, "fourier.csv", csv);
  std::cout << "fourier: aplus2=" << format_number(c.aplus2) << " c_0=" << format_number(table.c.front())
            << " file=" << path.string() << '\n';
  return 0;
}

int cmd_lattice(const RunConfig& c) {
  if (c.model != Model::CrossStitch) throw ConfigError("lattice: only the crossstitch model has a real-space form");
  const floquet::CrossStitchParams cs = crossstitch_params(c);
  const auto terms = floquet::expand_to_lattice(cs);
  const auto ts = time_grid(c);

  std::string summary = "channel,m,harmonic,coefficient\n";
  std::string amplitudes = "t,channel,m,harmonic,amplitude\n";
  for (const auto& term : terms) {
    double peak = 0.0;
    for (double t : ts) peak = std::max(peak, std::abs(term.amplitude(t)));
    if (peak <= 1e-12) continue;
    summary += to_string(term.channel) + ',' + std::to_string(term.range) + ',' + to_string(term.harmonic) + ',' +
               format_number(peak) + '\n';
  }
  for (double t : ts) {
    for (const auto& term : terms) {
      amplitudes += format_number(t) + ',' + to_string(term.channel) + ',' + std::to_string(term.range) + ',' +
                    to_string(term.harmonic) + ',' + format_number(term.amplitude(t)) + '\n';
    }
  }
  const double deviation = floquet::lattice_vs_momentum_check(cs, c.lattice_sites, ts);
  const fs::path path = write_output(c, "lattice_terms.csv", summary);
  write_output(c, "lattice_amplitudes.csv", amplitudes);
  std::cout << "lattice: terms=" << terms.size() << " max_range=" << floquet::kMaxHoppingRange
            << " L=" << c.lattice_sites << " fourier_deviation=" << format_number(deviation)
            << " file=" << path.string() << '\n';
  return 0;
}

int cmd_su3(const RunConfig& c) {
  const auto rows = floquet::su3_drive_table(su3_eta(c), c.omega, std::sqrt(c.aplus2), c.p,
                                             floquet::brillouin_grid(c.kpoints), time_grid(c));
  std::string csv = "k,t,Fx,Fy,Fz,Fx_transcribed,Fy_transcribed,Fz_transcribed,discrepancy\n";
  double worst = 0.0;
  for (const auto& r : rows) {
    csv += csv_row({r.k, r.t, r.general.fx, r.general.fy, r.general.fz, r.transcribed.fx, r.transcribed.fy,
                    r.transcribed.fz, r.discrepancy});
    worst = std::max(worst, r.discrepancy);
  }
  const fs::path path = write_output(c, "su3_drive_omega" + omega_tag(c.omega) + ".csv", csv);
  std::cout << "su3: rows=" << rows.size() << " max_transcription_discrepancy=" << format_number(worst)
            << " file=" << path.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Floquet driving-protocol synthesis and verification"};
  app.require_subcommand(1);
  Overrides overrides;
  using Command = int (*)(const RunConfig&);
  const std::vector<std::tuple<std::string, std::string, Command>> commands{
      {"synth", "write the drive field table", cmd_synth},
      {"verify", "propagate the protocol and compare U(nT) with the target", cmd_verify},
      {"bands", "write the target band structure", cmd_bands},
      {"fourier", "write the envelope Fourier coefficients", cmd_fourier},
      {"lattice", "write the real-space hopping terms", cmd_lattice},
      {"su3", "write the three-band drive table", cmd_su3},
  };
  for (const auto& [name, help, fn] : commands) add_common_options(*app.add_subcommand(name, help), overrides);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const RunConfig config = resolve(overrides);
    for (const auto& [name, help, fn] : commands) {
      if (app.got_subcommand(name)) return fn(config);
    }
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 2;
}
