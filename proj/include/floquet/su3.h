#pragma once

// Three-band flat-band engineering in the embedded SU(2) block of SU(3).

#include <array>
#include <functional>
#include <vector>

#include "floquet/propagate.h"
#include "floquet/synth.h"

namespace floquet {

struct EtaProfile {
  std::function<std::array<double, 3>(const Momentum&)> eta;
  double eta0 = 0.0;

  // eta_z = 0, eta_x = -eta_y = 2 alpha cos k + delta.
  static EtaProfile diagonal_chain(double alpha, double delta);
};

struct Su3Verification {
  VerificationReport report;
  // Distance of the eigenphase closest to 0 (mod 2 pi) from 0, worst over k.
  double max_flat_phase_error = 0.0;
  // Distance of the outer eigenphases from -+|eta| n T / 2 (mod 2 pi), worst over k.
  double max_outer_phase_error = 0.0;
  // max |U_{a3}|, |U_{3a}| (a = 1, 2) and ||U_33| - 1| of U(nT), worst over k.
  double max_third_level_leak = 0.0;
};

// Synthesises through the general route and verifies U(nT) blockwise against
// (-1)^{pn} on the embedded block and 1 on the third level. Throws
// std::invalid_argument when eta0 != 0.
Su3Verification verify_su3(const EtaProfile& eta, double omega, double a_plus, int p,
                           const std::vector<Momentum>& k_grid, const VerifyOptions& options = {}, int periods = 1);

// Same checks for an arbitrary three-band protocol targeting eta . Lambda.
Su3Verification verify_su3_protocol(const DrivingProtocol& protocol, const EtaProfile& eta,
                                    const std::vector<Momentum>& k_grid, const VerifyOptions& options = {},
                                    int periods = 1);

struct Su3DriveRow {
  double k = 0.0;
  double t = 0.0;
  DriveSample general;
  DriveSample transcribed;
  // max over x, y, z of |general - transcribed|.
  double discrepancy = 0.0;
};

// Row-major over k then t.
std::vector<Su3DriveRow> su3_drive_table(const EtaProfile& eta, double omega, double a_plus, int p,
                                         const std::vector<double>& k_grid, const std::vector<double>& t_grid);

// Angular distance between two phases, in [0, pi].
double phase_distance(double a, double b);

}  // namespace floquet
