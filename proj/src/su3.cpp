#include "floquet/su3.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "floquet/spectra.h"

namespace floquet {

EtaProfile EtaProfile::diagonal_chain(double alpha, double delta) {
  return {[alpha, delta](const Momentum& k) {
            const double e = 2.0 * alpha * std::cos(k.x) + delta;
            return std::array<double, 3>{e, -e, 0.0};
          },
          0.0};
}

double phase_distance(double a, double b) {
  return std::abs(std::remainder(a - b, 2.0 * std::numbers::pi));
}

Su3Verification verify_su3(const EtaProfile& eta, double omega, double a_plus, int p,
                           const std::vector<Momentum>& k_grid, const VerifyOptions& options, int periods) {
  if (eta.eta0 != 0.0) throw std::invalid_argument("verify_su3: requires eta0 = 0 (no static Hamiltonian)");
  return verify_su3_protocol(make_su3_protocol(eta.eta, omega, a_plus, p), eta, k_grid, options, periods);
}

Su3Verification verify_su3_protocol(const DrivingProtocol& protocol, const EtaProfile& eta,
                                    const std::vector<Momentum>& k_grid, const VerifyOptions& options, int periods) {
  if (protocol.bands() != 3) throw std::invalid_argument("verify_su3_protocol: protocol must have three bands");
  Su3Verification out;
  out.report = verify_protocol(protocol, k_grid, periods, options);
  const double horizon = protocol.period() * periods;
  const cplx phase = out.report.strobe_phase;
  for (const auto& r : out.report.per_k) {
    MatX u = r.propagator;
    u.topRows(2) /= phase;
    const auto [ex, ey, ez] = eta.eta(r.k);
    const double half = 0.5 * std::sqrt(ex * ex + ey * ey + ez * ez) * horizon;

    std::vector<double> phases;
    for (const cplx& lambda : unitary_eigenvalues(u)) phases.push_back(std::arg(lambda));
    double flat = std::numbers::pi;
    for (double th : phases) flat = std::min(flat, phase_distance(th, 0.0));
    out.max_flat_phase_error = std::max(out.max_flat_phase_error, flat);
    for (double target : {-half, half}) {
      double best = std::numbers::pi;
      for (double th : phases) best = std::min(best, phase_distance(th, target));
      out.max_outer_phase_error = std::max(out.max_outer_phase_error, best);
    }

    const MatX& raw = r.propagator;
    double leak = std::abs(std::abs(raw(2, 2)) - 1.0);
    for (int a = 0; a < 2; ++a) leak = std::max({leak, std::abs(raw(a, 2)), std::abs(raw(2, a))});
    out.max_third_level_leak = std::max(out.max_third_level_leak, leak);
  }
  return out;
}

std::vector<Su3DriveRow> su3_drive_table(const EtaProfile& eta, double omega, double a_plus, int p,
                                         const std::vector<double>& k_grid, const std::vector<double>& t_grid) {
  const DrivingProtocol protocol = make_su3_protocol(eta.eta, omega, a_plus, p);
  std::vector<Su3DriveRow> rows;
  rows.reserve(k_grid.size() * t_grid.size());
  for (double k : k_grid) {
    const auto e = eta.eta(k);
    const TimeDrive drive = protocol.at(k);
    for (double t : t_grid) {
      Su3DriveRow row;
      row.k = k;
      row.t = t;
      row.general = drive(t);
      row.transcribed = su3_closed_form_transcribed(e, omega, a_plus, p, k, t);
      row.discrepancy = std::max({std::abs(row.general.fx - row.transcribed.fx),
                                  std::abs(row.general.fy - row.transcribed.fy),
                                  std::abs(row.general.fz - row.transcribed.fz)});
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace floquet
