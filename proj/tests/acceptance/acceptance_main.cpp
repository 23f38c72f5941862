// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "floquet/algebra.h"
#include "floquet/gauge.h"
#include "floquet/lattice.h"
#include "floquet/propagate.h"
#include "floquet/spectra.h"
#include "floquet/su3.h"
#include "floquet/synth.h"

using namespace floquet;

namespace {

constexpr double kPi = std::numbers::pi;

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("criterion %2d: %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

std::vector<Momentum> grid(int n) {
  std::vector<Momentum> ks;
  for (double k : brillouin_grid(n)) ks.push_back(k);
  return ks;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

HamiltonianFn<2> hamiltonian(const DrivingProtocol& protocol, const Momentum& k) {
  const CoeffsXYZ bare = protocol.bare.coeffs(k);
  return [drive = protocol.at(k), bare](double t) -> CMat<2> { return assemble_matrix2(bare + drive(t).coeffs()); };
}

void strobe_exactness(int id, double omega) {
  CrossStitchParams cs{};
  cs.omega = omega;
  VerifyOptions options;
  options.micromotion_samples = 0;
  const auto start = std::chrono::steady_clock::now();
  const VerificationReport r = verify_protocol(make_crossstitch_protocol(cs), grid(64), 1, options);
  const double elapsed = seconds_since(start);
  const bool ok = r.max_strobe_error <= 1e-8 && (id != 1 || elapsed <= 30.0);
  report(id, ok, fmt("omega=%g max_strobe_error=%.3e runtime=%.1fs", omega, r.max_strobe_error, elapsed));
}

void multi_period() {
  VerifyOptions options;
  options.micromotion_samples = 0;
  const VerificationReport r = verify_protocol(make_crossstitch_protocol(CrossStitchParams{}), grid(8), 3, options);
  report(3, r.max_strobe_error <= 3e-8, fmt("n=3 k=8 max_error=%.3e", r.max_strobe_error));
}

void micromotion() {
  const DrivingProtocol protocol = make_crossstitch_protocol(CrossStitchParams{});
  VerifyOptions options;
  options.micromotion_samples = 64;
  const VerificationReport r = verify_protocol(protocol, grid(8), 1, options);

  double boundary = 0.0;
  for (double k : {-2.0, 0.0, 1.0, kPi / 3.0}) {
    IntegratorOptions io;
    io.samples = 5;
    io.base_steps = 4096 * 5;
    // Five periods at 1e-9 sit on the accumulated roundoff floor.
    io.tol = 1e-8;
    io.max_steps *= 5;
    const auto trace = integrate_tdse<2>(hamiltonian(protocol, k), 5.0 * protocol.period(), io);
    const auto ps = extract_micromotion<2>(trace, protocol.target.matrix(k));
    for (int n = 1; n <= 5; ++n) {
      const double sign = (protocol.gauge.p * n) % 2 == 0 ? 1.0 : -1.0;
      boundary = std::max(boundary, (ps[n] - sign * Mat2::Identity()).norm());
    }
  }
  const bool ok = r.max_micromotion_error <= 1e-7 && boundary <= 1e-7;
  report(4, ok, fmt("samples=64 max_error=%.3e P(nT) n=1..5 max_error=%.3e", r.max_micromotion_error, boundary));
}

void bands() {
  const BandTable t = band_structure(HamiltonianSpec::cross_stitch(1.0, 2.0), grid(256));
  const auto flat = t.band(1);
  const auto disp = t.band(0);
  const double mean = std::accumulate(flat.begin(), flat.end(), 0.0) / flat.size();
  double var = 0.0;
  double disp_err = 0.0;
  for (std::size_t i = 0; i < flat.size(); ++i) {
    var += (flat[i] - mean) * (flat[i] - mean);
    disp_err = std::max(disp_err, std::abs(disp[i] - (-4.0 * std::cos(t.k_grid[i].x) - 2.0)));
  }
  const double stddev = std::sqrt(var / flat.size());
  const bool ok = stddev <= 1e-12 && std::abs(mean - 2.0) <= 1e-12 && disp_err <= 1e-12;
  report(5, ok, fmt("flat mean=%.15g stddev=%.3e dispersive max_error=%.3e", mean, stddev, disp_err));
}

void fourier() {
  const FourierTable f = envelope_fourier(2.0, 41);
  double odd = 0.0;
  for (int n = 1; n <= 41; n += 2) odd = std::max(odd, std::abs(f.c[n]));
  double ratio = 0.0;
  for (int n = 1; n <= 10; ++n) ratio = std::max(ratio, std::abs(f.c[2 * n + 2] / f.c[2 * n] - (2.0 - std::sqrt(3.0))));
  const double c0 = std::abs(f.c[0] - 1.0 / std::sqrt(3.0));
  report(6, odd <= 1e-12 && ratio <= 1e-6 && c0 <= 1e-10,
         fmt("max|c_odd|=%.3e ratio_error=%.3e c0_error=%.3e", odd, ratio, c0));
}

void static_term() {
  double worst = 0.0;
  for (double alpha : {0.5, 1.0, 2.0}) {
    CrossStitchParams cs{};
    cs.alpha = alpha;
    const DrivingProtocol protocol = make_crossstitch_protocol(cs);
    for (double k : brillouin_grid(64)) {
      for (double r : static_harmonic_residual(protocol, k)) worst = std::max(worst, std::abs(r));
    }
  }
  CrossStitchParams p1{};
  p1.p = 1;
  CrossStitchParams p2{};
  p2.p = 2;
  const double z1 = std::abs(static_harmonic_residual(make_crossstitch_protocol(p1), kPi / 3.0)[2]);
  const double x2 = std::abs(static_harmonic_residual(make_crossstitch_protocol(p2), kPi / 3.0)[0]);
  const double bar = 1e-3 * p1.omega;
  report(7, worst <= 1e-10 && z1 > bar && x2 > bar,
         fmt("p=3 max_residual=%.3e p=1 z=%.4f p=2 x=%.4f", worst, z1, x2));
}

void closed_vs_general() {
  double worst = 0.0;
  for (double omega : {8.0, 4.0}) {
    CrossStitchParams cs{};
    cs.omega = omega;
    const DrivingProtocol closed = make_crossstitch_protocol(cs);
    const DrivingProtocol general = make_crossstitch_general_protocol(cs);
    const double period = 2.0 * kPi / omega;
    for (double k : brillouin_grid(32)) {
      for (int j = 0; j < 32; ++j) {
        const double t = period * j / 32;
        const DriveSample a = closed.drive(k, t);
        const DriveSample b = general.drive(k, t);
        worst = std::max({worst, std::abs(a.fx - b.fx), std::abs(a.fy - b.fy), std::abs(a.fz - b.fz),
                          std::abs(a.f0 - b.f0)});
      }
    }
  }
  report(8, worst <= 1e-12, fmt("32x32 grid omega=8,4 max_difference=%.3e", worst));
}

void lattice() {
  const CrossStitchParams cs{};
  double far = 0.0;
  int max_range = 0;
  std::vector<double> ts;
  for (int j = 0; j < 16; ++j) ts.push_back(2.0 * kPi / cs.omega * j / 16);
  bool ok = true;
  double round_trip = 0.0;
  try {
    for (const auto& term : expand_to_lattice(cs)) max_range = std::max(max_range, term.range);
    // Independent DFT of the closed-form drive in k.
    constexpr int n = 64;
    for (double t : ts) {
      for (int m = 4; m <= n / 2; ++m) {
        std::complex<double> fx = 0.0, fy = 0.0, fz = 0.0;
        for (int j = 0; j < n; ++j) {
          const double k = 2.0 * kPi * j / n;
          const DriveSample d = synth_drive_crossstitch(cs, k, t);
          const std::complex<double> e = std::polar(1.0 / n, -m * k);
          fx += d.fx * e;
          fy += d.fy * e;
          fz += d.fz * e;
        }
        far = std::max({far, std::abs(fx), std::abs(fy), std::abs(fz)});
      }
    }
    round_trip = lattice_vs_momentum_check(cs, 8, ts);
  } catch (const std::exception&) {
    ok = false;
  }
  ok = ok && max_range <= 3 && far <= 1e-12 && round_trip <= 1e-10;
  report(9, ok, fmt("max_range=%g max|harmonic m>3|=%.3e L=8 round_trip=%.3e", max_range, far, round_trip));
}

void su3() {
  VerifyOptions options;
  options.micromotion_samples = 0;
  const EtaProfile eta = EtaProfile::diagonal_chain(1.0, 2.0);
  double strobe = 0.0;
  double flat = 0.0;
  for (double omega : {8.0, 4.0}) {
    const Su3Verification v = verify_su3(eta, omega, std::sqrt(2.0), 3, grid(64), options);
    strobe = std::max(strobe, v.report.max_strobe_error);
    flat = std::max(flat, v.max_flat_phase_error);
  }
  report(10, strobe <= 1e-8 && flat <= 1e-8, fmt("omega=8,4 k=64 max_block_error=%.3e flat_phase_error=%.3e", strobe, flat));
}

void integrator_health() {
  const DrivingProtocol protocol = make_crossstitch_protocol(CrossStitchParams{});
  const double period = protocol.period();
  double agreement = 0.0;
  double order_lo = 1e9;
  double order_hi = -1e9;
  for (double k : {-2.5, 0.0, 1.0, 2.0}) {
    const auto h = hamiltonian(protocol, k);
    const MatX target = strobe_target(protocol.target.matrix(k), period, -1.0);
    const PropagatorTrace<2> midpoint = integrate_tdse<2>(h, period, IntegratorOptions{});
    const CMat<2> cf4 = propagate_cf4<2>(h, period, 4096);
    agreement = std::max(agreement, (midpoint.unitaries.back() - cf4).norm());

    std::vector<double> errors;
    for (long steps : {256L, 512L, 1024L}) {
      errors.push_back((propagate_midpoint<2>(h, period, steps).unitaries.back() - target).norm());
    }
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
      const double order = std::log2(errors[i] / errors[i + 1]);
      order_lo = std::min(order_lo, order);
      order_hi = std::max(order_hi, order);
    }
  }
  const bool ok = agreement <= 1e-9 && order_lo >= 1.8 && order_hi <= 2.2;
  report(11, ok, fmt("midpoint_vs_cf4=%.3e midpoint_order in [%.3f, %.3f]", agreement, order_lo, order_hi));
}

void guarded(const std::function<void()>& fn, int id) {
  try {
    fn();
  } catch (const std::exception& e) {
    report(id, false, std::string("exception: ") + e.what());
  }
}

}  // namespace

int main() {
  guarded([] { strobe_exactness(1, 8.0); }, 1);
  guarded([] { strobe_exactness(2, 4.0); }, 2);
  guarded(multi_period, 3);
  guarded(micromotion, 4);
  guarded(bands, 5);
  guarded(fourier, 6);
  guarded(static_term, 7);
  guarded(closed_vs_general, 8);
  guarded(lattice, 9);
  guarded(su3, 10);
  guarded(integrator_health, 11);
  std::printf("%s: %d of 11 criteria failed\n", failures == 0 ? "ALL PASS" : "FAIL", failures);
  return failures == 0 ? 0 : 1;
}
