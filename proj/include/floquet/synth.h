#pragma once

// Driving-protocol synthesis.
//
// Matching coefficients of i dU/dt = H(t) U with U = P(t) e^{-i H_eff t}
// gives, in the (S+, S-, Sz) coefficient triple,
//
//   h + f(t) = M1(m+) . (dm+, dm+*, dmzR) + M2(m+, mzR) . h_eff,
//   h0 + f0(t) = dm0 + h0_eff.

#include <array>
#include <functional>
#include <numbers>

#include "floquet/algebra.h"
#include "floquet/gauge.h"

namespace floquet {

// Real drive coefficients at one (k, t): V = f0 * 1 + fx Sx + fy Sy + fz Sz.
struct DriveSample {
  double f0 = 0.0;
  double fx = 0.0;
  double fy = 0.0;
  double fz = 0.0;

  CoeffsXYZ coeffs() const { return {f0, fx, fy, fz}; }
};

struct TransformMatrices {
  Mat3 m1;
  Mat3 m2;
};

Mat3 transform_m1(cplx m_plus);
Mat3 transform_m2(cplx m_plus, double mz_r);

enum class SynthesisMethod { GeneralM1M2, ClosedFormCrossStitch, ClosedFormSU3, TranscribedSU3 };

// General route. Throws NonPeriodicGauge if the gauge fails boundary_report and
// HermiticityError if the +-Z drive triple is not a conjugate pair within 1e-10.
DriveSample synth_drive_general(const HamiltonianSpec& bare, const HamiltonianSpec& target, const GaugeParams& gauge,
                                const Momentum& k, double t);

// Same as above without re-running the boundary check; for hot loops after the
// caller has validated the gauge once.
DriveSample synth_drive_general_unchecked(const CoeffsXYZ& bare, const CoeffsXYZ& target, const GaugeParams& gauge,
                                          const Momentum& k, double t);

struct CrossStitchParams {
  double alpha = 1.0;
  double delta = 2.0;
  double omega = 8.0;
  double a_plus = std::numbers::sqrt2;
  int p = 3;
};

// Envelope f_e = 1 / (1 + a+^2 sin^2 wt).
double drive_envelope(double a_plus, double omega, double t);

// Closed-form cross-stitch drive (gauge phi0 = 0, theta = 0) in the S basis.
// Transverse components are fx = 2 Re f-, fy = -2 Im f-.
DriveSample synth_drive_crossstitch(const CrossStitchParams& cs, double k, double t);

// The three-band drive for H_eff = eta . Lambda via the general route with a
// zero bare Hamiltonian and gauge (a0 = 0, theta = 0).
DriveSample synth_drive_su3(const std::array<double, 3>& eta, double omega, double a_plus, int p, double k, double t);

// Closed form for arbitrary eta with zero bare Hamiltonian (S basis), derived
// from the general route; valid for two and three bands.
DriveSample synth_drive_eta_closed_form(const std::array<double, 3>& eta, double omega, double a_plus, int p, double k,
                                        double t);

// Alternative three-band closed form with an inconsistent t = 0 limit; comparison only.
DriveSample su3_closed_form_transcribed(const std::array<double, 3>& eta, double omega, double a_plus, int p, double k,
                                        double t);

// General-route drive at a fixed momentum. Momentum-dependent factors are
// computed once; the default gauge gets e^{i p w t} as a power of e^{i w t}.
class GeneralDriveKernel {
 public:
  GeneralDriveKernel(const CoeffsXYZ& bare, const CoeffsXYZ& target, const GaugeParams& gauge, const Momentum& k);
  DriveSample operator()(double t) const;

 private:
  Vec3c target_;
  Vec3c bare_;
  double dh0_;
  GaugeParams gauge_;
  Momentum k_;
  cplx phi_;
  cplx theta_phase_;
  double phi0_;
};

// Closed-form cross-stitch drive at a fixed momentum.
class CrossStitchKernel {
 public:
  CrossStitchKernel(const CrossStitchParams& cs, double k);
  DriveSample operator()(double t) const;

 private:
  CrossStitchParams cs_;
  double sk_, ck_, s2k_, c2k_, heff_;
};

// Closed-form drive for H_eff = eta . S (or eta . Lambda) with zero bare
// Hamiltonian and gauge (a0 = 0, theta = 0, phi+ = e^{ik}).
class EtaClosedFormKernel {
 public:
  EtaClosedFormKernel(const std::array<double, 3>& eta, double omega, double a_plus, int p, double k);
  DriveSample operator()(double t) const;

 private:
  std::array<double, 3> eta_;
  double omega_, a_, sk_, ck_, s2k_, c2k_;
  int p_;
};

using TimeDrive = std::function<DriveSample(double)>;

// An evaluable protocol H_k(t) = H_k0 + V_k(t).
struct DrivingProtocol {
  HamiltonianSpec target;
  HamiltonianSpec bare;
  GaugeParams gauge;
  SynthesisMethod method = SynthesisMethod::GeneralM1M2;
  std::function<DriveSample(const Momentum&, double)> evaluator;
  // Optional per-momentum fast path; must agree with evaluator.
  std::function<TimeDrive(const Momentum&)> binder;

  int bands() const { return target.bands(); }
  double period() const { return gauge.period(); }
  DriveSample drive(const Momentum& k, double t) const { return evaluator(k, t); }
  TimeDrive at(const Momentum& k) const;
  CoeffsXYZ hamiltonian_coeffs(const Momentum& k, double t) const { return bare.coeffs(k) + drive(k, t).coeffs(); }
};

// Checks the gauge once, then evaluates through the general route.
DrivingProtocol make_general_protocol(HamiltonianSpec bare, HamiltonianSpec target, GaugeParams gauge);
DrivingProtocol make_crossstitch_protocol(const CrossStitchParams& cs);
// Cross-stitch through the general route (same physics as the closed form).
DrivingProtocol make_crossstitch_general_protocol(const CrossStitchParams& cs);
DrivingProtocol make_su3_protocol(std::function<std::array<double, 3>(const Momentum&)> eta, double omega,
                                  double a_plus, int p);
// Same target through synth_drive_eta_closed_form.
DrivingProtocol make_su3_closed_form_protocol(std::function<std::array<double, 3>(const Momentum&)> eta, double omega,
                                              double a_plus, int p);
// Same target through su3_closed_form_transcribed; expected to fail verification.
DrivingProtocol make_su3_transcribed_protocol(std::function<std::array<double, 3>(const Momentum&)> eta, double omega,
                                              double a_plus, int p);

// Test hook: multiplies fz of every sample by `factor`.
DrivingProtocol with_scaled_fz(DrivingProtocol protocol, double factor);

// Zero-frequency harmonic of g_a(t) = f_a(t) (1 + a+^2 sin^2 wt), a in {x, y, z},
// by periodic trapezoid quadrature over one period.
std::array<double, 3> static_harmonic_residual(const DrivingProtocol& protocol, const Momentum& k, int samples = 2048);

}  // namespace floquet
