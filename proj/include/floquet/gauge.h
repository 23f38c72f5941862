#pragma once

// Wei-Norman parametrisation of the micro-motion operator
//
//   P(t) = e^{-i m0} e^{-i m+ S+} e^{-i m- S-} e^{-i mz Sz},
//
// with m- and Im(mz) fixed by unitarity, and the separable gauge
//   m0 = phi0(k) mu0(t),  m+ = e^{ik} mu+(t),  Re(mz) = muzR(t).

#include <complex>
#include <functional>
#include <optional>

#include "floquet/algebra.h"

namespace floquet {

// A scalar time profile together with its analytic derivative.
template <typename T>
struct TimeProfile {
  std::function<T(double)> value;
  std::function<T(double)> derivative;
};

// Replaces the default sin/linear shapes. Only accepted by synthesis if the
// resulting gauge passes boundary_report.
struct CustomGaugeProfiles {
  TimeProfile<double> mu0;
  TimeProfile<cplx> mu_plus;
  TimeProfile<double> mu_zr;
};

struct GaugeParams {
  double a0 = 0.0;
  double a_plus = 0.0;
  double theta = 0.0;
  int p = 0;
  double omega = 1.0;
  // Momentum profile of m0; zero when unset.
  std::function<double(const Momentum&)> phi0;
  std::optional<CustomGaugeProfiles> custom;

  // Throws std::invalid_argument unless omega > 0.
  void validate() const;
  double period() const;
  double phi0_at(const Momentum& k) const { return phi0 ? phi0(k) : 0.0; }
};

// Convert a real winding number, throwing NonPeriodicGauge when it is not an integer.
int checked_winding(double p);

// mu0 = a0 sin wt, mu+ = a+ e^{i theta} sin wt, muzR = p w t.
struct MuValues {
  double mu0 = 0.0;
  cplx mu_plus;
  double mu_zr = 0.0;
  double dmu0 = 0.0;
  cplx dmu_plus;
  double dmu_zr = 0.0;
};

MuValues mu_functions(const GaugeParams& g, double t);

struct WeiNormanState {
  double m0 = 0.0;
  cplx m_plus;
  cplx m_minus;
  double mz_r = 0.0;
  double mz_i = 0.0;
  double dm0 = 0.0;
  cplx dm_plus;
  double dmz_r = 0.0;
};

struct WeiNormanClosure {
  cplx m_minus;
  double mz_i = 0.0;
};

// m- = conj(m+) / (1 + |m+|^2),  Im(mz) = ln(1 + |m+|^2).
WeiNormanClosure complete_wei_norman(cplx m_plus);

// Full Wei-Norman state at momentum k and time t for the separable gauge.
WeiNormanState wei_norman_state(const GaugeParams& g, const Momentum& k, double t);

// Phase profile e^{i(kx + ky)} multiplying mu+; reduces to e^{ik} in 1D.
cplx phi_plus(const Momentum& k);

// Closed-form micro-motion matrix in the independent variables (m0, m+, Re mz).
Mat2 micromotion_matrix(double m0, cplx m_plus, double mz_r);
Mat2 micromotion_matrix(const WeiNormanState& s);

struct BoundaryReport {
  bool periodic_up_to_phase = false;
  cplx strobe_phase{1.0, 0.0};
  // max |P(nT) - phase * I| from evaluating the closed form.
  double residual = 0.0;
};

// Evaluates the micro-motion at t = n T. Throws NonPeriodicGauge if mu+ does
// not vanish there or mu0 is not a multiple of 2 pi (both within 1e-12).
BoundaryReport boundary_report(const GaugeParams& g, int n = 1);

}  // namespace floquet
