#include "floquet/gauge.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "floquet/errors.h"

namespace floquet {

void GaugeParams::validate() const {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw std::invalid_argument("gauge: omega must be positive");
}

double GaugeParams::period() const { return 2.0 * std::numbers::pi / omega; }

int checked_winding(double p) {
  if (!std::isfinite(p) || std::nearbyint(p) != p) {
    throw NonPeriodicGauge("winding p must be an integer for P(nT) to close");
  }
  return static_cast<int>(p);
}

MuValues mu_functions(const GaugeParams& g, double t) {
  MuValues v;
  if (g.custom) {
    const auto& c = *g.custom;
    v.mu0 = c.mu0.value(t);
    v.dmu0 = c.mu0.derivative(t);
    v.mu_plus = c.mu_plus.value(t);
    v.dmu_plus = c.mu_plus.derivative(t);
    v.mu_zr = c.mu_zr.value(t);
    v.dmu_zr = c.mu_zr.derivative(t);
    return v;
  }
  const double s = std::sin(g.omega * t);
  const double c = std::cos(g.omega * t);
  const cplx phase = std::polar(1.0, g.theta);
  v.mu0 = g.a0 * s;
  v.dmu0 = g.a0 * g.omega * c;
  v.mu_plus = g.a_plus * phase * s;
  v.dmu_plus = g.a_plus * phase * g.omega * c;
  v.mu_zr = g.p * g.omega * t;
  v.dmu_zr = g.p * g.omega;
  return v;
}

WeiNormanClosure complete_wei_norman(cplx m_plus) {
  const double n2 = std::norm(m_plus);
  return {std::conj(m_plus) / (1.0 + n2), std::log1p(n2)};
}

cplx phi_plus(const Momentum& k) { return std::polar(1.0, k.x + k.y); }

WeiNormanState wei_norman_state(const GaugeParams& g, const Momentum& k, double t) {
  const MuValues mu = mu_functions(g, t);
  const double phi0 = g.phi0_at(k);
  const cplx phi = phi_plus(k);
  WeiNormanState s;
  s.m0 = phi0 * mu.mu0;
  s.dm0 = phi0 * mu.dmu0;
  s.m_plus = phi * mu.mu_plus;
  s.dm_plus = phi * mu.dmu_plus;
  s.mz_r = mu.mu_zr;
  s.dmz_r = mu.dmu_zr;
  const auto closure = complete_wei_norman(s.m_plus);
  s.m_minus = closure.m_minus;
  s.mz_i = closure.mz_i;
  return s;
}

Mat2 micromotion_matrix(double m0, cplx m_plus, double mz_r) {
  const cplx pre = std::polar(1.0 / std::sqrt(1.0 + std::norm(m_plus)), -m0);
  const cplx em = std::polar(1.0, -0.5 * mz_r);
  const cplx ep = std::polar(1.0, 0.5 * mz_r);
  Mat2 p;
  p(0, 0) = em;
  p(0, 1) = -kI * m_plus * ep;
  p(1, 0) = -kI * std::conj(m_plus) * em;
  p(1, 1) = ep;
  return pre * p;
}

Mat2 micromotion_matrix(const WeiNormanState& s) { return micromotion_matrix(s.m0, s.m_plus, s.mz_r); }

BoundaryReport boundary_report(const GaugeParams& g, int n) {
  g.validate();
  const double t = n * g.period();
  const MuValues mu = mu_functions(g, t);
  if (std::abs(mu.mu_plus) > 1e-12) {
    throw NonPeriodicGauge("gauge: mu+ does not vanish at t = nT");
  }
  const double turns = mu.mu0 / (2.0 * std::numbers::pi);
  if (std::abs(mu.mu0 - 2.0 * std::numbers::pi * std::nearbyint(turns)) > 1e-12) {
    throw NonPeriodicGauge("gauge: mu0 is not a multiple of 2 pi at t = nT");
  }
  const double windings = mu.mu_zr / (2.0 * std::numbers::pi);
  if (std::abs(mu.mu_zr - 2.0 * std::numbers::pi * std::nearbyint(windings)) > 1e-12 * std::max(1.0, std::abs(mu.mu_zr))) {
    throw NonPeriodicGauge("gauge: muzR is not a multiple of 2 pi at t = nT");
  }

  BoundaryReport r;
  // e^{-i muzR Sz} at muzR = 2 pi w is (-1)^w; m0 contributes e^{-i 2 pi nu} = 1.
  const long w = std::lround(windings);
  r.strobe_phase = (w % 2 == 0) ? cplx(1.0) : cplx(-1.0);
  // Every k shares the same boundary value since mu+ = 0 there.
  const Mat2 p = micromotion_matrix(mu.mu0, mu.mu_plus, mu.mu_zr);
  r.residual = (p - r.strobe_phase * Mat2::Identity()).cwiseAbs().maxCoeff();
  r.periodic_up_to_phase = r.residual <= 1e-12;
  return r;
}

}  // namespace floquet
