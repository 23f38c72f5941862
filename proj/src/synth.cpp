#include "floquet/synth.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "floquet/errors.h"

namespace floquet {

Mat3 transform_m1(cplx m_plus) {
  const cplx mc = std::conj(m_plus);
  const double n2 = std::norm(m_plus);
  Mat3 m;
  m << 1.0, 0.0, kI * m_plus,
       0.0, 1.0, -kI * mc,
       kI * mc, -kI * m_plus, 1.0 - n2;
  return m / (1.0 + n2);
}

Mat3 transform_m2(cplx m_plus, double mz_r) {
  const cplx mc = std::conj(m_plus);
  const double n2 = std::norm(m_plus);
  const cplx q = kI * m_plus * std::polar(1.0, mz_r);
  const cplx qc = std::conj(q);
  Mat3 m;
  m << std::polar(1.0, -mz_r), -kI * q * m_plus, kI * m_plus,
       kI * qc * mc, std::polar(1.0, mz_r), -kI * mc,
       -2.0 * qc, -2.0 * q, 1.0 - n2;
  return m / (1.0 + n2);
}

DriveSample synth_drive_general_unchecked(const CoeffsXYZ& bare, const CoeffsXYZ& target, const GaugeParams& gauge,
                                          const Momentum& k, double t) {
  const WeiNormanState s = wei_norman_state(gauge, k, t);
  const Vec3c rates(s.dm_plus, std::conj(s.dm_plus), cplx(s.dmz_r));
  const Vec3c f = transform_m1(s.m_plus) * rates + transform_m2(s.m_plus, s.mz_r) * xyz_to_pmz(target).triple() -
                  xyz_to_pmz(bare).triple();

  const double scale = std::max(1.0, f.cwiseAbs().maxCoeff());
  if (std::abs(f(2).imag()) > 1e-10 * scale) throw HermiticityError("synthesis: Sz coefficient is not real");
  const CoeffsPMZ pmz{s.dm0 + target.h0 - bare.h0, f(0), f(1), f(2).real()};
  const CoeffsXYZ xyz = pmz_to_xyz(pmz, 1e-10);
  return {xyz.h0, xyz.hx, xyz.hy, xyz.hz};
}

DriveSample synth_drive_general(const HamiltonianSpec& bare, const HamiltonianSpec& target, const GaugeParams& gauge,
                                const Momentum& k, double t) {
  boundary_report(gauge);
  return synth_drive_general_unchecked(bare.coeffs(k), target.coeffs(k), gauge, k, t);
}

double drive_envelope(double a_plus, double omega, double t) {
  const double s = std::sin(omega * t);
  return 1.0 / (1.0 + a_plus * a_plus * s * s);
}

namespace {

// e^{i p x} from e^{i x} by repeated multiplication.
cplx unit_power(cplx z, int p) {
  cplx r(1.0, 0.0);
  const cplx base = p >= 0 ? z : std::conj(z);
  for (int n = std::abs(p); n > 0; --n) r *= base;
  return r;
}

}  // namespace

CrossStitchKernel::CrossStitchKernel(const CrossStitchParams& cs, double k)
    : cs_(cs), sk_(std::sin(k)), ck_(std::cos(k)) {
  s2k_ = 2.0 * sk_ * ck_;
  c2k_ = ck_ * ck_ - sk_ * sk_;
  heff_ = -(2.0 * cs.alpha * ck_ + cs.delta);
}

DriveSample CrossStitchKernel::operator()(double t) const {
  const double a = cs_.a_plus;
  const double w = cs_.omega;
  const double p = cs_.p;
  const double sw = std::sin(w * t);
  const double cw = std::cos(w * t);
  const cplx ep = unit_power(cplx(cw, sw), cs_.p);
  const double cp = ep.real();
  const double sp = ep.imag();
  const double a2s2 = a * a * sw * sw;
  const double fe = 1.0 / (1.0 + a2s2);

  // cos(2k + pwt), sin(2k + pwt), sin(k + pwt) by angle addition.
  const double c2kp = c2k_ * cp - s2k_ * sp;
  const double s2kp = s2k_ * cp + c2k_ * sp;
  const double skp = sk_ * cp + ck_ * sp;
  const double bx = a * w * cw * ck_ + heff_ * cp - a * p * w * sw * sk_ + a2s2 * heff_ * c2kp;
  const double by = a * w * cw * sk_ - heff_ * sp + a * p * w * sw * ck_ + a2s2 * heff_ * s2kp;
  const double bz = p * w * (1.0 - 0.5 * a * a) + 0.5 * p * w * a * a * (cw * cw - sw * sw) + 4.0 * a * heff_ * skp * sw;
  return {0.0, 2.0 * fe * bx, -2.0 * fe * by, fe * bz};
}

DriveSample synth_drive_crossstitch(const CrossStitchParams& cs, double k, double t) {
  return CrossStitchKernel(cs, k)(t);
}

EtaClosedFormKernel::EtaClosedFormKernel(const std::array<double, 3>& eta, double omega, double a_plus, int p, double k)
    : eta_(eta), omega_(omega), a_(a_plus), sk_(std::sin(k)), ck_(std::cos(k)), p_(p) {
  s2k_ = 2.0 * sk_ * ck_;
  c2k_ = ck_ * ck_ - sk_ * sk_;
}

DriveSample EtaClosedFormKernel::operator()(double t) const {
  const auto [ex, ey, ez] = eta_;
  const double a = a_;
  const double w = omega_;
  const double sw = std::sin(w * t);
  const double cw = std::cos(w * t);
  const cplx ep = unit_power(cplx(cw, sw), p_);
  const double cp = ep.real();
  const double sp = ep.imag();
  const double a2s2 = a * a * sw * sw;
  const double fe = 1.0 / (1.0 + a2s2);
  const double c2kp = c2k_ * cp - s2k_ * sp;
  const double s2kp = s2k_ * cp + c2k_ * sp;
  const double skp = sk_ * cp + ck_ * sp;
  const double ckp = ck_ * cp - sk_ * sp;
  const double wz = p_ * w + ez;

  const double nx = 2.0 * a * w * cw * ck_ - 2.0 * a * wz * sw * sk_ + ex * cp - ey * sp + a2s2 * (ex * c2kp - ey * s2kp);
  const double ny = -2.0 * a * w * cw * sk_ - 2.0 * a * wz * sw * ck_ + ex * sp + ey * cp - a2s2 * (ex * s2kp + ey * c2kp);
  const double nz = wz * (1.0 - a2s2) + 2.0 * a * sw * (ex * skp + ey * ckp);
  return {0.0, fe * nx, fe * ny, fe * nz};
}

DriveSample synth_drive_eta_closed_form(const std::array<double, 3>& eta, double omega, double a_plus, int p, double k,
                                        double t) {
  return EtaClosedFormKernel(eta, omega, a_plus, p, k)(t);
}

GeneralDriveKernel::GeneralDriveKernel(const CoeffsXYZ& bare, const CoeffsXYZ& target, const GaugeParams& gauge,
                                       const Momentum& k)
    : target_(xyz_to_pmz(target).triple()),
      bare_(xyz_to_pmz(bare).triple()),
      dh0_(target.h0 - bare.h0),
      gauge_(gauge),
      k_(k),
      phi_(phi_plus(k)),
      theta_phase_(std::polar(1.0, gauge.theta)),
      phi0_(gauge.phi0_at(k)) {}

DriveSample GeneralDriveKernel::operator()(double t) const {
  cplx m;
  cplx dm;
  double dm0 = 0.0;
  double dmz = 0.0;
  cplx e;  // e^{i mzR}
  if (gauge_.custom) {
    const MuValues mu = mu_functions(gauge_, t);
    m = phi_ * mu.mu_plus;
    dm = phi_ * mu.dmu_plus;
    dm0 = phi0_ * mu.dmu0;
    dmz = mu.dmu_zr;
    e = std::polar(1.0, mu.mu_zr);
  } else {
    const double w = gauge_.omega;
    const double sw = std::sin(w * t);
    const double cw = std::cos(w * t);
    const cplx amp = gauge_.a_plus * theta_phase_ * phi_;
    m = amp * sw;
    dm = amp * w * cw;
    dm0 = phi0_ * gauge_.a0 * w * cw;
    dmz = gauge_.p * w;
    e = unit_power(cplx(cw, sw), gauge_.p);
  }
  const cplx mc = std::conj(m);
  const double n2 = std::norm(m);
  const double inv = 1.0 / (1.0 + n2);
  const cplx q = kI * m * e;
  const cplx qc = std::conj(q);
  const cplx hm = target_(0);
  const cplx hp = target_(1);
  const cplx hz = target_(2);

  // Rows of M1 . (dm, dm*, dmzR) + M2 . (h-, h+, hz), written out.
  const cplx f_minus = inv * (dm + kI * m * dmz + std::conj(e) * hm - kI * q * m * hp + kI * m * hz) - bare_(0);
  const cplx f_plus = inv * (std::conj(dm) - kI * mc * dmz + kI * qc * mc * hm + e * hp - kI * mc * hz) - bare_(1);
  const cplx f_z = inv * (kI * mc * dm - kI * m * std::conj(dm) + (1.0 - n2) * dmz - 2.0 * qc * hm - 2.0 * q * hp +
                          (1.0 - n2) * hz) -
                   bare_(2);

  const double scale2 = std::max({1.0, std::norm(f_minus), std::norm(f_z)});
  if (f_z.imag() * f_z.imag() > 1e-20 * scale2) throw HermiticityError("synthesis: Sz coefficient is not real");
  if (std::norm(f_plus - std::conj(f_minus)) > 1e-20 * scale2) {
    throw HermiticityError("synthesis: S+ and S- coefficients are not conjugate");
  }
  return {dm0 + dh0_, 2.0 * f_plus.real(), 2.0 * f_plus.imag(), f_z.real()};
}

namespace {

GaugeParams su3_gauge(double omega, double a_plus, int p) {
  GaugeParams g;
  g.a_plus = a_plus;
  g.p = p;
  g.omega = omega;
  return g;
}

}  // namespace

DriveSample synth_drive_su3(const std::array<double, 3>& eta, double omega, double a_plus, int p, double k, double t) {
  const GaugeParams g = su3_gauge(omega, a_plus, p);
  boundary_report(g);
  return synth_drive_general_unchecked(CoeffsXYZ{}, CoeffsXYZ{0.0, eta[0], eta[1], eta[2]}, g, k, t);
}

DriveSample su3_closed_form_transcribed(const std::array<double, 3>& eta, double omega, double a_plus, int p,
                                        double k, double t) {
  const double a = a_plus;
  const double w = omega;
  const double sw = std::sin(w * t);
  const double cw = std::cos(w * t);
  const double ph = p * w * t;
  const double fe = 1.0 / (1.0 + a * a * sw * sw);
  const auto [ex, ey, ez] = eta;

  const double fx = 2.0 * fe *
                    (a * w * cw * std::cos(k) - a * p * w * cw * std::sin(k) + ex * std::cos(ph) - ey * std::sin(ph) +
                     a * a * sw * sw * (std::cos(2.0 * k + ph) * ex - std::sin(2.0 * k + ph) * ey) -
                     a * sw * std::cos(k) * ez);
  const double fy = -2.0 * fe *
                    (a * w * cw * std::sin(k) + a * p * w * cw * std::cos(k) - std::cos(ph) * ey - std::sin(ph) * ex +
                     a * sw * sw * (std::sin(2.0 * k + ph) * ex - std::cos(2.0 * k + ph) * ey) +
                     a * sw * std::cos(k) * ez);
  const double fz = fe * (2.0 * a * sw * ey + (1.0 - 0.5 * a * a) * p * w + 0.5 * p * w * a * a * std::cos(2.0 * w * t) +
                          ((1.0 - 0.5 * a * a) + 0.5 * a * a * std::cos(2.0 * w * t)) * ez);
  return {0.0, fx, fy, fz};
}

TimeDrive DrivingProtocol::at(const Momentum& k) const {
  if (binder) return binder(k);
  return [eval = evaluator, k](double t) { return eval(k, t); };
}

DrivingProtocol make_general_protocol(HamiltonianSpec bare, HamiltonianSpec target, GaugeParams gauge) {
  if (bare.bands() != target.bands()) throw std::invalid_argument("protocol: bare and target band counts differ");
  boundary_report(gauge);
  auto bind = [bare, target, gauge](const Momentum& k) -> TimeDrive {
    return GeneralDriveKernel(bare.coeffs(k), target.coeffs(k), gauge, k);
  };
  auto eval = [bind](const Momentum& k, double t) { return bind(k)(t); };
  return {std::move(target), std::move(bare), std::move(gauge), SynthesisMethod::GeneralM1M2, std::move(eval),
          std::move(bind)};
}

namespace {

GaugeParams crossstitch_gauge(const CrossStitchParams& cs) {
  GaugeParams g;
  g.a_plus = cs.a_plus;
  g.p = cs.p;
  g.omega = cs.omega;
  return g;
}

}  // namespace

DrivingProtocol make_crossstitch_protocol(const CrossStitchParams& cs) {
  GaugeParams g = crossstitch_gauge(cs);
  boundary_report(g);
  return {HamiltonianSpec::cross_stitch(cs.alpha, cs.delta), HamiltonianSpec::uncoupled_chains(cs.alpha), g,
          SynthesisMethod::ClosedFormCrossStitch,
          [cs](const Momentum& k, double t) { return synth_drive_crossstitch(cs, k.x, t); },
          [cs](const Momentum& k) -> TimeDrive { return CrossStitchKernel(cs, k.x); }};
}

DrivingProtocol make_crossstitch_general_protocol(const CrossStitchParams& cs) {
  return make_general_protocol(HamiltonianSpec::uncoupled_chains(cs.alpha),
                               HamiltonianSpec::cross_stitch(cs.alpha, cs.delta), crossstitch_gauge(cs));
}

DrivingProtocol make_su3_protocol(std::function<std::array<double, 3>(const Momentum&)> eta, double omega,
                                  double a_plus, int p) {
  return make_general_protocol(HamiltonianSpec::zero(3), HamiltonianSpec::su3_flat(std::move(eta)),
                               su3_gauge(omega, a_plus, p));
}

namespace {

DrivingProtocol eta_protocol(std::function<std::array<double, 3>(const Momentum&)> eta, double omega, double a_plus,
                             int p, SynthesisMethod method) {
  GaugeParams g = su3_gauge(omega, a_plus, p);
  boundary_report(g);
  std::function<TimeDrive(const Momentum&)> bind;
  if (method == SynthesisMethod::ClosedFormSU3) {
    bind = [eta, omega, a_plus, p](const Momentum& k) -> TimeDrive {
      return EtaClosedFormKernel(eta(k), omega, a_plus, p, k.x);
    };
  } else {
    bind = [eta, omega, a_plus, p](const Momentum& k) -> TimeDrive {
      return [e = eta(k), omega, a_plus, p, kx = k.x](double t) {
        return su3_closed_form_transcribed(e, omega, a_plus, p, kx, t);
      };
    };
  }
  auto eval = [bind](const Momentum& k, double t) { return bind(k)(t); };
  return {HamiltonianSpec::su3_flat(std::move(eta)), HamiltonianSpec::zero(3), std::move(g), method, std::move(eval),
          std::move(bind)};
}

}  // namespace

DrivingProtocol make_su3_closed_form_protocol(std::function<std::array<double, 3>(const Momentum&)> eta, double omega,
                                              double a_plus, int p) {
  return eta_protocol(std::move(eta), omega, a_plus, p, SynthesisMethod::ClosedFormSU3);
}

DrivingProtocol make_su3_transcribed_protocol(std::function<std::array<double, 3>(const Momentum&)> eta, double omega,
                                              double a_plus, int p) {
  return eta_protocol(std::move(eta), omega, a_plus, p, SynthesisMethod::TranscribedSU3);
}

DrivingProtocol with_scaled_fz(DrivingProtocol protocol, double factor) {
  auto scale = [factor](DriveSample s) {
    s.fz *= factor;
    return s;
  };
  protocol.evaluator = [inner = std::move(protocol.evaluator), scale](const Momentum& k, double t) {
    return scale(inner(k, t));
  };
  if (protocol.binder) {
    protocol.binder = [inner = std::move(protocol.binder), scale](const Momentum& k) -> TimeDrive {
      return [drive = inner(k), scale](double t) { return scale(drive(t)); };
    };
  }
  return protocol;
}

std::array<double, 3> static_harmonic_residual(const DrivingProtocol& protocol, const Momentum& k, int samples) {
  const GaugeParams& g = protocol.gauge;
  const double period = g.period();
  const double a2 = g.a_plus * g.a_plus;
  std::array<double, 3> acc{0.0, 0.0, 0.0};
  for (int j = 0; j < samples; ++j) {
    const double t = period * j / samples;
    const double s = std::sin(g.omega * t);
    const double weight = 1.0 + a2 * s * s;
    const DriveSample f = protocol.drive(k, t);
    acc[0] += f.fx * weight;
    acc[1] += f.fy * weight;
    acc[2] += f.fz * weight;
  }
  for (double& v : acc) v /= samples;
  return acc;
}

}  // namespace floquet
