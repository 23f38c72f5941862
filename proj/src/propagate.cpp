#include "floquet/propagate.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "floquet/errors.h"
#include "floquet/parallel.h"

namespace floquet {

namespace {

constexpr double kHermitianTol = 1e-10;

template <int N>
void require_hermitian(const CMat<N>& h, double t) {
  const double scale2 = std::max(1.0, h.cwiseAbs2().maxCoeff());
  if ((h - h.adjoint()).cwiseAbs2().maxCoeff() > kHermitianTol * kHermitianTol * scale2) {
    throw NonHermitianInput("H(t) is not Hermitian at t = " + std::to_string(t));
  }
}

// exp(-i dt B) for the traceless part B of a 2x2 Hermitian H, given
// bz = (H00 - H11) / 2 and off = H01.
Mat2 expm2_traceless(double bz, cplx off, double dt) {
  const double b = std::sqrt(bz * bz + std::norm(off));
  const double theta = b * dt;
  const double c = std::cos(theta);
  // sin(b dt) / b, finite as b -> 0.
  const double s = (std::abs(theta) > 1e-8) ? std::sin(theta) / b : dt * (1.0 - theta * theta / 6.0);
  Mat2 u;
  u(0, 0) = cplx(c, -s * bz);
  u(1, 1) = cplx(c, s * bz);
  u(0, 1) = -kI * s * off;
  u(1, 0) = -kI * s * std::conj(off);
  return u;
}

Mat2 expm2(const Mat2& h, double dt) {
  const double a = 0.5 * (h(0, 0).real() + h(1, 1).real());
  const double bz = 0.5 * (h(0, 0).real() - h(1, 1).real());
  const cplx off = 0.5 * (h(0, 1) + std::conj(h(1, 0)));
  return std::polar(1.0, -a * dt) * expm2_traceless(bz, off, dt);
}

bool block_diagonal(const Mat3& h) {
  return h(0, 2) == 0.0 && h(1, 2) == 0.0 && h(2, 0) == 0.0 && h(2, 1) == 0.0;
}

Mat3 expm3(const Mat3& h, double dt) {
  if (block_diagonal(h)) {
    Mat3 u = Mat3::Zero();
    u.topLeftCorner<2, 2>() = expm2(h.topLeftCorner<2, 2>(), dt);
    u(2, 2) = std::polar(1.0, -h(2, 2).real() * dt);
    return u;
  }
  const Eigen::SelfAdjointEigenSolver<Mat3> es(h);
  const Eigen::Vector3cd phases = (es.eigenvalues() * (-dt)).unaryExpr([](double x) { return std::polar(1.0, x); });
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// Accumulates U <- exp(-i dt H) U. Scalar parts commute with every later step
// on the same block, so their phases are summed and applied only on readout.
template <int N>
class MidpointStepper;

template <>
class MidpointStepper<2> {
 public:
  void step(const Mat2& h, double dt) {
    const double a = 0.5 * (h(0, 0).real() + h(1, 1).real());
    const double bz = 0.5 * (h(0, 0).real() - h(1, 1).real());
    phase_ += a * dt;
    u_ = expm2_traceless(bz, h(0, 1), dt) * u_;
  }
  Mat2 value() const { return std::polar(1.0, -phase_) * u_; }

 private:
  Mat2 u_ = Mat2::Identity();
  double phase_ = 0.0;
};

template <>
class MidpointStepper<3> {
 public:
  void step(const Mat3& h, double dt) {
    if (!block_diagonal(h)) {
      flush();
      u_ = expm3(h, dt) * u_;
      return;
    }
    const double a = 0.5 * (h(0, 0).real() + h(1, 1).real());
    const double bz = 0.5 * (h(0, 0).real() - h(1, 1).real());
    block_phase_ += a * dt;
    third_phase_ += h(2, 2).real() * dt;
    u_.topRows<2>() = expm2_traceless(bz, h(0, 1), dt) * u_.topRows<2>();
  }
  Mat3 value() const {
    Mat3 v = u_;
    v.topRows<2>() *= std::polar(1.0, -block_phase_);
    v.row(2) *= std::polar(1.0, -third_phase_);
    return v;
  }

 private:
  void flush() {
    u_ = value();
    block_phase_ = 0.0;
    third_phase_ = 0.0;
  }

  Mat3 u_ = Mat3::Identity();
  double block_phase_ = 0.0;
  double third_phase_ = 0.0;
};

}  // namespace

template <>
CMat<2> expm_hermitian<2>(const CMat<2>& h, double dt) {
  return expm2(h, dt);
}

template <>
CMat<3> expm_hermitian<3>(const CMat<3>& h, double dt) {
  return expm3(h, dt);
}

template <int N>
PropagatorTrace<N> propagate_midpoint(const HamiltonianFn<N>& h, double horizon, long steps, int samples) {
  if (samples < 1 || steps < samples || steps % samples != 0) {
    throw std::invalid_argument("propagate_midpoint: steps must be a positive multiple of samples");
  }
  const double dt = horizon / static_cast<double>(steps);
  const long per_sample = steps / samples;
  PropagatorTrace<N> trace;
  trace.step_count = steps;
  trace.times.reserve(samples + 1);
  trace.unitaries.reserve(samples + 1);
  MidpointStepper<N> stepper;
  trace.times.push_back(0.0);
  trace.unitaries.push_back(CMat<N>::Identity());
  for (int j = 0; j < samples; ++j) {
    const long first = j * per_sample;
    for (long n = first; n < first + per_sample; ++n) {
      const double tm = (static_cast<double>(n) + 0.5) * dt;
      const CMat<N> hm = h(tm);
      require_hermitian<N>(hm, tm);
      stepper.step(hm, dt);
    }
    trace.times.push_back(horizon * (j + 1) / samples);
    trace.unitaries.push_back(stepper.value());
  }
  return trace;
}

template <int N>
PropagatorTrace<N> integrate_tdse(const HamiltonianFn<N>& h, double horizon, const IntegratorOptions& options) {
  if (!(options.tol >= 1e-12 && options.tol <= 1e-4)) {
    throw std::invalid_argument("integrate_tdse: tol must lie in [1e-12, 1e-4]");
  }
  if (!(horizon > 0.0)) throw std::invalid_argument("integrate_tdse: horizon must be positive");
  long steps = std::max<long>(options.base_steps, options.samples);
  steps = (steps + options.samples - 1) / options.samples * options.samples;
  PropagatorTrace<N> coarse = propagate_midpoint<N>(h, horizon, steps, options.samples);
  while (true) {
    steps *= 2;
    if (steps > options.max_steps) {
      char msg[128];
      std::snprintf(msg, sizeof msg, "integrate_tdse: step halving exceeded %ld steps (last change %.3e)",
                    options.max_steps, coarse.estimated_error);
      throw ToleranceNotReached(msg);
    }
    PropagatorTrace<N> fine = propagate_midpoint<N>(h, horizon, steps, options.samples);
    double change = 0.0;
    for (std::size_t j = 0; j < fine.unitaries.size(); ++j) {
      change = std::max(change, (fine.unitaries[j] - coarse.unitaries[j]).norm());
    }
    fine.estimated_error = change;
    if (change < options.tol) return fine;
    coarse = std::move(fine);
  }
}

template <int N>
CMat<N> propagate_cf4(const HamiltonianFn<N>& h, double horizon, long steps) {
  if (steps < 1) throw std::invalid_argument("propagate_cf4: steps must be positive");
  const double r3 = std::numbers::sqrt3;
  const double a1 = 0.25 - r3 / 6.0;
  const double a2 = 0.25 + r3 / 6.0;
  const double c1 = 0.5 - r3 / 6.0;
  const double c2 = 0.5 + r3 / 6.0;
  const double dt = horizon / static_cast<double>(steps);
  CMat<N> u = CMat<N>::Identity();
  for (long n = 0; n < steps; ++n) {
    const double t0 = static_cast<double>(n) * dt;
    const CMat<N> h1 = h(t0 + c1 * dt);
    const CMat<N> h2 = h(t0 + c2 * dt);
    require_hermitian<N>(h1, t0 + c1 * dt);
    require_hermitian<N>(h2, t0 + c2 * dt);
    const CMat<N> first = a2 * h1 + a1 * h2;
    const CMat<N> second = a1 * h1 + a2 * h2;
    u = expm_hermitian<N>(second, dt) * (expm_hermitian<N>(first, dt) * u);
  }
  return u;
}

template <int N>
CMat<N> floquet_operator(const PropagatorTrace<N>& trace, double period, int periods) {
  if (trace.times.empty()) throw HorizonMismatch("floquet_operator: empty trace");
  const double expected = period * periods;
  if (std::abs(trace.horizon() - expected) > 1e-12 * std::max(1.0, expected)) {
    throw HorizonMismatch("floquet_operator: trace horizon " + std::to_string(trace.horizon()) +
                          " does not equal n T = " + std::to_string(expected));
  }
  return trace.unitaries.back();
}

template <int N>
std::vector<CMat<N>> extract_micromotion(const PropagatorTrace<N>& trace, const CMat<N>& h_eff, double phase_rate) {
  std::vector<CMat<N>> out;
  out.reserve(trace.unitaries.size());
  for (std::size_t j = 0; j < trace.unitaries.size(); ++j) {
    const double t = trace.times[j];
    out.push_back(std::polar(1.0, phase_rate * t) * trace.unitaries[j] * expm_hermitian<N>(h_eff, -t));
  }
  return out;
}

template PropagatorTrace<2> propagate_midpoint<2>(const HamiltonianFn<2>&, double, long, int);
template PropagatorTrace<3> propagate_midpoint<3>(const HamiltonianFn<3>&, double, long, int);
template PropagatorTrace<2> integrate_tdse<2>(const HamiltonianFn<2>&, double, const IntegratorOptions&);
template PropagatorTrace<3> integrate_tdse<3>(const HamiltonianFn<3>&, double, const IntegratorOptions&);
template CMat<2> propagate_cf4<2>(const HamiltonianFn<2>&, double, long);
template CMat<3> propagate_cf4<3>(const HamiltonianFn<3>&, double, long);
template CMat<2> floquet_operator<2>(const PropagatorTrace<2>&, double, int);
template CMat<3> floquet_operator<3>(const PropagatorTrace<3>&, double, int);
template std::vector<CMat<2>> extract_micromotion<2>(const PropagatorTrace<2>&, const CMat<2>&, double);
template std::vector<CMat<3>> extract_micromotion<3>(const PropagatorTrace<3>&, const CMat<3>&, double);

double unitarity_defect(const MatX& u) {
  return (u * u.adjoint() - MatX::Identity(u.rows(), u.cols())).norm();
}

std::vector<KVerification> VerificationReport::worst(std::size_t count) const {
  std::vector<KVerification> sorted = per_k;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const KVerification& a, const KVerification& b) { return a.strobe_error > b.strobe_error; });
  if (sorted.size() > count) sorted.resize(count);
  return sorted;
}

MatX strobe_target(const MatX& h_eff, double t, cplx phase) {
  MatX target;
  if (h_eff.rows() == 2) {
    target = expm_hermitian<2>(Mat2(h_eff), t);
  } else {
    target = expm_hermitian<3>(Mat3(h_eff), t);
  }
  target.topRows(2) *= phase;
  return target;
}

namespace {

template <int N>
KVerification verify_one(const DrivingProtocol& protocol, const Momentum& k, int periods, const VerifyOptions& options,
                         cplx phase) {
  const double period = protocol.period();
  const double horizon = period * periods;
  const CoeffsXYZ bare = protocol.bare.coeffs(k);
  const HamiltonianFn<N> h = [drive = protocol.at(k), bare](double t) -> CMat<N> {
    const CoeffsXYZ c = bare + drive(t).coeffs();
    if constexpr (N == 2) {
      return assemble_matrix2(c);
    } else {
      return assemble_matrix3(c);
    }
  };

  const int samples = (N == 2 && options.micromotion_samples > 0) ? options.micromotion_samples * periods : 1;
  IntegratorOptions io;
  io.tol = options.tol;
  io.base_steps = options.base_steps_per_period * periods;
  io.samples = samples;
  io.max_steps = IntegratorOptions{}.max_steps * periods;
  const PropagatorTrace<N> trace = integrate_tdse<N>(h, horizon, io);

  const CMat<N> h_eff = protocol.target.matrix(k);
  KVerification r;
  r.k = k;
  r.steps = trace.step_count;
  const CMat<N> target = strobe_target(h_eff, horizon, phase);
  const CMat<N> u = floquet_operator<N>(trace, period, periods);
  r.strobe_error = (u - target).norm();
  r.propagator = u;

  if constexpr (N == 2) {
    if (options.micromotion_samples > 0) {
      const auto ps = extract_micromotion<2>(trace, h_eff);
      for (std::size_t j = 0; j < ps.size(); ++j) {
        const Mat2 expected = micromotion_matrix(wei_norman_state(protocol.gauge, k, trace.times[j]));
        r.micromotion_error = std::max(r.micromotion_error, (ps[j] - expected).norm());
      }
    }
  }
  return r;
}

}  // namespace

VerificationReport verify_protocol(const DrivingProtocol& protocol, const std::vector<Momentum>& k_grid, int periods,
                                   const VerifyOptions& options) {
  if (periods < 1) throw std::invalid_argument("verify_protocol: periods must be >= 1");
  if (protocol.bands() != 2 && protocol.bands() != 3) throw std::invalid_argument("verify_protocol: bands must be 2 or 3");
  const BoundaryReport boundary = boundary_report(protocol.gauge, periods);

  VerificationReport report;
  report.strobe_phase = boundary.strobe_phase;
  report.k_points = static_cast<int>(k_grid.size());
  report.periods = periods;
  report.per_k.resize(k_grid.size());
  parallel_for(k_grid.size(), [&](std::size_t i) {
    report.per_k[i] = protocol.bands() == 2 ? verify_one<2>(protocol, k_grid[i], periods, options, boundary.strobe_phase)
                                            : verify_one<3>(protocol, k_grid[i], periods, options, boundary.strobe_phase);
  });
  for (const auto& r : report.per_k) {
    report.max_strobe_error = std::max(report.max_strobe_error, r.strobe_error);
    report.max_micromotion_error = std::max(report.max_micromotion_error, r.micromotion_error);
    report.t_steps = std::max(report.t_steps, r.steps);
  }
  return report;
}

}  // namespace floquet
