#pragma once

// Time-ordered integration of i dU/dt = H(t) U and protocol verification.
//
// Two independent schemes are provided: the exponential-midpoint rule with
// global step halving (the verification oracle) and a fixed-step fourth-order
// commutator-free exponential integrator (its cross-check). Both are products
// of exact unitary exponentials, so no re-orthonormalisation is ever applied.

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "floquet/algebra.h"
#include "floquet/synth.h"

namespace floquet {

template <int N>
using CMat = Eigen::Matrix<cplx, N, N>;

template <int N>
using HamiltonianFn = std::function<CMat<N>(double)>;

// exp(-i dt H) for Hermitian H. Closed form for 2x2; for 3x3 a decoupled
// third level is split off exactly, otherwise the self-adjoint eigensolver is used.
template <int N>
CMat<N> expm_hermitian(const CMat<N>& h, double dt);
template <>
CMat<2> expm_hermitian<2>(const CMat<2>& h, double dt);
template <>
CMat<3> expm_hermitian<3>(const CMat<3>& h, double dt);

struct IntegratorOptions {
  double tol = 1e-9;
  // Initial step count over the whole horizon; doubled until converged.
  long base_steps = 4096;
  // Number of equal output intervals; unitaries are stored at j * horizon / samples.
  int samples = 1;
  long max_steps = 1L << 24;
};

template <int N>
struct PropagatorTrace {
  std::vector<double> times;
  std::vector<CMat<N>> unitaries;
  long step_count = 0;
  // Max Frobenius distance between the last two refinement levels.
  double estimated_error = 0.0;

  double horizon() const { return times.empty() ? 0.0 : times.back(); }
};

// Fixed-step exponential midpoint, storing `samples` + 1 equally spaced
// unitaries. `steps` must be a multiple of `samples`.
template <int N>
PropagatorTrace<N> propagate_midpoint(const HamiltonianFn<N>& h, double horizon, long steps, int samples = 1);

// Midpoint with global step halving until every stored unitary changes by
// less than tol between successive levels. Throws ToleranceNotReached past
// max_steps and NonHermitianInput if H(t) is not Hermitian.
template <int N>
PropagatorTrace<N> integrate_tdse(const HamiltonianFn<N>& h, double horizon, const IntegratorOptions& options = {});

// Fixed-step fourth-order commutator-free scheme with two exponentials per step
// at the Gauss-Legendre nodes.
template <int N>
CMat<N> propagate_cf4(const HamiltonianFn<N>& h, double horizon, long steps);

// U(n T); throws HorizonMismatch unless the trace ends at periods * period.
template <int N>
CMat<N> floquet_operator(const PropagatorTrace<N>& trace, double period, int periods = 1);

// P(t) = e^{i phase_rate t} U(t) e^{+i H_eff t} at every stored time.
template <int N>
std::vector<CMat<N>> extract_micromotion(const PropagatorTrace<N>& trace, const CMat<N>& h_eff,
                                         double phase_rate = 0.0);

double unitarity_defect(const MatX& u);

struct KVerification {
  Momentum k;
  double strobe_error = 0.0;
  double micromotion_error = 0.0;
  long steps = 0;
  // U(nT) from the integrator.
  MatX propagator;
};

struct VerificationReport {
  double max_strobe_error = 0.0;
  double max_micromotion_error = 0.0;
  cplx strobe_phase{1.0, 0.0};
  int k_points = 0;
  long t_steps = 0;
  int periods = 1;
  std::vector<KVerification> per_k;

  // Entries sorted by decreasing strobe error.
  std::vector<KVerification> worst(std::size_t count) const;
};

struct VerifyOptions {
  double tol = 1e-9;
  long base_steps_per_period = 4096;
  // Time samples per period for micro-motion comparison (two-band only; 0 disables).
  int micromotion_samples = 64;
};

// For every k: integrates H_k(t) over n periods and compares U(nT) with
// phase * exp(-i n T H_eff) in Frobenius norm. The strobe phase (-1)^{pn} acts
// on the spin block only; a third band is compared without it.
VerificationReport verify_protocol(const DrivingProtocol& protocol, const std::vector<Momentum>& k_grid, int periods,
                                   const VerifyOptions& options = {});

// Phase-adjusted target phase * exp(-i t H_eff) for a protocol's gauge.
MatX strobe_target(const MatX& h_eff, double t, cplx phase);

}  // namespace floquet
