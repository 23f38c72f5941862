#pragma once

// Real-space form of the cross-stitch drive.
//
// Every drive component is a finite sum f(k, t) = sum_m [A_m(t) cos(mk) + B_m(t) sin(mk)]
// with m <= 3. With c_k = L^{-1/2} sum_n c_n e^{ikn}, a cos(mk) harmonic becomes
// the hopping (1/2)(c+_n c_{n+m} + c+_{n+m} c_n) and a sin(mk) harmonic the
// hopping (i/2)(c+_n c_{n+m} - c+_{n+m} c_n), each dressed by the 2x2 spin
// operator of its channel.

#include <functional>
#include <string>
#include <vector>

#include "floquet/algebra.h"
#include "floquet/synth.h"

namespace floquet {

enum class Channel {
  Sx,  // A-B symmetric
  Sy,  // A-B antisymmetric
  Sz,  // A-A minus B-B
};

enum class Harmonic { Cos, Sin };

std::string to_string(Channel c);
std::string to_string(Harmonic h);

inline constexpr int kMaxHoppingRange = 3;

struct LatticeTerm {
  Channel channel;
  int range;
  Harmonic harmonic;
  // Real amplitude multiplying cos(mk) or sin(mk); includes the envelope f_e(t).
  std::function<double(double)> amplitude;
};

// Throws RangeOverflow if the drive has a harmonic beyond m = 3 above 1e-12
// (checked by a 32-point discrete Fourier transform in k at 16 times).
std::vector<LatticeTerm> expand_to_lattice(const CrossStitchParams& cs);

// Sum of the expansion at momentum k, for comparison with the closed form.
DriveSample evaluate_expansion(const std::vector<LatticeTerm>& terms, double k, double t);

struct LatticeHamiltonian {
  int sites = 0;  // per sub-lattice
  // 2L x 2L; index n is site n of sub-lattice A, L + n site n of sub-lattice B.
  MatX matrix;
};

// Periodic boundary. Throws std::invalid_argument for L < 8 and
// HermiticityError if the assembled matrix is not Hermitian within 1e-13.
LatticeHamiltonian assemble_lattice_hamiltonian(const std::vector<LatticeTerm>& terms, int sites, double t);

// V_k[s, s'] = sum_d M[(s, 0), (s', d)] e^{-ikd}; exact at k = 2 pi n / L.
Mat2 lattice_to_momentum(const LatticeHamiltonian& h, double k);

// Max entry deviation between the Fourier-transformed lattice V(t) and the
// closed-form V_k(t) over all allowed momenta and the given times.
double lattice_vs_momentum_check(const CrossStitchParams& cs, int sites, const std::vector<double>& t_grid);

// Largest hopping distance with a nonzero matrix element (above tol).
int hopping_bandwidth(const LatticeHamiltonian& h, double tol = 1e-14);

}  // namespace floquet
