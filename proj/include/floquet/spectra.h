#pragma once

// Band tables, quasienergy readout and the envelope Fourier series.

#include <complex>
#include <vector>

#include "floquet/algebra.h"

namespace floquet {

struct BandTable {
  std::vector<Momentum> k_grid;
  // energies[i] holds the ascending eigenvalues at k_grid[i].
  std::vector<std::vector<double>> energies;

  std::size_t rows() const { return k_grid.size(); }
  // Column j across all momenta.
  std::vector<double> band(std::size_t j) const;
};

BandTable band_structure(const HamiltonianSpec& spec, const std::vector<Momentum>& k_grid);

struct FourierTable {
  std::vector<int> n;
  std::vector<double> c;
};

// Cosine-series coefficients of f_e(x) = 1 / (1 + a+^2 sin^2 x) over one
// period of x = wt, by trapezoid quadrature on `samples` points:
//   c_0 = <f_e>,  c_n = 2 <f_e cos(n x)>,  so f_e = sum_n c_n cos(n x).
// Throws std::invalid_argument for a+^2 < 0.
FourierTable envelope_fourier(double a_plus_squared, int n_max, int samples = 8192);

// Partial sum of the cosine series at phase x.
double fourier_partial_sum(const FourierTable& table, double x);

// Quasienergies e = -theta / T of the eigenphases theta of U_T / phase, folded
// into (-w/2, w/2] and sorted ascending. Throws NonUnitaryInput when
// ||U U^dagger - I||_F > 1e-10.
std::vector<double> quasienergies(const MatX& u_t, double omega, cplx strobe_phase = 1.0);

// Folds an energy into (-w/2, w/2].
double fold_quasienergy(double energy, double omega);

// Eigenvalues of a unitary matrix.
std::vector<cplx> unitary_eigenvalues(const MatX& u);

}  // namespace floquet
