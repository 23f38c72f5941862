#include "floquet/spectra.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "floquet/errors.h"
#include "floquet/parallel.h"

namespace floquet {

std::vector<double> BandTable::band(std::size_t j) const {
  std::vector<double> out;
  out.reserve(energies.size());
  for (const auto& row : energies) out.push_back(row.at(j));
  return out;
}

BandTable band_structure(const HamiltonianSpec& spec, const std::vector<Momentum>& k_grid) {
  BandTable table;
  table.k_grid = k_grid;
  table.energies.resize(k_grid.size());
  parallel_for(k_grid.size(), [&](std::size_t i) { table.energies[i] = eig_bands(spec.matrix(k_grid[i])); });
  return table;
}

FourierTable envelope_fourier(double a_plus_squared, int n_max, int samples) {
  if (!(a_plus_squared >= 0.0)) throw std::invalid_argument("envelope_fourier: a+^2 must be >= 0");
  if (n_max < 0 || samples < 2) throw std::invalid_argument("envelope_fourier: need n_max >= 0 and samples >= 2");
  std::vector<double> f(samples);
  for (int j = 0; j < samples; ++j) {
    const double s = std::sin(2.0 * std::numbers::pi * j / samples);
    f[j] = 1.0 / (1.0 + a_plus_squared * s * s);
  }
  FourierTable table;
  for (int n = 0; n <= n_max; ++n) {
    double acc = 0.0;
    for (int j = 0; j < samples; ++j) {
      // Reduce n j mod samples so the cosine argument stays in [0, 2 pi).
      const long r = (static_cast<long>(n) * j) % samples;
      acc += f[j] * std::cos(2.0 * std::numbers::pi * static_cast<double>(r) / samples);
    }
    table.n.push_back(n);
    table.c.push_back((n == 0 ? 1.0 : 2.0) * acc / samples);
  }
  return table;
}

double fourier_partial_sum(const FourierTable& table, double x) {
  double acc = 0.0;
  for (std::size_t i = 0; i < table.n.size(); ++i) acc += table.c[i] * std::cos(table.n[i] * x);
  return acc;
}

double fold_quasienergy(double energy, double omega) {
  // Map into (-w/2, w/2]: shift by the nearest multiple of w, then fix the lower edge.
  double e = energy - omega * std::round(energy / omega);
  if (e <= -0.5 * omega) e += omega;
  if (e > 0.5 * omega) e -= omega;
  return e;
}

std::vector<cplx> unitary_eigenvalues(const MatX& u) {
  const Eigen::ComplexEigenSolver<MatX> es(u);
  if (es.info() != Eigen::Success) throw NonUnitaryInput("unitary_eigenvalues: eigensolver failed");
  return {es.eigenvalues().begin(), es.eigenvalues().end()};
}

std::vector<double> quasienergies(const MatX& u_t, double omega, cplx strobe_phase) {
  if (!(omega > 0.0)) throw std::invalid_argument("quasienergies: omega must be positive");
  const double defect = (u_t * u_t.adjoint() - MatX::Identity(u_t.rows(), u_t.cols())).norm();
  if (defect > 1e-10) throw NonUnitaryInput("quasienergies: U_T is not unitary");
  const double period = 2.0 * std::numbers::pi / omega;
  std::vector<double> out;
  for (const cplx& lambda : unitary_eigenvalues(u_t / strobe_phase)) {
    out.push_back(fold_quasienergy(-std::arg(lambda) / period, omega));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace floquet
