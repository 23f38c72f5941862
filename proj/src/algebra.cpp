#include "floquet/algebra.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "floquet/errors.h"

namespace floquet {

bool CoeffsXYZ::finite() const {
  return std::isfinite(h0) && std::isfinite(hx) && std::isfinite(hy) && std::isfinite(hz);
}

CoeffsPMZ xyz_to_pmz(const CoeffsXYZ& c) {
  return {c.h0, cplx(c.hx, -c.hy) / 2.0, cplx(c.hx, c.hy) / 2.0, c.hz};
}

CoeffsXYZ pmz_to_xyz(const CoeffsPMZ& c, double tol) {
  const double scale = std::max({1.0, std::abs(c.h_plus), std::abs(c.h_minus)});
  if (std::abs(c.h_plus - std::conj(c.h_minus)) > tol * scale) {
    throw HermiticityError("pmz_to_xyz: h+ is not the conjugate of h-");
  }
  return {c.h0, 2.0 * c.h_plus.real(), 2.0 * c.h_plus.imag(), c.hz};
}

Mat2 spin_x() {
  Mat2 m;
  m << 0.0, 0.5, 0.5, 0.0;
  return m;
}

Mat2 spin_y() {
  Mat2 m;
  m << 0.0, -0.5 * kI, 0.5 * kI, 0.0;
  return m;
}

Mat2 spin_z() {
  Mat2 m;
  m << 0.5, 0.0, 0.0, -0.5;
  return m;
}

Mat2 spin_plus() {
  Mat2 m;
  m << 0.0, 1.0, 0.0, 0.0;
  return m;
}

Mat2 spin_minus() {
  Mat2 m;
  m << 0.0, 0.0, 1.0, 0.0;
  return m;
}

namespace {

Mat3 embed(const Mat2& block) {
  Mat3 m = Mat3::Zero();
  m.topLeftCorner<2, 2>() = block;
  return m;
}

}  // namespace

LambdaOperators lambda_operators() {
  return {embed(spin_plus()), embed(spin_minus()), embed(spin_z()), embed(spin_x()), embed(spin_y())};
}

std::array<Mat3, 8> gell_mann() {
  std::array<Mat3, 8> l;
  for (auto& m : l) m.setZero();
  l[0](0, 1) = l[0](1, 0) = 1.0;
  l[1](0, 1) = -kI;
  l[1](1, 0) = kI;
  l[2](0, 0) = 1.0;
  l[2](1, 1) = -1.0;
  l[3](0, 2) = l[3](2, 0) = 1.0;
  l[4](0, 2) = -kI;
  l[4](2, 0) = kI;
  l[5](1, 2) = l[5](2, 1) = 1.0;
  l[6](1, 2) = -kI;
  l[6](2, 1) = kI;
  const double s = 1.0 / std::sqrt(3.0);
  l[7](0, 0) = s;
  l[7](1, 1) = s;
  l[7](2, 2) = -2.0 * s;
  return l;
}

Mat2 assemble_matrix2(const CoeffsXYZ& c) {
  Mat2 m;
  m(0, 0) = c.h0 + 0.5 * c.hz;
  m(1, 1) = c.h0 - 0.5 * c.hz;
  m(0, 1) = cplx(0.5 * c.hx, -0.5 * c.hy);
  m(1, 0) = cplx(0.5 * c.hx, 0.5 * c.hy);
  return m;
}

Mat3 assemble_matrix3(const CoeffsXYZ& c) {
  Mat3 m = Mat3::Zero();
  m.topLeftCorner<2, 2>() = assemble_matrix2(c);
  m(2, 2) = c.h0;
  return m;
}

MatX assemble_matrix(const CoeffsXYZ& c, int bands) {
  if (bands == 2) return assemble_matrix2(c);
  if (bands == 3) return assemble_matrix3(c);
  throw std::invalid_argument("assemble_matrix: bands must be 2 or 3");
}

double hermiticity_defect(const MatX& h) {
  if (h.rows() != h.cols()) throw HermiticityError("matrix is not square");
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

std::vector<double> eig_bands(const MatX& h, double tol) {
  if (hermiticity_defect(h) > tol) throw HermiticityError("eig_bands: input is not Hermitian");
  if (h.rows() == 2) {
    const double h0 = 0.5 * (h(0, 0).real() + h(1, 1).real());
    const double hz = h(0, 0).real() - h(1, 1).real();
    const double hx = 2.0 * h(1, 0).real();
    const double hy = 2.0 * h(1, 0).imag();
    const double r = 0.5 * std::sqrt(hx * hx + hy * hy + hz * hz);
    return {h0 - r, h0 + r};
  }
  Eigen::SelfAdjointEigenSolver<MatX> solver(h, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end());
  return out;
}

HamiltonianSpec::HamiltonianSpec(Preset preset, std::string name, int bands, int dimension, Evaluator eval)
    : preset_(preset), name_(std::move(name)), bands_(bands), dimension_(dimension), eval_(std::move(eval)) {
  if (bands_ != 2 && bands_ != 3) throw std::invalid_argument("HamiltonianSpec: bands must be 2 or 3");
  if (dimension_ != 1 && dimension_ != 2) throw std::invalid_argument("HamiltonianSpec: dimension must be 1 or 2");
}

HamiltonianSpec HamiltonianSpec::cross_stitch(double alpha, double delta) {
  return {Preset::CrossStitch, "crossstitch", 2, 1, [alpha, delta](const Momentum& k) {
            const double c = std::cos(k.x);
            const double heff = -(2.0 * alpha * c + delta);
            return CoeffsXYZ{-2.0 * alpha * c, 2.0 * heff, 0.0, 0.0};
          }};
}

HamiltonianSpec HamiltonianSpec::uncoupled_chains(double alpha) {
  return {Preset::UncoupledChains, "uncoupled", 2, 1,
          [alpha](const Momentum& k) { return CoeffsXYZ{-2.0 * alpha * std::cos(k.x), 0.0, 0.0, 0.0}; }};
}

HamiltonianSpec HamiltonianSpec::kitaev_chain(double mu, double hopping, double pairing) {
  return {Preset::KitaevChain, "kitaev", 2, 1, [mu, hopping, pairing](const Momentum& k) {
            return CoeffsXYZ{0.0, 0.0, -2.0 * pairing * std::sin(k.x), 2.0 * (mu - hopping * std::cos(k.x))};
          }};
}

HamiltonianSpec HamiltonianSpec::xy_chain(double mu, double jx, double jy) {
  return kitaev_chain(mu, jx + jy, jx - jy);
}

HamiltonianSpec HamiltonianSpec::chiral_p_wave_2d(double mu, double pairing) {
  return {Preset::ChiralPWave2D, "pwave2d", 2, 2, [mu, pairing](const Momentum& k) {
            return CoeffsXYZ{0.0, -4.0 * pairing * std::sin(k.y), -4.0 * pairing * std::sin(k.x),
                             2.0 * (2.0 - mu - std::cos(k.x) - std::cos(k.y))};
          }};
}

HamiltonianSpec HamiltonianSpec::su3_flat(std::function<std::array<double, 3>(const Momentum&)> eta, double eta0) {
  return {Preset::SU3Flat, "su3flat", 3, 1, [eta = std::move(eta), eta0](const Momentum& k) {
            const auto e = eta(k);
            return CoeffsXYZ{eta0, e[0], e[1], e[2]};
          }};
}

HamiltonianSpec HamiltonianSpec::custom(Evaluator eval, int bands, int dimension) {
  return {Preset::Custom, "custom", bands, dimension, std::move(eval)};
}

HamiltonianSpec HamiltonianSpec::zero(int bands) {
  return {Preset::Custom, "zero", bands, 1, [](const Momentum&) { return CoeffsXYZ{}; }};
}

CoeffsXYZ HamiltonianSpec::coeffs(const Momentum& k) const {
  CoeffsXYZ c = eval_(k);
  if (!c.finite()) throw std::domain_error("HamiltonianSpec '" + name_ + "' produced non-finite coefficients");
  return c;
}

std::vector<double> brillouin_grid(int n) {
  if (n < 1) throw std::invalid_argument("brillouin_grid: n must be positive");
  std::vector<double> k(n);
  for (int i = 0; i < n; ++i) k[i] = -std::numbers::pi + 2.0 * std::numbers::pi * i / n;
  return k;
}

}  // namespace floquet
