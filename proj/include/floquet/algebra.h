#pragma once

// Operator basis for the two-band (spin-1/2) and embedded three-band problems.
//
// Conventions used everywhere in the library:
//   S = sigma / 2,  S+- = Sx +- i Sy  (so S+ + S- = sigma_x),
//   H = h0 * 1 + hx Sx + hy Sy + hz Sz = h0 * 1 + h- S+ + h+ S- + hz Sz,
//   h+- = (hx +- i hy) / 2.
// The "+-Z triple" of an operator is always (coefficient of S+, of S-, of Sz),
// i.e. (h-, h+, hz).
// The three-band operators are the spin-1/2 operators embedded in the upper
// left 2x2 block of a 3x3 matrix; the identity coefficient multiplies I3.

#include <array>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace floquet {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat3 = Eigen::Matrix3cd;
using MatX = Eigen::MatrixXcd;
using Vec3c = Eigen::Vector3cd;

inline constexpr cplx kI{0.0, 1.0};

// Lattice momentum; 1D models only read x.
struct Momentum {
  double x = 0.0;
  double y = 0.0;

  Momentum() = default;
  Momentum(double kx) : x(kx) {}  // NOLINT(google-explicit-constructor)
  Momentum(double kx, double ky) : x(kx), y(ky) {}
};

struct CoeffsXYZ {
  double h0 = 0.0;
  double hx = 0.0;
  double hy = 0.0;
  double hz = 0.0;

  bool finite() const;
  CoeffsXYZ operator+(const CoeffsXYZ& o) const { return {h0 + o.h0, hx + o.hx, hy + o.hy, hz + o.hz}; }
  CoeffsXYZ operator-(const CoeffsXYZ& o) const { return {h0 - o.h0, hx - o.hx, hy - o.hy, hz - o.hz}; }
  bool operator==(const CoeffsXYZ&) const = default;
};

struct CoeffsPMZ {
  double h0 = 0.0;
  cplx h_minus;  // multiplies S+
  cplx h_plus;   // multiplies S-
  double hz = 0.0;

  // (h-, h+, hz): the coefficient triple in (S+, S-, Sz) order.
  Vec3c triple() const { return {h_minus, h_plus, cplx(hz)}; }
};

CoeffsPMZ xyz_to_pmz(const CoeffsXYZ& c);

// Throws HermiticityError unless h+ == conj(h-) within `tol` (scaled by the
// magnitude of the pair).
CoeffsXYZ pmz_to_xyz(const CoeffsPMZ& c, double tol = 1e-12);

// Spin-1/2 operators.
Mat2 spin_x();
Mat2 spin_y();
Mat2 spin_z();
Mat2 spin_plus();
Mat2 spin_minus();

// Embedded block operators Lambda_a = lambda_a / 2 and Lambda+- = Lambda_x +- i Lambda_y.
struct LambdaOperators {
  Mat3 plus;
  Mat3 minus;
  Mat3 z;
  Mat3 x;
  Mat3 y;
};
LambdaOperators lambda_operators();

// The eight Gell-Mann matrices lambda_1 .. lambda_8 (index 0 is lambda_1).
// Reference only: synthesis works in the embedded SU(2) block.
std::array<Mat3, 8> gell_mann();

Mat2 assemble_matrix2(const CoeffsXYZ& c);
Mat3 assemble_matrix3(const CoeffsXYZ& c);
// bands must be 2 or 3.
MatX assemble_matrix(const CoeffsXYZ& c, int bands);

// Ascending eigenvalues of a Hermitian matrix. 2x2 inputs use the closed form
// h0 +- |h|/2; larger inputs go through Eigen's self-adjoint solver.
// Throws HermiticityError when max|H - H^dagger| > tol.
std::vector<double> eig_bands(const MatX& h, double tol = 1e-12);

double hermiticity_defect(const MatX& h);

enum class Preset {
  CrossStitch,
  UncoupledChains,
  KitaevChain,
  ChiralPWave2D,
  SU3Flat,
  Custom,
};

// A momentum-resolved Hamiltonian k -> h0 * 1 + h . S (or h . Lambda).
class HamiltonianSpec {
 public:
  using Evaluator = std::function<CoeffsXYZ(const Momentum&)>;

  HamiltonianSpec(Preset preset, std::string name, int bands, int dimension, Evaluator eval);

  // Target flat-band model: h0 = -2 a cos k, h^eff = -(2 a cos k + delta),
  // stored as hx = 2 h^eff so that h^eff (S+ + S-) = hx Sx.
  static HamiltonianSpec cross_stitch(double alpha, double delta);
  // Two decoupled chains with nearest-neighbour hopping: h0 = -2 a cos k, h = 0.
  static HamiltonianSpec uncoupled_chains(double alpha);
  // H_k = (mu - t cos k) tau_z - |Delta| sin k tau_y with tau = 2S.
  static HamiltonianSpec kitaev_chain(double mu, double hopping, double pairing);
  // Anisotropic XY chain in a transverse field through its Kitaev image:
  // t = Jx + Jy, |Delta| = Jx - Jy.
  static HamiltonianSpec xy_chain(double mu, double jx, double jy);
  // H_k = [2 - mu - cos kx - cos ky] tau_z - 2|Delta| sin kx tau_y - 2|Delta| sin ky tau_x.
  static HamiltonianSpec chiral_p_wave_2d(double mu, double pairing);
  // Three-band H_k = eta0 * 1 + eta . Lambda.
  static HamiltonianSpec su3_flat(std::function<std::array<double, 3>(const Momentum&)> eta, double eta0 = 0.0);
  static HamiltonianSpec custom(Evaluator eval, int bands = 2, int dimension = 1);
  static HamiltonianSpec zero(int bands = 2);

  // Throws std::domain_error when the evaluator produces non-finite values.
  CoeffsXYZ coeffs(const Momentum& k) const;
  MatX matrix(const Momentum& k) const { return assemble_matrix(coeffs(k), bands_); }

  Preset preset() const { return preset_; }
  const std::string& name() const { return name_; }
  int bands() const { return bands_; }
  int dimension() const { return dimension_; }

 private:
  Preset preset_;
  std::string name_;
  int bands_;
  int dimension_;
  Evaluator eval_;
};

// Uniform grid on [-pi, pi) with n points.
std::vector<double> brillouin_grid(int n);

}  // namespace floquet
