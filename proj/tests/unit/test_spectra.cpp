#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "floquet/errors.h"
#include "floquet/propagate.h"
#include "floquet/spectra.h"
#include "oracles.h"

using namespace floquet;

namespace {

double stddev(const std::vector<double>& v) {
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  double acc = 0.0;
  for (double x : v) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / v.size());
}

std::vector<Momentum> grid(int n) {
  std::vector<Momentum> ks;
  for (double k : brillouin_grid(n)) ks.push_back(k);
  return ks;
}

}  // namespace

TEST_CASE("crossstitch_band_table") {
  const BandTable t = band_structure(HamiltonianSpec::cross_stitch(1.0, 2.0), grid(64));
  CHECK(t.rows() == 64);
  const auto upper = t.band(1);
  const auto lower = t.band(0);
  // Dispersive band -4 cos k - 2 never exceeds the flat band at 2.
  CHECK(stddev(upper) <= 1e-12);
  for (std::size_t i = 0; i < t.rows(); ++i) {
    CHECK(upper[i] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(lower[i] == doctest::Approx(-4.0 * std::cos(t.k_grid[i].x) - 2.0).epsilon(1e-13));
    CHECK(lower[i] <= upper[i]);
  }
}

TEST_CASE("zero_hopping_bands_are_constant") {
  const BandTable t = band_structure(HamiltonianSpec::cross_stitch(0.0, 2.0), grid(8));
  for (const auto& e : t.energies) {
    CHECK(e[0] == doctest::Approx(-2.0));
    CHECK(e[1] == doctest::Approx(2.0));
  }
}

TEST_CASE("envelope_fourier_constant_envelope") {
  const FourierTable f = envelope_fourier(0.0, 6);
  CHECK(f.c[0] == doctest::Approx(1.0));
  for (std::size_t n = 1; n < f.c.size(); ++n) CHECK(std::abs(f.c[n]) < 1e-15);
}

TEST_CASE("envelope_fourier_matches_geometric_series") {
  for (double a2 : {2.0, 0.5, 5.0}) {
    const FourierTable f = envelope_fourier(a2, 30);
    for (int n = 0; n <= 30; ++n) CHECK(std::abs(f.c[n] - oracle::envelope_coefficient(a2, n)) < 1e-12);
  }
  const FourierTable f = envelope_fourier(2.0, 22);
  CHECK(f.c[0] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
  for (int n = 1; n <= 10; ++n) CHECK(f.c[2 * n + 2] / f.c[2 * n] == doctest::Approx(2.0 - std::sqrt(3.0)).epsilon(1e-6));
}

TEST_CASE("envelope_fourier_odd_coefficients_vanish") {
  for (double a2 : {0.1, 1.0, 2.0, 3.7, 10.0}) {
    const FourierTable f = envelope_fourier(a2, 41);
    for (int n = 1; n <= 41; n += 2) CHECK(std::abs(f.c[n]) <= 1e-12);
  }
  CHECK_THROWS_AS(envelope_fourier(-1.0, 4), std::invalid_argument);
}

TEST_CASE("envelope_fourier_partial_sum_reconstructs") {
  const FourierTable f = envelope_fourier(2.0, 40);
  double worst = 0.0;
  for (int j = 0; j < 1024; ++j) {
    const double x = 2.0 * std::numbers::pi * j / 1024;
    const double s = std::sin(x);
    worst = std::max(worst, std::abs(fourier_partial_sum(f, x) - 1.0 / (1.0 + 2.0 * s * s)));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("quasienergy_folding") {
  CHECK(fold_quasienergy(-6.0, 8.0) == doctest::Approx(2.0));
  CHECK(fold_quasienergy(-6.0, 4.0) == doctest::Approx(2.0));
  CHECK(fold_quasienergy(4.0, 8.0) == doctest::Approx(4.0));
  CHECK(fold_quasienergy(-4.0, 8.0) == doctest::Approx(4.0));
  const auto zero = quasienergies(MatX::Identity(2, 2), 8.0);
  for (double e : zero) CHECK(std::abs(e) < 1e-15);
}

TEST_CASE("crossstitch_quasienergies_at_origin") {
  for (double omega : {8.0, 4.0}) {
    const double period = 2.0 * std::numbers::pi / omega;
    const Mat2 h = HamiltonianSpec::cross_stitch(1.0, 2.0).matrix(0.0);
    const MatX u = -expm_hermitian<2>(h, period);
    const auto e = quasienergies(u, omega, -1.0);
    REQUIRE(e.size() == 2);
    CHECK(e[0] == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(e[1] == doctest::Approx(2.0).epsilon(1e-10));
  }
}

TEST_CASE("quasienergies_reject_non_unitary_input") {
  CHECK_THROWS_AS(quasienergies(2.0 * MatX::Identity(2, 2), 8.0), NonUnitaryInput);
}

TEST_CASE("verified_quasienergies_recover_flat_band") {
  const DrivingProtocol protocol = make_crossstitch_protocol(CrossStitchParams{});
  VerifyOptions o;
  o.micromotion_samples = 0;
  const VerificationReport r = verify_protocol(protocol, grid(6), 1, o);
  std::vector<double> flat;
  for (const auto& row : r.per_k) {
    const auto e = quasienergies(row.propagator, 8.0, r.strobe_phase);
    // One quasienergy sits at the flat-band value 2 (inside the zone for w = 8).
    double best = 1e9;
    double value = 0.0;
    for (double x : e) {
      if (std::abs(x - 2.0) < best) {
        best = std::abs(x - 2.0);
        value = x;
      }
    }
    flat.push_back(value);
  }
  CHECK(stddev(flat) <= 1e-7);
}
