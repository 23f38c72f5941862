#include <doctest.h>

#include <cmath>
#include <numbers>

#include "floquet/errors.h"
#include "floquet/synth.h"
#include "oracles.h"

using namespace floquet;

namespace {

constexpr double kPi = std::numbers::pi;

// P(t) from matrix exponentials of the raw gauge functions.
Mat2 oracle_micromotion(const GaugeParams& g, const Momentum& k, double t) {
  const MuValues mu = mu_functions(g, t);
  const cplx m = phi_plus(k) * mu.mu_plus;
  const double n2 = std::norm(m);
  return oracle::wei_norman_product(g.phi0_at(k) * mu.mu0, m, std::conj(m) / (1.0 + n2),
                                    cplx(mu.mu_zr, std::log(1.0 + n2)));
}

// i dP/dt P^dagger + P H_eff P^dagger.
Mat2 oracle_hamiltonian(const GaugeParams& g, const HamiltonianSpec& target, const Momentum& k, double t) {
  const std::function<Mat2(double)> p = [&](double s) { return oracle_micromotion(g, k, s); };
  const Mat2 pt = p(t);
  return kI * oracle::derivative(p, t, 2e-4) * pt.adjoint() + pt * assemble_matrix2(target.coeffs(k)) * pt.adjoint();
}

GaugeParams gauge(double omega, double a_plus, int p) {
  GaugeParams g;
  g.omega = omega;
  g.a_plus = a_plus;
  g.p = p;
  return g;
}

}  // namespace

TEST_CASE("m1_matches_differentiated_micromotion") {
  GaugeParams g = gauge(3.0, 0.8, 2);
  g.theta = 0.4;
  const Momentum k(1.1);
  for (double t : {0.1, 0.77, 1.9}) {
    const std::function<Mat2(double)> p = [&](double s) { return oracle_micromotion(g, k, s); };
    const Mat2 generator = kI * oracle::derivative(p, t, 1e-3) * p(t).adjoint();
    const WeiNormanState s = wei_norman_state(g, k, t);
    const Vec3c rates(s.dm_plus, std::conj(s.dm_plus), s.dmz_r);
    const Vec3c lhs = oracle::pmz_triple(generator);
    CHECK((lhs - transform_m1(s.m_plus) * rates).norm() < 1e-9);
  }
}

TEST_CASE("m2_matches_conjugated_spin_operators") {
  for (const auto& [m, mzr] : {std::pair{cplx(0.3, 0.4), 0.7}, std::pair{cplx(-1.2, 0.1), -2.0},
                               std::pair{cplx(0.0, 0.0), 1.0}}) {
    const Mat2 p = micromotion_matrix(0.0, m, mzr);
    const CoeffsXYZ h{0.0, 0.6, -1.3, 2.2};
    const Vec3c lhs = oracle::pmz_triple(p * assemble_matrix2(h) * p.adjoint());
    CHECK((lhs - transform_m2(m, mzr) * xyz_to_pmz(h).triple()).norm() < 1e-13);
  }
}

TEST_CASE("general_synthesis_reproduces_the_floquet_decomposition") {
  struct Case {
    HamiltonianSpec bare;
    HamiltonianSpec target;
    GaugeParams g;
    Momentum k;
  };
  GaugeParams rich = gauge(5.0, 1.3, 2);
  rich.a0 = 0.7;
  rich.theta = -0.6;
  rich.phi0 = [](const Momentum& k) { return std::cos(k.x); };
  const std::vector<Case> cases{
      {HamiltonianSpec::uncoupled_chains(1.0), HamiltonianSpec::cross_stitch(1.0, 2.0), gauge(8.0, std::sqrt(2.0), 3),
       Momentum(0.9)},
      {HamiltonianSpec::zero(), HamiltonianSpec::kitaev_chain(0.5, 1.0, 0.7), rich, Momentum(-2.0)},
      {HamiltonianSpec::kitaev_chain(0.1, 0.4, 0.2), HamiltonianSpec::cross_stitch(0.5, 1.0), rich, Momentum(2.5)},
      {HamiltonianSpec::zero(), HamiltonianSpec::chiral_p_wave_2d(1.0, 0.5), gauge(4.0, 1.0, 1), Momentum(0.3, -0.8)},
  };
  for (const auto& c : cases) {
    for (double t : {0.0, 0.21, 0.5, 1.3}) {
      const DriveSample f = synth_drive_general(c.bare, c.target, c.g, c.k, t);
      const Mat2 h = assemble_matrix2(c.bare.coeffs(c.k) + f.coeffs());
      CHECK((h - oracle_hamiltonian(c.g, c.target, c.k, t)).norm() < 1e-8);
    }
  }
}

TEST_CASE("kernel_agrees_with_matrix_route") {
  GaugeParams g = gauge(6.0, 0.9, -2);
  g.a0 = 0.3;
  g.theta = 1.2;
  g.phi0 = [](const Momentum& k) { return std::sin(k.x); };
  const HamiltonianSpec bare = HamiltonianSpec::kitaev_chain(0.2, 1.0, 0.4);
  const HamiltonianSpec target = HamiltonianSpec::cross_stitch(1.0, 2.0);
  const DrivingProtocol protocol = make_general_protocol(bare, target, g);
  for (double k : brillouin_grid(9)) {
    for (double t : {0.0, 0.3, 0.9}) {
      const DriveSample a = protocol.drive(k, t);
      const DriveSample b = synth_drive_general_unchecked(bare.coeffs(k), target.coeffs(k), g, k, t);
      CHECK(std::abs(a.f0 - b.f0) < 1e-12);
      CHECK(std::abs(a.fx - b.fx) < 1e-12);
      CHECK(std::abs(a.fy - b.fy) < 1e-12);
      CHECK(std::abs(a.fz - b.fz) < 1e-12);
    }
  }
}

TEST_CASE("crossstitch_closed_form_agrees_with_general_route") {
  for (double omega : {8.0, 4.0}) {
    const CrossStitchParams cs{1.0, 2.0, omega, std::sqrt(2.0), 3};
    const DrivingProtocol closed = make_crossstitch_protocol(cs);
    const DrivingProtocol general = make_crossstitch_general_protocol(cs);
    const double period = closed.period();
    double worst = 0.0;
    for (double k : brillouin_grid(32)) {
      for (int j = 0; j < 32; ++j) {
        const double t = period * j / 32;
        const DriveSample a = closed.drive(k, t);
        const DriveSample b = general.drive(k, t);
        worst = std::max({worst, std::abs(a.fx - b.fx), std::abs(a.fy - b.fy), std::abs(a.fz - b.fz),
                          std::abs(a.f0 - b.f0)});
      }
    }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("crossstitch_spot_value_at_origin") {
  const DriveSample f = synth_drive_crossstitch(CrossStitchParams{}, 0.0, 0.0);
  CHECK(f.fx == doctest::Approx(16.0 * std::sqrt(2.0) - 8.0).epsilon(1e-14));
  CHECK(std::abs(f.fy) < 1e-14);
  CHECK(f.fz == doctest::Approx(24.0).epsilon(1e-14));
  CHECK(f.f0 == 0.0);
}

TEST_CASE("crossstitch_drive_is_periodic") {
  const CrossStitchParams cs{};
  const double period = 2.0 * kPi / cs.omega;
  for (double k : {-1.0, 0.4, 2.9}) {
    for (double t : {0.01, 0.3}) {
      const DriveSample a = synth_drive_crossstitch(cs, k, t);
      const DriveSample b = synth_drive_crossstitch(cs, k, t + 3.0 * period);
      CHECK(std::abs(a.fx - b.fx) < 1e-12);
      CHECK(std::abs(a.fy - b.fy) < 1e-12);
      CHECK(std::abs(a.fz - b.fz) < 1e-12);
    }
  }
}

TEST_CASE("eta_closed_form_agrees_with_general_route") {
  for (const std::array<double, 3> eta : {std::array{1.5, -1.5, 0.0}, std::array{0.3, 2.0, -1.1}}) {
    for (int p : {3, 2, -1}) {
      const double a = 1.1;
      const double omega = 5.0;
      for (double k : {-2.2, 0.0, 0.9}) {
        for (double t : {0.0, 0.17, 0.6, 1.0}) {
          const DriveSample c = synth_drive_eta_closed_form(eta, omega, a, p, k, t);
          const DriveSample g = synth_drive_su3(eta, omega, a, p, k, t);
          CHECK(std::abs(c.fx - g.fx) < 1e-12);
          CHECK(std::abs(c.fy - g.fy) < 1e-12);
          CHECK(std::abs(c.fz - g.fz) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("transcribed_three_band_form_differs_from_general_route") {
  const std::array<double, 3> eta{4.0, -4.0, 0.0};
  const double a = std::sqrt(2.0);
  // At t = 0 the micro-motion is the identity: Fx = 2 a w cos k + eta_x.
  const DriveSample g = synth_drive_su3(eta, 8.0, a, 3, 0.0, 0.0);
  CHECK(g.fx == doctest::Approx(2.0 * a * 8.0 + 4.0).epsilon(1e-14));
  const DriveSample tr = su3_closed_form_transcribed(eta, 8.0, a, 3, 0.0, 0.0);
  CHECK(std::abs(tr.fx - g.fx) > 1.0);
}

TEST_CASE("static_term_vanishes_for_the_chosen_gauge") {
  const DrivingProtocol protocol = make_crossstitch_protocol(CrossStitchParams{});
  for (double k : brillouin_grid(16)) {
    for (double r : static_harmonic_residual(protocol, k)) CHECK(std::abs(r) <= 1e-10);
  }
}

TEST_CASE("static_term_counterexamples") {
  const double k = kPi / 3.0;
  const double a = std::sqrt(2.0);
  const double heff = -(2.0 * std::cos(k) + 2.0);
  CrossStitchParams p1{};
  p1.p = 1;
  const auto r1 = static_harmonic_residual(make_crossstitch_protocol(p1), k);
  CHECK(r1[2] == doctest::Approx(2.0 * a * heff * std::cos(k)).epsilon(1e-10));
  CHECK(std::abs(r1[2]) > 1e-3 * p1.omega);

  CrossStitchParams p2{};
  p2.p = 2;
  const auto r2 = static_harmonic_residual(make_crossstitch_protocol(p2), k);
  CHECK(r2[0] == doctest::Approx(-0.5 * a * a * heff * std::cos(2.0 * k)).epsilon(1e-10));
  CHECK(std::abs(r2[0]) > 1e-3 * p2.omega);
}

TEST_CASE("scaled_fz_hook_changes_only_fz") {
  const DrivingProtocol base = make_crossstitch_protocol(CrossStitchParams{});
  const DrivingProtocol bent = with_scaled_fz(base, 1.01);
  const DriveSample a = base.drive(0.5, 0.1);
  const DriveSample b = bent.drive(0.5, 0.1);
  const DriveSample c = bent.at(0.5)(0.1);
  CHECK(b.fx == a.fx);
  CHECK(b.fz == doctest::Approx(1.01 * a.fz));
  CHECK(c.fz == b.fz);
}

TEST_CASE("protocol_binder_matches_evaluator") {
  const DrivingProtocol protocol = make_crossstitch_protocol(CrossStitchParams{});
  const TimeDrive drive = protocol.at(1.3);
  for (double t : {0.0, 0.2, 0.7}) {
    const DriveSample a = drive(t);
    const DriveSample b = protocol.drive(1.3, t);
    CHECK(a.fx == b.fx);
    CHECK(a.fz == b.fz);
  }
}

TEST_CASE("non_closing_gauge_is_rejected_at_construction") {
  GaugeParams g = gauge(8.0, 1.0, 3);
  g.custom = CustomGaugeProfiles{
      {[](double) { return 0.0; }, [](double) { return 0.0; }},
      {[](double) { return cplx(0.5); }, [](double) { return cplx(0.0); }},
      {[](double t) { return 24.0 * t; }, [](double) { return 24.0; }}};
  CHECK_THROWS_AS(make_general_protocol(HamiltonianSpec::zero(), HamiltonianSpec::cross_stitch(1.0, 2.0), g),
                  NonPeriodicGauge);
}
