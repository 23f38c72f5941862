#include "floquet/lattice.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "floquet/errors.h"

namespace floquet {

std::string to_string(Channel c) {
  switch (c) {
    case Channel::Sx:
      return "Sx";
    case Channel::Sy:
      return "Sy";
    case Channel::Sz:
      return "Sz";
  }
  return "?";
}

std::string to_string(Harmonic h) { return h == Harmonic::Cos ? "cos" : "sin"; }

namespace {

// coefficient[channel][m][harmonic] at time t, envelope included.
using HarmonicTable = std::array<std::array<std::array<double, 2>, kMaxHoppingRange + 1>, 3>;

HarmonicTable harmonics_at(const CrossStitchParams& cs, double t) {
  const double a = cs.a_plus;
  const double w = cs.omega;
  const double al = cs.alpha;
  const double dl = cs.delta;
  const double p = cs.p;
  const double s = std::sin(w * t);
  const double c = std::cos(w * t);
  const double cph = std::cos(p * w * t);
  const double sph = std::sin(p * w * t);
  const double a2s2 = a * a * s * s;
  const double fe = 1.0 / (1.0 + a2s2);

  HarmonicTable h{};
  constexpr int x = 0, y = 1, z = 2, kc = 0, ks = 1;
  // fx = 2 fe Nx.
  h[x][0][kc] = -dl * cph;
  h[x][1][kc] = a * w * c - 2.0 * al * cph - al * a2s2 * cph;
  h[x][1][ks] = -a * p * w * s + al * a2s2 * sph;
  h[x][2][kc] = -dl * a2s2 * cph;
  h[x][2][ks] = dl * a2s2 * sph;
  h[x][3][kc] = -al * a2s2 * cph;
  h[x][3][ks] = al * a2s2 * sph;
  // fy = -2 fe By.
  h[y][0][kc] = dl * sph;
  h[y][1][kc] = 2.0 * al * sph + a * p * w * s - al * a2s2 * sph;
  h[y][1][ks] = a * w * c - al * a2s2 * cph;
  h[y][2][kc] = -dl * a2s2 * sph;
  h[y][2][ks] = -dl * a2s2 * cph;
  h[y][3][kc] = -al * a2s2 * sph;
  h[y][3][ks] = -al * a2s2 * cph;
  // fz = fe Nz.
  h[z][0][kc] = p * w * (1.0 - 0.5 * a * a) + 0.5 * p * w * a * a * std::cos(2.0 * w * t) - 4.0 * a * al * s * sph;
  h[z][1][kc] = -4.0 * a * dl * s * sph;
  h[z][1][ks] = -4.0 * a * dl * s * cph;
  h[z][2][kc] = -4.0 * a * al * s * sph;
  h[z][2][ks] = -4.0 * a * al * s * cph;

  const std::array<double, 3> scale{2.0 * fe, -2.0 * fe, fe};
  for (int ch = 0; ch < 3; ++ch) {
    for (auto& m : h[ch]) {
      for (double& v : m) v *= scale[ch];
    }
  }
  return h;
}

void check_range(const CrossStitchParams& cs) {
  constexpr int kPoints = 32;
  constexpr int kTimes = 16;
  const double period = 2.0 * std::numbers::pi / cs.omega;
  for (int j = 0; j < kTimes; ++j) {
    const double t = period * j / kTimes;
    std::array<std::array<double, kPoints>, 3> f{};
    for (int i = 0; i < kPoints; ++i) {
      const DriveSample d = synth_drive_crossstitch(cs, 2.0 * std::numbers::pi * i / kPoints, t);
      f[0][i] = d.fx;
      f[1][i] = d.fy;
      f[2][i] = d.fz;
    }
    for (int ch = 0; ch < 3; ++ch) {
      for (int m = kMaxHoppingRange + 1; m <= kPoints / 2; ++m) {
        cplx acc = 0.0;
        for (int i = 0; i < kPoints; ++i) acc += f[ch][i] * std::polar(1.0, -2.0 * std::numbers::pi * m * i / kPoints);
        if (std::abs(acc) / kPoints > 1e-12) {
          throw RangeOverflow("expand_to_lattice: harmonic m = " + std::to_string(m) + " present in channel " +
                              to_string(static_cast<Channel>(ch)));
        }
      }
    }
  }
}

Mat2 channel_operator(Channel c) {
  switch (c) {
    case Channel::Sx:
      return spin_x();
    case Channel::Sy:
      return spin_y();
    case Channel::Sz:
      return spin_z();
  }
  return Mat2::Zero();
}

}  // namespace

std::vector<LatticeTerm> expand_to_lattice(const CrossStitchParams& cs) {
  check_range(cs);
  std::vector<LatticeTerm> terms;
  for (int ch = 0; ch < 3; ++ch) {
    for (int m = 0; m <= kMaxHoppingRange; ++m) {
      for (int hm = 0; hm < 2; ++hm) {
        // sin(0 k) vanishes; the z channel has no m = 3 harmonic.
        if (m == 0 && hm == 1) continue;
        if (ch == 2 && m == 3) continue;
        terms.push_back({static_cast<Channel>(ch), m, static_cast<Harmonic>(hm),
                         [cs, ch, m, hm](double t) { return harmonics_at(cs, t)[ch][m][hm]; }});
      }
    }
  }
  return terms;
}

DriveSample evaluate_expansion(const std::vector<LatticeTerm>& terms, double k, double t) {
  std::array<double, 3> f{0.0, 0.0, 0.0};
  for (const auto& term : terms) {
    const double basis = term.harmonic == Harmonic::Cos ? std::cos(term.range * k) : std::sin(term.range * k);
    f[static_cast<int>(term.channel)] += term.amplitude(t) * basis;
  }
  return {0.0, f[0], f[1], f[2]};
}

LatticeHamiltonian assemble_lattice_hamiltonian(const std::vector<LatticeTerm>& terms, int sites, double t) {
  if (sites < 8) throw std::invalid_argument("assemble_lattice_hamiltonian: need L >= 8");
  const int l = sites;
  LatticeHamiltonian h{l, MatX::Zero(2 * l, 2 * l)};
  for (const auto& term : terms) {
    if (term.range < 0 || term.range > kMaxHoppingRange) {
      throw RangeOverflow("assemble_lattice_hamiltonian: range " + std::to_string(term.range));
    }
    const double amp = term.amplitude(t);
    if (amp == 0.0) continue;
    const Mat2 op = channel_operator(term.channel) * amp;
    // Displacement weights w(d) with sum_d w(d) e^{-ikd} = cos(mk) or sin(mk).
    std::vector<std::pair<int, cplx>> weights;
    if (term.range == 0) {
      if (term.harmonic == Harmonic::Cos) weights.emplace_back(0, 1.0);
    } else if (term.harmonic == Harmonic::Cos) {
      weights.emplace_back(term.range, 0.5);
      weights.emplace_back(-term.range, 0.5);
    } else {
      weights.emplace_back(term.range, 0.5 * kI);
      weights.emplace_back(-term.range, -0.5 * kI);
    }
    for (const auto& [d, w] : weights) {
      for (int n = 0; n < l; ++n) {
        const int np = ((n + d) % l + l) % l;
        for (int s = 0; s < 2; ++s) {
          for (int sp = 0; sp < 2; ++sp) h.matrix(s * l + n, sp * l + np) += w * op(s, sp);
        }
      }
    }
  }
  if (hermiticity_defect(h.matrix) > 1e-13) {
    throw HermiticityError("assemble_lattice_hamiltonian: assembled V(t) is not Hermitian");
  }
  return h;
}

Mat2 lattice_to_momentum(const LatticeHamiltonian& h, double k) {
  const int l = h.sites;
  Mat2 v = Mat2::Zero();
  for (int d = 0; d < l; ++d) {
    const cplx phase = std::polar(1.0, -k * d);
    for (int s = 0; s < 2; ++s) {
      for (int sp = 0; sp < 2; ++sp) v(s, sp) += h.matrix(s * l, sp * l + d) * phase;
    }
  }
  return v;
}

double lattice_vs_momentum_check(const CrossStitchParams& cs, int sites, const std::vector<double>& t_grid) {
  const auto terms = expand_to_lattice(cs);
  double worst = 0.0;
  for (double t : t_grid) {
    const LatticeHamiltonian h = assemble_lattice_hamiltonian(terms, sites, t);
    for (int n = 0; n < sites; ++n) {
      const double k = 2.0 * std::numbers::pi * n / sites;
      const Mat2 expected = assemble_matrix2(synth_drive_crossstitch(cs, k, t).coeffs());
      worst = std::max(worst, (lattice_to_momentum(h, k) - expected).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

int hopping_bandwidth(const LatticeHamiltonian& h, double tol) {
  const int l = h.sites;
  int width = 0;
  for (int i = 0; i < 2 * l; ++i) {
    for (int j = 0; j < 2 * l; ++j) {
      if (std::abs(h.matrix(i, j)) <= tol) continue;
      const int d = std::abs((i % l) - (j % l));
      width = std::max(width, std::min(d, l - d));
    }
  }
  return width;
}

}  // namespace floquet
