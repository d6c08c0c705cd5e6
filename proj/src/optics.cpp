#include "strainkp/optics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "strainkp/axis.hpp"
#include "strainkp/error.hpp"
#include "strainkp/kernels.hpp"
#include "strainkp/parallel.hpp"

namespace strainkp {

double SphereGrid::theta(int i) const { return (i + 0.5) * std::numbers::pi / n_theta; }
double SphereGrid::phi(int j) const { return (j + 0.5) * 2.0 * std::numbers::pi / n_phi; }
double SphereGrid::weight(int i) const {
  return std::sin(theta(i)) * (std::numbers::pi / n_theta) * (2.0 * std::numbers::pi / n_phi);
}

double AngularDensity::integral() const {
  double sum = 0.0;
  for (int i = 0; i < grid.n_theta; ++i) {
    double row = 0.0;
    for (int j = 0; j < grid.n_phi; ++j) row += at(i, j);
    sum += grid.weight(i) * row;
  }
  return sum;
}

AngularDensity angular_density(const SpinorState& state, const SphereGrid& grid) {
  if (grid.n_theta < 1 || grid.n_phi < 1) throw DomainError("angular_density: empty grid");
  const Vector8c orb = orbital_basis() * state.coeffs;

  // {X up, Y up, Z up, X down, Y down, Z down}
  std::array<cplx, 6> amps{};
  double norm = 0.0;
  for (int s = 0; s < 2; ++s)
    for (int o = 0; o < 3; ++o) {
      amps[3 * s + o] = orb[orbital_index(o, s)];
      norm += std::norm(amps[3 * s + o]);
    }
  if (norm < 1e-12) throw DomainError("angular_density: state has no p-orbital content");

  const std::size_t n = grid.size();
  std::vector<double> nx(n), ny(n), nz(n);
  for (int i = 0; i < grid.n_theta; ++i)
    for (int j = 0; j < grid.n_phi; ++j) {
      const std::size_t p = static_cast<std::size_t>(i) * grid.n_phi + j;
      const double st = std::sin(grid.theta(i));
      nx[p] = std::cos(grid.phi(j)) * st;
      ny[p] = std::sin(grid.phi(j)) * st;
      nz[p] = std::cos(grid.theta(i));
    }

  AngularDensity out{grid, std::vector<double>(n)};
  kernels::p_orbital_density(amps, nx, ny, nz, out.values);
  // Integral of |a . n|^2 over the sphere is (4 pi / 3) |a|^2.
  const double scale = 3.0 / (4.0 * std::numbers::pi * norm);
  for (double& v : out.values) v *= scale;
  return out;
}

AngularDensity angular_density(const std::array<SpinorState, 2>& doublet, const SphereGrid& grid) {
  AngularDensity out = angular_density(doublet[0], grid);
  const AngularDensity second = angular_density(doublet[1], grid);
  for (std::size_t p = 0; p < out.values.size(); ++p) out.values[p] = 0.5 * (out.values[p] + second.values[p]);
  return out;
}

DipoleStrengths dipole_strengths(const Matrix8c& rho) {
  const Matrix8c& u = orbital_basis();
  const Matrix8c orb = u * rho * u.adjoint();
  auto weight = [&](int o) { return orb(orbital_index(o, 0), orbital_index(o, 0)).real() + orb(orbital_index(o, 1), orbital_index(o, 1)).real(); };
  return {weight(0), weight(1), weight(2), std::nullopt};
}

DipoleStrengths dipole_strengths(const std::array<SpinorState, 2>& doublet, double degeneracy_tol) {
  if (std::abs(doublet[0].energy - doublet[1].energy) > degeneracy_tol)
    throw DomainError("dipole_strengths: states are not degenerate");
  return dipole_strengths(doublet_density(doublet));
}

DipoleStrengths rates(const DipoleStrengths& s, const RateCalibration& cal) {
  if (!(cal.tau_ref_ps > 0.0)) throw DomainError("reference lifetime must be positive");
  constexpr double kBrightStrength = 0.5;
  const double per_strength = 1.0 / (kBrightStrength * cal.tau_ref_ps * 1e-3);  // GHz
  DipoleStrengths out = s;
  out.rates = std::array<double, 3>{s.sx * per_strength, s.sy * per_strength, s.sz * per_strength};
  return out;
}

std::vector<DipoleRow> dipole_sweep(std::span<const double> uniaxial_gpa, const StrainState& prestress,
                                  const MaterialParams& m, const RateCalibration& cal, unsigned threads,
                                  bool report_total_strain) {
  const auto c = ElasticConstants::of(m);
  std::vector<DipoleRow> rows(uniaxial_gpa.size());
  parallel_for(rows.size(), threads, [&](std::size_t i) {
    const StrainState uni = uniaxial_strain(uniaxial_gpa[i], c);
    const StrainState total = superpose(prestress, uni);
    rows[i].strain_xx = report_total_strain ? total.xx : uni.xx;
    rows[i].strengths = rates(dipole_strengths(topmost_doublet({}, total, m)), cal);
  });
  return rows;
}

Polarization dlp_and_angle(const DipoleStrengths& s, Collection mode) {
  const double background = mode == Collection::Ideal ? 0.5 * s.sz : 0.0;
  const double ix = s.sx + background;  // I(0)
  const double iy = s.sy + background;  // I(90)
  const double imax = std::max(ix, iy), imin = std::min(ix, iy);

  Polarization p;
  p.degree = imax + imin > 0.0 ? (imax - imin) / (imax + imin) : 0.0;
  p.tie = ix == iy;
  p.angle_deg = ix >= iy ? 0.0 : 90.0;
  return p;
}

}  // namespace strainkp
