#include "strainkp/axis.hpp"

#include <cmath>
#include <numbers>

#include "strainkp/error.hpp"
#include "strainkp/parallel.hpp"

namespace strainkp {
namespace {

constexpr int kX = 0, kY = 1, kZ = 2, kS = 3;
constexpr int kUp = 0, kDown = 1;

Matrix8c make_orbital_basis() {
  const double r2 = 1.0 / std::sqrt(2.0);
  const double r3 = 1.0 / std::sqrt(3.0);
  const double r6 = 1.0 / std::sqrt(6.0);
  const cplx i(0.0, 1.0);
  auto at = orbital_index;

  Matrix8c u = Matrix8c::Zero();
  u(at(kS, kUp), index(Band::CbUp)) = i;
  u(at(kS, kDown), index(Band::CbDown)) = i;

  // HH(+3/2) = -(X + iY) up / sqrt2
  u(at(kX, kUp), index(Band::HhUp)) = -r2;
  u(at(kY, kUp), index(Band::HhUp)) = -i * r2;
  // LH(+1/2) = -[(X + iY) down - 2 Z up] / sqrt6
  u(at(kX, kDown), index(Band::LhUp)) = -r6;
  u(at(kY, kDown), index(Band::LhUp)) = -i * r6;
  u(at(kZ, kUp), index(Band::LhUp)) = 2.0 * r6;
  // LH(-1/2) = [(X - iY) up + 2 Z down] / sqrt6
  u(at(kX, kUp), index(Band::LhDown)) = r6;
  u(at(kY, kUp), index(Band::LhDown)) = -i * r6;
  u(at(kZ, kDown), index(Band::LhDown)) = 2.0 * r6;
  // HH(-3/2) = (X - iY) down / sqrt2
  u(at(kX, kDown), index(Band::HhDown)) = r2;
  u(at(kY, kDown), index(Band::HhDown)) = -i * r2;
  // SO(+1/2) = [(X + iY) down + Z up] / sqrt3
  u(at(kX, kDown), index(Band::SoUp)) = r3;
  u(at(kY, kDown), index(Band::SoUp)) = i * r3;
  u(at(kZ, kUp), index(Band::SoUp)) = r3;
  // SO(-1/2) = [(X - iY) up - Z down] / sqrt3
  u(at(kX, kUp), index(Band::SoDown)) = r3;
  u(at(kY, kUp), index(Band::SoDown)) = -i * r3;
  u(at(kZ, kDown), index(Band::SoDown)) = -r3;
  return u;
}

// Unitary on the orbital-spin basis mapping each unprimed function to its
// counterpart quantized along the axis (orbitals rotated by R_z(phi) R_y(theta),
// spinors by the matching SU(2) element).
Matrix8c frame_rotation(const QuantizationAxis& a) {
  const double ct = std::cos(a.theta), st = std::sin(a.theta);
  const double cp = std::cos(a.phi), sp = std::sin(a.phi);
  // Rows: X', Y', Z' in terms of X, Y, Z.
  const double rot[3][3] = {{ct * cp, ct * sp, -st}, {-sp, cp, 0.0}, {st * cp, st * sp, ct}};

  const double ch = std::cos(0.5 * a.theta), sh = std::sin(0.5 * a.theta);
  const cplx em = std::polar(1.0, -0.5 * a.phi), ep = std::polar(1.0, 0.5 * a.phi);
  // Rows: up', down' in terms of up, down.
  const cplx spin[2][2] = {{em * ch, ep * sh}, {-em * sh, ep * ch}};

  Matrix8c t = Matrix8c::Zero();
  for (int o = 0; o < 3; ++o)
    for (int s = 0; s < 2; ++s)
      for (int j = 0; j < 3; ++j)
        for (int u = 0; u < 2; ++u) t(orbital_index(j, u), orbital_index(o, s)) = rot[o][j] * spin[s][u];
  for (int s = 0; s < 2; ++s)
    for (int u = 0; u < 2; ++u) t(orbital_index(kS, u), orbital_index(kS, s)) = spin[s][u];
  return t;
}

ProjectionResult weights_from_diagonal(const Eigen::Matrix<double, 8, 1>& w) {
  return {w[index(Band::HhUp)] + w[index(Band::HhDown)], w[index(Band::LhUp)] + w[index(Band::LhDown)],
          w[index(Band::SoUp)] + w[index(Band::SoDown)]};
}

}  // namespace

QuantizationAxis QuantizationAxis::x() { return {0.5 * std::numbers::pi, 0.0}; }
QuantizationAxis QuantizationAxis::y() { return {0.5 * std::numbers::pi, 0.5 * std::numbers::pi}; }

Eigen::Vector3d QuantizationAxis::unit_vector() const {
  return {std::cos(phi) * std::sin(theta), std::sin(phi) * std::sin(theta), std::cos(theta)};
}

Matrix4c j_operator(JComponent c) {
  const double h = std::sqrt(3.0) / 2.0;
  Matrix4c jz = Matrix4c::Zero();
  jz.diagonal() << 1.5, 0.5, -0.5, -1.5;
  Matrix4c jx;
  jx << 0.0, h, 0.0, 0.0,
        h, 0.0, 1.0, 0.0,
        0.0, 1.0, 0.0, h,
        0.0, 0.0, h, 0.0;
  switch (c) {
    case JComponent::Z: return jz;
    case JComponent::X: return jx;
    case JComponent::Y: return cplx(0.0, -1.0) * (jz * jx - jx * jz);
  }
  return jz;
}

const Matrix8c& orbital_basis() {
  static const Matrix8c u = make_orbital_basis();
  return u;
}

Matrix8c rotated_basis(const QuantizationAxis& axis) {
  if (axis.theta == 0.0 && axis.phi == 0.0) return Matrix8c::Identity();
  const Matrix8c& u = orbital_basis();
  return u.adjoint() * frame_rotation(axis) * u;
}

Matrix8c doublet_density(const std::array<SpinorState, 2>& d) {
  return 0.5 * (d[0].coeffs * d[0].coeffs.adjoint() + d[1].coeffs * d[1].coeffs.adjoint());
}

ProjectionResult project_density(const Matrix8c& rho, const QuantizationAxis& axis) {
  const Matrix8c b = rotated_basis(axis);
  const Eigen::Matrix<double, 8, 1> w = (b.adjoint() * rho * b).diagonal().real();
  return weights_from_diagonal(w);
}

ProjectionResult project_hgs(const std::array<SpinorState, 2>& d, const QuantizationAxis& axis,
                             double degeneracy_tol) {
  if (std::abs(d[0].energy - d[1].energy) > degeneracy_tol)
    throw DomainError("project_hgs: states are not degenerate");
  const cplx overlap = d[0].coeffs.dot(d[1].coeffs);
  if (std::abs(overlap) > 1e-8 || std::abs(d[0].coeffs.squaredNorm() - 1.0) > 1e-8 ||
      std::abs(d[1].coeffs.squaredNorm() - 1.0) > 1e-8)
    throw DomainError("project_hgs: doublet is not orthonormal");
  return project_density(doublet_density(d), axis);
}

double commutator_norm(const Matrix4c& j, const Matrix4c& h) { return (j * h - h * j).norm(); }

std::vector<MixingRow> mixing_curve(std::span<const double> uniaxial_gpa, const StrainState& prestress,
                                    const QuantizationAxis& axis, const MaterialParams& m,
                                    const SweepOptions& options) {
  const auto c = ElasticConstants::of(m);
  std::vector<MixingRow> rows(uniaxial_gpa.size());
  parallel_for(rows.size(), options.threads, [&](std::size_t i) {
    const StrainState uni = uniaxial_strain(uniaxial_gpa[i], c);
    const StrainState total = superpose(prestress, uni);
    rows[i].strain_xx = options.report_total_strain ? total.xx : uni.xx;
    rows[i].weights = project_hgs(topmost_doublet({}, total, m), axis);
  });
  return rows;
}

double MixingMap::ridge(std::size_t i_strain) const {
  double best = 0.0;
  for (std::size_t t = 0; t < thetas.size(); ++t) best = std::max(best, at(t, i_strain));
  return best;
}

MixingMap mixing_map(std::span<const double> thetas, std::span<const double> uniaxial_gpa,
                     const StrainState& prestress, const MaterialParams& m, const SweepOptions& options) {
  if (thetas.empty() || uniaxial_gpa.empty()) throw DomainError("mixing_map: empty grid");
  const auto c = ElasticConstants::of(m);
  MixingMap map;
  map.thetas.assign(thetas.begin(), thetas.end());
  map.strains.resize(uniaxial_gpa.size());
  map.hh.resize(thetas.size() * uniaxial_gpa.size());

  std::vector<Matrix8c> bases(thetas.size());
  for (std::size_t t = 0; t < thetas.size(); ++t) bases[t] = rotated_basis({thetas[t], 0.0});

  parallel_for(uniaxial_gpa.size(), options.threads, [&](std::size_t s) {
    const StrainState uni = uniaxial_strain(uniaxial_gpa[s], c);
    const StrainState total = superpose(prestress, uni);
    map.strains[s] = options.report_total_strain ? total.xx : uni.xx;
    const Matrix8c rho = doublet_density(topmost_doublet({}, total, m));
    for (std::size_t t = 0; t < thetas.size(); ++t) {
      const Eigen::Matrix<double, 8, 1> w = (bases[t].adjoint() * rho * bases[t]).diagonal().real();
      map.hh[t * uniaxial_gpa.size() + s] = weights_from_diagonal(w).hh;
    }
  });
  return map;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {lo};
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  v.back() = hi;
  return v;
}

}  // namespace strainkp
