#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "strainkp/kp_bulk.hpp"

namespace strainkp {

/// Equiangular midpoint grid on the sphere with solid-angle weights.
struct SphereGrid {
  int n_theta = 90;
  int n_phi = 180;

  std::size_t size() const { return static_cast<std::size_t>(n_theta) * n_phi; }
  double theta(int i) const;
  double phi(int j) const;
  double weight(int i) const;  // sin(theta) dtheta dphi
};

/// Probability density of a Bloch function over directions, theta-major.
struct AngularDensity {
  SphereGrid grid;
  std::vector<double> values;

  double at(int i_theta, int j_phi) const { return values[static_cast<std::size_t>(i_theta) * grid.n_phi + j_phi]; }
  /// Quadrature of the density over the sphere.
  double integral() const;
};

/// Density of the p-like part of a valence state, normalized analytically so
/// that its exact integral over the sphere is one.
AngularDensity angular_density(const SpinorState& state, const SphereGrid& grid = {});

/// Mean of the two densities of a Kramers pair, independent of how the pair
/// is mixed.
AngularDensity angular_density(const std::array<SpinorState, 2>& doublet, const SphereGrid& grid = {});

/// Relative dipole strengths along the cubic axes, with optional rates (GHz).
struct DipoleStrengths {
  double sx = 0.0, sy = 0.0, sz = 0.0;
  std::optional<std::array<double, 3>> rates;

  double sum() const { return sx + sy + sz; }
};

struct RateCalibration {
  /// Radiative lifetime of one bright exciton of an unstrained HH_z dot.
  double tau_ref_ps = 250.0;
};

/// X, Y, Z orbital weight (summed over spin) of a valence density matrix.
DipoleStrengths dipole_strengths(const Matrix8c& rho);

/// Doublet-averaged strengths; invariant under unitary remixing of the pair.
/// Throws DomainError if the pair is split by more than `degeneracy_tol` eV.
DipoleStrengths dipole_strengths(const std::array<SpinorState, 2>& doublet, double degeneracy_tol = 1e-6);

/// r = s / (s_bright * tau_ref) with s_bright = 1/2, so an unstrained bright
/// HH_z dipole radiates at 1 / tau_ref.
DipoleStrengths rates(const DipoleStrengths& s, const RateCalibration& cal);

struct DipoleRow {
  double strain_xx = 0.0;
  DipoleStrengths strengths;  // rates filled
};

/// Prestressed-bulk topmost doublet along a uniaxial sigma_xx sweep.
std::vector<DipoleRow> dipole_sweep(std::span<const double> uniaxial_gpa, const StrainState& prestress,
                                  const MaterialParams& m, const RateCalibration& cal, unsigned threads = 1,
                                  bool report_total_strain = true);

enum class Collection {
  TopOnly,  // z-polarized light is not collected
  Ideal,    // z-polarized light adds an unpolarized s_z / 2 at every angle
};

struct Polarization {
  double degree = 0.0;     // P = (Imax - Imin) / (Imax + Imin)
  double angle_deg = 0.0;  // phi* where I(phi*) = Imax
  bool tie = false;        // Imax == Imin, angle reported as 0
};

/// In-plane linear polarization of I(phi) = s_x cos^2 phi + s_y sin^2 phi.
Polarization dlp_and_angle(const DipoleStrengths& s, Collection mode = Collection::TopOnly);

}  // namespace strainkp
