#pragma once

#include <Eigen/Dense>
#include <array>
#include <span>
#include <vector>

#include "strainkp/kp_bulk.hpp"

namespace strainkp {

/// Direction n = (cos(phi) sin(theta), sin(phi) sin(theta), cos(theta)).
struct QuantizationAxis {
  double theta = 0.0;  // polar angle from z, rad
  double phi = 0.0;    // azimuth from x, rad

  static QuantizationAxis z() { return {0.0, 0.0}; }
  static QuantizationAxis x();
  static QuantizationAxis y();
  Eigen::Vector3d unit_vector() const;
};

/// Weights of a state on the HH_n, LH_n and SO_n pairs.
struct ProjectionResult {
  double hh = 0.0;
  double lh = 0.0;
  double so = 0.0;
  double total() const { return hh + lh + so; }
};

enum class JComponent { X, Y, Z };

/// Total angular momentum in the HH/LH quartet, units of hbar.
/// J_y = -i [J_z, J_x].
Matrix4c j_operator(JComponent c);

/// Columns are the eight Bloch basis states written in the orbital-spin
/// product basis (X up, X down, Y up, Y down, Z up, Z down, S up, S down).
const Matrix8c& orbital_basis();

/// Row of the orbital-spin basis for orbital o (0=X, 1=Y, 2=Z, 3=S) and spin s
/// (0=up, 1=down).
constexpr int orbital_index(int orbital, int spin) { return 2 * orbital + spin; }

/// Bloch basis quantized along `axis`, as columns expressed in the canonical
/// (z-quantized) Bloch basis. Column order matches Band. At theta = phi = 0
/// this is exactly the identity.
Matrix8c rotated_basis(const QuantizationAxis& axis);

/// (1/2) sum over the doublet of |psi><psi|.
Matrix8c doublet_density(const std::array<SpinorState, 2>& doublet);

/// Weights Tr(P_band rho) for the three rotated pairs.
ProjectionResult project_density(const Matrix8c& rho, const QuantizationAxis& axis);

/// Projection of a degenerate doublet; invariant under unitary remixing of
/// the pair. Throws DomainError if the states are split by more than
/// `degeneracy_tol` eV or are not orthonormal.
ProjectionResult project_hgs(const std::array<SpinorState, 2>& doublet, const QuantizationAxis& axis,
                             double degeneracy_tol = 1e-6);

/// Frobenius norm of JH - HJ.
double commutator_norm(const Matrix4c& j, const Matrix4c& h);

struct SweepOptions {
  unsigned threads = 1;
  /// Report prestress + uniaxial exx; false reports the uniaxial part only.
  bool report_total_strain = true;
};

struct MixingRow {
  double strain_xx = 0.0;
  ProjectionResult weights;
};

/// Topmost-doublet mixing at Gamma for prestress + uniaxial sigma_xx sweep.
std::vector<MixingRow> mixing_curve(std::span<const double> uniaxial_gpa, const StrainState& prestress,
                                    const QuantizationAxis& axis, const MaterialParams& m,
                                    const SweepOptions& options = {});

/// p_hh(theta, strain) for axes in the x-z plane (phi = 0).
struct MixingMap {
  std::vector<double> thetas;
  std::vector<double> strains;
  std::vector<double> hh;  // thetas.size() x strains.size(), theta-major

  double at(std::size_t i_theta, std::size_t i_strain) const { return hh[i_theta * strains.size() + i_strain]; }
  /// max over theta of p_hh for one strain column.
  double ridge(std::size_t i_strain) const;
};

MixingMap mixing_map(std::span<const double> thetas, std::span<const double> uniaxial_gpa,
                     const StrainState& prestress, const MaterialParams& m, const SweepOptions& options = {});

/// n evenly spaced values from lo to hi inclusive (n >= 2), or {lo} for n == 1.
std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace strainkp
