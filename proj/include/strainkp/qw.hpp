#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "strainkp/axis.hpp"
#include "strainkp/kp_bulk.hpp"

namespace strainkp {

/// GaAs well of width well_nm centred in a stack with barrier_nm of
/// Al_x Ga_(1-x) As on each side. grid_points interior nodes span the stack;
/// the envelope vanishes on the two outer walls (one spacing beyond the first
/// and last node). An odd count puts a node on the well centre.
struct QwGeometry {
  double well_nm = 12.0;
  double barrier_nm = 20.0;
  double al_fraction = 0.4;
  int grid_points = 201;

  void validate() const;
  double length() const { return well_nm + 2.0 * barrier_nm; }
  double spacing() const { return length() / (grid_points + 1); }
  double node(int i) const { return -0.5 * length() + (i + 1) * spacing(); }
  /// Same stack with grid spacing halved (N -> 2N + 1, old nodes kept).
  QwGeometry refined() const;
};

inline constexpr int kMinGridPoints = 51;

struct QwMaterials {
  MaterialParams well;
  MaterialParams barrier;

  /// GaAs well, Vegard-interpolated barrier at the geometry's al_fraction.
  static QwMaterials from_table(const MaterialTable& table, const QwGeometry& g);
};

/// Fraction of each node's cell [z - h/2, z + h/2] that lies inside the well.
/// Interfaces between nodes therefore move continuously with the geometry.
std::vector<double> well_fraction(const QwGeometry& g);

/// Parameters seen by each node: vegard(fraction, barrier, well).
std::vector<MaterialParams> node_materials(const QwGeometry& g, const QwMaterials& m);

/// Unstrained HH/LH edge energy per node.
std::vector<double> vb_edge_profile(const QwGeometry& g, const QwMaterials& m);

/// Hermitian band matrix in LAPACK upper band storage (column-major,
/// ldab = kd + 1, A(i,j) = ab[kd + i - j + j*ldab] for j - kd <= i <= j).
struct BandedHermitian {
  std::size_t n = 0;
  std::size_t kd = 0;
  std::vector<cplx> ab;

  cplx operator()(std::size_t i, std::size_t j) const;
  Eigen::MatrixXcd to_dense() const;
};

/// Valence-band Hamiltonian of the well at k_par = 0: 6 bands per node,
/// node-major unknowns (index = 6 * node + band, band order HhUp..SoDown).
/// k_z^2 terms become -d/dz A(z) d/dz with A averaged onto the half-nodes,
/// which keeps the matrix Hermitian across the interfaces.
BandedHermitian build_qw_hamiltonian(const QwGeometry& g, const StrainState& strain, const QwMaterials& m);

struct EnvelopeState {
  double energy = 0.0;
  Eigen::VectorXcd coeffs;  // 6 * grid_points, unit norm over the grid
};

struct QwSolution {
  std::vector<double> z;
  std::vector<EnvelopeState> states;  // descending energy
  double max_residual = 0.0;          // max |H v - E v|
  double max_kramers_split = 0.0;     // max energy gap inside a doublet
  bool converged = false;
};

/// Top `n_states` (even, >= 2) hole states. Throws NumericalError if LAPACK
/// fails.
QwSolution solve_qw(const QwGeometry& g, const StrainState& strain, const QwMaterials& m, int n_states = 4);

/// Reduced Bloch density of the ground doublet: 8x8 (CB rows zero), the grid
/// summed out, trace one.
Matrix8c hgs_density(const QwSolution& solution);

ProjectionResult qw_projection(const QwSolution& solution, const QuantizationAxis& axis);

/// Lowest confined electron level (single band, hydrostatic shift included).
double electron_ground_energy(const QwGeometry& g, const StrainState& strain, const QwMaterials& m);

/// Diagonal offsets that make the bulk Hamiltonian mimic a quantum well.
struct EmulationOffsets {
  double cb = 0.0528;
  double hh = 0.0091;
  double lh = 0.0100;

  BandEdgeShifts shifts() const { return {cb, hh, lh}; }
};

/// Emission energy of the bulk model with emulation offsets (no excitonic
/// correction).
double transition_energy(const EmulationOffsets& offsets, const StrainState& strain, const MaterialParams& m);

/// Electron level minus hole ground state of the well.
double transition_energy(const QwGeometry& g, const StrainState& strain, const QwMaterials& m);

struct QwMixingRow {
  double strain_xx = 0.0;
  std::vector<ProjectionResult> weights;  // one per requested axis
  double hgs_energy = 0.0;
  double transition_energy = 0.0;
  bool converged = false;
};

struct QwCurve {
  double well_nm = 0.0;
  std::vector<QwMixingRow> rows;
};

/// One curve per well width. Strain comes from uniaxial sigma_xx with the
/// well's stiffness applied to the whole stack.
std::vector<QwCurve> qw_mixing_vs_strain(std::span<const double> thicknesses_nm,
                                         std::span<const double> uniaxial_gpa,
                                         std::span<const QuantizationAxis> axes, const QwGeometry& base,
                                         const MaterialTable& table, unsigned threads = 1);

}  // namespace strainkp
