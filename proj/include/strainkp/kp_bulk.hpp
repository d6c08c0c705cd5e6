#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <span>
#include <vector>

#include "strainkp/elasticity.hpp"
#include "strainkp/materials.hpp"

namespace strainkp {

using cplx = std::complex<double>;
using Matrix8c = Eigen::Matrix<cplx, 8, 8>;
using Matrix6c = Eigen::Matrix<cplx, 6, 6>;
using Matrix4c = Eigen::Matrix<cplx, 4, 4>;
using Vector8c = Eigen::Matrix<cplx, 8, 1>;

/// hbar^2 / (2 m0) in eV nm^2. Every kinetic term goes through this constant.
inline constexpr double kHbar2Over2M0 = 0.0380998;

/// Bloch basis order used everywhere: conduction pair, HH/LH quartet
/// (J_z = +3/2, +1/2, -1/2, -3/2), split-off pair.
enum class Band : int { CbUp = 0, CbDown, HhUp, LhUp, LhDown, HhDown, SoUp, SoDown };
inline constexpr int kBands = 8;
inline constexpr int kFirstValence = 2;
inline constexpr int kValenceBands = 6;

constexpr int index(Band b) { return static_cast<int>(b); }

struct Wavevector {
  double kx = 0.0, ky = 0.0, kz = 0.0;  // 1/nm
  double norm2() const { return kx * kx + ky * ky + kz * kz; }
};

/// Diagonal offsets added on top of the bulk Hamiltonian, in electron energy:
/// the CB moves up by `cb`, the HH and LH diagonals move down by `hh`, `lh`.
/// Used to mimic quantum-well confinement in the bulk model.
struct BandEdgeShifts {
  double cb = 0.0;
  double hh = 0.0;
  double lh = 0.0;
};

/// The scalar blocks of the Luttinger-Kohn + Pikus-Bir Hamiltonian. `cb` is
/// the absolute conduction-band energy; `p` and `q` are measured from the
/// unstrained valence edge and enter with the hole sign.
struct LuttingerTerms {
  double cb = 0.0;
  double p = 0.0;
  double q = 0.0;
  cplx r;
  cplx s;
};

LuttingerTerms luttinger_terms(const Wavevector& k, const StrainState& strain, const MaterialParams& m);

/// 8x8 Hamiltonian in the electron-energy picture. The CB pair is decoupled
/// from the valence sextet.
Matrix8c build_h8(const Wavevector& k, const StrainState& strain, const MaterialParams& m,
                  const BandEdgeShifts& shifts = {});

/// HH/LH block (rows/columns HhUp..HhDown) of build_h8.
Matrix4c h4_topmost(const Wavevector& k, const StrainState& strain, const MaterialParams& m);

Matrix6c valence_block(const Matrix8c& h);

struct SpinorState {
  Vector8c coeffs = Vector8c::Zero();
  double energy = 0.0;
};

/// Eigenpairs of a Hermitian matrix, energies descending. Column i of
/// `vectors` belongs to energies[i].
struct Spectrum {
  Eigen::VectorXd energies;
  Eigen::MatrixXcd vectors;
};

/// Largest |H - H^H| entry.
double hermiticity_residual(const Eigen::MatrixXcd& h);

/// Dense Hermitian eigensolve. Output is descending; each eigenvector's first
/// coefficient above 1e-12 in magnitude is made real and positive. Throws
/// DomainError when |H - H^H| exceeds `hermitian_tol`.
Spectrum eigensolve(const Eigen::MatrixXcd& h, double hermitian_tol = 1e-9);

/// The six valence states (CB coefficients exactly zero), highest first.
std::vector<SpinorState> valence_states(const Wavevector& k, const StrainState& strain,
                                        const MaterialParams& m, const BandEdgeShifts& shifts = {});

/// Topmost valence Kramers doublet at k.
std::array<SpinorState, 2> topmost_doublet(const Wavevector& k, const StrainState& strain,
                                           const MaterialParams& m, const BandEdgeShifts& shifts = {});

/// Band energies along a k path (rows follow the path, columns the bands).
/// Bands keep their identity between neighbouring points by eigenvector overlap.
struct DispersionTable {
  std::vector<Wavevector> path;
  std::vector<std::array<double, kBands>> energies;
};

DispersionTable dispersion(std::span<const Wavevector> path, const StrainState& strain,
                           const MaterialParams& m);

}  // namespace strainkp
