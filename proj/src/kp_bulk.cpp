#include "strainkp/kp_bulk.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "strainkp/error.hpp"

namespace strainkp {
namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt3 = std::sqrt(3.0);
const double kSqrt3Over2 = std::sqrt(1.5);

void fix_phase(Eigen::Ref<Eigen::VectorXcd> v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-12) {
      v *= std::conj(v[i]) / std::abs(v[i]);
      v[i] = std::abs(v[i]);
      return;
    }
  }
}

}  // namespace

LuttingerTerms luttinger_terms(const Wavevector& k, const StrainState& e, const MaterialParams& m) {
  const double c = kHbar2Over2M0;
  const double k2 = k.norm2();
  const double tr = e.trace();

  LuttingerTerms t;
  t.cb = m.cb_edge() + c * k2 / m.electron_mass + m.ac * tr;
  t.p = c * m.gamma1 * k2 - m.av * tr;
  t.q = c * m.gamma2 * (k2 - 3.0 * k.kz * k.kz) - 0.5 * m.b * (e.xx + e.yy - 2.0 * e.zz);
  t.r = c * kSqrt3 * cplx(-m.gamma2 * (k.kx * k.kx - k.ky * k.ky), 2.0 * m.gamma3 * k.kx * k.ky) +
        cplx(0.5 * kSqrt3 * m.b * (e.xx - e.yy), -m.d * e.xy);
  t.s = c * 2.0 * kSqrt3 * m.gamma3 * cplx(k.kx, -k.ky) * k.kz - m.d * cplx(e.xz, -e.yz);
  return t;
}

Matrix8c build_h8(const Wavevector& k, const StrainState& strain, const MaterialParams& m,
                  const BandEdgeShifts& shifts) {
  const auto t = luttinger_terms(k, strain, m);
  const cplx P = t.p, Q = t.q, R = t.r, S = t.s;
  const cplx Rc = std::conj(R), Sc = std::conj(S);
  const cplx D = m.spin_orbit;

  // Hole-picture valence block; the Hamiltonian carries it with a minus sign.
  Matrix6c hole;
  hole << P + Q, -S, R, 0.0, -S / kSqrt2, kSqrt2 * R,
          -Sc, P - Q, 0.0, R, -kSqrt2 * Q, kSqrt3Over2 * S,
          Rc, 0.0, P - Q, S, kSqrt3Over2 * Sc, kSqrt2 * Q,
          0.0, Rc, Sc, P + Q, -kSqrt2 * Rc, -Sc / kSqrt2,
          -Sc / kSqrt2, -kSqrt2 * Q, kSqrt3Over2 * S, -kSqrt2 * R, P + D, 0.0,
          kSqrt2 * Rc, kSqrt3Over2 * Sc, kSqrt2 * Q, -S / kSqrt2, 0.0, P + D;

  Matrix8c h = Matrix8c::Zero();
  h(0, 0) = h(1, 1) = t.cb + shifts.cb;
  h.bottomRightCorner<6, 6>() = Matrix6c::Identity() * m.vb_edge() - hole;
  for (Band b : {Band::HhUp, Band::HhDown}) h(index(b), index(b)) -= shifts.hh;
  for (Band b : {Band::LhUp, Band::LhDown}) h(index(b), index(b)) -= shifts.lh;
  return h;
}

Matrix4c h4_topmost(const Wavevector& k, const StrainState& strain, const MaterialParams& m) {
  return build_h8(k, strain, m).block<4, 4>(kFirstValence, kFirstValence);
}

Matrix6c valence_block(const Matrix8c& h) { return h.bottomRightCorner<6, 6>(); }

double hermiticity_residual(const Eigen::MatrixXcd& h) {
  if (h.size() == 0) return 0.0;
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

Spectrum eigensolve(const Eigen::MatrixXcd& h, double hermitian_tol) {
  if (h.rows() != h.cols()) throw DomainError("eigensolve: matrix is not square");
  const double residual = hermiticity_residual(h);
  if (!(residual <= hermitian_tol))
    throw DomainError("eigensolve: matrix is not Hermitian (residual " + std::to_string(residual) + ")");

  const Eigen::MatrixXcd sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym);
  if (solver.info() != Eigen::Success) throw NumericalError("eigensolve: solver did not converge");

  const auto n = h.rows();
  Spectrum out;
  out.energies.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.energies[i] = solver.eigenvalues()[n - 1 - i];
    out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
    fix_phase(out.vectors.col(i));
  }
  return out;
}

std::vector<SpinorState> valence_states(const Wavevector& k, const StrainState& strain,
                                        const MaterialParams& m, const BandEdgeShifts& shifts) {
  const Matrix6c vb = valence_block(build_h8(k, strain, m, shifts));
  const Spectrum spec = eigensolve(vb);
  std::vector<SpinorState> states(kValenceBands);
  for (int i = 0; i < kValenceBands; ++i) {
    states[i].energy = spec.energies[i];
    states[i].coeffs.tail<6>() = spec.vectors.col(i);
  }
  return states;
}

std::array<SpinorState, 2> topmost_doublet(const Wavevector& k, const StrainState& strain,
                                           const MaterialParams& m, const BandEdgeShifts& shifts) {
  auto states = valence_states(k, strain, m, shifts);
  return {states[0], states[1]};
}

DispersionTable dispersion(std::span<const Wavevector> path, const StrainState& strain,
                           const MaterialParams& m) {
  DispersionTable table;
  table.path.assign(path.begin(), path.end());
  Eigen::MatrixXcd previous;
  for (const auto& k : path) {
    const Spectrum spec = eigensolve(build_h8(k, strain, m));
    std::array<double, kBands> row{};
    if (previous.size() == 0) {
      for (int i = 0; i < kBands; ++i) row[i] = spec.energies[i];
      previous = spec.vectors;
    } else {
      // Greedy assignment: each tracked band takes the unclaimed eigenvector
      // with the largest overlap.
      const Eigen::MatrixXd overlap = (previous.adjoint() * spec.vectors).cwiseAbs2();
      std::array<bool, kBands> taken{};
      Eigen::MatrixXcd next(kBands, kBands);
      for (int band = 0; band < kBands; ++band) {
        int best = -1;
        for (int j = 0; j < kBands; ++j)
          if (!taken[j] && (best < 0 || overlap(band, j) > overlap(band, best))) best = j;
        taken[best] = true;
        row[band] = spec.energies[best];
        next.col(band) = spec.vectors.col(best);
      }
      previous = next;
    }
    table.energies.push_back(row);
  }
  return table;
}

}  // namespace strainkp
