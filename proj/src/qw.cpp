#include "strainkp/qw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "strainkp/error.hpp"
#include "strainkp/kernels.hpp"
#include "strainkp/parallel.hpp"

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace strainkp {
namespace {

constexpr std::size_t kVb = kValenceBands;
constexpr std::size_t kBandwidth = 2 * kVb - 1;  // neighbour blocks reach 11 off the diagonal

// H(kz) = h0 + h1 * kz^2 at k_par = 0, exactly.
struct QuadraticBlocks {
  Matrix6c h0;
  Matrix6c h1;
};

QuadraticBlocks quadratic_blocks(const StrainState& strain, const MaterialParams& m) {
  const Matrix6c h0 = valence_block(build_h8({}, strain, m));
  const Matrix6c h1 = valence_block(build_h8({0.0, 0.0, 1.0}, strain, m)) - h0;
  return {h0, h1};
}

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

void QwGeometry::validate() const {
  if (!(well_nm > 0.0)) throw DomainError("well thickness must be positive");
  if (!(barrier_nm >= 0.0)) throw DomainError("barrier thickness must be non-negative");
  if (!(al_fraction >= 0.0 && al_fraction <= 1.0)) throw DomainError("al_fraction must lie in [0, 1]");
  if (grid_points < kMinGridPoints) throw DomainError("grid too coarse: need at least 51 points");
  if (grid_points % 2 == 0) throw DomainError("grid_points must be odd");
}

QwGeometry QwGeometry::refined() const {
  QwGeometry g = *this;
  g.grid_points = 2 * grid_points + 1;
  return g;
}

QwMaterials QwMaterials::from_table(const MaterialTable& table, const QwGeometry& g) {
  return {lookup(table, "GaAs"), algaas(table, AlloyComposition(g.al_fraction))};
}

std::vector<double> well_fraction(const QwGeometry& g) {
  g.validate();
  const double h = g.spacing();
  const double half = 0.5 * g.well_nm;
  std::vector<double> f(g.grid_points);
  for (int i = 0; i < g.grid_points; ++i) {
    const double z = g.node(i);
    const double overlap = std::min(z + 0.5 * h, half) - std::max(z - 0.5 * h, -half);
    f[i] = std::clamp(overlap / h, 0.0, 1.0);
  }
  return f;
}

std::vector<MaterialParams> node_materials(const QwGeometry& g, const QwMaterials& m) {
  const auto f = well_fraction(g);
  std::vector<MaterialParams> out;
  out.reserve(f.size());
  for (double fi : f) out.push_back(vegard(fi, m.barrier, m.well));
  return out;
}

std::vector<double> vb_edge_profile(const QwGeometry& g, const QwMaterials& m) {
  std::vector<double> e;
  for (const auto& p : node_materials(g, m)) e.push_back(p.vb_edge());
  return e;
}

cplx BandedHermitian::operator()(std::size_t i, std::size_t j) const {
  if (i > j) return std::conj((*this)(j, i));
  if (j - i > kd) return {};
  return ab[kd + i - j + j * (kd + 1)];
}

Eigen::MatrixXcd BandedHermitian::to_dense() const {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = j > kd ? j - kd : 0; i <= j; ++i) {
      a(i, j) = (*this)(i, j);
      if (i != j) a(j, i) = std::conj(a(i, j));
    }
  return a;
}

BandedHermitian build_qw_hamiltonian(const QwGeometry& g, const StrainState& strain, const QwMaterials& m) {
  g.validate();
  strain.validate();
  const auto params = node_materials(g, m);
  const std::size_t nodes = params.size();
  const double inv_h2 = 1.0 / (g.spacing() * g.spacing());

  std::vector<QuadraticBlocks> blocks;
  blocks.reserve(nodes);
  for (const auto& p : params) blocks.push_back(quadratic_blocks(strain, p));

  BandedHermitian out;
  out.n = kVb * nodes;
  out.kd = kBandwidth;
  const std::size_t ldab = out.kd + 1;
  out.ab.assign(ldab * out.n, cplx{});
  auto set = [&](std::size_t i, std::size_t j, cplx v) { out.ab[out.kd + i - j + j * ldab] = v; };

  // Walls sit one spacing outside the stack; the ghost node reuses the edge
  // material so the half-node average there is the edge value.
  auto half_node = [&](std::size_t a, std::size_t b) -> Matrix6c { return 0.5 * (blocks[a].h1 + blocks[b].h1); };

  for (std::size_t i = 0; i < nodes; ++i) {
    const Matrix6c left = half_node(i, i == 0 ? i : i - 1);
    const Matrix6c right = half_node(i, i + 1 == nodes ? i : i + 1);
    const Matrix6c diag = blocks[i].h0 + inv_h2 * (left + right);
    for (std::size_t c = 0; c < kVb; ++c)
      for (std::size_t r = 0; r <= c; ++r) set(kVb * i + r, kVb * i + c, diag(r, c));
    if (i + 1 < nodes) {
      const Matrix6c off = -inv_h2 * right;  // block (i, i+1)
      for (std::size_t r = 0; r < kVb; ++r)
        for (std::size_t c = 0; c < kVb; ++c) set(kVb * i + r, kVb * (i + 1) + c, off(r, c));
    }
  }
  return out;
}

namespace {

// Eigenvectors for a cluster of (nearly) degenerate eigenvalues by block
// inverse iteration: factor H - sigma once as a general band LU, iterate an
// orthonormal block, then diagonalize H inside the converged subspace.
Eigen::MatrixXcd cluster_vectors(const BandedHermitian& h, double sigma, int count, std::uint64_t seed) {
  const auto n = static_cast<lapack_int>(h.n);
  const auto kd = static_cast<lapack_int>(h.kd);
  const lapack_int ldab = 3 * kd + 1;  // 2 kl + ku + 1
  std::vector<cplx> lu(static_cast<std::size_t>(ldab) * n);
  for (std::size_t j = 0; j < h.n; ++j) {
    const std::size_t lo = j > h.kd ? j - h.kd : 0, hi = std::min(h.n - 1, j + h.kd);
    for (std::size_t i = lo; i <= hi; ++i) {
      cplx a = h(i, j);
      if (i == j) a -= sigma;
      lu[2 * h.kd + i - j + j * ldab] = a;
    }
  }
  std::vector<lapack_int> ipiv(n);
  lapack_int info = LAPACKE_zgbtrf(LAPACK_COL_MAJOR, n, n, kd, kd, lu.data(), ldab, ipiv.data());
  if (info < 0) throw NumericalError("zgbtrf failed (info " + std::to_string(info) + ")");
  if (info > 0)  // sigma hit an eigenvalue exactly; nudge it off
    return cluster_vectors(h, sigma + 1e-9 * std::max(1.0, std::abs(sigma)), count, seed);

  // Fixed-seed start block keeps results reproducible.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Eigen::MatrixXcd v(n, count);
  for (Eigen::Index j = 0; j < count; ++j)
    for (Eigen::Index i = 0; i < n; ++i) v(i, j) = {uni(rng), uni(rng)};

  auto orthonormalize = [&] {
    const Eigen::MatrixXcd q = Eigen::HouseholderQR<Eigen::MatrixXcd>(v).householderQ();
    v = q.leftCols(count);
  };
  constexpr int kSweeps = 4;
  for (int it = 0; it < kSweeps; ++it) {
    orthonormalize();
    info = LAPACKE_zgbtrs(LAPACK_COL_MAJOR, 'N', n, kd, kd, count, lu.data(), ldab, ipiv.data(), v.data(), n);
    if (info != 0) throw NumericalError("zgbtrs failed (info " + std::to_string(info) + ")");
  }
  orthonormalize();

  // Rayleigh-Ritz inside the block.
  Eigen::MatrixXcd hv(n, count);
  for (Eigen::Index j = 0; j < count; ++j)
    kernels::hermitian_band_matvec(h.n, h.kd, h.ab, {v.col(j).data(), h.n}, {hv.col(j).data(), h.n});
  const Eigen::MatrixXcd small = v.adjoint() * hv;
  return v * eigensolve(small, 1e-8).vectors;
}

}  // namespace

QwSolution solve_qw(const QwGeometry& g, const StrainState& strain, const QwMaterials& m, int n_states) {
  if (n_states < 2 || n_states % 2 != 0) throw DomainError("n_states must be even and at least 2");
  const BandedHermitian h = build_qw_hamiltonian(g, strain, m);
  const auto n = static_cast<lapack_int>(h.n);
  if (n_states > n) throw DomainError("n_states exceeds the matrix dimension");
  const auto ldab = static_cast<lapack_int>(h.kd + 1);

  // Eigenvalues only: asking zhbevx for vectors makes it accumulate the full
  // n x n reduction matrix, which dominates the run time.
  std::vector<cplx> ab = h.ab;
  std::vector<double> w(n);
  std::vector<lapack_int> ifail(n);
  lapack_int found = 0;
  cplx qdummy[1], zdummy[1];
  const double abstol = 2.0 * LAPACKE_dlamch('S');
  const lapack_int info = LAPACKE_zhbevx(LAPACK_COL_MAJOR, 'N', 'I', 'U', n, static_cast<lapack_int>(h.kd),
                                         ab.data(), ldab, qdummy, 1, 0.0, 0.0, n - n_states + 1, n, abstol,
                                         &found, w.data(), zdummy, 1, ifail.data());
  if (info != 0 || found != n_states)
    throw NumericalError("zhbevx failed (info " + std::to_string(info) + ")");
  std::vector<double> energies(w.begin(), w.begin() + n_states);
  std::reverse(energies.begin(), energies.end());

  QwSolution sol;
  sol.z.resize(g.grid_points);
  for (int i = 0; i < g.grid_points; ++i) sol.z[i] = g.node(i);

  // Eigenvalues closer than kClusterGap are solved together as one block.
  constexpr double kClusterGap = 1e-6;
  std::vector<cplx> hv(h.n);
  for (std::size_t first = 0; first < energies.size();) {
    std::size_t last = first + 1;
    while (last < energies.size() && energies[last - 1] - energies[last] < kClusterGap) ++last;
    const int count = static_cast<int>(last - first);
    const double centre = 0.5 * (energies[first] + energies[last - 1]);
    const double sigma = centre + 1e-10 * std::max(1.0, std::abs(centre));
    const Eigen::MatrixXcd vecs = cluster_vectors(h, sigma, count, 0x5eedULL + first);

    for (int c = 0; c < count; ++c) {
      EnvelopeState st;
      st.coeffs = vecs.col(c).normalized();
      fix_phase(st.coeffs);
      kernels::hermitian_band_matvec(h.n, h.kd, h.ab, {st.coeffs.data(), h.n}, hv);
      const Eigen::Map<const Eigen::VectorXcd> hx(hv.data(), n);
      st.energy = st.coeffs.dot(hx).real();
      const Eigen::VectorXcd r = hx - st.energy * st.coeffs;
      sol.max_residual = std::max(sol.max_residual, r.cwiseAbs().maxCoeff());
      sol.states.push_back(std::move(st));
    }
    first = last;
  }
  std::stable_sort(sol.states.begin(), sol.states.end(),
                   [](const EnvelopeState& a, const EnvelopeState& b) { return a.energy > b.energy; });

  for (std::size_t p = 0; p + 1 < sol.states.size(); p += 2)
    sol.max_kramers_split =
        std::max(sol.max_kramers_split, std::abs(sol.states[p].energy - sol.states[p + 1].energy));
  sol.converged = sol.max_residual < 1e-8 && sol.max_kramers_split < 1e-8;
  return sol;
}

Matrix8c hgs_density(const QwSolution& solution) {
  if (solution.states.size() < 2) throw DomainError("hgs_density: need the ground doublet");
  std::vector<cplx> rho(kVb * kVb);
  for (int s = 0; s < 2; ++s) {
    const auto& c = solution.states[s].coeffs;
    kernels::accumulate_density({c.data(), static_cast<std::size_t>(c.size())}, kVb, 0.5, rho);
  }
  Matrix8c out = Matrix8c::Zero();
  for (std::size_t a = 0; a < kVb; ++a)
    for (std::size_t b = 0; b < kVb; ++b) out(kFirstValence + a, kFirstValence + b) = rho[a * kVb + b];
  return out;
}

ProjectionResult qw_projection(const QwSolution& solution, const QuantizationAxis& axis) {
  return project_density(hgs_density(solution), axis);
}

double electron_ground_energy(const QwGeometry& g, const StrainState& strain, const QwMaterials& m) {
  const auto params = node_materials(g, m);
  const auto n = static_cast<lapack_int>(params.size());
  const double inv_h2 = 1.0 / (g.spacing() * g.spacing());
  const double tr = strain.trace();

  std::vector<double> a(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) a[i] = kHbar2Over2M0 / params[i].electron_mass;
  auto half = [&](std::size_t i, std::size_t j) { return 0.5 * (a[i] + a[j]); };

  std::vector<double> d(params.size()), e(params.size() > 0 ? params.size() - 1 : 0);
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double left = half(i, i == 0 ? i : i - 1);
    const double right = half(i, i + 1 == params.size() ? i : i + 1);
    d[i] = params[i].cb_edge() + params[i].ac * tr + inv_h2 * (left + right);
    if (i + 1 < params.size()) e[i] = -inv_h2 * right;
  }

  lapack_int found = 0;
  double w[1];
  double zdummy[1];
  std::vector<lapack_int> ifail(n);
  const lapack_int info = LAPACKE_dstevx(LAPACK_COL_MAJOR, 'N', 'I', n, d.data(), e.data(), 0.0, 0.0, 1, 1,
                                         2.0 * LAPACKE_dlamch('S'), &found, w, zdummy, 1, ifail.data());
  if (info != 0 || found != 1) throw NumericalError("dstevx failed (info " + std::to_string(info) + ")");
  return w[0];
}

double transition_energy(const EmulationOffsets& offsets, const StrainState& strain, const MaterialParams& m) {
  const Matrix8c h = build_h8({}, strain, m, offsets.shifts());
  const auto top = valence_states({}, strain, m, offsets.shifts()).front();
  return h(index(Band::CbUp), index(Band::CbUp)).real() - top.energy;
}

double transition_energy(const QwGeometry& g, const StrainState& strain, const QwMaterials& m) {
  return electron_ground_energy(g, strain, m) - solve_qw(g, strain, m, 2).states.front().energy;
}

std::vector<QwCurve> qw_mixing_vs_strain(std::span<const double> thicknesses_nm,
                                         std::span<const double> uniaxial_gpa,
                                         std::span<const QuantizationAxis> axes, const QwGeometry& base,
                                         const MaterialTable& table, unsigned threads) {
  const auto& gaas = lookup(table, "GaAs");
  const auto c = ElasticConstants::of(gaas);
  std::vector<QwCurve> curves(thicknesses_nm.size());
  const std::size_t per_curve = uniaxial_gpa.size();
  for (std::size_t t = 0; t < curves.size(); ++t) {
    curves[t].well_nm = thicknesses_nm[t];
    curves[t].rows.resize(per_curve);
  }

  parallel_for(curves.size() * per_curve, threads, [&](std::size_t job) {
    const std::size_t t = job / per_curve, s = job % per_curve;
    QwGeometry g = base;
    g.well_nm = thicknesses_nm[t];
    const auto mats = QwMaterials::from_table(table, g);
    const StrainState strain = uniaxial_strain(uniaxial_gpa[s], c);

    const QwSolution sol = solve_qw(g, strain, mats, 2);
    const Matrix8c rho = hgs_density(sol);
    QwMixingRow& row = curves[t].rows[s];
    row.strain_xx = strain.xx;
    for (const auto& axis : axes) row.weights.push_back(project_density(rho, axis));
    row.hgs_energy = sol.states.front().energy;
    row.transition_energy = electron_ground_energy(g, strain, mats) - row.hgs_energy;
    row.converged = sol.converged;
  });
  return curves;
}

}  // namespace strainkp
