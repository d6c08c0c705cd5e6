#include <doctest.h>

#include <algorithm>
#include <numbers>

#include "strainkp/error.hpp"
#include "strainkp/qw.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace strainkp;

namespace {

ElasticConstants gc() { return ElasticConstants::of(fixtures::gaas()); }

QwMaterials mats(const QwGeometry& g) { return QwMaterials::from_table(fixtures::table(), g); }

// Top eigenvalues of the discrete problem when every node has the same
// material: the finite-difference k_z^2 has eigenvalues
// (4/h^2) sin^2(n pi h / 2L') on a wall-to-wall length L' = (N + 1) h.
std::vector<double> uniform_oracle(const QwGeometry& g, const StrainState& e, const MaterialParams& m, int count) {
  const double h = g.spacing();
  const double wall = (g.grid_points + 1) * h;
  std::vector<double> all;
  for (int n = 1; n <= 6; ++n) {
    const double lam = 4.0 / (h * h) * std::pow(std::sin(n * std::numbers::pi * h / (2.0 * wall)), 2);
    const auto sp = eigensolve(build_h8({0.0, 0.0, std::sqrt(lam)}, e, m));
    for (int b = 2; b < 8; ++b) all.push_back(sp.energies[b]);
  }
  std::sort(all.rbegin(), all.rend());
  all.resize(count);
  return all;
}

double well_weight(const QwSolution& sol, const QwGeometry& g, double half_width) {
  double in = 0.0;
  for (int s = 0; s < 2; ++s)
    for (int i = 0; i < g.grid_points; ++i)
      if (std::abs(sol.z[i]) <= half_width)
        for (int b = 0; b < 6; ++b) in += 0.5 * std::norm(sol.states[s].coeffs[6 * i + b]);
  return in;
}

}  // namespace

TEST_CASE("geometry validation") {
  CHECK_NOTHROW(QwGeometry{}.validate());
  CHECK_THROWS_AS((QwGeometry{12, 20, 0.4, 49}.validate()), DomainError);
  CHECK_THROWS_AS((QwGeometry{12, 20, 0.4, 202}.validate()), DomainError);
  CHECK_THROWS_AS((QwGeometry{0, 20, 0.4, 201}.validate()), DomainError);
  CHECK_THROWS_AS((QwGeometry{12, 20, 1.4, 201}.validate()), DomainError);
}

TEST_CASE("grid: centred odd grid and refinement keeps nodes") {
  const QwGeometry g;
  CHECK(g.length() == 52.0);
  CHECK(std::abs(g.node(g.grid_points / 2)) < 1e-12);
  const QwGeometry r = g.refined();
  CHECK(r.grid_points == 2 * g.grid_points + 1);
  CHECK(r.spacing() == doctest::Approx(g.spacing() / 2));
  for (int i = 0; i < g.grid_points; i += 20) CHECK(r.node(2 * i + 1) == doctest::Approx(g.node(i)));
}

TEST_CASE("valence edge profile steps by the alloy offset") {
  const QwGeometry g;
  const auto m = mats(g);
  const auto ev = vb_edge_profile(g, m);
  const auto frac = well_fraction(g);
  const double offset = m.well.vb_edge() - m.barrier.vb_edge();
  CHECK(offset > 0.0);
  CHECK(ev[g.grid_points / 2] == doctest::Approx(fixtures::gaas().vb_edge()));
  CHECK(ev.front() == doctest::Approx(vegard(0.4, fixtures::gaas(), fixtures::alas()).vb_edge()));
  for (int i = 0; i < g.grid_points; ++i) {
    CHECK(frac[i] >= 0.0);
    CHECK(frac[i] <= 1.0);
    CHECK(ev[i] == doctest::Approx(m.barrier.vb_edge() + frac[i] * offset));
  }
}

TEST_CASE("banded Hamiltonian is Hermitian and matches its dense form") {
  oracle::Rng rng(31);
  for (int t = 0; t < 5; ++t) {
    QwGeometry g{rng.uniform(3, 15), rng.uniform(5, 15), rng.uniform(0, 1), 51 + 2 * static_cast<int>(rng.uniform(0, 20))};
    const auto h = build_qw_hamiltonian(g, rng.strain(0.01), mats(g));
    const Eigen::MatrixXcd d = h.to_dense();
    CHECK(d.rows() == 6 * g.grid_points);
    CHECK(hermiticity_residual(d) < 1e-12);
    CHECK(std::abs(h(3, 10) - std::conj(h(10, 3))) == 0.0);
    CHECK(h(0, 40) == cplx{});
  }
}

TEST_CASE("band solver agrees with a dense eigensolve") {
  oracle::Rng rng(37);
  for (int t = 0; t < 3; ++t) {
    QwGeometry g{8.0, 10.0, 0.4, 61};
    const auto e = rng.strain(0.005);
    const auto sol = solve_qw(g, e, mats(g), 6);
    const auto dense = eigensolve(build_qw_hamiltonian(g, e, mats(g)).to_dense());
    for (int s = 0; s < 6; ++s) CHECK(sol.states[s].energy == doctest::Approx(dense.energies[s]).epsilon(1e-12));
    CHECK(sol.converged);
    // Ground doublet spans the same subspace.
    Eigen::MatrixXcd v(dense.vectors.rows(), 2);
    v << sol.states[0].coeffs, sol.states[1].coeffs;
    const Eigen::MatrixXcd overlap = dense.vectors.leftCols(2).adjoint() * v;
    CHECK(std::abs(std::abs(overlap.determinant()) - 1.0) < 1e-8);
  }
}

TEST_CASE("uniform material reproduces the discrete box ladder") {
  QwGeometry g{12.0, 10.0, 0.0, 101};  // Al fraction 0: barrier == well
  const auto m = mats(g);
  for (const StrainState& e : {StrainState{}, uniaxial_strain(0.8, gc())}) {
    const auto sol = solve_qw(g, e, m, 6);
    const auto want = uniform_oracle(g, e, m.well, 6);
    for (int s = 0; s < 6; ++s) CHECK(sol.states[s].energy == doctest::Approx(want[s]).epsilon(1e-11));
  }
}

TEST_CASE("solution invariants") {
  const QwGeometry g{8.0, 15.0, 0.4, 151};
  const auto sol = solve_qw(g, uniaxial_strain(1.2, gc()), mats(g), 4);
  REQUIRE(sol.states.size() == 4);
  CHECK(sol.converged);
  CHECK(sol.max_kramers_split < 1e-8);
  CHECK(sol.z.size() == 151u);
  for (int a = 0; a < 4; ++a) {
    CHECK(sol.states[a].coeffs.norm() == doctest::Approx(1.0).epsilon(1e-12));
    for (int b = a + 1; b < 4; ++b) CHECK(std::abs(sol.states[a].coeffs.dot(sol.states[b].coeffs)) < 1e-10);
    if (a) CHECK(sol.states[a].energy <= sol.states[a - 1].energy);
  }
  CHECK_THROWS_AS(solve_qw(g, {}, mats(g), 3), DomainError);
  CHECK_THROWS_AS(solve_qw(g, {}, mats(g), 0), DomainError);
}

TEST_CASE("12 nm well without strain: pure HH_z, localized, converged") {
  const QwGeometry g;
  const auto m = mats(g);
  const auto sol = solve_qw(g, {}, m);
  const auto p = qw_projection(sol, QuantizationAxis::z());
  CHECK(p.hh >= 1.0 - 1e-6);
  CHECK(p.total() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(well_weight(sol, g, g.well_nm / 2 + 2.0) >= 0.95);

  const auto fine = solve_qw(g.refined(), {}, QwMaterials::from_table(fixtures::table(), g.refined()), 2);
  CHECK(std::abs(fine.states[0].energy - sol.states[0].energy) < 1e-4);
}

TEST_CASE("hgs density has unit trace and no CB part") {
  const QwGeometry g{6.0, 12.0, 0.4, 101};
  const Matrix8c rho = hgs_density(solve_qw(g, uniaxial_strain(0.9, gc()), mats(g)));
  CHECK(rho.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rho.row(0).norm() == 0.0);
  CHECK(rho.col(1).norm() == 0.0);
  CHECK(hermiticity_residual(rho) < 1e-14);
}

TEST_CASE("thick well flips harder than thin well under tension") {
  const auto e = uniaxial_strain(2.0, gc());
  QwGeometry thick{12.0, 20.0, 0.4, 201}, thin{4.0, 20.0, 0.4, 201};
  const double p12 = qw_projection(solve_qw(thick, e, mats(thick)), QuantizationAxis::x()).hh;
  const double p4 = qw_projection(solve_qw(thin, e, mats(thin)), QuantizationAxis::x()).hh;
  CHECK(p12 > p4);
  CHECK(p4 < 0.97);  // residual mixing in the thin well
}

TEST_CASE("hole confinement energy falls with well width") {
  double last = 1e9;
  for (double w : {4.0, 6.0, 8.0, 12.0, 16.0}) {
    const QwGeometry g{w, 20.0, 0.4, 201};
    const auto m = mats(g);
    const double conf = m.well.vb_edge() - solve_qw(g, {}, m, 2).states[0].energy;
    CHECK(conf > 0.0);
    CHECK(conf < last);
    last = conf;
  }
}

TEST_CASE("shallow wide well approaches the bulk state") {
  const QwGeometry g{40.0, 40.0, 0.0, 601};
  QwMaterials m{fixtures::gaas(), fixtures::gaas()};
  m.barrier.vb_avg -= 1e-3;  // 1 meV valence offset
  for (double s : {0.0, 0.6, -0.6}) {
    const auto e = uniaxial_strain(s, gc());
    const double bulk = valence_states({}, e, m.well).front().energy;
    const double qw = solve_qw(g, e, m, 2).states[0].energy;
    // confinement lowers the hole level, by less than the barrier offset
    CHECK(bulk - qw > 0.0);
    CHECK(bulk - qw < 1e-3);
  }
}

TEST_CASE("electron level") {
  // Uniform material: the level is the discrete box ground state.
  const QwGeometry flat{12.0, 10.0, 0.0, 101};
  const auto m = mats(flat);
  const double h = flat.spacing();
  const double lam = 4.0 / (h * h) * std::pow(std::sin(std::numbers::pi * h / (2.0 * (flat.grid_points + 1) * h)), 2);
  CHECK(electron_ground_energy(flat, {}, m) ==
        doctest::Approx(m.well.cb_edge() + kHbar2Over2M0 / m.well.electron_mass * lam).epsilon(1e-12));

  // Real well: bound between the edge and the infinite-well level.
  const QwGeometry g{8.0, 20.0, 0.4, 201};
  const auto mm = mats(g);
  const double conf = electron_ground_energy(g, {}, mm) - mm.well.cb_edge();
  const double infinite = kHbar2Over2M0 / mm.well.electron_mass * std::pow(std::numbers::pi / 8.0, 2);
  CHECK(conf > 0.0);
  CHECK(conf < infinite);

  // Hydrostatic shift enters through ac.
  const auto e = biaxial_strain(0.3, gc());
  const double shift = electron_ground_energy(flat, e, m) - electron_ground_energy(flat, {}, m);
  CHECK(shift == doctest::Approx(m.well.ac * e.trace()).epsilon(1e-9));
}

TEST_CASE("QW transition energy is electron minus hole ground state") {
  const QwGeometry g{8.0, 15.0, 0.4, 121};
  const auto m = mats(g);
  const auto e = uniaxial_strain(0.4, gc());
  CHECK(transition_energy(g, e, m) ==
        doctest::Approx(electron_ground_energy(g, e, m) - solve_qw(g, e, m, 2).states[0].energy));
}

TEST_CASE("emulated transition energy at zero strain") {
  const auto& gaas = fixtures::gaas();
  const EmulationOffsets off;
  CHECK(transition_energy(off, {}, gaas) == doctest::Approx(gaas.band_gap + 0.0528 + 0.0091).epsilon(1e-12));
  CHECK(transition_energy(EmulationOffsets{0, 0, 0}, {}, gaas) == doctest::Approx(gaas.band_gap));
}

TEST_CASE("sweep output shape") {
  const std::vector<double> widths{4.0, 12.0};
  const std::vector<double> stresses{0.0, 2.0};
  const std::vector<QuantizationAxis> axes{QuantizationAxis::z(), QuantizationAxis::x()};
  const auto curves = qw_mixing_vs_strain(widths, stresses, axes, QwGeometry{}, fixtures::table(), 2);
  REQUIRE(curves.size() == 2);
  CHECK(curves[1].well_nm == 12.0);
  for (const auto& c : curves) {
    REQUIRE(c.rows.size() == 2);
    CHECK(c.rows[0].weights.size() == 2);
    CHECK(c.rows[0].weights[0].hh >= 1.0 - 1e-6);
    CHECK(c.rows[0].strain_xx == 0.0);
    CHECK(c.rows[1].converged);
    CHECK(c.rows[1].transition_energy > 1.4);
  }
  CHECK(curves[1].rows[1].weights[1].hh > curves[0].rows[1].weights[1].hh);
}
