#include <doctest.h>

#include <algorithm>

#include "strainkp/axis.hpp"
#include "strainkp/error.hpp"
#include "strainkp/kp_bulk.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace strainkp;

namespace {

const MaterialParams& g() { return fixtures::gaas(); }
ElasticConstants gc() { return ElasticConstants::of(g()); }

std::vector<double> sorted_eigs(const Eigen::MatrixXcd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + h.rows());
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("Hamiltonian matches the product-space oracle entrywise") {
  oracle::Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    const auto k = rng.k();
    const auto e = rng.strain();
    const Matrix8c h = build_h8(k, e, g());
    const oracle::M8 ref = oracle::h_bloch(k, e, g());
    CHECK((h - ref).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("unstrained Gamma point: 4 + 2 valence degeneracy and the gap") {
  const auto sp = eigensolve(build_h8({}, {}, g()));
  const double ev = g().vb_edge();
  CHECK(sp.energies[0] == doctest::Approx(ev + g().band_gap));
  CHECK(sp.energies[1] == doctest::Approx(ev + g().band_gap));
  for (int i = 2; i < 6; ++i) CHECK(sp.energies[i] == doctest::Approx(ev).epsilon(1e-12));
  for (int i = 6; i < 8; ++i) CHECK(sp.energies[i] == doctest::Approx(ev - g().spin_orbit).epsilon(1e-12));
}

TEST_CASE("CB block is decoupled from the valence block") {
  oracle::Rng rng(3);
  const Matrix8c h = build_h8(rng.k(), rng.strain(), g());
  for (int c = 0; c < 2; ++c)
    for (int v = 2; v < 8; ++v) {
      CHECK(h(c, v) == cplx{});
      CHECK(h(v, c) == cplx{});
    }
}

TEST_CASE("biaxial strain: R = S = 0 and HH-LH splitting 2|Q_eps|") {
  const auto e = biaxial_strain(-0.5, gc());
  const auto t = luttinger_terms({}, e, g());
  CHECK(std::abs(t.r) == 0.0);
  CHECK(std::abs(t.s) == 0.0);
  const double q_eps = -g().b / 2.0 * (e.xx + e.yy - 2.0 * e.zz);
  CHECK(t.q == doctest::Approx(q_eps));

  const Matrix4c h4 = h4_topmost({}, e, g());
  const auto ev = sorted_eigs(h4);
  CHECK(ev[3] - ev[0] == doctest::Approx(2.0 * std::abs(q_eps)).epsilon(1e-12));
  // Compression pushes HH above LH.
  CHECK(h4(0, 0).real() > h4(1, 1).real());
}

TEST_CASE("uniaxial-x strain: R real and nonzero, S zero") {
  const auto t = luttinger_terms({}, uniaxial_strain(0.7, gc()), g());
  CHECK(std::abs(t.r) > 1e-3);
  CHECK(std::abs(t.r.imag()) == 0.0);
  CHECK(std::abs(t.s) == 0.0);
}

TEST_CASE("h4_topmost is the HH/LH block of build_h8") {
  oracle::Rng rng(5);
  const auto k = rng.k();
  const auto e = rng.strain();
  const Matrix8c h = build_h8(k, e, g());
  CHECK((h4_topmost(k, e, g()) - h.block<4, 4>(2, 2)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("band edge shifts move only the targeted diagonals") {
  oracle::Rng rng(8);
  const auto e = rng.strain();
  const Matrix8c base = build_h8({}, e, g());
  const Matrix8c shifted = build_h8({}, e, g(), {0.05, 0.01, 0.02});
  Matrix8c diff = shifted - base;
  CHECK(diff(0, 0).real() == doctest::Approx(0.05));
  CHECK(diff(1, 1).real() == doctest::Approx(0.05));
  CHECK(diff(2, 2).real() == doctest::Approx(-0.01));
  CHECK(diff(5, 5).real() == doctest::Approx(-0.01));
  CHECK(diff(3, 3).real() == doctest::Approx(-0.02));
  CHECK(diff(4, 4).real() == doctest::Approx(-0.02));
  diff.diagonal().setZero();
  CHECK(diff.cwiseAbs().maxCoeff() == 0.0);
  CHECK(std::abs(shifted(6, 6) - base(6, 6)) == 0.0);
}

TEST_CASE("eigensolve: diagonal input, ordering and phase convention") {
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(4, 4);
  d.diagonal() << 1.0, 3.0, -2.0, 0.5;
  const auto sp = eigensolve(d);
  CHECK(sp.energies[0] == 3.0);
  CHECK(sp.energies[1] == 1.0);
  CHECK(sp.energies[2] == 0.5);
  CHECK(sp.energies[3] == -2.0);
  CHECK(std::abs(sp.vectors(1, 0) - cplx(1.0)) < 1e-15);
  CHECK(std::abs(sp.vectors(2, 3) - cplx(1.0)) < 1e-15);
}

TEST_CASE("eigensolve: random Hermitian residuals and orthonormality") {
  oracle::Rng rng(21);
  for (int i = 0; i < 20; ++i) {
    const auto h = rng.hermitian(8);
    const auto sp = eigensolve(h);
    for (int c = 0; c < 8; ++c) {
      CHECK((h * sp.vectors.col(c) - sp.energies[c] * sp.vectors.col(c)).norm() < 1e-10);
      if (c) CHECK(sp.energies[c] <= sp.energies[c - 1]);
    }
    CHECK((sp.vectors.adjoint() * sp.vectors - Eigen::MatrixXcd::Identity(8, 8)).norm() < 1e-10);
  }
}

TEST_CASE("eigensolve rejects non-Hermitian input") {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(2, 2);
  a(0, 1) = 1.0;
  CHECK_THROWS_AS(eigensolve(a), DomainError);
  CHECK_THROWS_AS(eigensolve(Eigen::MatrixXcd::Zero(2, 3)), DomainError);
}

TEST_CASE("valence states are Kramers pairs with empty CB rows") {
  oracle::Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    const auto states = valence_states({}, rng.strain(), g());
    REQUIRE(states.size() == 6);
    for (std::size_t p = 0; p < 6; p += 2) CHECK(std::abs(states[p].energy - states[p + 1].energy) < 1e-9);
    for (const auto& s : states) {
      CHECK(s.coeffs[0] == cplx{});
      CHECK(s.coeffs[1] == cplx{});
      CHECK(s.coeffs.norm() == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("dispersion at a single Gamma point equals the eigensolve") {
  const Wavevector k0{};
  const auto e = uniaxial_strain(0.3, gc());
  const auto table = dispersion(std::span(&k0, 1), e, g());
  const auto sp = eigensolve(build_h8({}, e, g()));
  REQUIRE(table.energies.size() == 1);
  for (int b = 0; b < 8; ++b) CHECK(table.energies[0][b] == doctest::Approx(sp.energies[b]));
}

TEST_CASE("isotropic in-plane masses when gamma2 = gamma3") {
  MaterialParams p = g();
  p.gamma3 = p.gamma2;
  const double dk = 0.01;
  const std::vector<Wavevector> along_x{{0, 0, 0}, {dk, 0, 0}};
  const std::vector<Wavevector> along_y{{0, 0, 0}, {0, dk, 0}};
  const auto tx = dispersion(along_x, {}, p);
  const auto ty = dispersion(along_y, {}, p);
  for (int b = 2; b < 8; ++b) CHECK(tx.energies[1][b] == doctest::Approx(ty.energies[1][b]).epsilon(1e-12));

  // Along [100] with gamma2 = gamma3 the bands are (gamma1 +- 2 gamma2) parabolas.
  const double c = kHbar2Over2M0 * dk * dk;
  const double ev = p.vb_edge();
  const double heavy = ev - c * (p.gamma1 - 2 * p.gamma2);
  const double light = ev - c * (p.gamma1 + 2 * p.gamma2);
  std::vector<double> top4(tx.energies[1].begin() + 2, tx.energies[1].begin() + 6);
  std::sort(top4.begin(), top4.end());
  CHECK(top4[0] == doctest::Approx(light).epsilon(1e-6));
  CHECK(top4[3] == doctest::Approx(heavy).epsilon(1e-6));
}

TEST_CASE("uniaxial-x tension: topmost band heavy along x, light along y") {
  const auto e = uniaxial_strain(1.0, gc());
  const double dk = 0.02;
  const std::vector<Wavevector> px{{0, 0, 0}, {dk, 0, 0}};
  const std::vector<Wavevector> py{{0, 0, 0}, {0, dk, 0}};
  const auto tx = dispersion(px, e, g());
  const auto ty = dispersion(py, e, g());
  const double curv_x = (tx.energies[0][2] - tx.energies[1][2]) / (dk * dk);
  const double curv_y = (ty.energies[0][2] - ty.energies[1][2]) / (dk * dk);
  // hole mass ~ 1 / curvature: small curvature means heavy
  CHECK(curv_x > 0.0);
  CHECK(curv_y > 0.0);
  CHECK(curv_x < curv_y);
}

TEST_CASE("band tracking follows a crossing") {
  // Biaxial tension puts LH on top at Gamma; LH is light along z, so HH
  // overtakes it further out on the kz axis, where the two do not couple.
  const auto e = biaxial_strain(0.5, gc());
  std::vector<Wavevector> path;
  for (int i = 0; i <= 40; ++i) path.push_back({0.0, 0.0, 0.015 * i});
  const auto t = dispersion(path, e, g());
  const auto& first = t.energies.front();
  const auto& last = t.energies.back();
  CHECK(first[2] > first[4]);  // columns 2-3 start as the LH pair
  CHECK(last[2] < last[4]);    // and end below the HH pair
  for (std::size_t i = 1; i < path.size(); ++i)
    for (int b = 2; b < 8; ++b) CHECK(t.energies[i][b] <= t.energies[i - 1][b] + 1e-12);
}
