#include <doctest.h>

#include <vector>

#include "strainkp/error.hpp"
#include "strainkp/kernels.hpp"
#include "support/oracle.hpp"

using namespace strainkp;
using kernels::cplx;

namespace {

bool have_avx2() { return kernels::detected_isa() == kernels::Isa::Avx2; }

// Restores the detected path when a test leaves.
struct IsaGuard {
  ~IsaGuard() { kernels::set_active_isa(kernels::detected_isa()); }
};

std::vector<cplx> random_coeffs(oracle::Rng& rng, std::size_t n) {
  std::vector<cplx> v(n);
  for (auto& c : v) c = {rng.normal(), rng.normal()};
  return v;
}

}  // namespace

TEST_CASE("isa selection") {
  IsaGuard guard;
  CHECK_NOTHROW(kernels::set_active_isa(kernels::Isa::Scalar));
  CHECK(kernels::active_isa() == kernels::Isa::Scalar);
  CHECK(kernels::isa_name(kernels::Isa::Scalar) == "scalar");
  if (!have_avx2()) CHECK_THROWS_AS(kernels::set_active_isa(kernels::Isa::Avx2), DomainError);
}

TEST_CASE("density accumulation matches a direct outer-product sum") {
  oracle::Rng rng(51);
  for (std::size_t bands : {6u, 4u}) {
    const std::size_t nodes = 37;
    const auto c = random_coeffs(rng, bands * nodes);
    std::vector<cplx> rho(bands * bands);
    kernels::accumulate_density(c, bands, 0.5, rho);
    for (std::size_t a = 0; a < bands; ++a)
      for (std::size_t b = 0; b < bands; ++b) {
        cplx want{};
        for (std::size_t i = 0; i < nodes; ++i) want += 0.5 * c[i * bands + a] * std::conj(c[i * bands + b]);
        CHECK(std::abs(rho[a * bands + b] - want) < 1e-12);
      }
  }
}

TEST_CASE("scalar and AVX2 kernels agree") {
  if (!have_avx2()) {
    MESSAGE("AVX2 path not available; equivalence test skipped");
    return;
  }
  IsaGuard guard;
  oracle::Rng rng(53);

  SUBCASE("accumulate_density") {
    for (std::size_t nodes : {1u, 2u, 7u, 201u}) {
      const auto c = random_coeffs(rng, 6 * nodes);
      std::vector<cplx> a(36, cplx(0.25, -0.5)), b = a;
      kernels::set_active_isa(kernels::Isa::Scalar);
      kernels::accumulate_density(c, 6, 0.7, a);
      kernels::set_active_isa(kernels::Isa::Avx2);
      kernels::accumulate_density(c, 6, 0.7, b);
      for (int k = 0; k < 36; ++k) CHECK(std::abs(a[k] - b[k]) < 1e-12 * (1.0 + std::abs(a[k])));
    }
  }
  SUBCASE("p_orbital_density") {
    for (std::size_t n : {1u, 3u, 4u, 5u, 16u, 1001u}) {
      std::array<cplx, 6> amps;
      for (auto& a : amps) a = {rng.normal(), rng.normal()};
      std::vector<double> nx(n), ny(n), nz(n), a(n), b(n);
      for (std::size_t p = 0; p < n; ++p) nx[p] = rng.normal(), ny[p] = rng.normal(), nz[p] = rng.normal();
      kernels::set_active_isa(kernels::Isa::Scalar);
      kernels::p_orbital_density(amps, nx, ny, nz, a);
      kernels::set_active_isa(kernels::Isa::Avx2);
      kernels::p_orbital_density(amps, nx, ny, nz, b);
      for (std::size_t p = 0; p < n; ++p) CHECK(std::abs(a[p] - b[p]) < 1e-12 * (1.0 + a[p]));
    }
  }
  SUBCASE("hermitian_band_matvec") {
    for (std::size_t n : {1u, 2u, 5u, 12u, 13u, 60u, 301u}) {
      for (std::size_t kd : {0u, 1u, 3u, 11u}) {
        std::vector<cplx> ab = random_coeffs(rng, (kd + 1) * n);
        const auto x = random_coeffs(rng, n);
        std::vector<cplx> y1(n), y2(n);
        kernels::set_active_isa(kernels::Isa::Scalar);
        kernels::hermitian_band_matvec(n, kd, ab, x, y1);
        kernels::set_active_isa(kernels::Isa::Avx2);
        kernels::hermitian_band_matvec(n, kd, ab, x, y2);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y1[i] - y2[i]) < 1e-11 * (1.0 + std::abs(y1[i])));
      }
    }
  }
}

TEST_CASE("band matvec matches the dense product") {
  oracle::Rng rng(57);
  const std::size_t n = 40, kd = 5;
  std::vector<cplx> ab = random_coeffs(rng, (kd + 1) * n);
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = (j > kd ? j - kd : 0); i <= j; ++i) {
      const cplx v = i == j ? cplx(ab[kd + j * (kd + 1)].real(), 0.0) : ab[kd + i - j + j * (kd + 1)];
      a(i, j) = v;
      a(j, i) = std::conj(v);
    }
  const auto x = random_coeffs(rng, n);
  std::vector<cplx> y(n);
  for (auto isa : {kernels::Isa::Scalar, kernels::detected_isa()}) {
    IsaGuard guard;
    kernels::set_active_isa(isa);
    kernels::hermitian_band_matvec(n, kd, ab, x, y);
    const Eigen::VectorXcd want = a * Eigen::Map<const Eigen::VectorXcd>(x.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y[i] - want[i]) < 1e-12);
  }
}

TEST_CASE("kernel size checks") {
  std::vector<cplx> rho(36), c(7);
  CHECK_THROWS_AS(kernels::accumulate_density(c, 6, 1.0, rho), DomainError);
  std::vector<cplx> ab(10), x(4), y(4);
  CHECK_THROWS_AS(kernels::hermitian_band_matvec(4, 3, ab, x, y), DomainError);
}
