#include <atomic>

#include "strainkp/error.hpp"
#include "strainkp/kernels.hpp"

namespace strainkp::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(STRAINKP_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{detected_isa()};
  return isa;
}

}  // namespace

Isa detected_isa() {
  static const Isa isa = cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
  return isa;
}

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (isa == Isa::Avx2 && detected_isa() != Isa::Avx2)
    throw DomainError("AVX2 kernels are not available on this build or CPU");
  active().store(isa, std::memory_order_relaxed);
}

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

void accumulate_density(std::span<const cplx> coeffs, std::size_t bands, double weight,
                        std::span<cplx> rho) {
  if (bands == 0 || coeffs.size() % bands != 0 || rho.size() != bands * bands)
    throw DomainError("accumulate_density: inconsistent sizes");
#if defined(STRAINKP_HAVE_AVX2)
  if (bands == 6 && active_isa() == Isa::Avx2) return avx2::accumulate_density6(coeffs, weight, rho);
#endif
  scalar::accumulate_density(coeffs, bands, weight, rho);
}

void p_orbital_density(std::span<const cplx, 6> amps, std::span<const double> nx,
                       std::span<const double> ny, std::span<const double> nz,
                       std::span<double> out) {
  if (nx.size() < out.size() || ny.size() < out.size() || nz.size() < out.size())
    throw DomainError("p_orbital_density: direction arrays shorter than output");
#if defined(STRAINKP_HAVE_AVX2)
  if (active_isa() == Isa::Avx2) return avx2::p_orbital_density(amps, nx, ny, nz, out);
#endif
  scalar::p_orbital_density(amps, nx, ny, nz, out);
}

void hermitian_band_matvec(std::size_t n, std::size_t kd, std::span<const cplx> ab,
                           std::span<const cplx> x, std::span<cplx> y) {
  if (ab.size() < (kd + 1) * n || x.size() < n || y.size() < n)
    throw DomainError("hermitian_band_matvec: inconsistent sizes");
#if defined(STRAINKP_HAVE_AVX2)
  if (active_isa() == Isa::Avx2) return avx2::hermitian_band_matvec(n, kd, ab, x, y);
#endif
  scalar::hermitian_band_matvec(n, kd, ab, x, y);
}

}  // namespace strainkp::kernels
