#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference version and,
// on x86-64, an AVX2+FMA version picked at runtime from CPUID. Results of the
// two paths agree to rounding (summation order differs).

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace strainkp::kernels {

using cplx = std::complex<double>;

enum class Isa { Scalar, Avx2 };

/// Best instruction set supported by both the build and the running CPU.
Isa detected_isa();
Isa active_isa();
/// Forces a code path (tests, benchmarks). Throws DomainError if the CPU or
/// the build lacks it.
void set_active_isa(Isa isa);
std::string_view isa_name(Isa isa);

/// rho (bands x bands, row-major) += weight * sum_i c_i c_i^H, where c_i is the
/// i-th block of `bands` consecutive coefficients. Only bands == 6 has a
/// vector path; other sizes fall back to the scalar loop.
void accumulate_density(std::span<const cplx> coeffs, std::size_t bands, double weight,
                        std::span<cplx> rho);

/// out[p] = sum over spin s of |a[s][0]*nx[p] + a[s][1]*ny[p] + a[s][2]*nz[p]|^2
/// for p-orbital amplitudes a laid out as {X_up, Y_up, Z_up, X_dn, Y_dn, Z_dn}.
void p_orbital_density(std::span<const cplx, 6> amps, std::span<const double> nx,
                       std::span<const double> ny, std::span<const double> nz,
                       std::span<double> out);

/// y = A x for a Hermitian band matrix in LAPACK upper band storage
/// (column-major, ldab = kd + 1, A(i,j) = ab[kd + i - j + j*ldab] for i <= j).
void hermitian_band_matvec(std::size_t n, std::size_t kd, std::span<const cplx> ab,
                           std::span<const cplx> x, std::span<cplx> y);

namespace scalar {
void accumulate_density(std::span<const cplx> coeffs, std::size_t bands, double weight,
                        std::span<cplx> rho);
void p_orbital_density(std::span<const cplx, 6> amps, std::span<const double> nx,
                       std::span<const double> ny, std::span<const double> nz,
                       std::span<double> out);
void hermitian_band_matvec(std::size_t n, std::size_t kd, std::span<const cplx> ab,
                           std::span<const cplx> x, std::span<cplx> y);
}  // namespace scalar

#if defined(STRAINKP_HAVE_AVX2)
namespace avx2 {
void accumulate_density6(std::span<const cplx> coeffs, double weight, std::span<cplx> rho);
void p_orbital_density(std::span<const cplx, 6> amps, std::span<const double> nx,
                       std::span<const double> ny, std::span<const double> nz,
                       std::span<double> out);
void hermitian_band_matvec(std::size_t n, std::size_t kd, std::span<const cplx> ab,
                           std::span<const cplx> x, std::span<cplx> y);
}  // namespace avx2
#endif

}  // namespace strainkp::kernels
