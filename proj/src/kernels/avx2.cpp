// AVX2+FMA code paths. Functions carry a target attribute instead of the whole
// file being built with -mavx2, so shared inline templates stay baseline x86-64.
// Only reached after a CPUID check.
#include <immintrin.h>

#include "strainkp/kernels.hpp"

#define STRAINKP_AVX2 __attribute__((target("avx2,fma")))

namespace strainkp::kernels::avx2 {
namespace {

STRAINKP_AVX2 inline const double* as_doubles(const cplx* p) { return reinterpret_cast<const double*>(p); }
STRAINKP_AVX2 inline double* as_doubles(cplx* p) { return reinterpret_cast<double*>(p); }

// Swaps real and imaginary parts of both complex lanes.
STRAINKP_AVX2 inline __m256d swap_ri(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

}  // namespace

STRAINKP_AVX2 void accumulate_density6(std::span<const cplx> coeffs, double weight, std::span<cplx> rho) {
  constexpr std::size_t kBands = 6;
  const std::size_t nodes = coeffs.size() / kBands;

  __m256d acc[18];
  const double* r = as_doubles(rho.data());
  for (int k = 0; k < 18; ++k) acc[k] = _mm256_loadu_pd(r + 4 * k);

  for (std::size_t i = 0; i < nodes; ++i) {
    const double* c = as_doubles(coeffs.data() + i * kBands);
    const __m256d v[3] = {_mm256_loadu_pd(c), _mm256_loadu_pd(c + 4), _mm256_loadu_pd(c + 8)};
    const __m256d sw[3] = {swap_ri(v[0]), swap_ri(v[1]), swap_ri(v[2])};
    for (std::size_t a = 0; a < kBands; ++a) {
      const double ar = weight * c[2 * a];
      const double ai = weight * c[2 * a + 1];
      // c_a * conj(c_b) = (ar br + ai bi) + i (ai br - ar bi)
      const __m256d ar_s = _mm256_set_pd(-ar, ar, -ar, ar);
      const __m256d ai_b = _mm256_set1_pd(ai);
      for (int k = 0; k < 3; ++k)
        acc[3 * a + k] = _mm256_fmadd_pd(ar_s, v[k], _mm256_fmadd_pd(ai_b, sw[k], acc[3 * a + k]));
    }
  }

  double* w = as_doubles(rho.data());
  for (int k = 0; k < 18; ++k) _mm256_storeu_pd(w + 4 * k, acc[k]);
}

STRAINKP_AVX2 void p_orbital_density(std::span<const cplx, 6> amps, std::span<const double> nx,
                       std::span<const double> ny, std::span<const double> nz,
                       std::span<double> out) {
  const std::size_t n = out.size();
  __m256d re_coef[6], im_coef[6];
  for (int k = 0; k < 6; ++k) {
    re_coef[k] = _mm256_set1_pd(amps[k].real());
    im_coef[k] = _mm256_set1_pd(amps[k].imag());
  }

  std::size_t p = 0;
  for (; p + 4 <= n; p += 4) {
    const __m256d x = _mm256_loadu_pd(nx.data() + p);
    const __m256d y = _mm256_loadu_pd(ny.data() + p);
    const __m256d z = _mm256_loadu_pd(nz.data() + p);
    __m256d acc = _mm256_setzero_pd();
    for (int s = 0; s < 2; ++s) {
      __m256d re = _mm256_mul_pd(re_coef[3 * s], x);
      re = _mm256_fmadd_pd(re_coef[3 * s + 1], y, re);
      re = _mm256_fmadd_pd(re_coef[3 * s + 2], z, re);
      __m256d im = _mm256_mul_pd(im_coef[3 * s], x);
      im = _mm256_fmadd_pd(im_coef[3 * s + 1], y, im);
      im = _mm256_fmadd_pd(im_coef[3 * s + 2], z, im);
      acc = _mm256_fmadd_pd(re, re, acc);
      acc = _mm256_fmadd_pd(im, im, acc);
    }
    _mm256_storeu_pd(out.data() + p, acc);
  }
  if (p < n)
    scalar::p_orbital_density(amps, nx.subspan(p), ny.subspan(p), nz.subspan(p), out.subspan(p));
}

STRAINKP_AVX2 void hermitian_band_matvec(std::size_t n, std::size_t kd, std::span<const cplx> ab,
                           std::span<const cplx> x, std::span<cplx> y) {
  const std::size_t ldab = kd + 1;
  for (std::size_t i = 0; i < n; ++i) y[i] = cplx{};
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t i0 = j > kd ? j - kd : 0;
    const std::size_t m = j - i0;
    const cplx* col = ab.data() + j * ldab + (kd - m);
    const double* a = as_doubles(col);
    double* yi = as_doubles(y.data() + i0);
    const double* xi = as_doubles(x.data() + i0);

    const __m256d xr_b = _mm256_set1_pd(x[j].real());
    const __m256d xi_s = _mm256_set_pd(x[j].imag(), -x[j].imag(), x[j].imag(), -x[j].imag());
    __m256d t1 = _mm256_setzero_pd();
    __m256d t2 = _mm256_setzero_pd();

    std::size_t k = 0;
    for (; k + 2 <= m; k += 2) {
      const __m256d av = _mm256_loadu_pd(a + 2 * k);
      // upper triangle: y_i += A_ij x_j
      const __m256d prod = _mm256_fmadd_pd(av, xr_b, _mm256_mul_pd(swap_ri(av), xi_s));
      _mm256_storeu_pd(yi + 2 * k, _mm256_add_pd(_mm256_loadu_pd(yi + 2 * k), prod));
      // lower triangle: sum_i conj(A_ij) x_i
      const __m256d xv = _mm256_loadu_pd(xi + 2 * k);
      t1 = _mm256_fmadd_pd(av, xv, t1);
      t2 = _mm256_fmadd_pd(av, swap_ri(xv), t2);
    }
    alignas(32) double l1[4], l2[4];
    _mm256_store_pd(l1, t1);
    _mm256_store_pd(l2, t2);
    cplx lower{l1[0] + l1[1] + l1[2] + l1[3], (l2[0] - l2[1]) + (l2[2] - l2[3])};
    for (; k < m; ++k) {
      y[i0 + k] += col[k] * x[j];
      lower += std::conj(col[k]) * x[i0 + k];
    }
    y[j] += lower + col[m].real() * x[j];
  }
}

}  // namespace strainkp::kernels::avx2
