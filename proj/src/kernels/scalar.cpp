#include <algorithm>

#include "strainkp/kernels.hpp"

namespace strainkp::kernels::scalar {

void accumulate_density(std::span<const cplx> coeffs, std::size_t bands, double weight,
                        std::span<cplx> rho) {
  const std::size_t nodes = coeffs.size() / bands;
  for (std::size_t i = 0; i < nodes; ++i) {
    const cplx* c = coeffs.data() + i * bands;
    for (std::size_t a = 0; a < bands; ++a)
      for (std::size_t b = 0; b < bands; ++b) rho[a * bands + b] += weight * c[a] * std::conj(c[b]);
  }
}

void p_orbital_density(std::span<const cplx, 6> amps, std::span<const double> nx,
                       std::span<const double> ny, std::span<const double> nz,
                       std::span<double> out) {
  for (std::size_t p = 0; p < out.size(); ++p) {
    double acc = 0.0;
    for (int s = 0; s < 2; ++s) {
      const cplx v = amps[3 * s] * nx[p] + amps[3 * s + 1] * ny[p] + amps[3 * s + 2] * nz[p];
      acc += std::norm(v);
    }
    out[p] = acc;
  }
}

void hermitian_band_matvec(std::size_t n, std::size_t kd, std::span<const cplx> ab,
                           std::span<const cplx> x, std::span<cplx> y) {
  const std::size_t ldab = kd + 1;
  std::fill(y.begin(), y.begin() + n, cplx{});
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t i0 = j > kd ? j - kd : 0;
    const cplx* col = ab.data() + j * ldab + (kd - (j - i0));
    cplx lower{};
    for (std::size_t i = i0; i < j; ++i) {
      const cplx a = col[i - i0];
      y[i] += a * x[j];
      lower += std::conj(a) * x[i];
    }
    // Diagonal of a Hermitian matrix is real; ignore stray imaginary parts.
    y[j] += lower + col[j - i0].real() * x[j];
  }
}

}  // namespace strainkp::kernels::scalar
