#include "wqtherm/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>

namespace wqtherm::kernels::detail {

void lorentz_line_avx2(const double* s, std::size_t n, double center,
                       double half_width, double* T, double* R) {
  const double hw2s = half_width * half_width;
  const __m256d c = _mm256_set1_pd(center);
  const __m256d hw2 = _mm256_set1_pd(hw2s);

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d q = _mm256_sub_pd(_mm256_loadu_pd(s + i), c);
    const __m256d q2 = _mm256_mul_pd(q, q);
    const __m256d d = _mm256_add_pd(q2, hw2);
    _mm256_storeu_pd(R + i, _mm256_div_pd(hw2, d));
    if (T) _mm256_storeu_pd(T + i, _mm256_div_pd(q2, d));
  }
  for (; i < n; ++i) {
    const double q = s[i] - center;
    const double q2 = q * q;
    const double d = q2 + hw2s;
    R[i] = hw2s / d;
    if (T) T[i] = q2 / d;
  }
}

}  // namespace wqtherm::kernels::detail

#else

namespace wqtherm::kernels::detail {

// Non-x86 hosts never dispatch here; keep the symbol defined.
void lorentz_line_avx2(const double* s, std::size_t n, double center,
                       double half_width, double* T, double* R) {
  lorentz_line_scalar(s, n, center, half_width, T, R);
}

}  // namespace wqtherm::kernels::detail

#endif
