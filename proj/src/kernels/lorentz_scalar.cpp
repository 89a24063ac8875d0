#include "wqtherm/kernels.hpp"

namespace wqtherm::kernels::detail {

// Reference kernel. The SIMD backends replicate this operation order
// exactly (sub, mul, add, div; no FMA), so their outputs are bit-identical.
void lorentz_line_scalar(const double* s, std::size_t n, double center,
                         double half_width, double* T, double* R) {
  const double hw2 = half_width * half_width;
  for (std::size_t i = 0; i < n; ++i) {
    const double q = s[i] - center;
    const double q2 = q * q;
    const double d = q2 + hw2;
    R[i] = hw2 / d;
    if (T) T[i] = q2 / d;
  }
}

}  // namespace wqtherm::kernels::detail
