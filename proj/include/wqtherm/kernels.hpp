#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace wqtherm::kernels {

enum class Backend { scalar, avx2 };

/// Backend picked at startup: best ISA the host supports, overridable with
/// the environment variable WQTHERM_KERNELS=scalar|avx2.
Backend active_backend();
bool backend_available(Backend b);

/// Pin the backend (used by the equivalence tests). Throws
/// std::invalid_argument when the host cannot run it.
void force_backend(Backend b);

std::string_view backend_name(Backend b);

/// Lorentzian line profile over a grid:
///
///   q    = s[i] - center
///   R[i] = hw^2 / (q^2 + hw^2)      (reflection)
///   T[i] = q^2  / (q^2 + hw^2)      (transmission; skipped when T is empty)
///
/// All backends use the same operation order with no FMA contraction, so
/// results are bit-identical regardless of dispatch.
void lorentz_line(std::span<const double> s, double center, double half_width,
                  std::span<double> T, std::span<double> R);

namespace detail {
void lorentz_line_scalar(const double* s, std::size_t n, double center,
                         double half_width, double* T, double* R);
void lorentz_line_avx2(const double* s, std::size_t n, double center,
                       double half_width, double* T, double* R);
}  // namespace detail

}  // namespace wqtherm::kernels
