#include "wqtherm/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>

namespace wqtherm::kernels {

namespace {

bool host_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> backend = [] {
    Backend b = host_has_avx2() ? Backend::avx2 : Backend::scalar;
    if (const char* env = std::getenv("WQTHERM_KERNELS")) {
      const std::string_view v(env);
      if (v == "scalar") b = Backend::scalar;
      else if (v == "avx2" && host_has_avx2()) b = Backend::avx2;
      // anything else keeps the detected default
    }
    return b;
  }();
  return backend;
}

}  // namespace

Backend active_backend() { return current().load(); }

bool backend_available(Backend b) {
  return b == Backend::scalar || (b == Backend::avx2 && host_has_avx2());
}

void force_backend(Backend b) {
  if (!backend_available(b))
    throw std::invalid_argument("force_backend: backend not available on this host");
  current().store(b);
}

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::avx2: return "avx2";
    case Backend::scalar: break;
  }
  return "scalar";
}

void lorentz_line(std::span<const double> s, double center, double half_width,
                  std::span<double> T, std::span<double> R) {
  if (R.size() != s.size())
    throw std::invalid_argument("lorentz_line: R size mismatch");
  if (!T.empty() && T.size() != s.size())
    throw std::invalid_argument("lorentz_line: T size mismatch");
  double* t = T.empty() ? nullptr : T.data();
  switch (active_backend()) {
    case Backend::avx2:
      detail::lorentz_line_avx2(s.data(), s.size(), center, half_width, t, R.data());
      return;
    case Backend::scalar:
      break;
  }
  detail::lorentz_line_scalar(s.data(), s.size(), center, half_width, t, R.data());
}

}  // namespace wqtherm::kernels
