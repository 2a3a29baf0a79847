#include "capmon/kernels.hpp"

#include <cmath>

#include "capmon/error.hpp"

namespace capmon::kernels {

namespace scalar {

double sum(std::span<const double> v) {
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc;
}

std::pair<double, double> min_max(std::span<const double> v) {
  double lo = v[0];
  double hi = v[0];
  for (double x : v) {
    if (x < lo) lo = x;
    if (x > hi) hi = x;
  }
  return {lo, hi};
}

CenteredMoments centered_moments(std::span<const double> x, std::span<const double> y,
                                 double mean_x, double mean_y) {
  CenteredMoments m;
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    m.sxx += dx * dx;
    m.sxy += dx * dy;
    m.syy += dy * dy;
  }
  return m;
}

void scale_offset(std::span<double> v, double scale, double offset) {
  for (double& x : v) x = x * scale + offset;
}

void quantize_midtread(std::span<double> v, double lo, double hi, double lsb) {
  for (double& x : v) {
    const double q = std::nearbyint((x - lo) / lsb);
    double r = lo + q * lsb;
    if (r < lo) r = lo;
    if (r > hi) r = hi;
    x = r;
  }
}

}  // namespace scalar

namespace {

struct Vtable {
  double (*sum)(std::span<const double>);
  std::pair<double, double> (*min_max)(std::span<const double>);
  CenteredMoments (*centered_moments)(std::span<const double>, std::span<const double>, double,
                                      double);
  void (*scale_offset)(std::span<double>, double, double);
  void (*quantize_midtread)(std::span<double>, double, double, double);
  Backend backend;
};

constexpr Vtable kScalarTable{scalar::sum, scalar::min_max, scalar::centered_moments,
                              scalar::scale_offset, scalar::quantize_midtread, Backend::Scalar};

#if defined(__x86_64__) || defined(_M_X64)
constexpr Vtable kAvx2Table{avx2::sum, avx2::min_max, avx2::centered_moments, avx2::scale_offset,
                            avx2::quantize_midtread, Backend::Avx2};
#endif
#if defined(__aarch64__)
constexpr Vtable kNeonTable{neon::sum, neon::min_max, neon::centered_moments, neon::scale_offset,
                            neon::quantize_midtread, Backend::Neon};
#endif

const Vtable* detect() {
#if defined(__x86_64__) || defined(_M_X64)
  if (__builtin_cpu_supports("avx2")) return &kAvx2Table;
#endif
#if defined(__aarch64__)
  return &kNeonTable;
#endif
  return &kScalarTable;
}

const Vtable* g_active = nullptr;

const Vtable* active() {
  if (!g_active) g_active = detect();
  return g_active;
}

}  // namespace

const char* to_string(Backend b) {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    case Backend::Neon: return "neon";
  }
  return "unknown";
}

bool backend_supported(Backend b) {
  switch (b) {
    case Backend::Scalar: return true;
    case Backend::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2") != 0;
#else
      return false;
#endif
    case Backend::Neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Backend active_backend() { return active()->backend; }

void force_backend(Backend b) {
  if (!backend_supported(b))
    fail(ErrorKind::InvalidConfig,
         std::string("kernel backend not supported on this machine: ") + to_string(b));
  switch (b) {
    case Backend::Scalar: g_active = &kScalarTable; break;
#if defined(__x86_64__) || defined(_M_X64)
    case Backend::Avx2: g_active = &kAvx2Table; break;
#endif
#if defined(__aarch64__)
    case Backend::Neon: g_active = &kNeonTable; break;
#endif
    default: g_active = &kScalarTable; break;
  }
}

void reset_backend() { g_active = detect(); }

double sum(std::span<const double> v) { return active()->sum(v); }

std::pair<double, double> min_max(std::span<const double> v) { return active()->min_max(v); }

CenteredMoments centered_moments(std::span<const double> x, std::span<const double> y,
                                 double mean_x, double mean_y) {
  return active()->centered_moments(x, y, mean_x, mean_y);
}

void scale_offset(std::span<double> v, double scale, double offset) {
  active()->scale_offset(v, scale, offset);
}

void quantize_midtread(std::span<double> v, double lo, double hi, double lsb) {
  active()->quantize_midtread(v, lo, hi, lsb);
}

}  // namespace capmon::kernels
