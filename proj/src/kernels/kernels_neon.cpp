#include <arm_neon.h>

#include <cmath>

#include "capmon/kernels.hpp"

// NEON variants, 2 doubles per iteration with a scalar remainder loop.
// Same per-element operation order as the scalar reference.

namespace capmon::kernels::neon {

double sum(std::span<const double> v) {
  const std::size_t n = v.size();
  std::size_t i = 0;
  float64x2_t acc = vdupq_n_f64(0.0);
  for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vld1q_f64(&v[i]));
  double total = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; i < n; ++i) total += v[i];
  return total;
}

std::pair<double, double> min_max(std::span<const double> v) {
  const std::size_t n = v.size();
  std::size_t i = 0;
  double lo = v[0];
  double hi = v[0];
  if (n >= 2) {
    float64x2_t vlo = vld1q_f64(&v[0]);
    float64x2_t vhi = vlo;
    for (i = 2; i + 2 <= n; i += 2) {
      const float64x2_t x = vld1q_f64(&v[i]);
      vlo = vminq_f64(vlo, x);
      vhi = vmaxq_f64(vhi, x);
    }
    lo = std::min(vgetq_lane_f64(vlo, 0), vgetq_lane_f64(vlo, 1));
    hi = std::max(vgetq_lane_f64(vhi, 0), vgetq_lane_f64(vhi, 1));
  }
  for (; i < n; ++i) {
    if (v[i] < lo) lo = v[i];
    if (v[i] > hi) hi = v[i];
  }
  return {lo, hi};
}

CenteredMoments centered_moments(std::span<const double> x, std::span<const double> y,
                                 double mean_x, double mean_y) {
  const std::size_t n = x.size();
  std::size_t i = 0;
  const float64x2_t mx = vdupq_n_f64(mean_x);
  const float64x2_t my = vdupq_n_f64(mean_y);
  float64x2_t sxx = vdupq_n_f64(0.0);
  float64x2_t sxy = vdupq_n_f64(0.0);
  float64x2_t syy = vdupq_n_f64(0.0);
  for (; i + 2 <= n; i += 2) {
    const float64x2_t dx = vsubq_f64(vld1q_f64(&x[i]), mx);
    const float64x2_t dy = vsubq_f64(vld1q_f64(&y[i]), my);
    sxx = vaddq_f64(sxx, vmulq_f64(dx, dx));
    sxy = vaddq_f64(sxy, vmulq_f64(dx, dy));
    syy = vaddq_f64(syy, vmulq_f64(dy, dy));
  }
  CenteredMoments m;
  m.sxx = vgetq_lane_f64(sxx, 0) + vgetq_lane_f64(sxx, 1);
  m.sxy = vgetq_lane_f64(sxy, 0) + vgetq_lane_f64(sxy, 1);
  m.syy = vgetq_lane_f64(syy, 0) + vgetq_lane_f64(syy, 1);
  for (; i < n; ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    m.sxx += dx * dx;
    m.sxy += dx * dy;
    m.syy += dy * dy;
  }
  return m;
}

void scale_offset(std::span<double> v, double scale, double offset) {
  const std::size_t n = v.size();
  std::size_t i = 0;
  const float64x2_t s = vdupq_n_f64(scale);
  const float64x2_t o = vdupq_n_f64(offset);
  for (; i + 2 <= n; i += 2) {
    float64x2_t x = vld1q_f64(&v[i]);
    x = vaddq_f64(vmulq_f64(x, s), o);
    vst1q_f64(&v[i], x);
  }
  for (; i < n; ++i) v[i] = v[i] * scale + offset;
}

void quantize_midtread(std::span<double> v, double lo, double hi, double lsb) {
  const std::size_t n = v.size();
  std::size_t i = 0;
  const float64x2_t vlo = vdupq_n_f64(lo);
  const float64x2_t vhi = vdupq_n_f64(hi);
  const float64x2_t vlsb = vdupq_n_f64(lsb);
  for (; i + 2 <= n; i += 2) {
    float64x2_t x = vld1q_f64(&v[i]);
    const float64x2_t q = vrndnq_f64(vdivq_f64(vsubq_f64(x, vlo), vlsb));
    x = vaddq_f64(vlo, vmulq_f64(q, vlsb));
    x = vmaxq_f64(x, vlo);
    x = vminq_f64(x, vhi);
    vst1q_f64(&v[i], x);
  }
  for (; i < n; ++i) {
    const double q = std::nearbyint((v[i] - lo) / lsb);
    double r = lo + q * lsb;
    if (r < lo) r = lo;
    if (r > hi) r = hi;
    v[i] = r;
  }
}

}  // namespace capmon::kernels::neon
