#include <immintrin.h>

#include "capmon/kernels.hpp"

// AVX2 variants, 4 doubles per iteration with a scalar remainder loop.
// scale_offset and quantize_midtread keep the exact per-element operation
// order of the scalar reference (no FMA), so results are bit-identical.

namespace capmon::kernels::avx2 {

namespace {

double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

double hmin(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_min_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_min_sd(lo, swapped));
}

double hmax(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_max_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_max_sd(lo, swapped));
}

}  // namespace

double sum(std::span<const double> v) {
  const std::size_t n = v.size();
  std::size_t i = 0;
  __m256d acc = _mm256_setzero_pd();
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(&v[i]));
  double total = hsum(acc);
  for (; i < n; ++i) total += v[i];
  return total;
}

std::pair<double, double> min_max(std::span<const double> v) {
  const std::size_t n = v.size();
  std::size_t i = 0;
  double lo = v[0];
  double hi = v[0];
  if (n >= 4) {
    __m256d vlo = _mm256_loadu_pd(&v[0]);
    __m256d vhi = vlo;
    for (i = 4; i + 4 <= n; i += 4) {
      const __m256d x = _mm256_loadu_pd(&v[i]);
      vlo = _mm256_min_pd(vlo, x);
      vhi = _mm256_max_pd(vhi, x);
    }
    lo = hmin(vlo);
    hi = hmax(vhi);
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
  const __m256d mx = _mm256_set1_pd(mean_x);
  const __m256d my = _mm256_set1_pd(mean_y);
  __m256d sxx = _mm256_setzero_pd();
  __m256d sxy = _mm256_setzero_pd();
  __m256d syy = _mm256_setzero_pd();
  for (; i + 4 <= n; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(&x[i]), mx);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(&y[i]), my);
    sxx = _mm256_add_pd(sxx, _mm256_mul_pd(dx, dx));
    sxy = _mm256_add_pd(sxy, _mm256_mul_pd(dx, dy));
    syy = _mm256_add_pd(syy, _mm256_mul_pd(dy, dy));
  }
  CenteredMoments m;
  m.sxx = hsum(sxx);
  m.sxy = hsum(sxy);
  m.syy = hsum(syy);
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
  const __m256d s = _mm256_set1_pd(scale);
  const __m256d o = _mm256_set1_pd(offset);
  for (; i + 4 <= n; i += 4) {
    __m256d x = _mm256_loadu_pd(&v[i]);
    x = _mm256_add_pd(_mm256_mul_pd(x, s), o);
    _mm256_storeu_pd(&v[i], x);
  }
  for (; i < n; ++i) v[i] = v[i] * scale + offset;
}

void quantize_midtread(std::span<double> v, double lo, double hi, double lsb) {
  const std::size_t n = v.size();
  std::size_t i = 0;
  const __m256d vlo = _mm256_set1_pd(lo);
  const __m256d vhi = _mm256_set1_pd(hi);
  const __m256d vlsb = _mm256_set1_pd(lsb);
  for (; i + 4 <= n; i += 4) {
    __m256d x = _mm256_loadu_pd(&v[i]);
    const __m256d q = _mm256_round_pd(_mm256_div_pd(_mm256_sub_pd(x, vlo), vlsb),
                                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    x = _mm256_add_pd(vlo, _mm256_mul_pd(q, vlsb));
    x = _mm256_max_pd(x, vlo);
    x = _mm256_min_pd(x, vhi);
    _mm256_storeu_pd(&v[i], x);
  }
  for (; i < n; ++i) {
    const double q = __builtin_nearbyint((v[i] - lo) / lsb);
    double r = lo + q * lsb;
    if (r < lo) r = lo;
    if (r > hi) r = hi;
    v[i] = r;
  }
}

}  // namespace capmon::kernels::avx2
