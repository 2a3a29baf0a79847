#pragma once

#include <span>
#include <utility>

// Waveform inner loops: reductions and per-sample transforms over sampled
// channels. Each kernel has a scalar reference implementation and, where the
// target supports it, a SIMD variant; the dispatched entry points pick the
// widest supported variant at runtime. The scalar namespace is always
// available so tests can check SIMD/scalar equivalence.

namespace capmon::kernels {

// Sums of deviations about the supplied means (two-pass moment kernel).
struct CenteredMoments {
  double sxx = 0.0;  // sum (x - mean_x)^2
  double sxy = 0.0;  // sum (x - mean_x)(y - mean_y)
  double syy = 0.0;  // sum (y - mean_y)^2
};

enum class Backend { Scalar, Avx2, Neon };

const char* to_string(Backend b);
bool backend_supported(Backend b);
Backend active_backend();
// Test hook; throws Error(InvalidConfig) if the backend is not supported on
// this machine. Not thread safe, call before spawning workers.
void force_backend(Backend b);
void reset_backend();

double sum(std::span<const double> v);
std::pair<double, double> min_max(std::span<const double> v);  // v non-empty
CenteredMoments centered_moments(std::span<const double> x, std::span<const double> y,
                                 double mean_x, double mean_y);
// v[i] = v[i] * scale + offset
void scale_offset(std::span<double> v, double scale, double offset);
// Mid-tread uniform quantizer with clipping: lo + round((v-lo)/lsb)*lsb,
// clamped to [lo, hi]. Finite inputs only.
void quantize_midtread(std::span<double> v, double lo, double hi, double lsb);

namespace scalar {
double sum(std::span<const double> v);
std::pair<double, double> min_max(std::span<const double> v);
CenteredMoments centered_moments(std::span<const double> x, std::span<const double> y,
                                 double mean_x, double mean_y);
void scale_offset(std::span<double> v, double scale, double offset);
void quantize_midtread(std::span<double> v, double lo, double hi, double lsb);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
double sum(std::span<const double> v);
std::pair<double, double> min_max(std::span<const double> v);
CenteredMoments centered_moments(std::span<const double> x, std::span<const double> y,
                                 double mean_x, double mean_y);
void scale_offset(std::span<double> v, double scale, double offset);
void quantize_midtread(std::span<double> v, double lo, double hi, double lsb);
}  // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
double sum(std::span<const double> v);
std::pair<double, double> min_max(std::span<const double> v);
CenteredMoments centered_moments(std::span<const double> x, std::span<const double> y,
                                 double mean_x, double mean_y);
void scale_offset(std::span<double> v, double scale, double offset);
void quantize_midtread(std::span<double> v, double lo, double hi, double lsb);
}  // namespace neon
#endif

}  // namespace capmon::kernels
