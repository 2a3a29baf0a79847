#pragma once

#include <optional>
#include <span>
#include <vector>

#include "capmon/acquisition.hpp"

namespace capmon {

// The mid-ripple ESR relation can be normalized either by the mean inductor
// current or by the load current i_l_media*(1-d_on). The load-current form
// recovers the true resistance on simulated ground truth and ships as the
// default; the other form is kept selectable for comparison.
enum class EsrDenominator { LoadCurrent, InductorMean };

struct EstimatorOptions {
  EsrDenominator esr_denominator = EsrDenominator::LoadCurrent;
  int mid_window = 5;      // samples averaged around the middle of T_on
  int guard_samples = 3;   // samples dropped at each segment edge before slope fits
  bool v_media_full_period = true;  // false: use the T_on segment mean instead
};

struct CalibrationOffset {
  double esr_offset = 0.0;  // ohm, subtracted from every raw estimate
  int derived_from = 0;     // number of baseline acquisitions
};

struct RegressionResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

struct EstimateResult {
  double r_load_est = 0.0;  // ohm
  double esr_raw = 0.0;     // ohm, before offset subtraction
  double esr_est = 0.0;     // ohm, after offset subtraction
  double c_est = 0.0;       // F
  double l_est = 0.0;       // H
  double d_on = 0.0;
  // Intermediates, useful for cross-checks and reports.
  double v_media = 0.0;
  double i_l_media = 0.0;
  double v_out_mid_on = 0.0;
  double m_on_il = 0.0;          // A/s, inductor current slope over T_on
  double m_on_vc = 0.0;          // V/s, capacitor voltage slope over T_on
  double l_est_two_slope = 0.0;  // H, supply-free variant from both segments
};

struct ParamStats {
  double mean = 0.0;
  double variance = 0.0;  // n-1 denominator
  double stddev() const;
};

struct EstimateStats {
  ParamStats r_load;
  ParamStats esr_raw;
  ParamStats esr_est;
  ParamStats c;
  ParamStats l;
  int n_acquisitions = 0;
};

double estimate_rload(const FrameMeans& means, double d_on);

double estimate_esr_raw(const SegmentedFrame& seg, const FrameMeans& means,
                        const EstimatorOptions& opts = {});

struct InductanceEstimate {
  double l_vin = 0.0;       // v_in / m_on
  double l_two_slope = 0.0; // v_media / (m_on - m_off)
  double m_on = 0.0;
  double m_off = 0.0;
};
InductanceEstimate estimate_l(const SegmentedFrame& seg, double v_in,
                              const EstimatorOptions& opts = {});

double estimate_c(const SegmentedFrame& seg, const FrameMeans& means, double r_load_est,
                  const EstimatorOptions& opts = {});

EstimateResult estimate_frame(const SegmentedFrame& seg, double v_in,
                              const EstimatorOptions& opts = {},
                              const std::optional<CalibrationOffset>& calibration = {});

// offset = mean(raw estimates over the baseline frames) - true added ESR.
CalibrationOffset calibrate_offset(std::span<const SegmentedFrame> baseline_frames,
                                   double true_added_esr, const EstimatorOptions& opts = {});

EstimateStats compute_stats(std::span<const EstimateResult> results);

// Estimates every frame and aggregates; frames that fail estimation are
// reported together in one Error(Batch) naming their indices.
struct BatchResult {
  std::vector<EstimateResult> runs;
  EstimateStats stats;
};
BatchResult run_batch(std::span<const SegmentedFrame> frames, double v_in,
                      const EstimatorOptions& opts = {},
                      const std::optional<CalibrationOffset>& calibration = {});

// Ordinary least squares; throws Error(DegenerateRegression) when fewer than
// two points or all x equal. Flat y gives slope 0 and r_squared 0.
RegressionResult linear_regression(std::span<const double> x, std::span<const double> y);

}  // namespace capmon
