#pragma once

#include <cstddef>

#include "capmon/converter.hpp"

namespace capmon {

// Frame rotated so the switch-closed run comes first: on = [0, on_count),
// off = [on_count, size).
struct SegmentedFrame {
  AcquisitionFrame frame;
  std::size_t on_count = 0;
  double d_on = 0.0;  // measured duty ratio, on_count / size
  double t_on = 0.0;  // s

  std::size_t off_count() const { return frame.size() - on_count; }
};

// Full-period and per-segment channel averages.
struct FrameMeans {
  double v_media = 0.0;    // mean v_out over the full period
  double i_l_media = 0.0;  // mean i_l over the full period
  double v_c_media = 0.0;
  double v_mos_media = 0.0;
  double on_i_l = 0.0, on_v_out = 0.0, on_v_c = 0.0, on_v_mos = 0.0;
  double off_i_l = 0.0, off_v_out = 0.0, off_v_c = 0.0, off_v_mos = 0.0;
};

// Classifies samples by v_mos against the min/max midpoint with a two-sample
// debounce, then rotates the frame so T_on is contiguous and first.
// Throws Error(MalformedFrame) when v_mos does not show exactly one
// on-run and one off-run, Error(InsufficientResolution) when either segment
// holds fewer than 10 samples.
SegmentedFrame segment_states(const AcquisitionFrame& frame);

FrameMeans compute_means(const SegmentedFrame& seg);

}  // namespace capmon
