#include "capmon/acquisition.hpp"

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "capmon/error.hpp"
#include "capmon/kernels.hpp"

namespace capmon {

namespace {

std::vector<double> rotated(const std::vector<double>& v, std::size_t start) {
  const std::size_t n = v.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = v[(start + i) % n];
  return out;
}

}  // namespace

SegmentedFrame segment_states(const AcquisitionFrame& frame) {
  frame.validate();
  const std::size_t n = frame.size();

  const auto [lo, hi] = kernels::min_max(frame.v_mos);
  if (!(hi - lo > 0.0))
    fail(ErrorKind::MalformedFrame, "v_mos shows no switching levels (constant channel)");
  const double threshold = 0.5 * (lo + hi);

  std::vector<char> raw(n);
  for (std::size_t i = 0; i < n; ++i) raw[i] = frame.v_mos[i] < threshold ? 1 : 0;

  // Debounced circular classification: start from the sample with the widest
  // margin (certainly classified right) and only switch state when two
  // consecutive samples sit on the other side of the threshold.
  std::size_t anchor = 0;
  double best_margin = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double margin = std::abs(frame.v_mos[i] - threshold);
    if (margin > best_margin) {
      best_margin = margin;
      anchor = i;
    }
  }
  std::vector<char> cls(n);
  char state = raw[anchor];
  cls[anchor] = state;
  for (std::size_t step = 1; step < n; ++step) {
    const std::size_t i = (anchor + step) % n;
    const std::size_t next = (i + 1) % n;
    if (raw[i] != state && raw[next] != state) state = raw[i];
    cls[i] = state;
  }

  std::size_t transitions = 0;
  std::size_t on_start = n;
  std::size_t on_count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t prev = (i + n - 1) % n;
    if (cls[i] != cls[prev]) {
      ++transitions;
      if (cls[i]) on_start = i;
    }
    if (cls[i]) ++on_count;
  }
  if (transitions != 2)
    fail(ErrorKind::MalformedFrame,
         transitions == 0 ? "v_mos never crosses its midpoint threshold"
                          : "v_mos crosses the threshold " + std::to_string(transitions) +
                                " times; expected one on-run and one off-run");
  if (on_count < 10 || n - on_count < 10)
    fail(ErrorKind::InsufficientResolution,
         "need at least 10 samples in each switching state, got " + std::to_string(on_count) +
             " on / " + std::to_string(n - on_count) + " off");

  SegmentedFrame seg;
  seg.frame.sample_rate = frame.sample_rate;
  seg.frame.i_l = rotated(frame.i_l, on_start);
  seg.frame.v_out = rotated(frame.v_out, on_start);
  seg.frame.v_c = rotated(frame.v_c, on_start);
  seg.frame.v_mos = rotated(frame.v_mos, on_start);
  const double dt = 1.0 / frame.sample_rate;
  seg.frame.t.resize(n);
  for (std::size_t i = 0; i < n; ++i) seg.frame.t[i] = static_cast<double>(i) * dt;
  seg.on_count = on_count;
  seg.d_on = static_cast<double>(on_count) / static_cast<double>(n);
  seg.t_on = static_cast<double>(on_count) * dt;
  return seg;
}

FrameMeans compute_means(const SegmentedFrame& seg) {
  const std::size_t n = seg.frame.size();
  const std::size_t on = seg.on_count;
  if (n == 0 || on == 0 || on >= n)
    fail(ErrorKind::MalformedFrame, "segmented frame must hold both switching states");

  auto full = [n](const std::vector<double>& v) {
    return kernels::sum(std::span<const double>(v)) / static_cast<double>(n);
  };
  auto head = [on](const std::vector<double>& v) {
    return kernels::sum(std::span<const double>(v).first(on)) / static_cast<double>(on);
  };
  auto tail = [n, on](const std::vector<double>& v) {
    return kernels::sum(std::span<const double>(v).subspan(on)) / static_cast<double>(n - on);
  };

  FrameMeans m;
  m.v_media = full(seg.frame.v_out);
  m.i_l_media = full(seg.frame.i_l);
  m.v_c_media = full(seg.frame.v_c);
  m.v_mos_media = full(seg.frame.v_mos);
  m.on_i_l = head(seg.frame.i_l);
  m.on_v_out = head(seg.frame.v_out);
  m.on_v_c = head(seg.frame.v_c);
  m.on_v_mos = head(seg.frame.v_mos);
  m.off_i_l = tail(seg.frame.i_l);
  m.off_v_out = tail(seg.frame.v_out);
  m.off_v_c = tail(seg.frame.v_c);
  m.off_v_mos = tail(seg.frame.v_mos);
  return m;
}

}  // namespace capmon
