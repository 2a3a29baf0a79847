#include "capmon/converter.hpp"

#include <cmath>
#include <string>

#include "capmon/error.hpp"

namespace capmon {

namespace {

void require(bool ok, ErrorKind kind, const std::string& msg) {
  if (!ok) fail(kind, msg);
}

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }
bool finite_pos(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

void ConverterParams::validate() const {
  require(finite_pos(l), ErrorKind::InvalidConfig, "l must be > 0");
  require(finite_pos(c), ErrorKind::InvalidConfig, "c must be > 0");
  require(finite_pos(r_load), ErrorKind::InvalidConfig, "r_load must be > 0");
  require(finite_pos(f_sw), ErrorKind::InvalidConfig, "f_sw must be > 0");
  require(finite_pos(v_in), ErrorKind::InvalidConfig, "v_in must be > 0");
  require(finite_nonneg(esr), ErrorKind::InvalidConfig, "esr must be >= 0");
  require(finite_nonneg(r_l), ErrorKind::InvalidConfig, "r_l must be >= 0");
  require(finite_nonneg(r_track), ErrorKind::InvalidConfig, "r_track must be >= 0");
  require(finite_nonneg(r_dson), ErrorKind::InvalidConfig, "r_dson must be >= 0");
  require(finite_nonneg(v_diode), ErrorKind::InvalidConfig, "v_diode must be >= 0");
  require(std::isfinite(duty) && duty > 0.0 && duty < 1.0, ErrorKind::InvalidConfig,
          "duty must lie in (0,1)");
}

void DegradationState::validate() const {
  require(n_parallel_esr_resistors >= 0 && n_parallel_esr_resistors <= 5,
          ErrorKind::InvalidDegradation,
          "n_parallel_esr_resistors must be in 0..5, got " +
              std::to_string(n_parallel_esr_resistors));
  require(n_parallel_caps >= 1 && n_parallel_caps <= 5, ErrorKind::InvalidDegradation,
          "n_parallel_caps must be in 1..5, got " + std::to_string(n_parallel_caps));
}

double DegradationState::added_esr() const {
  if (n_parallel_esr_resistors == 0) return 0.0;
  return kEsrNetworkUnitOhm / n_parallel_esr_resistors;
}

double DegradationState::capacitance() const { return n_parallel_caps * kCapUnitFarad; }

ConverterParams apply_degradation(const ConverterParams& base, const DegradationState& deg) {
  base.validate();
  deg.validate();
  ConverterParams out = base;
  out.esr = base.esr + deg.added_esr();
  out.c = deg.capacitance();
  // Paralleling capacitor units parallels their track/solder parasitics too.
  out.r_track = base.r_track / deg.n_parallel_caps;
  return out;
}

void SimConfig::validate(double f_sw) const {
  require(finite_pos(sample_rate), ErrorKind::InvalidConfig, "sample_rate must be > 0");
  require(sample_rate >= 100.0 * f_sw, ErrorKind::InvalidConfig,
          "sample_rate must be at least 100x the switching frequency");
  require(n_periods >= 1, ErrorKind::InvalidConfig, "n_periods must be >= 1");
  require(integrator_substeps >= 10, ErrorKind::InvalidConfig,
          "integrator_substeps must be >= 10");
  require(adc_bits >= 0 && adc_bits <= 32, ErrorKind::InvalidConfig,
          "adc_bits must be in 0..32");
  for (double s : {noise_sigma.i_l, noise_sigma.v_out, noise_sigma.v_c, noise_sigma.v_mos})
    require(finite_nonneg(s), ErrorKind::InvalidConfig, "noise_sigma must be >= 0");
  if (adc_bits > 0) {
    for (const ChannelRange& r :
         {adc_fullscale.i_l, adc_fullscale.v_out, adc_fullscale.v_c, adc_fullscale.v_mos})
      require(std::isfinite(r.lo) && std::isfinite(r.hi) && r.hi > r.lo, ErrorKind::InvalidConfig,
              "adc_fullscale range must satisfy hi > lo");
  }
  for (const AcSeparation& a : {ac_sep.i_l, ac_sep.v_out, ac_sep.v_c, ac_sep.v_mos})
    if (a.enabled)
      require(std::isfinite(a.dc) && finite_pos(a.gain), ErrorKind::InvalidConfig,
              "ac_sep gain must be > 0");
}

void AcquisitionFrame::validate() const {
  const std::size_t n = t.size();
  require(n >= 100, ErrorKind::MalformedFrame,
          "frame must hold at least 100 samples, got " + std::to_string(n));
  require(i_l.size() == n && v_out.size() == n && v_c.size() == n && v_mos.size() == n,
          ErrorKind::MalformedFrame, "channel arrays must all have the same length");
  require(finite_pos(sample_rate), ErrorKind::MalformedFrame, "sample_rate must be > 0");
  const double dt = 1.0 / sample_rate;
  for (std::size_t i = 1; i < n; ++i) {
    const double step = t[i] - t[i - 1];
    require(step > 0.0 && std::abs(step - dt) <= 1e-6 * dt, ErrorKind::MalformedFrame,
            "t must increase uniformly at 1/sample_rate (sample " + std::to_string(i) + ")");
  }
}

}  // namespace capmon
