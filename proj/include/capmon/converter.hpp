#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace capmon {

// Physical plant of the step-up converter under test. All values SI.
struct ConverterParams {
  double v_in = 0.0;     // supply voltage, V
  double l = 0.0;        // inductance, H
  double r_l = 0.0;      // inductor series resistance, ohm
  double c = 0.0;        // output capacitance, F
  double esr = 0.0;      // capacitor equivalent series resistance, ohm
  double r_track = 0.0;  // fixed board/track/jumper resistance in the capacitor branch, ohm
  double r_load = 0.0;   // load resistance, ohm
  double f_sw = 0.0;     // switching frequency, Hz
  double duty = 0.0;     // commanded duty ratio, in (0,1)
  double v_diode = 0.0;  // diode forward drop, V
  double r_dson = 0.0;   // switch on-resistance, ohm

  void validate() const;  // throws Error(InvalidConfig)
};

// Resistance of one unit in the parallel degradation network and the
// capacitance of one parallel capacitor unit.
inline constexpr double kEsrNetworkUnitOhm = 0.200;
inline constexpr double kCapUnitFarad = 33e-6;

// Jumper-selectable aging emulation: k of 5 parallel resistors placed in
// series with the capacitor, and 1..5 capacitor units in parallel.
struct DegradationState {
  int n_parallel_esr_resistors = 0;  // k in 0..5; 0 means the network is bypassed
  int n_parallel_caps = 1;           // 1..5

  void validate() const;  // throws Error(InvalidDegradation)
  double added_esr() const;
  double capacitance() const;
};

ConverterParams apply_degradation(const ConverterParams& base, const DegradationState& deg);

// Per-channel scalar, keyed by the four acquired signals.
struct PerChannel {
  double i_l = 0.0;
  double v_out = 0.0;
  double v_c = 0.0;
  double v_mos = 0.0;
};

struct ChannelRange {
  double lo = 0.0;
  double hi = 1.0;
};

struct PerChannelRange {
  ChannelRange i_l{0.0, 5.0};
  ChannelRange v_out{0.0, 30.0};
  ChannelRange v_c{0.0, 30.0};
  ChannelRange v_mos{0.0, 30.0};
};

// Optional front-end stage that removes a configured DC level and amplifies
// the ripple before quantization, then restores the original scale after.
struct AcSeparation {
  bool enabled = false;
  double dc = 0.0;
  double gain = 1.0;
};

struct PerChannelAcSep {
  AcSeparation i_l;
  AcSeparation v_out;
  AcSeparation v_c;
  AcSeparation v_mos;
};

struct SimConfig {
  double sample_rate = 0.0;       // Hz; must be >= 100 * f_sw
  int n_periods = 1;              // minimum warm-up periods before capture
  int integrator_substeps = 10;   // internal integration steps per sample, >= 10
  PerChannel noise_sigma;         // Gaussian noise std dev per channel, signal units
  int adc_bits = 0;               // 0 = ideal (no quantization)
  PerChannelRange adc_fullscale;  // quantizer clipping ranges, signal units
  PerChannelAcSep ac_sep;
  std::uint64_t seed = 0;

  void validate(double f_sw) const;  // throws Error(InvalidConfig)
};

// One captured switching period of the four sampled signals.
struct AcquisitionFrame {
  double sample_rate = 0.0;
  std::vector<double> t;      // s, uniform spacing 1/sample_rate
  std::vector<double> i_l;    // A
  std::vector<double> v_out;  // V
  std::vector<double> v_c;    // V, internal capacitor voltage before the ESR drop
  std::vector<double> v_mos;  // V

  std::size_t size() const { return t.size(); }
  void validate() const;  // throws Error(MalformedFrame)
};

AcquisitionFrame simulate(const ConverterParams& params, const SimConfig& cfg);

}  // namespace capmon
