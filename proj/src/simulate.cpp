#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "capmon/converter.hpp"
#include "capmon/error.hpp"
#include "capmon/kernels.hpp"

namespace capmon {

namespace {

struct State {
  double il;  // inductor current, A
  double vc;  // internal capacitor voltage, V
};

// x' = A x + b with x = [il, vc].
struct Affine {
  double a11, a12, a21, a22;
  double b1, b2;
};

struct PlantModel {
  // V_out = alpha*il + beta*vc while the diode conducts; beta*vc while the
  // switch is closed. alpha = rc*beta, beta = r_load/(r_load + rc) with
  // rc = esr + r_track; rc = 0 reduces to V_out = vc.
  double alpha, beta;
  Affine on, off;
  double r_dson, v_diode;
  double t_on, period;
};

PlantModel build_model(const ConverterParams& p) {
  const double rc = p.esr + p.r_track;
  const double beta = p.r_load / (p.r_load + rc);
  const double alpha = rc * beta;
  PlantModel m;
  m.alpha = alpha;
  m.beta = beta;
  m.r_dson = p.r_dson;
  m.v_diode = p.v_diode;
  m.period = 1.0 / p.f_sw;
  m.t_on = p.duty * m.period;
  // Switch closed: the inductor loop is decoupled, the capacitor branch
  // alone feeds the load.
  m.on = {-(p.r_l + p.r_dson) / p.l, 0.0,
          0.0, -1.0 / ((p.r_load + rc) * p.c),
          p.v_in / p.l, 0.0};
  // Switch open: il' = (v_in - r_l*il - v_diode - V_out)/l and the capacitor
  // takes the KCL remainder i_c = beta*(il - vc/r_load).
  m.off = {-(p.r_l + alpha) / p.l, -beta / p.l,
           beta / p.c, -beta / (p.r_load * p.c),
           (p.v_in - p.v_diode) / p.l, 0.0};
  return m;
}

State deriv(const Affine& f, State x) {
  return {f.a11 * x.il + f.a12 * x.vc + f.b1, f.a21 * x.il + f.a22 * x.vc + f.b2};
}

State rk4_step(const Affine& f, State x, double h) {
  const State k1 = deriv(f, x);
  const State k2 = deriv(f, {x.il + 0.5 * h * k1.il, x.vc + 0.5 * h * k1.vc});
  const State k3 = deriv(f, {x.il + 0.5 * h * k2.il, x.vc + 0.5 * h * k2.vc});
  const State k4 = deriv(f, {x.il + h * k3.il, x.vc + h * k3.vc});
  return {x.il + h / 6.0 * (k1.il + 2.0 * k2.il + 2.0 * k3.il + k4.il),
          x.vc + h / 6.0 * (k1.vc + 2.0 * k2.vc + 2.0 * k3.vc + k4.vc)};
}

void advance_phase(const Affine& f, State& x, double len, double h_nom, bool check_ccm) {
  if (len <= 0.0) return;
  const int nsteps = std::max(1, static_cast<int>(std::ceil(len / h_nom - 1e-9)));
  const double h = len / nsteps;
  for (int i = 0; i < nsteps; ++i) {
    x = rk4_step(f, x, h);
    if (check_ccm && x.il <= 0.0)
      fail(ErrorKind::DiscontinuousConduction,
           "inductor current reached zero while the diode conducts; the model only covers "
           "continuous conduction");
  }
}

// Integrate from in-period time a to b (0 <= a <= b <= period), splitting
// exactly at the switching boundary so the duty ratio never quantizes to the
// sample grid.
void advance_interval(const PlantModel& m, State& x, double a, double b, double h_nom) {
  if (a < m.t_on) {
    const double end_on = std::min(b, m.t_on);
    advance_phase(m.on, x, end_on - a, h_nom, false);
    a = end_on;
  }
  if (b > a) advance_phase(m.off, x, b - a, h_nom, true);
}

State initial_guess(const ConverterParams& p) {
  // Ideal steady-state relations; at the start of T_on the inductor current
  // sits at its minimum and the capacitor voltage near its maximum.
  const double v_nom = p.v_in / (1.0 - p.duty);
  const double i_out = v_nom / p.r_load;
  const double di = p.v_in * p.duty / (p.f_sw * p.l);
  const double dv = i_out * p.duty / (p.f_sw * p.c);
  double il0 = i_out / (1.0 - p.duty) - 0.5 * di;
  if (il0 <= 0.0) il0 = 1e-6;
  return {il0, v_nom + 0.5 * dv};
}

double rel_delta(State a, State b) {
  auto rd = [](double x, double y) {
    return std::abs(x - y) / std::max({std::abs(x), std::abs(y), 1e-12});
  };
  return std::max(rd(a.il, b.il), rd(a.vc, b.vc));
}

// The period-to-period map of a piecewise-linear plant is affine,
// x_{n+1} = M x_n + d. Estimate M from three consecutive start-of-period
// differences and jump straight to the fixed point x* = (I-M)^{-1} d.
bool try_fixed_point_jump(std::span<const State> s, State& out) {
  const std::size_t n = s.size();
  if (n < 4) return false;
  const State d0{s[n - 3].il - s[n - 4].il, s[n - 3].vc - s[n - 4].vc};
  const State d1{s[n - 2].il - s[n - 3].il, s[n - 2].vc - s[n - 3].vc};
  const State d2{s[n - 1].il - s[n - 2].il, s[n - 1].vc - s[n - 2].vc};
  const double det = d0.il * d1.vc - d1.il * d0.vc;
  const double scale = std::max({std::abs(d0.il), std::abs(d0.vc), std::abs(d1.il),
                                 std::abs(d1.vc)});
  if (!(std::abs(det) > 1e-6 * scale * scale)) return false;
  // M = [d1 d2] [d0 d1]^{-1}
  const double m11 = (d1.il * d1.vc - d2.il * d0.vc) / det;
  const double m12 = (d2.il * d0.il - d1.il * d1.il) / det;
  const double m21 = (d1.vc * d1.vc - d2.vc * d0.vc) / det;
  const double m22 = (d2.vc * d0.il - d1.vc * d1.il) / det;
  // d = x_n - M x_{n-1}
  const State last = s[n - 1];
  const State prev = s[n - 2];
  const double c1 = last.il - (m11 * prev.il + m12 * prev.vc);
  const double c2 = last.vc - (m21 * prev.il + m22 * prev.vc);
  const double i11 = 1.0 - m11, i12 = -m12, i21 = -m21, i22 = 1.0 - m22;
  const double idet = i11 * i22 - i12 * i21;
  if (!(std::abs(idet) > 1e-12)) return false;
  out.il = (c1 * i22 - c2 * i12) / idet;
  out.vc = (c2 * i11 - c1 * i21) / idet;
  return std::isfinite(out.il) && std::isfinite(out.vc);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Box-Muller over the standard-specified mt19937_64 stream; reproducible
// bit-for-bit across platforms, which std::normal_distribution is not.
void add_gaussian_noise(std::vector<double>& v, double sigma, std::uint64_t seed) {
  if (sigma <= 0.0) return;
  std::mt19937_64 rng(seed);
  auto unit = [&rng]() {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;  // in (0,1)
  };
  const double two_pi = 6.283185307179586476925286766559;
  for (std::size_t i = 0; i < v.size(); i += 2) {
    const double r = std::sqrt(-2.0 * std::log(unit()));
    const double phi = two_pi * unit();
    v[i] += sigma * r * std::cos(phi);
    if (i + 1 < v.size()) v[i + 1] += sigma * r * std::sin(phi);
  }
}

void digitize(std::vector<double>& v, const ChannelRange& range, const AcSeparation& ac,
              int bits) {
  if (bits <= 0) return;
  const double lsb = (range.hi - range.lo) / (std::pow(2.0, bits) - 1.0);
  if (ac.enabled) {
    // Amplified ripple sees the full converter dynamics: the effective step
    // size shrinks by the gain.
    kernels::scale_offset(v, ac.gain, -ac.dc * ac.gain);
    kernels::quantize_midtread(v, range.lo, range.hi, lsb);
    kernels::scale_offset(v, 1.0 / ac.gain, ac.dc);
  } else {
    kernels::quantize_midtread(v, range.lo, range.hi, lsb);
  }
}

void apply_measurement_model(AcquisitionFrame& f, const SimConfig& cfg) {
  add_gaussian_noise(f.i_l, cfg.noise_sigma.i_l, splitmix64(cfg.seed + 1));
  add_gaussian_noise(f.v_out, cfg.noise_sigma.v_out, splitmix64(cfg.seed + 2));
  add_gaussian_noise(f.v_c, cfg.noise_sigma.v_c, splitmix64(cfg.seed + 3));
  add_gaussian_noise(f.v_mos, cfg.noise_sigma.v_mos, splitmix64(cfg.seed + 4));
  digitize(f.i_l, cfg.adc_fullscale.i_l, cfg.ac_sep.i_l, cfg.adc_bits);
  digitize(f.v_out, cfg.adc_fullscale.v_out, cfg.ac_sep.v_out, cfg.adc_bits);
  digitize(f.v_c, cfg.adc_fullscale.v_c, cfg.ac_sep.v_c, cfg.adc_bits);
  digitize(f.v_mos, cfg.adc_fullscale.v_mos, cfg.ac_sep.v_mos, cfg.adc_bits);
}

}  // namespace

AcquisitionFrame simulate(const ConverterParams& params, const SimConfig& cfg) {
  params.validate();
  cfg.validate(params.f_sw);

  const PlantModel m = build_model(params);
  const double dt = 1.0 / cfg.sample_rate;
  const double h_nom = dt / cfg.integrator_substeps;

  // Settle to the periodic orbit: plain period iteration plus affine
  // fixed-point jumps once enough history exists.
  State x = initial_guess(params);
  std::vector<State> starts{x};
  const auto cap = static_cast<std::size_t>(std::max(
      {std::ceil(10.0 * params.r_load * params.c * params.f_sw),
       static_cast<double>(cfg.n_periods), 50.0}));
  bool converged = false;
  for (std::size_t period = 0; period < cap; ++period) {
    const State prev = x;
    advance_interval(m, x, 0.0, m.period, h_nom);
    starts.push_back(x);
    if (period + 1 >= static_cast<std::size_t>(cfg.n_periods) && rel_delta(x, prev) < 1e-9) {
      converged = true;
      break;
    }
    State fp;
    if (starts.size() >= 4 && try_fixed_point_jump(starts, fp)) {
      x = fp;
      starts.clear();
      starts.push_back(x);
    }
  }
  if (!converged)
    fail(ErrorKind::Convergence, "no periodic steady state after " + std::to_string(cap) +
                                     " switching periods");

  // Capture one period on the sample grid.
  const auto n_samples = static_cast<std::size_t>(std::llround(cfg.sample_rate / params.f_sw));
  AcquisitionFrame frame;
  frame.sample_rate = cfg.sample_rate;
  frame.t.reserve(n_samples);
  frame.i_l.reserve(n_samples);
  frame.v_out.reserve(n_samples);
  frame.v_c.reserve(n_samples);
  frame.v_mos.reserve(n_samples);
  const double edge_tol = 1e-12 * m.period;
  for (std::size_t k = 0; k < n_samples; ++k) {
    const double tk = static_cast<double>(k) * dt;
    const bool on = tk + edge_tol < m.t_on;
    const double vout = on ? m.beta * x.vc : m.alpha * x.il + m.beta * x.vc;
    frame.t.push_back(tk);
    frame.i_l.push_back(x.il);
    frame.v_c.push_back(x.vc);
    frame.v_out.push_back(vout);
    frame.v_mos.push_back(on ? m.r_dson * x.il : vout + m.v_diode);
    if (k + 1 < n_samples) advance_interval(m, x, tk, static_cast<double>(k + 1) * dt, h_nom);
  }

  apply_measurement_model(frame, cfg);
  frame.validate();
  return frame;
}

}  // namespace capmon
