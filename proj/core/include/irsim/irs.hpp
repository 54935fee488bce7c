#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "irsim/fading.hpp"
#include "irsim/rng.hpp"

namespace irsim {

// IRS reflection phases, one per element, normalized to [0, 2*pi).
struct PhaseConfig {
  std::vector<double> theta;

  std::size_t size() const { return theta.size(); }
};

// Scalar end-to-end amplitude gain h = h_d + sum_n g_n e^{j theta_n} f_n.
struct EffectiveChannel {
  std::complex<double> h;
};

inline double normalize_phase(double theta) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  theta = std::fmod(theta, two_pi);
  if (theta < 0.0) theta += two_pi;
  return theta;
}

// Rate-optimal phases: align every cascaded term with the direct path,
// theta_n = arg(h_d) - (arg(f_n) + arg(g_n)). h_d == 0 aligns to angle 0.
inline PhaseConfig optimal_phases(const FadingDraw& draw) {
  const double phi_d = draw.h_d == 0.0 ? 0.0 : std::arg(draw.h_d);
  PhaseConfig config;
  config.theta.resize(draw.n_elements());
  for (std::size_t n = 0; n < draw.n_elements(); ++n)
    config.theta[n] =
        normalize_phase(phi_d - std::arg(draw.f[n]) - std::arg(draw.g[n]));
  return config;
}

inline PhaseConfig random_phases(std::size_t n_elements, RngStream& rng) {
  PhaseConfig config;
  config.theta.resize(n_elements);
  for (auto& theta : config.theta) theta = rng.next_phase();
  return config;
}

inline EffectiveChannel effective_channel(const FadingDraw& draw,
                                          const PhaseConfig& config) {
  if (config.size() != draw.n_elements())
    throw std::invalid_argument("effective_channel: phase/element length mismatch");
  std::complex<double> h = draw.h_d;
  for (std::size_t n = 0; n < draw.n_elements(); ++n)
    h += draw.g[n] * std::polar(1.0, config.theta[n]) * draw.f[n];
  return {h};
}

// Amplitude under optimal phases: |h_d| + sum_n |f_n g_n|.
inline double beamformed_gain(const FadingDraw& draw) {
  double gain = std::abs(draw.h_d);
  for (std::size_t n = 0; n < draw.n_elements(); ++n)
    gain += std::abs(draw.f[n] * draw.g[n]);
  return gain;
}

// (receive SNR, rate in bits/s/Hz) for a channel amplitude and transmit SNR.
inline std::pair<double, double> snr_and_rate(const EffectiveChannel& channel,
                                              double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("snr_and_rate: gamma must be > 0");
  const double snr = std::norm(channel.h) * gamma;
  return {snr, std::log2(1.0 + snr)};
}

}  // namespace irsim
