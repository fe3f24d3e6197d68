#include "hetsim/fading.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "hetsim/errors.hpp"
#include "hetsim/rng.hpp"

namespace hetsim {
namespace {
constexpr double kFloorGain = 1e-12;
}

JakesStream::JakesStream(std::uint64_t seed, const FadingConfig& config) {
  if (config.oscillators < 1) throw ConfigError("fading: need at least one oscillator");
  constexpr double pi = std::numbers::pi;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(-pi, pi);

  const int n = config.oscillators;
  const double wd = 2.0 * pi * config.doppler_hz;
  const double theta = angle(rng);
  osc_.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    const double alpha = (2.0 * pi * k - pi + theta) / (4.0 * n);
    const double phase_i = angle(rng);
    const double phase_q = angle(rng);
    osc_.push_back({wd * std::cos(alpha), phase_i, wd * std::sin(alpha), phase_q});
  }
  scale_ = 2.0 / n;
}

std::complex<double> JakesStream::envelope(double t_s) const {
  double xi = 0.0;
  double xq = 0.0;
  for (const auto& o : osc_) {
    xi += std::cos(o.omega_i * t_s + o.phase_i);
    xq += std::cos(o.omega_q * t_s + o.phase_q);
  }
  const double s = std::sqrt(0.5 * scale_);
  return {s * xi, s * xq};
}

double JakesStream::power_gain(double t_s) const {
  double xi = 0.0;
  double xq = 0.0;
  for (const auto& o : osc_) {
    xi += std::cos(o.omega_i * t_s + o.phase_i);
    xq += std::cos(o.omega_q * t_s + o.phase_q);
  }
  // Each quadrature has variance 1 after the sqrt(2/N) scaling; halve for unit total power.
  return 0.5 * scale_ * (xi * xi + xq * xq);
}

double JakesStream::gain_db(double t_s) const {
  return 10.0 * std::log10(std::max(power_gain(t_s), kFloorGain));
}

double jakes_fading_db(std::uint64_t run_seed, std::uint32_t ue_id, std::uint32_t rb_index,
                       double t_s, const FadingConfig& config) {
  return JakesStream(derive_seed(run_seed, Stream::Fading, ue_id, rb_index), config).gain_db(t_s);
}

FadingBank::FadingBank(std::uint64_t run_seed, std::uint32_t n_ues, std::uint32_t n_rbs,
                       const FadingConfig& config)
    : n_rbs_(n_rbs) {
  streams_.reserve(static_cast<std::size_t>(n_ues) * n_rbs);
  for (std::uint32_t u = 0; u < n_ues; ++u) {
    for (std::uint32_t rb = 0; rb < n_rbs; ++rb) {
      streams_.emplace_back(derive_seed(run_seed, Stream::Fading, u, rb), config);
    }
  }
}

}  // namespace hetsim
