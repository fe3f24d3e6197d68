#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "hetsim/channel.hpp"
#include "hetsim/fading.hpp"
#include "hetsim/rng.hpp"

using namespace hetsim;

namespace {
const FadingConfig kCfg{doppler_hz(3.0 / 3.6, 2e9), 8};
}

TEST_CASE("Doppler at pedestrian speed and 2 GHz") {
  CHECK(kCfg.doppler_hz == doctest::Approx(5.56).epsilon(1e-3));
}

TEST_CASE("fading autocorrelation follows J0(2 pi fd tau)") {
  // Ensemble over independent (ue, rb) streams and start times.
  const int n_streams = 3000;
  const int n_starts = 4;
  for (double tau_ms = 0.0; tau_ms <= 50.0; tau_ms += 5.0) {
    const double tau = tau_ms * 1e-3;
    std::complex<double> acc = 0.0;
    double power = 0.0;
    for (int s = 0; s < n_streams; ++s) {
      JakesStream st(derive_seed(11, Stream::Fading, static_cast<std::uint64_t>(s), 0), kCfg);
      for (int k = 0; k < n_starts; ++k) {
        const double t = 0.37 * k + 0.001 * s;
        const auto h0 = st.envelope(t);
        acc += h0 * std::conj(st.envelope(t + tau));
        power += std::norm(h0);
      }
    }
    const double r = acc.real() / power;
    const double oracle = std::cyl_bessel_j(0.0, 2.0 * std::numbers::pi * kCfg.doppler_hz * tau);
    CAPTURE(tau_ms);
    CHECK(std::abs(r - oracle) < 0.1);
  }
}

TEST_CASE("fading power gain averages to one over a long run") {
  for (std::uint32_t rb : {0u, 7u, 49u}) {
    JakesStream st(derive_seed(3, Stream::Fading, 2, rb), kCfg);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) sum += st.power_gain(i * 1e-3);
    CAPTURE(rb);
    CHECK(std::abs(sum / n - 1.0) < 0.05);
  }
}

TEST_CASE("fading is a pure function of (seed, ue, rb, t)") {
  CHECK(jakes_fading_db(5, 1, 2, 0.123, kCfg) == jakes_fading_db(5, 1, 2, 0.123, kCfg));
  CHECK(jakes_fading_db(5, 1, 2, 0.123, kCfg) != jakes_fading_db(5, 1, 3, 0.123, kCfg));
  CHECK(jakes_fading_db(5, 1, 2, 0.123, kCfg) != jakes_fading_db(6, 1, 2, 0.123, kCfg));

  FadingBank bank(5, 4, 50, kCfg);
  for (std::uint32_t u = 0; u < 4; ++u) {
    for (std::uint32_t rb = 0; rb < 50; rb += 7) {
      CHECK(bank.gain_db(u, rb, 1.5) == jakes_fading_db(5, u, rb, 1.5, kCfg));
    }
  }
}

TEST_CASE("fading varies slowly within the coherence time") {
  JakesStream st(derive_seed(1, Stream::Fading, 0, 0), kCfg);
  // One TTI is about 0.5% of a Doppler period: consecutive envelopes barely move.
  double max_jump = 0.0;
  for (int i = 0; i < 2000; ++i) {
    max_jump = std::max(max_jump, std::abs(st.envelope(i * 1e-3) - st.envelope((i + 1) * 1e-3)));
  }
  CHECK(max_jump < 0.2);
}
