#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace hetsim {

struct FadingConfig {
  double doppler_hz = 5.56;
  int oscillators = 8;
};

// Sum-of-sinusoids Rayleigh process (Jakes family, randomised arrival angles).
// The linear power gain has unit mean and its complex envelope has the
// Clarke J0(2*pi*fd*tau) autocorrelation.
class JakesStream {
 public:
  JakesStream(std::uint64_t seed, const FadingConfig& config);

  /// Complex envelope with E|h|^2 = 1.
  std::complex<double> envelope(double t_s) const;
  double power_gain(double t_s) const;
  double gain_db(double t_s) const;

 private:
  struct Oscillator {
    double omega_i;
    double phase_i;
    double omega_q;
    double phase_q;
  };
  std::vector<Oscillator> osc_;
  double scale_;
};

/// Multipath gain in dB for (ue, rb) at time t. Pure function of its arguments.
double jakes_fading_db(std::uint64_t run_seed, std::uint32_t ue_id, std::uint32_t rb_index,
                       double t_s, const FadingConfig& config);

// Precomputed streams for every (UE, RB) pair of a run. Produces exactly the
// values of jakes_fading_db.
class FadingBank {
 public:
  FadingBank() = default;
  FadingBank(std::uint64_t run_seed, std::uint32_t n_ues, std::uint32_t n_rbs,
             const FadingConfig& config);

  double gain_db(std::uint32_t ue_id, std::uint32_t rb_index, double t_s) const {
    return streams_[static_cast<std::size_t>(ue_id) * n_rbs_ + rb_index].gain_db(t_s);
  }
  std::uint32_t n_rbs() const { return n_rbs_; }
  bool empty() const { return streams_.empty(); }

 private:
  std::uint32_t n_rbs_ = 0;
  std::vector<JakesStream> streams_;
};

}  // namespace hetsim
