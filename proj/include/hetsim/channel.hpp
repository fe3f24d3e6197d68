#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace hetsim {

// Urban macro propagation: distances below this floor are clamped.
inline constexpr double kMinDistanceKm = 0.001;

// Fixed OFDMA numerology of one RB-pair per TTI.
inline constexpr int kSymbolsPerSlot = 7;
inline constexpr int kSlotsPerTti = 2;
inline constexpr int kSubcarriersPerRb = 12;
inline constexpr double kSubcarrierSpacingHz = 15e3;
inline constexpr double kRbBandwidthHz = kSubcarriersPerRb * kSubcarrierSpacingHz;

struct PropagationLoss {
  double pathloss_db = 0.0;
  double penetration_db = 0.0;
  double shadow_db = 0.0;
  double multipath_db = 0.0;

  // Net attenuation. Shadowing and multipath enter as gains (positive = stronger signal).
  double total_db() const { return pathloss_db + penetration_db - shadow_db - multipath_db; }
};

struct McsEntry {
  double min_snr_db;
  int modulation_bits;
  int code_rate_num;
  int code_rate_den;
  int rate_kbps_per_rbpair;
  std::string_view name;

  double code_rate() const { return static_cast<double>(code_rate_num) / code_rate_den; }
};

/// SNR thresholds and data rates per RB-pair, ordered by increasing rate.
std::span<const McsEntry> mcs_table();

/// Highest-rate entry whose threshold is at or below `snr_db`; nullopt below the lowest row.
std::optional<McsEntry> snr_to_mcs(double snr_db);

/// Bits carried by one RB-pair in one TTI: bits/symbol x symbols/slot x slots/TTI x subcarriers
/// x code rate. Computed in integers, so it is exact.
int rb_pair_rate_bits(const McsEntry& mcs);

/// Same as rb_pair_rate_bits(*snr_to_mcs(snr_db)), 0 when no MCS is feasible.
int rate_bits_for_snr(double snr_db);

/// 128.1 + 37.6 log10(d_km). Throws GeometryError for negative or NaN distances.
double pathloss_db(double d_km);

double dbm_to_mw(double dbm);
double mw_to_dbm(double mw);

/// Serving power over interference plus noise, summed in linear milliwatts.
double sinr_db(double serving_dbm, std::span<const double> interferer_dbm, double noise_dbm);

/// Thermal noise power over `bandwidth_hz` including the receiver noise figure.
double noise_dbm(double density_dbm_per_hz, double noise_figure_db, double bandwidth_hz);

double doppler_hz(double speed_mps, double carrier_hz);

/// One log-normal shadowing draw (Gaussian in dB).
double shadowing_sample(std::mt19937_64& rng, double mean_db = 0.0, double std_db = 10.0);

struct LinkState {
  std::uint32_t ue_id = 0;
  std::uint32_t cell_id = 0;
  std::vector<double> sinr_per_rb_db;
};

}  // namespace hetsim
