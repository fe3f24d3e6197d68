#include "hetsim/channel.hpp"

#include <array>
#include <cmath>
#include <string>

#include "hetsim/errors.hpp"

namespace hetsim {
namespace {

constexpr std::array<McsEntry, 8> kMcsTable{{
    {1.7, 2, 1, 2, 168, "QPSK 1/2"},
    {3.7, 2, 2, 3, 224, "QPSK 2/3"},
    {4.5, 2, 3, 4, 252, "QPSK 3/4"},
    {7.2, 4, 1, 2, 336, "16QAM 1/2"},
    {9.5, 4, 2, 3, 448, "16QAM 2/3"},
    {10.7, 4, 3, 4, 504, "16QAM 3/4"},
    {14.8, 6, 2, 3, 672, "64QAM 2/3"},
    {16.1, 6, 3, 4, 756, "64QAM 3/4"},
}};

constexpr int kSymbolsPerTtiPerRb = kSymbolsPerSlot * kSlotsPerTti * kSubcarriersPerRb;

}  // namespace

std::span<const McsEntry> mcs_table() { return kMcsTable; }

std::optional<McsEntry> snr_to_mcs(double snr_db) {
  for (auto it = kMcsTable.rbegin(); it != kMcsTable.rend(); ++it) {
    if (it->min_snr_db <= snr_db) return *it;
  }
  return std::nullopt;
}

int rb_pair_rate_bits(const McsEntry& mcs) {
  return mcs.modulation_bits * kSymbolsPerTtiPerRb * mcs.code_rate_num / mcs.code_rate_den;
}

int rate_bits_for_snr(double snr_db) {
  const auto mcs = snr_to_mcs(snr_db);
  return mcs ? rb_pair_rate_bits(*mcs) : 0;
}

double pathloss_db(double d_km) {
  if (!(d_km >= 0.0)) {
    throw GeometryError("pathloss: invalid distance " + std::to_string(d_km) + " km");
  }
  const double d = std::max(d_km, kMinDistanceKm);
  return 128.1 + 37.6 * std::log10(d);
}

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }

double sinr_db(double serving_dbm, std::span<const double> interferer_dbm, double noise_dbm) {
  double denom = dbm_to_mw(noise_dbm);
  for (double i : interferer_dbm) denom += dbm_to_mw(i);
  // Subtract in dB so that the interference-free case is exact.
  return serving_dbm - mw_to_dbm(denom);
}

double noise_dbm(double density_dbm_per_hz, double noise_figure_db, double bandwidth_hz) {
  return density_dbm_per_hz + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
}

double doppler_hz(double speed_mps, double carrier_hz) {
  constexpr double kSpeedOfLight = 299792458.0;
  return speed_mps * carrier_hz / kSpeedOfLight;
}

double shadowing_sample(std::mt19937_64& rng, double mean_db, double std_db) {
  std::normal_distribution<double> dist(mean_db, std_db);
  return dist(rng);
}

}  // namespace hetsim
