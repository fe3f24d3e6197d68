#pragma once

#include <cstdint>
#include <span>

#include "hetsim/fading.hpp"

namespace hetsim {

// Slow-varying part of one UE's downlink: mean received power per RB-pair from
// the serving cell and the interference-plus-noise floor from all other cells.
struct LinkBudget {
  std::uint32_t ue_id = 0;
  std::uint32_t serving_cell = 0;
  double serving_rx_dbm = 0.0;
  double interference_plus_noise_dbm = 0.0;
};

// Per-RB SINR and achievable rate for every link in `links`. Output row i holds
// RBs [i*n_rbs, (i+1)*n_rbs). `fading` may be null (no multipath).
//
// The OpenMP variant splits rows across threads and produces bit-identical
// results to the serial reference.
void compute_link_rates_serial(std::span<const LinkBudget> links, const FadingBank* fading,
                               std::uint32_t n_rbs, double t_s, std::span<double> sinr_db_out,
                               std::span<int> rate_bits_out);

void compute_link_rates_omp(std::span<const LinkBudget> links, const FadingBank* fading,
                            std::uint32_t n_rbs, double t_s, std::span<double> sinr_db_out,
                            std::span<int> rate_bits_out);

}  // namespace hetsim
