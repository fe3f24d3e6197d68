#include "hetsim/kernels.hpp"

#include <stdexcept>

#include "hetsim/channel.hpp"

namespace hetsim {
namespace {

void check_sizes(std::size_t n_links, std::uint32_t n_rbs, std::size_t sinr, std::size_t rate) {
  const std::size_t need = n_links * n_rbs;
  if (sinr < need || rate < need) throw std::invalid_argument("link kernel: output too small");
}

inline void link_row(const LinkBudget& link, const FadingBank* fading, std::uint32_t n_rbs,
                     double t_s, double* sinr, int* rate) {
  const double base = link.serving_rx_dbm - link.interference_plus_noise_dbm;
  for (std::uint32_t rb = 0; rb < n_rbs; ++rb) {
    const double s = fading ? base + fading->gain_db(link.ue_id, rb, t_s) : base;
    sinr[rb] = s;
    rate[rb] = rate_bits_for_snr(s);
  }
}

}  // namespace

void compute_link_rates_serial(std::span<const LinkBudget> links, const FadingBank* fading,
                               std::uint32_t n_rbs, double t_s, std::span<double> sinr_db_out,
                               std::span<int> rate_bits_out) {
  check_sizes(links.size(), n_rbs, sinr_db_out.size(), rate_bits_out.size());
  for (std::size_t i = 0; i < links.size(); ++i) {
    link_row(links[i], fading, n_rbs, t_s, sinr_db_out.data() + i * n_rbs,
             rate_bits_out.data() + i * n_rbs);
  }
}

void compute_link_rates_omp(std::span<const LinkBudget> links, const FadingBank* fading,
                            std::uint32_t n_rbs, double t_s, std::span<double> sinr_db_out,
                            std::span<int> rate_bits_out) {
  check_sizes(links.size(), n_rbs, sinr_db_out.size(), rate_bits_out.size());
  const auto n = static_cast<std::int64_t>(links.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto row = static_cast<std::size_t>(i) * n_rbs;
    link_row(links[static_cast<std::size_t>(i)], fading, n_rbs, t_s, sinr_db_out.data() + row,
             rate_bits_out.data() + row);
  }
}

}  // namespace hetsim
