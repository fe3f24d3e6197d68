#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "hetsim/config.hpp"
#include "hetsim/fading.hpp"
#include "hetsim/kernels.hpp"
#include "hetsim/metrics.hpp"
#include "hetsim/scheduler.hpp"
#include "hetsim/topology.hpp"
#include "hetsim/traffic.hpp"

namespace hetsim {

struct TtiTraceRow {
  std::int64_t tti = 0;
  std::uint32_t cell_id = 0;
  int rbs_granted = 0;
  std::int64_t bits_served = 0;
  std::int64_t backlog_bits = 0;
  int backlogged_flows = 0;
};

struct RunResult {
  MetricsAccumulator metrics;
  std::vector<CellSite> cells;
  std::int64_t handovers = 0;
  std::int64_t ttis = 0;
  double wall_time_s = 0.0;
  std::vector<TtiTraceRow> trace;
};

// Per-TTI system-level downlink simulation of one scenario. Single-threaded
// unless kernel_threads > 1, and deterministic either way.
class Simulation {
 public:
  explicit Simulation(RunConfig config);

  /// One TTI: traffic, mobility and handover, expiry, link reports, scheduling.
  void step();
  bool done() const { return tti_ >= n_ttis_; }

  std::int64_t tti() const { return tti_; }
  SimTime now() const { return tti_start(tti_); }
  const RunConfig& config() const { return config_; }
  const MetricsAccumulator& metrics() const { return metrics_; }
  std::span<const FlowQueue> flows() const { return flows_; }
  std::span<const CellSite> cells() const { return cells_; }
  std::span<const UePosition> ues() const { return positions_; }
  std::uint32_t serving_cell(std::uint32_t ue) const { return serving_[ue]; }
  std::int64_t handovers() const { return handovers_; }
  double noise_dbm_per_rb() const { return noise_dbm_; }

  /// Allocations made in the most recent TTI, one per cell.
  std::span<const RbAllocation> last_allocations() const { return last_alloc_; }
  /// Per-RB rates reported in the most recent TTI, one row per UE (zeros if the UE was idle).
  std::span<const int> last_rates(std::uint32_t ue) const;

  /// Mean received power (dBm per RB-pair) of `ue` from `cell`, shadowing included.
  double mean_rx_dbm(std::uint32_t ue, std::uint32_t cell) const;

  /// Runs to the end and packages the result.
  RunResult run();

 private:
  void generate_traffic();
  void move_users();
  void update_attachment();
  void compute_links();
  void schedule_cells();
  void redraw_shadowing(std::uint32_t ue);

  RunConfig config_;
  std::int64_t tti_ = 0;
  std::int64_t n_ttis_ = 0;
  std::int64_t flow_ttis_ = 0;
  std::uint32_t n_rbs_ = 0;
  double noise_dbm_ = 0.0;

  std::vector<CellSite> cells_;
  std::vector<double> tx_dbm_per_rb_;
  std::vector<UePosition> positions_;
  std::vector<std::uint32_t> serving_;
  std::vector<std::mt19937_64> mobility_rng_;
  std::vector<std::mt19937_64> shadow_rng_;
  std::vector<double> shadow_db_;       // [ue * n_cells + cell]
  std::vector<double> rx_dbm_;          // [ue * n_cells + cell]
  std::vector<double> travelled_m_;
  bool static_ues_ = false;

  std::vector<FlowQueue> flows_;
  std::vector<TrafficSource> sources_;
  std::vector<std::vector<std::uint32_t>> ue_flows_;
  std::vector<CellScheduler> schedulers_;
  MetricsAccumulator metrics_;
  FadingBank fading_;

  std::vector<LinkBudget> links_;
  std::vector<double> sinr_buf_;
  std::vector<int> rate_buf_;
  std::vector<int> ue_rates_;           // [ue * n_rbs + rb]
  std::vector<PacketDescriptor> packet_buf_;
  std::vector<RbAllocation> last_alloc_;
  std::vector<TtiTraceRow> trace_;
  std::int64_t handovers_ = 0;
};

RunResult run_simulation(const RunConfig& config);

// One row of the sweep summary CSV.
struct RunSummary {
  std::string scenario;
  std::string algorithm;
  int users = 0;
  std::uint64_t seed = 0;
  double throughput_bps_total = 0.0;
  double throughput_bps_video = 0.0;
  double plr_video = 0.0;
  double delay_ms_video_mean = 0.0;
  double fairness_eq11_video = 1.0;
  double jain_video = 1.0;
  std::int64_t handovers = 0;
  std::int64_t dropped_bits = 0;
  std::int64_t transmitted_bits = 0;
  std::int64_t arrived_bits = 0;
  double wall_time_s = 0.0;
};

RunSummary summarize(const RunConfig& config, const RunResult& result);

}  // namespace hetsim
