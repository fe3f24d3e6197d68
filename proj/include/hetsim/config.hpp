#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hetsim/metrics.hpp"
#include "hetsim/scheduler.hpp"
#include "hetsim/topology.hpp"
#include "hetsim/traffic.hpp"

namespace hetsim {

struct ShadowingConfig {
  bool enabled = true;
  double mean_db = 0.0;
  double std_db = 10.0;
  // A fresh draw per (UE, cell) after this much UE movement.
  double decorrelation_m = 50.0;
};

struct FadingSettings {
  bool enabled = true;
  int oscillators = 8;
};

struct ChannelConfig {
  double carrier_hz = 2e9;
  double noise_figure_db = 9.0;
  double noise_density_dbm_hz = -174.0;
  double penetration_loss_db = 10.0;
  // Total eNB power is shared evenly across RB-pairs.
  bool split_power_across_rbs = true;
  ShadowingConfig shadowing;
  FadingSettings fading;
};

struct VideoFlowConfig {
  VideoParams params;
  std::string trace_file;
  QosParams qos{SimTime{100'000}, 0.005, true};
};

struct VoipFlowConfig {
  VoipParams params;
  QosParams qos{SimTime{100'000}, 0.005, true};
};

struct FullBufferConfig {
  int packet_bytes = 1500;
  std::int64_t target_backlog_bits = 2 * 100 * 756;
  QosParams qos{SimTime{1'000'000}, 0.005, false};
};

struct TrafficConfig {
  std::vector<TrafficKind> flows_per_ue{TrafficKind::Video, TrafficKind::Voip};
  // Random frame phase and GOP position per video flow.
  bool randomize_video_phase = true;
  VideoFlowConfig video;
  VoipFlowConfig voip;
  FullBufferConfig full_buffer;
};

struct RunConfig {
  ScenarioKind scenario = ScenarioKind::HetNet;
  SchedulerKind scheduler = SchedulerKind::MLWDF;
  int users = 10;
  std::uint64_t seed = 1;

  double sim_duration_s = 30.0;
  double flow_duration_s = 20.0;
  double bandwidth_mhz = 10.0;

  TopologyConfig topology;
  PlacementConfig placement;
  double ue_speed_kmh = 3.0;
  // Static UEs at fixed positions; when set, placement and `users` are ignored.
  std::vector<Vec2> ue_positions;

  ChannelConfig channel;
  bool handover_enabled = true;
  double handover_hysteresis_db = 1.0;

  TrafficConfig traffic;
  SchedulerParams scheduler_params;

  // Throughput denominator; 0 selects the flow duration.
  double metrics_window_s = 0.0;
  FairnessDenominator fairness_denominator = FairnessDenominator::Arrived;

  bool trace = false;
  bool record_wall_time = true;
  // Threads for the per-TTI link kernel; 1 selects the serial reference.
  int kernel_threads = 1;

  int n_rbs() const;
  std::int64_t n_ttis() const;
  std::int64_t flow_ttis() const;
  double ue_speed_mps() const { return ue_speed_kmh / 3.6; }
  double window_s() const { return metrics_window_s > 0.0 ? metrics_window_s : flow_duration_s; }

  /// Throws ConfigError describing the first invalid field.
  void validate() const;
};

struct SweepSpec {
  std::vector<int> user_counts{10, 20, 30, 40, 50, 60, 70, 80};
  std::vector<SchedulerKind> algorithms{SchedulerKind::PF, SchedulerKind::MLWDF,
                                        SchedulerKind::ExpPf};
  std::vector<ScenarioKind> scenarios{ScenarioKind::MacroOnly, ScenarioKind::HetNet};
  int runs_per_point = 5;
  std::uint64_t root_seed = 1;
  int workers = 1;

  void validate() const;
};

struct LoadedConfig {
  RunConfig run;
  SweepSpec sweep;
};

/// Resource blocks for an LTE channel bandwidth in MHz. Throws ConfigError for
/// non-standard bandwidths.
int rb_count_for_bandwidth(double mhz);

SchedulerKind parse_scheduler(std::string_view s);
ScenarioKind parse_scenario(std::string_view s);
TrafficKind parse_traffic_kind(std::string_view s);
std::string_view to_string(ScenarioKind kind);
std::string_view to_string(TrafficKind kind);

/// Parses a JSON document. Missing keys keep their defaults; unknown keys and
/// out-of-range values throw ConfigError.
LoadedConfig parse_config(std::string_view json_text);
LoadedConfig load_config(const std::string& path);

}  // namespace hetsim
