#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hetsim/time.hpp"

namespace hetsim {

enum class TrafficKind { Video, Voip, FullBuffer };

// Per-flow running sums. Every packet bit is in exactly one of
// transmitted, discarded, or still buffered.
struct FlowStats {
  TrafficKind kind = TrafficKind::Video;
  std::int64_t arrived_bits = 0;
  std::int64_t transmitted_bits = 0;
  std::int64_t discarded_bits = 0;
  std::int64_t arrived_packets = 0;
  std::int64_t delivered_packets = 0;
  std::int64_t discarded_packets = 0;
  double delay_sum_s = 0.0;

  void record_delivery(SimTime delay) {
    ++delivered_packets;
    delay_sum_s += to_seconds(delay);
  }
};

enum class FairnessDenominator { Arrived, Transmitted };

class MetricsAccumulator {
 public:
  MetricsAccumulator() = default;
  MetricsAccumulator(std::vector<TrafficKind> flow_kinds, double window_s);

  FlowStats& flow(std::size_t id) { return flows_[id]; }
  const FlowStats& flow(std::size_t id) const { return flows_[id]; }
  std::span<const FlowStats> flows() const { return flows_; }
  std::size_t flow_count() const { return flows_.size(); }
  double window_s() const { return window_s_; }

  std::int64_t total_arrived_bits() const;
  std::int64_t total_transmitted_bits() const;
  std::int64_t total_discarded_bits() const;

 private:
  std::vector<FlowStats> flows_;
  double window_s_ = 1.0;
};

/// Transmitted bits over the window, bits/s. With `kind` set, only flows of that kind.
double throughput(const MetricsAccumulator& acc);
double throughput(const MetricsAccumulator& acc, TrafficKind kind);

/// Discarded over arrived bits; 0 when nothing arrived.
double plr(const MetricsAccumulator& acc, TrafficKind kind);
double plr(const MetricsAccumulator& acc);

/// 1 - (max - min per-flow transmitted bits) / total, over flows of `kind`.
/// The total is arrived bits by default, transmitted bits on request.
double fairness_spread(const MetricsAccumulator& acc, TrafficKind kind,
                      FairnessDenominator denom = FairnessDenominator::Arrived);

/// (sum x)^2 / (n sum x^2); 1 for an empty or all-zero vector.
double jain_index(std::span<const double> values);

/// Mean queueing delay (s) of delivered packets of `kind`; 0 if none were delivered.
double mean_delay_s(const MetricsAccumulator& acc, TrafficKind kind);

/// Per-flow throughputs (bits/s) of flows of `kind`.
std::vector<double> flow_throughputs(const MetricsAccumulator& acc, TrafficKind kind);

}  // namespace hetsim
