#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "hetsim/metrics.hpp"
#include "hetsim/traffic.hpp"

namespace hetsim {

enum class SchedulerKind { PF, MLWDF, ExpPf };
enum class LogBase { Natural, Ten };

std::string_view to_string(SchedulerKind kind);

struct SchedulerParams {
  // Averaging window of the PF throughput estimate, in TTIs.
  int tc_tti = 1000;
  double initial_avg_rate_bps = 1.0;
  double exp_epsilon = 0.02;
  double exp_k = 10.0;
  double exp_w0 = 1.0;
  LogBase log_base = LogBase::Natural;
};

// Substituted for a non-positive average rate so metrics stay finite.
inline constexpr double kMinAvgRateBps = 1.0;

double pf_metric(double rate_bps, double avg_rate_bps);

/// Exponential moving average of the served rate over a window of tc TTIs.
double update_avg_rate(double avg_rate_bps, double served_rate_bps, double tc);

/// -log(delta) / tau.
double mlwdf_alpha(const QosParams& qos, LogBase base = LogBase::Natural);

double mlwdf_metric(double alpha, double hol_delay_s, double rate_bps, double avg_rate_bps);

struct TtiScheduleContext {
  double aw_bar = 0.0;
  int n_rt = 0;
  double w_max_hol_s = 0.0;
  double tau_max_s = 0.0;
};

struct ExpPfState {
  double w = 1.0;
  double epsilon = 0.02;
  double k_const = 10.0;
  // Smoothed number of packets queued at the cell.
  double avg_buffer_packets = 0.0;
};

/// Real-time: exp((aW - mean aW) / (1 + sqrt(mean aW))) r/R. Non real-time: (w/M) r/R with M
/// floored at 1.
double exppf_metric(bool realtime, double alpha, double hol_delay_s, double rate_bps,
                    double avg_rate_bps, const TtiScheduleContext& ctx, const ExpPfState& state);

/// w - eps if the largest real-time HOL delay exceeds tau_max, w + eps/k if it is below,
/// unchanged on equality. Never drops below eps.
double exppf_update_w(const ExpPfState& state, double w_max_hol_s, double tau_max_s);

/// Mean of a_i * W_i; 0 for an empty set.
double compute_aw_bar(std::span<const double> aw);

// A flow offered to a cell scheduler this TTI with its per-RB rates (bits per TTI).
struct SchedulableFlow {
  FlowQueue* queue;
  std::span<const int> rate_bits_per_rb;
};

struct RbGrant {
  std::uint32_t rb = 0;
  std::uint32_t flow_id = 0;
  int rate_bits = 0;
  std::int64_t bits_served = 0;
};

struct RbAllocation {
  std::vector<RbGrant> grants;
  std::int64_t total_bits() const;
};

// metric(flow index, rb, rate bits per TTI) for a backlogged flow with a feasible rate.
using MetricFn = std::function<double(std::size_t, std::uint32_t, int)>;

/// RB-pairs in index order go to the highest-metric backlogged flow with a nonzero rate
/// (ties to the lowest flow id), which is drained by up to the RB-pair capacity.
RbAllocation allocate_rbs(std::span<const SchedulableFlow> flows, std::uint32_t n_rbs,
                          const MetricFn& metric, SimTime now, MetricsAccumulator& metrics);

// One instance per cell. Holds the EXP/PF state; per-flow averages live in the queues.
class CellScheduler {
 public:
  CellScheduler(SchedulerKind kind, const SchedulerParams& params);

  SchedulerKind kind() const { return kind_; }
  const ExpPfState& exppf_state() const { return exp_; }

  /// Allocates this cell's RB-pairs, then updates the average rates and EXP/PF
  /// state. `flows` is every flow served by the cell, backlogged or not.
  RbAllocation schedule_tti(std::span<const SchedulableFlow> flows, std::uint32_t n_rbs,
                            SimTime now, MetricsAccumulator& metrics);

  /// Context of real-time flows with queued data.
  TtiScheduleContext make_context(std::span<const SchedulableFlow> flows, SimTime now) const;

 private:
  SchedulerKind kind_;
  SchedulerParams params_;
  ExpPfState exp_;
};

}  // namespace hetsim
