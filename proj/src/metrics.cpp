#include "hetsim/metrics.hpp"

#include <algorithm>
#include <limits>

namespace hetsim {

MetricsAccumulator::MetricsAccumulator(std::vector<TrafficKind> flow_kinds, double window_s)
    : window_s_(window_s) {
  flows_.resize(flow_kinds.size());
  for (std::size_t i = 0; i < flow_kinds.size(); ++i) flows_[i].kind = flow_kinds[i];
}

std::int64_t MetricsAccumulator::total_arrived_bits() const {
  std::int64_t s = 0;
  for (const auto& f : flows_) s += f.arrived_bits;
  return s;
}

std::int64_t MetricsAccumulator::total_transmitted_bits() const {
  std::int64_t s = 0;
  for (const auto& f : flows_) s += f.transmitted_bits;
  return s;
}

std::int64_t MetricsAccumulator::total_discarded_bits() const {
  std::int64_t s = 0;
  for (const auto& f : flows_) s += f.discarded_bits;
  return s;
}

double throughput(const MetricsAccumulator& acc) {
  return static_cast<double>(acc.total_transmitted_bits()) / acc.window_s();
}

double throughput(const MetricsAccumulator& acc, TrafficKind kind) {
  std::int64_t s = 0;
  for (const auto& f : acc.flows()) {
    if (f.kind == kind) s += f.transmitted_bits;
  }
  return static_cast<double>(s) / acc.window_s();
}

double plr(const MetricsAccumulator& acc, TrafficKind kind) {
  std::int64_t arrived = 0;
  std::int64_t discarded = 0;
  for (const auto& f : acc.flows()) {
    if (f.kind != kind) continue;
    arrived += f.arrived_bits;
    discarded += f.discarded_bits;
  }
  return arrived > 0 ? static_cast<double>(discarded) / static_cast<double>(arrived) : 0.0;
}

double plr(const MetricsAccumulator& acc) {
  const auto arrived = acc.total_arrived_bits();
  return arrived > 0 ? static_cast<double>(acc.total_discarded_bits()) / arrived : 0.0;
}

double fairness_spread(const MetricsAccumulator& acc, TrafficKind kind, FairnessDenominator denom) {
  std::int64_t lo = std::numeric_limits<std::int64_t>::max();
  std::int64_t hi = std::numeric_limits<std::int64_t>::min();
  std::int64_t total = 0;
  bool any = false;
  for (const auto& f : acc.flows()) {
    if (f.kind != kind) continue;
    any = true;
    lo = std::min(lo, f.transmitted_bits);
    hi = std::max(hi, f.transmitted_bits);
    total += denom == FairnessDenominator::Arrived ? f.arrived_bits : f.transmitted_bits;
  }
  if (!any || total <= 0) return 1.0;
  return 1.0 - static_cast<double>(hi - lo) / static_cast<double>(total);
}

double jain_index(std::span<const double> values) {
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double x : values) {
    sum += x;
    sum_sq += x * x;
  }
  if (values.empty() || sum_sq <= 0.0) return 1.0;
  return sum * sum / (static_cast<double>(values.size()) * sum_sq);
}

double mean_delay_s(const MetricsAccumulator& acc, TrafficKind kind) {
  double sum = 0.0;
  std::int64_t n = 0;
  for (const auto& f : acc.flows()) {
    if (f.kind != kind) continue;
    sum += f.delay_sum_s;
    n += f.delivered_packets;
  }
  return n > 0 ? sum / static_cast<double>(n) : 0.0;
}

std::vector<double> flow_throughputs(const MetricsAccumulator& acc, TrafficKind kind) {
  std::vector<double> out;
  for (const auto& f : acc.flows()) {
    if (f.kind == kind) out.push_back(static_cast<double>(f.transmitted_bits) / acc.window_s());
  }
  return out;
}

}  // namespace hetsim
