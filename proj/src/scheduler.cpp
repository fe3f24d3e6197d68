#include "hetsim/scheduler.hpp"

#include <algorithm>
#include <cmath>

#include "hetsim/errors.hpp"

namespace hetsim {

std::string_view to_string(SchedulerKind kind) {
  switch (kind) {
    case SchedulerKind::PF: return "pf";
    case SchedulerKind::MLWDF: return "mlwdf";
    case SchedulerKind::ExpPf: return "exppf";
  }
  return "?";
}

double pf_metric(double rate_bps, double avg_rate_bps) {
  return rate_bps / (avg_rate_bps > 0.0 ? avg_rate_bps : kMinAvgRateBps);
}

double update_avg_rate(double avg_rate_bps, double served_rate_bps, double tc) {
  return (1.0 - 1.0 / tc) * avg_rate_bps + (1.0 / tc) * served_rate_bps;
}

double mlwdf_alpha(const QosParams& qos, LogBase base) {
  qos.validate();
  const double delta = qos.max_hol_violation_prob;
  const double lg = base == LogBase::Natural ? std::log(delta) : std::log10(delta);
  return -lg / to_seconds(qos.delay_threshold);
}

double mlwdf_metric(double alpha, double hol_delay_s, double rate_bps, double avg_rate_bps) {
  return alpha * hol_delay_s * pf_metric(rate_bps, avg_rate_bps);
}

double exppf_metric(bool realtime, double alpha, double hol_delay_s, double rate_bps,
                    double avg_rate_bps, const TtiScheduleContext& ctx, const ExpPfState& state) {
  const double pf = pf_metric(rate_bps, avg_rate_bps);
  if (realtime) {
    const double num = alpha * hol_delay_s - ctx.aw_bar;
    return std::exp(num / (1.0 + std::sqrt(ctx.aw_bar))) * pf;
  }
  const double m = std::max(state.avg_buffer_packets, 1.0);
  return (state.w / m) * pf;
}

double exppf_update_w(const ExpPfState& state, double w_max_hol_s, double tau_max_s) {
  double w = state.w;
  if (w_max_hol_s > tau_max_s) {
    w -= state.epsilon;
  } else if (w_max_hol_s < tau_max_s) {
    w += state.epsilon / state.k_const;
  }
  return std::max(w, state.epsilon);
}

double compute_aw_bar(std::span<const double> aw) {
  if (aw.empty()) return 0.0;
  double s = 0.0;
  for (double v : aw) s += v;
  return s / static_cast<double>(aw.size());
}

std::int64_t RbAllocation::total_bits() const {
  std::int64_t s = 0;
  for (const auto& g : grants) s += g.bits_served;
  return s;
}

RbAllocation allocate_rbs(std::span<const SchedulableFlow> flows, std::uint32_t n_rbs,
                          const MetricFn& metric, SimTime now, MetricsAccumulator& metrics) {
  RbAllocation alloc;
  for (std::uint32_t rb = 0; rb < n_rbs; ++rb) {
    std::size_t best = flows.size();
    double best_metric = 0.0;
    for (std::size_t i = 0; i < flows.size(); ++i) {
      const auto& f = flows[i];
      if (f.queue->empty()) continue;
      const int rate = rb < f.rate_bits_per_rb.size() ? f.rate_bits_per_rb[rb] : 0;
      if (rate <= 0) continue;
      const double m = metric(i, rb, rate);
      if (best == flows.size() || m > best_metric ||
          (m == best_metric && f.queue->flow_id() < flows[best].queue->flow_id())) {
        best = i;
        best_metric = m;
      }
    }
    if (best == flows.size()) continue;
    FlowQueue& q = *flows[best].queue;
    const int rate = flows[best].rate_bits_per_rb[rb];
    const auto sent = q.drain(rate, now, metrics.flow(q.flow_id()));
    q.sched.served_bits_this_tti += sent;
    alloc.grants.push_back({rb, q.flow_id(), rate, sent});
  }
  return alloc;
}

CellScheduler::CellScheduler(SchedulerKind kind, const SchedulerParams& params)
    : kind_(kind), params_(params) {
  if (params_.tc_tti < 1) throw ConfigError("scheduler: tc must be >= 1 TTI");
  if (params_.exp_epsilon <= 0.0 || params_.exp_k <= 0.0 || params_.exp_w0 <= 0.0) {
    throw ConfigError("scheduler: EXP/PF constants must be positive");
  }
  exp_.w = params_.exp_w0;
  exp_.epsilon = params_.exp_epsilon;
  exp_.k_const = params_.exp_k;
}

TtiScheduleContext CellScheduler::make_context(std::span<const SchedulableFlow> flows,
                                               SimTime now) const {
  TtiScheduleContext ctx;
  std::vector<double> aw;
  for (const auto& f : flows) {
    const auto& q = *f.queue;
    if (!q.qos().is_realtime) continue;
    ctx.tau_max_s = std::max(ctx.tau_max_s, to_seconds(q.qos().delay_threshold));
    if (q.empty()) continue;
    const double hol = to_seconds(q.hol_delay(now));
    aw.push_back(mlwdf_alpha(q.qos(), params_.log_base) * hol);
    ctx.w_max_hol_s = std::max(ctx.w_max_hol_s, hol);
  }
  ctx.n_rt = static_cast<int>(aw.size());
  ctx.aw_bar = compute_aw_bar(aw);
  return ctx;
}

RbAllocation CellScheduler::schedule_tti(std::span<const SchedulableFlow> flows,
                                         std::uint32_t n_rbs, SimTime now,
                                         MetricsAccumulator& metrics) {
  // Per-flow factors are fixed for the TTI; only the per-RB rate varies.
  std::vector<double> alpha(flows.size());
  std::vector<double> hol(flows.size());
  for (std::size_t i = 0; i < flows.size(); ++i) {
    const auto& q = *flows[i].queue;
    q.qos().validate();
    alpha[i] = mlwdf_alpha(q.qos(), params_.log_base);
    hol[i] = to_seconds(q.hol_delay(now));
  }
  const TtiScheduleContext ctx = make_context(flows, now);

  MetricFn metric;
  switch (kind_) {
    case SchedulerKind::PF:
      metric = [&](std::size_t i, std::uint32_t, int rate_bits) {
        return pf_metric(rate_bits / to_seconds(kTti), flows[i].queue->sched.avg_rate_bps);
      };
      break;
    case SchedulerKind::MLWDF:
      metric = [&](std::size_t i, std::uint32_t, int rate_bits) {
        return mlwdf_metric(alpha[i], hol[i], rate_bits / to_seconds(kTti),
                            flows[i].queue->sched.avg_rate_bps);
      };
      break;
    case SchedulerKind::ExpPf:
      metric = [&](std::size_t i, std::uint32_t, int rate_bits) {
        const auto& q = *flows[i].queue;
        return exppf_metric(q.qos().is_realtime, alpha[i], hol[i], rate_bits / to_seconds(kTti),
                            q.sched.avg_rate_bps, ctx, exp_);
      };
      break;
  }

  for (const auto& f : flows) f.queue->sched.served_bits_this_tti = 0;
  RbAllocation alloc = allocate_rbs(flows, n_rbs, metric, now, metrics);

  const double tc = params_.tc_tti;
  std::int64_t queued_packets = 0;
  for (const auto& f : flows) {
    auto& s = f.queue->sched;
    s.last_served_bps = static_cast<double>(s.served_bits_this_tti) / to_seconds(kTti);
    s.avg_rate_bps = update_avg_rate(s.avg_rate_bps, s.last_served_bps, tc);
    queued_packets += static_cast<std::int64_t>(f.queue->packet_count());
  }
  if (kind_ == SchedulerKind::ExpPf) {
    exp_.w = exppf_update_w(exp_, ctx.w_max_hol_s, ctx.tau_max_s);
    exp_.avg_buffer_packets =
        update_avg_rate(exp_.avg_buffer_packets, static_cast<double>(queued_packets), tc);
  }
  return alloc;
}

}  // namespace hetsim
