#include "hetsim/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include <omp.h>

#include "hetsim/channel.hpp"
#include "hetsim/errors.hpp"
#include "hetsim/rng.hpp"

namespace hetsim {
namespace {

QosParams qos_for(const TrafficConfig& t, TrafficKind kind) {
  switch (kind) {
    case TrafficKind::Video: return t.video.qos;
    case TrafficKind::Voip: return t.voip.qos;
    case TrafficKind::FullBuffer: return t.full_buffer.qos;
  }
  return {};
}

}  // namespace

Simulation::Simulation(RunConfig config) : config_(std::move(config)) {
  config_.validate();
  n_ttis_ = config_.n_ttis();
  flow_ttis_ = config_.flow_ttis();
  n_rbs_ = static_cast<std::uint32_t>(config_.n_rbs());
  noise_dbm_ = noise_dbm(config_.channel.noise_density_dbm_hz, config_.channel.noise_figure_db,
                         kRbBandwidthHz);

  cells_ = build_scenario(config_.scenario, config_.topology);
  const double split =
      config_.channel.split_power_across_rbs ? 10.0 * std::log10(static_cast<double>(n_rbs_)) : 0.0;
  for (const auto& c : cells_) tx_dbm_per_rb_.push_back(c.tx_power_dbm - split);

  if (!config_.ue_positions.empty()) {
    static_ues_ = true;
    for (std::size_t i = 0; i < config_.ue_positions.size(); ++i) {
      UePosition ue;
      ue.ue_id = static_cast<std::uint32_t>(i);
      ue.position = config_.ue_positions[i];
      positions_.push_back(ue);
    }
  } else {
    auto rng = make_stream(config_.seed, Stream::Placement);
    positions_ = place_users(config_.users, cells_, config_.placement, config_.ue_speed_mps(), rng);
    static_ues_ = config_.ue_speed_kmh == 0.0;
  }

  const auto n_ues = static_cast<std::uint32_t>(positions_.size());
  const std::size_t n_cells = cells_.size();
  shadow_db_.assign(n_ues * n_cells, 0.0);
  rx_dbm_.assign(n_ues * n_cells, 0.0);
  travelled_m_.assign(n_ues, 0.0);
  serving_.assign(n_ues, 0);
  for (std::uint32_t u = 0; u < n_ues; ++u) {
    mobility_rng_.push_back(make_stream(config_.seed, Stream::Mobility, u));
    shadow_rng_.push_back(make_stream(config_.seed, Stream::Shadowing, u));
    redraw_shadowing(u);
  }

  // Flows: one per configured kind per UE, ids dense and UE-major.
  std::vector<int> video_pattern = config_.traffic.video.params.frame_bytes;
  if (!config_.traffic.video.trace_file.empty()) {
    video_pattern = load_video_trace(config_.traffic.video.trace_file);
  }
  std::vector<TrafficKind> kinds;
  ue_flows_.resize(n_ues);
  for (std::uint32_t u = 0; u < n_ues; ++u) {
    for (TrafficKind kind : config_.traffic.flows_per_ue) {
      const auto id = static_cast<std::uint32_t>(flows_.size());
      flows_.emplace_back(id, u, kind, qos_for(config_.traffic, kind));
      flows_.back().sched.avg_rate_bps = config_.scheduler_params.initial_avg_rate_bps;
      ue_flows_[u].push_back(id);
      kinds.push_back(kind);
      auto trng = make_stream(config_.seed, Stream::Traffic, id);
      switch (kind) {
        case TrafficKind::Video: {
          VideoParams vp = config_.traffic.video.params;
          vp.frame_bytes = video_pattern;
          SimTime phase{0};
          std::size_t first = 0;
          if (config_.traffic.randomize_video_phase) {
            const auto period_ttis =
                std::max<std::int64_t>(1, static_cast<std::int64_t>(1000.0 / vp.frames_per_second));
            phase = std::uniform_int_distribution<std::int64_t>(0, period_ttis - 1)(trng) * kTti;
            first = std::uniform_int_distribution<std::size_t>(0, vp.frame_bytes.size() - 1)(trng);
          }
          sources_.emplace_back(VideoSource(std::move(vp), phase, first));
          break;
        }
        case TrafficKind::Voip:
          sources_.emplace_back(VoipSource(config_.traffic.voip.params, trng()));
          break;
        case TrafficKind::FullBuffer:
          sources_.emplace_back(FullBufferSource(config_.traffic.full_buffer.target_backlog_bits,
                                                 config_.traffic.full_buffer.packet_bytes));
          break;
      }
    }
  }
  metrics_ = MetricsAccumulator(std::move(kinds), config_.window_s());

  for (std::size_t c = 0; c < n_cells; ++c) {
    schedulers_.emplace_back(config_.scheduler, config_.scheduler_params);
  }
  last_alloc_.resize(n_cells);

  if (config_.channel.fading.enabled && n_ues > 0) {
    FadingConfig fc;
    fc.doppler_hz = doppler_hz(config_.ue_speed_mps(), config_.channel.carrier_hz);
    fc.oscillators = config_.channel.fading.oscillators;
    fading_ = FadingBank(config_.seed, n_ues, n_rbs_, fc);
  }
  ue_rates_.assign(static_cast<std::size_t>(n_ues) * n_rbs_, 0);

  // Initial attachment: strongest cell, no hysteresis.
  update_attachment();
  handovers_ = 0;
}

void Simulation::redraw_shadowing(std::uint32_t ue) {
  const std::size_t n_cells = cells_.size();
  for (std::size_t c = 0; c < n_cells; ++c) {
    shadow_db_[ue * n_cells + c] =
        config_.channel.shadowing.enabled
            ? shadowing_sample(shadow_rng_[ue], config_.channel.shadowing.mean_db,
                               config_.channel.shadowing.std_db)
            : 0.0;
  }
  travelled_m_[ue] = 0.0;
}

double Simulation::mean_rx_dbm(std::uint32_t ue, std::uint32_t cell) const {
  return rx_dbm_[ue * cells_.size() + cell];
}

std::span<const int> Simulation::last_rates(std::uint32_t ue) const {
  return std::span<const int>(ue_rates_).subspan(static_cast<std::size_t>(ue) * n_rbs_, n_rbs_);
}

void Simulation::generate_traffic() {
  if (tti_ >= flow_ttis_) return;
  for (std::size_t f = 0; f < flows_.size(); ++f) {
    auto& q = flows_[f];
    packet_buf_.clear();
    generate(sources_[f], q.flow_id(), tti_, q.qos(), q.buffered_bits(), packet_buf_);
    if (!packet_buf_.empty()) q.enqueue(packet_buf_, metrics_.flow(q.flow_id()));
  }
}

void Simulation::move_users() {
  if (static_ues_ || tti_ == 0) return;
  const double dt = to_seconds(kTti);
  const double macro_r = cells_.front().radius_m;
  for (auto& ue : positions_) {
    move_ue(ue, dt, macro_r, mobility_rng_[ue.ue_id]);
    travelled_m_[ue.ue_id] += ue.speed_mps * dt;
    if (travelled_m_[ue.ue_id] >= config_.channel.shadowing.decorrelation_m) {
      redraw_shadowing(ue.ue_id);
    }
  }
}

void Simulation::update_attachment() {
  const std::size_t n_cells = cells_.size();
  const double pen = config_.channel.penetration_loss_db;
  const bool first = tti_ == 0;
  // Static UEs keep their geometry and attachment after the first evaluation.
  if (static_ues_ && !first) return;
  for (const auto& ue : positions_) {
    const std::size_t row = ue.ue_id * n_cells;
    for (std::size_t c = 0; c < n_cells; ++c) {
      const double d_km = distance_m(ue.position, cells_[c].position) / 1000.0;
      rx_dbm_[row + c] = tx_dbm_per_rb_[c] - pathloss_db(d_km) - pen + shadow_db_[row + c];
    }
    std::span<const double> rx(rx_dbm_.data() + row, n_cells);
    if (first) {
      serving_[ue.ue_id] = best_server(rx, std::nullopt, 0.0);
    } else if (config_.handover_enabled) {
      const auto target =
          best_server(rx, serving_[ue.ue_id], config_.handover_hysteresis_db);
      if (target != serving_[ue.ue_id]) {
        // Queues are keyed by flow, so buffered packets follow the UE unchanged.
        serving_[ue.ue_id] = target;
        ++handovers_;
      }
    }
  }
}

void Simulation::compute_links() {
  const std::size_t n_cells = cells_.size();
  links_.clear();
  for (const auto& ue : positions_) {
    const auto u = ue.ue_id;
    bool backlogged = false;
    for (auto f : ue_flows_[u]) backlogged = backlogged || !flows_[f].empty();
    if (!backlogged) continue;
    const std::size_t row = u * n_cells;
    double in_mw = dbm_to_mw(noise_dbm_);
    for (std::size_t c = 0; c < n_cells; ++c) {
      if (c != serving_[u]) in_mw += dbm_to_mw(rx_dbm_[row + c]);
    }
    links_.push_back({u, serving_[u], rx_dbm_[row + serving_[u]], mw_to_dbm(in_mw)});
  }
  const std::size_t need = links_.size() * n_rbs_;
  if (sinr_buf_.size() < need) {
    sinr_buf_.resize(need);
    rate_buf_.resize(need);
  }
  const FadingBank* fading = fading_.empty() ? nullptr : &fading_;
  const double t = to_seconds(now());
  if (config_.kernel_threads > 1) {
    omp_set_num_threads(config_.kernel_threads);
    compute_link_rates_omp(links_, fading, n_rbs_, t, sinr_buf_, rate_buf_);
  } else {
    compute_link_rates_serial(links_, fading, n_rbs_, t, sinr_buf_, rate_buf_);
  }
  std::fill(ue_rates_.begin(), ue_rates_.end(), 0);
  for (std::size_t i = 0; i < links_.size(); ++i) {
    std::copy_n(rate_buf_.begin() + static_cast<std::ptrdiff_t>(i * n_rbs_), n_rbs_,
                ue_rates_.begin() + static_cast<std::ptrdiff_t>(links_[i].ue_id) * n_rbs_);
  }
}

void Simulation::schedule_cells() {
  std::vector<SchedulableFlow> offered;
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    offered.clear();
    std::int64_t backlog = 0;
    int backlogged = 0;
    for (const auto& ue : positions_) {
      if (serving_[ue.ue_id] != c) continue;
      for (auto f : ue_flows_[ue.ue_id]) {
        offered.push_back({&flows_[f], last_rates(ue.ue_id)});
        backlog += flows_[f].buffered_bits();
        backlogged += flows_[f].empty() ? 0 : 1;
      }
    }
    last_alloc_[c] = schedulers_[c].schedule_tti(offered, n_rbs_, now(), metrics_);
    if (config_.trace) {
      trace_.push_back({tti_, cells_[c].cell_id, static_cast<int>(last_alloc_[c].grants.size()),
                        last_alloc_[c].total_bits(), backlog, backlogged});
    }
  }
}

void Simulation::step() {
  if (done()) return;
  generate_traffic();
  move_users();
  update_attachment();
  for (auto& q : flows_) q.drop_expired(now(), metrics_.flow(q.flow_id()));
  compute_links();
  schedule_cells();
  ++tti_;
}

RunResult Simulation::run() {
  const auto t0 = std::chrono::steady_clock::now();
  while (!done()) step();
  const auto t1 = std::chrono::steady_clock::now();
  RunResult r;
  r.metrics = metrics_;
  r.cells = cells_;
  r.handovers = handovers_;
  r.ttis = tti_;
  r.wall_time_s = std::chrono::duration<double>(t1 - t0).count();
  r.trace = std::move(trace_);
  return r;
}

RunResult run_simulation(const RunConfig& config) { return Simulation(config).run(); }

RunSummary summarize(const RunConfig& config, const RunResult& result) {
  const auto& m = result.metrics;
  RunSummary s;
  s.scenario = std::string(to_string(config.scenario));
  s.algorithm = std::string(to_string(config.scheduler));
  s.users = config.ue_positions.empty() ? config.users
                                        : static_cast<int>(config.ue_positions.size());
  s.seed = config.seed;
  s.throughput_bps_total = throughput(m);
  s.throughput_bps_video = throughput(m, TrafficKind::Video);
  s.plr_video = plr(m, TrafficKind::Video);
  s.delay_ms_video_mean = mean_delay_s(m, TrafficKind::Video) * 1e3;
  s.fairness_eq11_video = fairness_spread(m, TrafficKind::Video, config.fairness_denominator);
  const auto tp = flow_throughputs(m, TrafficKind::Video);
  s.jain_video = jain_index(tp);
  s.handovers = result.handovers;
  s.dropped_bits = m.total_discarded_bits();
  s.transmitted_bits = m.total_transmitted_bits();
  s.arrived_bits = m.total_arrived_bits();
  s.wall_time_s = config.record_wall_time ? result.wall_time_s : 0.0;
  return s;
}

}  // namespace hetsim
