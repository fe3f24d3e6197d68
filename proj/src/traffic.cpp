#include "hetsim/traffic.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "hetsim/errors.hpp"

namespace hetsim {

void QosParams::validate() const {
  if (!(max_hol_violation_prob > 0.0 && max_hol_violation_prob < 1.0)) {
    throw ConfigError("QoS: max HOL violation probability must be in (0, 1)");
  }
  if (delay_threshold <= SimTime::zero()) throw ConfigError("QoS: delay threshold must be > 0");
}

FlowQueue::FlowQueue(std::uint32_t flow_id, std::uint32_t ue_id, TrafficKind kind, QosParams qos)
    : flow_id_(flow_id), ue_id_(ue_id), kind_(kind), qos_(qos) {}

SimTime FlowQueue::hol_delay(SimTime now) const {
  return fifo_.empty() ? SimTime::zero() : now - fifo_.front().arrival;
}

void FlowQueue::enqueue(std::span<const PacketDescriptor> packets, FlowStats& stats) {
  for (const auto& p : packets) {
    fifo_.push_back(p);
    fifo_.back().remaining_bits = p.size_bits;
    buffered_bits_ += p.size_bits;
    stats.arrived_bits += p.size_bits;
    ++stats.arrived_packets;
  }
}

std::int64_t FlowQueue::drop_expired(SimTime now, FlowStats& stats) {
  std::int64_t dropped = 0;
  // Deadlines are arrival + tau with a per-flow tau, so FIFO order is deadline order.
  while (!fifo_.empty() && fifo_.front().deadline < now) {
    dropped += fifo_.front().remaining_bits;
    ++stats.discarded_packets;
    fifo_.pop_front();
  }
  buffered_bits_ -= dropped;
  stats.discarded_bits += dropped;
  return dropped;
}

std::int64_t FlowQueue::drain(std::int64_t max_bits, SimTime now, FlowStats& stats) {
  std::int64_t sent = 0;
  while (sent < max_bits && !fifo_.empty()) {
    auto& head = fifo_.front();
    const std::int64_t take = std::min(head.remaining_bits, max_bits - sent);
    head.remaining_bits -= take;
    sent += take;
    if (head.remaining_bits == 0) {
      stats.record_delivery(now - head.arrival);
      fifo_.pop_front();
    }
  }
  buffered_bits_ -= sent;
  stats.transmitted_bits += sent;
  return sent;
}

PacketDescriptor make_packet(std::uint32_t flow_id, std::int64_t size_bits, SimTime now,
                             const QosParams& qos) {
  return {flow_id, size_bits, now, now + qos.delay_threshold, size_bits};
}

VoipSource::VoipSource(const VoipParams& params, std::uint64_t seed)
    : params_(params), rng_(seed) {
  if (params_.mean_off_s <= 0.0) {
    on_ = true;
    state_end_ = SimTime::max();
    return;
  }
  // Start in the stationary distribution of the two-state chain.
  const double p_on = params_.mean_on_s / (params_.mean_on_s + params_.mean_off_s);
  on_ = std::bernoulli_distribution(p_on)(rng_);
  state_end_ = draw_period(on_ ? params_.mean_on_s : params_.mean_off_s);
}

SimTime VoipSource::draw_period(double mean_s) {
  std::exponential_distribution<double> d(1.0 / mean_s);
  // Whole TTIs, at least one.
  const auto ttis = std::max<std::int64_t>(1, static_cast<std::int64_t>(d(rng_) * 1000.0 + 0.5));
  return ttis * kTti;
}

void VoipSource::generate(std::uint32_t flow_id, std::int64_t tti, const QosParams& qos,
                          std::vector<PacketDescriptor>& out) {
  const SimTime now = tti_start(tti);
  while (now >= state_end_) {
    const SimTime boundary = state_end_;
    on_ = !on_;
    state_end_ = boundary + draw_period(on_ ? params_.mean_on_s : params_.mean_off_s);
    if (on_) next_packet_ = boundary;
  }
  if (!on_) return;
  while (next_packet_ < now + kTti) {
    if (next_packet_ >= now) {
      out.push_back(make_packet(flow_id, 8LL * params_.packet_bytes, now, qos));
    }
    next_packet_ += params_.interval;
  }
}

std::vector<int> load_video_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("video trace: cannot open " + path);
  std::vector<int> frames;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ss(line);
    long long v = 0;
    if (!(ss >> v) || v <= 0) {
      throw ConfigError("video trace " + path + ":" + std::to_string(line_no) +
                        ": expected a positive frame size");
    }
    frames.push_back(static_cast<int>(v));
  }
  if (frames.empty()) throw ConfigError("video trace: " + path + " has no frames");
  return frames;
}

VideoSource::VideoSource(VideoParams params, SimTime phase, std::size_t first_frame)
    : params_(std::move(params)), phase_(phase), pattern_index_(first_frame) {
  if (params_.frame_bytes.empty()) throw ConfigError("video: empty frame pattern");
  if (params_.max_packet_bytes <= 0) throw ConfigError("video: max packet size must be > 0");
  if (params_.frames_per_second <= 0.0) throw ConfigError("video: frame rate must be > 0");
}

void VideoSource::generate(std::uint32_t flow_id, std::int64_t tti, const QosParams& qos,
                           std::vector<PacketDescriptor>& out) {
  const SimTime now = tti_start(tti);
  const double frame_us = 1e6 / params_.frames_per_second;
  for (;;) {
    const SimTime frame_time =
        phase_ + SimTime{static_cast<std::int64_t>(static_cast<double>(next_frame_) * frame_us)};
    if (frame_time >= now + kTti) break;
    ++next_frame_;
    if (frame_time < now) continue;
    const auto& pattern = params_.frame_bytes;
    int bytes = pattern[pattern_index_ % pattern.size()];
    ++pattern_index_;
    while (bytes > 0) {
      const int chunk = std::min(bytes, params_.max_packet_bytes);
      out.push_back(make_packet(flow_id, 8LL * chunk, now, qos));
      bytes -= chunk;
    }
  }
}

void FullBufferSource::generate(std::uint32_t flow_id, std::int64_t tti, const QosParams& qos,
                                std::int64_t buffered_bits,
                                std::vector<PacketDescriptor>& out) const {
  const SimTime now = tti_start(tti);
  while (buffered_bits < target_bits_) {
    out.push_back(make_packet(flow_id, packet_bits_, now, qos));
    buffered_bits += packet_bits_;
  }
}

void generate(TrafficSource& source, std::uint32_t flow_id, std::int64_t tti,
              const QosParams& qos, std::int64_t buffered_bits,
              std::vector<PacketDescriptor>& out) {
  std::visit(
      [&](auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FullBufferSource>) {
          s.generate(flow_id, tti, qos, buffered_bits, out);
        } else {
          s.generate(flow_id, tti, qos, out);
        }
      },
      source);
}

}  // namespace hetsim
