#pragma once

#include <cstdint>
#include <deque>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "hetsim/metrics.hpp"
#include "hetsim/time.hpp"

namespace hetsim {

struct QosParams {
  SimTime delay_threshold{100'000};
  double max_hol_violation_prob = 0.005;
  bool is_realtime = true;

  /// Throws ConfigError unless 0 < delta < 1 and tau > 0.
  void validate() const;
};

struct PacketDescriptor {
  std::uint32_t flow_id = 0;
  std::int64_t size_bits = 0;
  SimTime arrival{0};
  SimTime deadline{0};
  // Bits not yet sent; a packet may span several RB-pairs and TTIs.
  std::int64_t remaining_bits = 0;
};

// Scheduler-owned per-flow state, carried with the queue across handovers.
struct PerFlowSchedState {
  double avg_rate_bps = 1.0;
  double last_served_bps = 0.0;
  std::int64_t served_bits_this_tti = 0;
};

// eNB buffer of one flow: FIFO of timestamped packets.
class FlowQueue {
 public:
  FlowQueue(std::uint32_t flow_id, std::uint32_t ue_id, TrafficKind kind, QosParams qos);

  std::uint32_t flow_id() const { return flow_id_; }
  std::uint32_t ue_id() const { return ue_id_; }
  TrafficKind kind() const { return kind_; }
  const QosParams& qos() const { return qos_; }

  bool empty() const { return fifo_.empty(); }
  std::size_t packet_count() const { return fifo_.size(); }
  std::int64_t buffered_bits() const { return buffered_bits_; }
  const std::deque<PacketDescriptor>& packets() const { return fifo_; }

  /// Age of the head-of-line packet; zero when empty.
  SimTime hol_delay(SimTime now) const;

  /// Appends packets (already timestamped) and counts their bits as arrivals.
  void enqueue(std::span<const PacketDescriptor> packets, FlowStats& stats);

  /// Removes every packet whose deadline has passed. Returns the discarded bits.
  std::int64_t drop_expired(SimTime now, FlowStats& stats);

  /// Sends up to `max_bits` from the head of the FIFO at time `now`. Completed
  /// packets record their queueing delay. Returns the bits sent.
  std::int64_t drain(std::int64_t max_bits, SimTime now, FlowStats& stats);

  PerFlowSchedState sched;

 private:
  std::uint32_t flow_id_;
  std::uint32_t ue_id_;
  TrafficKind kind_;
  QosParams qos_;
  std::deque<PacketDescriptor> fifo_;
  std::int64_t buffered_bits_ = 0;
};

/// Builds a packet timestamped at `now` with deadline now + tau.
PacketDescriptor make_packet(std::uint32_t flow_id, std::int64_t size_bits, SimTime now,
                             const QosParams& qos);

struct VoipParams {
  int packet_bytes = 21;
  SimTime interval{20'000};
  double mean_on_s = 3.0;
  // Zero means the source never goes silent.
  double mean_off_s = 3.0;
};

// Exponential ON/OFF voice source: one packet per interval while talking.
class VoipSource {
 public:
  VoipSource(const VoipParams& params, std::uint64_t seed);

  void generate(std::uint32_t flow_id, std::int64_t tti, const QosParams& qos,
                std::vector<PacketDescriptor>& out);
  bool is_on() const { return on_; }

 private:
  SimTime draw_period(double mean_s);

  VoipParams params_;
  std::mt19937_64 rng_;
  bool on_ = true;
  SimTime state_end_{0};
  SimTime next_packet_{0};
};

struct VideoParams {
  double frames_per_second = 25.0;
  // Frame sizes in bytes, cycled. Default I:P:P:P with mean 1210 bytes (242 kbit/s at 25 fps).
  std::vector<int> frame_bytes{1936, 968, 968, 968};
  int max_packet_bytes = 1500;
};

/// Reads a trace file: one frame size in bytes per line. Throws ConfigError.
std::vector<int> load_video_trace(const std::string& path);

// Frame-periodic video source; each frame is segmented into packets of at
// most max_packet_bytes.
class VideoSource {
 public:
  VideoSource(VideoParams params, SimTime phase, std::size_t first_frame);

  void generate(std::uint32_t flow_id, std::int64_t tti, const QosParams& qos,
                std::vector<PacketDescriptor>& out);

 private:
  VideoParams params_;
  SimTime phase_;
  std::int64_t next_frame_ = 0;
  std::size_t pattern_index_;
};

// Keeps the buffer topped up above a target backlog.
class FullBufferSource {
 public:
  FullBufferSource(std::int64_t target_backlog_bits, int packet_bytes)
      : target_bits_(target_backlog_bits), packet_bits_(8LL * packet_bytes) {}

  void generate(std::uint32_t flow_id, std::int64_t tti, const QosParams& qos,
                std::int64_t buffered_bits, std::vector<PacketDescriptor>& out) const;

 private:
  std::int64_t target_bits_;
  std::int64_t packet_bits_;
};

using TrafficSource = std::variant<VideoSource, VoipSource, FullBufferSource>;

void generate(TrafficSource& source, std::uint32_t flow_id, std::int64_t tti,
              const QosParams& qos, std::int64_t buffered_bits,
              std::vector<PacketDescriptor>& out);

}  // namespace hetsim
