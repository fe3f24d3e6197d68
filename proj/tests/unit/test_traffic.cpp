#include <filesystem>
#include <fstream>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "hetsim/errors.hpp"
#include "hetsim/rng.hpp"
#include "hetsim/traffic.hpp"

using namespace hetsim;

namespace {

const QosParams kRt{SimTime{100'000}, 0.005, true};

std::int64_t sum_bits(const std::vector<PacketDescriptor>& v) {
  std::int64_t s = 0;
  for (const auto& p : v) s += p.size_bits;
  return s;
}

}  // namespace

TEST_CASE("VoIP source at 8.4 kbit/s while talking") {
  VoipParams p;
  p.mean_off_s = 0.0;  // never silent
  VoipSource src(p, 1);
  std::vector<PacketDescriptor> out;
  for (std::int64_t tti = 0; tti < 1000; ++tti) src.generate(0, tti, kRt, out);
  CHECK(out.size() == 50);
  CHECK(sum_bits(out) == 8400);
  for (const auto& pk : out) CHECK(pk.size_bits == 168);
}

TEST_CASE("VoIP source is silent while OFF") {
  VoipParams p;
  std::uint64_t seed = 0;
  while (VoipSource(p, seed).is_on()) ++seed;
  VoipSource src(p, seed);
  std::vector<PacketDescriptor> out;
  src.generate(0, 0, kRt, out);
  CHECK(out.empty());
}

TEST_CASE("VoIP ON/OFF long-run rate is half the talk rate") {
  VoipParams p;  // 3 s / 3 s
  std::int64_t bits = 0;
  const int n_flows = 10;
  const std::int64_t ttis = 2'000'000;  // 2000 s each
  std::vector<PacketDescriptor> out;
  for (int f = 0; f < n_flows; ++f) {
    VoipSource src(p, derive_seed(9, Stream::Traffic, static_cast<std::uint64_t>(f)));
    for (std::int64_t tti = 0; tti < ttis; ++tti) {
      out.clear();
      src.generate(0, tti, kRt, out);
      bits += sum_bits(out);
    }
  }
  const double kbps = static_cast<double>(bits) / (n_flows * ttis * 1e-3) / 1e3;
  CHECK(std::abs(kbps - 4.2) < 0.3);
}

TEST_CASE("video frame pattern averages 1210 bytes") {
  VideoParams p;
  const double mean = std::accumulate(p.frame_bytes.begin(), p.frame_bytes.end(), 0.0) /
                      static_cast<double>(p.frame_bytes.size());
  CHECK(mean == 1210.0);
  CHECK(mean * 8 * p.frames_per_second == 242000.0);
}

TEST_CASE("video source produces 242 kbit/s at 25 frames/s") {
  VideoSource src(VideoParams{}, SimTime{0}, 0);
  std::vector<PacketDescriptor> out;
  std::vector<std::int64_t> frame_ttis;
  for (std::int64_t tti = 0; tti < 1000; ++tti) {
    const auto before = out.size();
    src.generate(0, tti, kRt, out);
    if (out.size() != before) frame_ttis.push_back(tti);
  }
  CHECK(frame_ttis.size() == 25);
  CHECK(frame_ttis[1] == 40);
  CHECK(std::abs(sum_bits(out) - 242000) <= 9680);
}

TEST_CASE("video source is quiet between frames and segments large frames") {
  VideoSource src(VideoParams{}, SimTime{0}, 0);
  std::vector<PacketDescriptor> out;
  src.generate(3, 0, kRt, out);
  REQUIRE(out.size() == 2);  // 1936-byte I frame
  CHECK(out[0].size_bits == 1500 * 8);
  CHECK(out[1].size_bits == 436 * 8);
  CHECK(out[0].flow_id == 3);
  out.clear();
  src.generate(3, 17, kRt, out);
  CHECK(out.empty());
}

TEST_CASE("enqueue keeps FIFO order and counts arrivals") {
  FlowQueue q(0, 0, TrafficKind::Video, kRt);
  FlowStats st;
  CHECK(q.hol_delay(SimTime{5000}) == SimTime::zero());

  std::vector<PacketDescriptor> pk{make_packet(0, 800, SimTime{1000}, kRt),
                                   make_packet(0, 800, SimTime{2000}, kRt),
                                   make_packet(0, 800, SimTime{3000}, kRt)};
  q.enqueue(pk, st);
  CHECK(q.packet_count() == 3);
  CHECK(q.hol_delay(SimTime{10'000}) == SimTime{9000});
  CHECK(st.arrived_bits == 2400);

  VideoParams flat;
  flat.frame_bytes = {1210};
  VideoSource src(flat, SimTime{0}, 0);
  std::vector<PacketDescriptor> frame;
  src.generate(0, 0, kRt, frame);
  FlowStats st2;
  FlowQueue q2(0, 0, TrafficKind::Video, kRt);
  q2.enqueue(frame, st2);
  CHECK(st2.arrived_bits == 9680);
  CHECK(q2.packet_count() == frame.size());
}

TEST_CASE("drop_expired boundaries") {
  for (auto [now_us, dropped] : {std::pair{101'000, true}, std::pair{99'000, false},
                                 std::pair{100'000, false}}) {
    FlowQueue q(0, 0, TrafficKind::Video, kRt);
    FlowStats st;
    std::vector<PacketDescriptor> pk{make_packet(0, 1000, SimTime{0}, kRt)};
    q.enqueue(pk, st);
    const auto bits = q.drop_expired(SimTime{now_us}, st);
    CAPTURE(now_us);
    CHECK((bits == 1000) == dropped);
    CHECK(q.empty() == dropped);
  }
}

TEST_CASE("drop_expired removes exactly the expired packets") {
  FlowQueue q(0, 0, TrafficKind::Video, kRt);
  FlowStats st;
  std::vector<PacketDescriptor> pk{
      make_packet(0, 100, SimTime{0}, kRt), make_packet(0, 250, SimTime{5000}, kRt),
      make_packet(0, 400, SimTime{50'000}, kRt), make_packet(0, 80, SimTime{60'000}, kRt),
      make_packet(0, 90, SimTime{70'000}, kRt)};
  q.enqueue(pk, st);
  CHECK(q.drop_expired(SimTime{106'000}, st) == 350);
  CHECK(q.packet_count() == 3);
  CHECK(st.discarded_bits == 350);
  CHECK(st.arrived_bits == st.discarded_bits + q.buffered_bits());
}

TEST_CASE("drain serves partial packets and records delays on completion") {
  FlowQueue q(0, 0, TrafficKind::Video, kRt);
  FlowStats st;
  std::vector<PacketDescriptor> pk{make_packet(0, 1000, SimTime{0}, kRt),
                                   make_packet(0, 500, SimTime{2000}, kRt)};
  q.enqueue(pk, st);
  CHECK(q.drain(600, SimTime{3000}, st) == 600);
  CHECK(st.delivered_packets == 0);
  CHECK(q.drain(600, SimTime{7000}, st) == 600);
  CHECK(st.delivered_packets == 1);
  CHECK(st.delay_sum_s == doctest::Approx(0.007));
  CHECK(q.buffered_bits() == 300);

  // A partly sent packet that expires discards only its remainder.
  CHECK(q.drop_expired(SimTime{200'000}, st) == 300);
  CHECK(st.arrived_bits == st.transmitted_bits + st.discarded_bits + q.buffered_bits());
}

TEST_CASE("full-buffer source tops up to its target backlog") {
  FullBufferSource src(10'000, 500);
  std::vector<PacketDescriptor> out;
  src.generate(0, 0, kRt, 0, out);
  CHECK(sum_bits(out) == 12'000);
  out.clear();
  src.generate(0, 1, kRt, 10'000, out);
  CHECK(out.empty());
}

TEST_CASE("video trace loader") {
  const auto path = std::filesystem::temp_directory_path() / "hetsim_trace_test.txt";
  {
    std::ofstream f(path);
    f << "1200\n\n800\n3000\n";
  }
  CHECK(load_video_trace(path.string()) == std::vector<int>{1200, 800, 3000});
  {
    std::ofstream f(path);
    f << "1200\nabc\n";
  }
  CHECK_THROWS_AS(load_video_trace(path.string()), ConfigError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_video_trace(path.string()), ConfigError);
}

TEST_CASE("QoS validation") {
  CHECK_NOTHROW(kRt.validate());
  CHECK_THROWS_AS((QosParams{SimTime{0}, 0.1, true}.validate()), ConfigError);
  CHECK_THROWS_AS((QosParams{SimTime{1000}, 1.0, true}.validate()), ConfigError);
  CHECK_THROWS_AS((QosParams{SimTime{1000}, 0.0, true}.validate()), ConfigError);
}
