#include "hetsim/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "hetsim/errors.hpp"

namespace hetsim {
namespace {

using nlohmann::json;

// Reads known keys out of a JSON object and rejects anything left over.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(where() + "expected an object");
  }

  template <class T>
  void get(const std::string& key, T& out) {
    if (!j_.contains(key)) return;
    seen_.insert(key);
    try {
      out = j_.at(key).get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(path_ + key + ": " + e.what());
    }
  }

  void get_string(const std::string& key, std::string& out) { get(key, out); }

  bool has(const std::string& key) const { return j_.contains(key); }

  std::optional<ObjectReader> child(const std::string& key) {
    if (!j_.contains(key)) return std::nullopt;
    seen_.insert(key);
    return ObjectReader(j_.at(key), path_ + key + ".");
  }

  const json& raw(const std::string& key) {
    seen_.insert(key);
    return j_.at(key);
  }

  void finish() const {
    for (const auto& [k, v] : j_.items()) {
      if (!seen_.count(k)) throw ConfigError("unknown config key '" + path_ + k + "'");
    }
  }

 private:
  std::string where() const { return path_.empty() ? "config: " : path_ + ": "; }

  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

void read_qos(ObjectReader& r, QosParams& qos) {
  double tau = to_seconds(qos.delay_threshold);
  r.get("delay_threshold_s", tau);
  qos.delay_threshold = from_seconds(tau);
  r.get("max_violation_prob", qos.max_hol_violation_prob);
  r.get("realtime", qos.is_realtime);
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

LogBase parse_log_base(const std::string& s) {
  if (s == "e" || s == "natural" || s == "ln") return LogBase::Natural;
  if (s == "10" || s == "log10") return LogBase::Ten;
  throw ConfigError("scheduler_params.log_base: expected 'e' or '10', got '" + s + "'");
}

PlacementMode parse_placement(const std::string& s) {
  if (s == "per_cell") return PlacementMode::PerCell;
  if (s == "split") return PlacementMode::Split;
  throw ConfigError("placement.mode: expected per_cell or split, got '" + s + "'");
}

FairnessDenominator parse_fairness(const std::string& s) {
  if (s == "arrived") return FairnessDenominator::Arrived;
  if (s == "transmitted") return FairnessDenominator::Transmitted;
  throw ConfigError("metrics.fairness_denominator: expected arrived or transmitted");
}

void read_run(ObjectReader& r, RunConfig& c) {
  if (r.has("scenario")) c.scenario = parse_scenario(r.raw("scenario").get<std::string>());
  if (r.has("scheduler")) c.scheduler = parse_scheduler(r.raw("scheduler").get<std::string>());
  r.get("users", c.users);
  r.get("seed", c.seed);
  r.get("sim_duration_s", c.sim_duration_s);
  r.get("flow_duration_s", c.flow_duration_s);
  r.get("bandwidth_mhz", c.bandwidth_mhz);
  r.get("ue_speed_kmh", c.ue_speed_kmh);

  if (auto p = r.child("placement")) {
    std::string mode;
    p->get_string("mode", mode);
    if (!mode.empty()) c.placement.mode = parse_placement(mode);
    p->get("macro_fraction", c.placement.macro_fraction);
    p->finish();
  }
  if (auto m = r.child("macro")) {
    m->get("radius_m", c.topology.macro.radius_m);
    m->get("tx_power_dbm", c.topology.macro.tx_power_dbm);
    m->finish();
  }
  if (auto p = r.child("pico")) {
    p->get("count", c.topology.n_picos);
    p->get("radius_m", c.topology.pico.radius_m);
    p->get("tx_power_dbm", c.topology.pico.tx_power_dbm);
    p->get("distance_fraction", c.topology.pico_distance_fraction);
    p->finish();
  }
  if (r.has("ue_positions")) {
    std::vector<std::array<double, 2>> pts;
    r.get("ue_positions", pts);
    c.ue_positions.clear();
    for (const auto& p : pts) c.ue_positions.push_back({p[0], p[1]});
  }

  if (auto ch = r.child("channel")) {
    auto& cc = c.channel;
    ch->get("carrier_hz", cc.carrier_hz);
    ch->get("noise_figure_db", cc.noise_figure_db);
    ch->get("noise_density_dbm_hz", cc.noise_density_dbm_hz);
    ch->get("penetration_loss_db", cc.penetration_loss_db);
    ch->get("split_power_across_rbs", cc.split_power_across_rbs);
    if (auto s = ch->child("shadowing")) {
      s->get("enabled", cc.shadowing.enabled);
      s->get("mean_db", cc.shadowing.mean_db);
      s->get("std_db", cc.shadowing.std_db);
      s->get("decorrelation_m", cc.shadowing.decorrelation_m);
      s->finish();
    }
    if (auto f = ch->child("fading")) {
      f->get("enabled", cc.fading.enabled);
      f->get("oscillators", cc.fading.oscillators);
      f->finish();
    }
    ch->finish();
  }

  if (auto h = r.child("handover")) {
    h->get("enabled", c.handover_enabled);
    h->get("hysteresis_db", c.handover_hysteresis_db);
    h->finish();
  }

  if (auto t = r.child("traffic")) {
    auto& tc = c.traffic;
    if (t->has("flows_per_ue")) {
      std::vector<std::string> kinds;
      t->get("flows_per_ue", kinds);
      tc.flows_per_ue.clear();
      for (const auto& k : kinds) tc.flows_per_ue.push_back(parse_traffic_kind(k));
    }
    t->get("randomize_video_phase", tc.randomize_video_phase);
    if (auto v = t->child("video")) {
      v->get("fps", tc.video.params.frames_per_second);
      v->get("frame_bytes", tc.video.params.frame_bytes);
      v->get("max_packet_bytes", tc.video.params.max_packet_bytes);
      v->get_string("trace_file", tc.video.trace_file);
      read_qos(*v, tc.video.qos);
      v->finish();
    }
    if (auto v = t->child("voip")) {
      v->get("packet_bytes", tc.voip.params.packet_bytes);
      double interval_ms = to_seconds(tc.voip.params.interval) * 1e3;
      v->get("interval_ms", interval_ms);
      tc.voip.params.interval = from_seconds(interval_ms / 1e3);
      v->get("mean_on_s", tc.voip.params.mean_on_s);
      v->get("mean_off_s", tc.voip.params.mean_off_s);
      read_qos(*v, tc.voip.qos);
      v->finish();
    }
    if (auto f = t->child("full_buffer")) {
      f->get("packet_bytes", tc.full_buffer.packet_bytes);
      f->get("target_backlog_bits", tc.full_buffer.target_backlog_bits);
      read_qos(*f, tc.full_buffer.qos);
      f->finish();
    }
    t->finish();
  }

  if (auto s = r.child("scheduler_params")) {
    auto& sp = c.scheduler_params;
    s->get("tc_tti", sp.tc_tti);
    s->get("initial_avg_rate_bps", sp.initial_avg_rate_bps);
    s->get("exp_epsilon", sp.exp_epsilon);
    s->get("exp_k", sp.exp_k);
    s->get("exp_w0", sp.exp_w0);
    std::string base;
    s->get_string("log_base", base);
    if (!base.empty()) sp.log_base = parse_log_base(base);
    s->finish();
  }

  if (auto m = r.child("metrics")) {
    m->get("window_s", c.metrics_window_s);
    std::string denom;
    m->get_string("fairness_denominator", denom);
    if (!denom.empty()) c.fairness_denominator = parse_fairness(denom);
    m->finish();
  }

  r.get("trace", c.trace);
  r.get("record_wall_time", c.record_wall_time);
  r.get("kernel_threads", c.kernel_threads);
}

void read_sweep(ObjectReader& r, SweepSpec& s) {
  r.get("user_counts", s.user_counts);
  if (r.has("algorithms")) {
    std::vector<std::string> names;
    r.get("algorithms", names);
    s.algorithms.clear();
    for (const auto& n : names) s.algorithms.push_back(parse_scheduler(n));
  }
  if (r.has("scenarios")) {
    std::vector<std::string> names;
    r.get("scenarios", names);
    s.scenarios.clear();
    for (const auto& n : names) s.scenarios.push_back(parse_scenario(n));
  }
  r.get("runs_per_point", s.runs_per_point);
  r.get("root_seed", s.root_seed);
  r.get("workers", s.workers);
}

}  // namespace

int rb_count_for_bandwidth(double mhz) {
  struct Row {
    double mhz;
    int rbs;
  };
  static constexpr Row kRows[] = {{1.4, 6}, {3, 15}, {5, 25}, {10, 50}, {15, 75}, {20, 100}};
  for (const auto& row : kRows) {
    if (std::abs(row.mhz - mhz) < 1e-9) return row.rbs;
  }
  throw ConfigError("bandwidth_mhz: unsupported LTE bandwidth " + std::to_string(mhz));
}

int RunConfig::n_rbs() const { return rb_count_for_bandwidth(bandwidth_mhz); }

std::int64_t RunConfig::n_ttis() const { return from_seconds(sim_duration_s) / kTti; }

std::int64_t RunConfig::flow_ttis() const { return from_seconds(flow_duration_s) / kTti; }

void RunConfig::validate() const {
  require(users >= 0, "users must be >= 0");
  require(sim_duration_s > 0.0, "sim_duration_s must be > 0");
  require(flow_duration_s > 0.0, "flow_duration_s must be > 0");
  require(flow_duration_s <= sim_duration_s, "flow_duration_s exceeds sim_duration_s");
  (void)n_rbs();
  require(ue_speed_kmh >= 0.0, "ue_speed_kmh must be >= 0");
  require(placement.macro_fraction >= 0.0 && placement.macro_fraction <= 1.0,
          "placement.macro_fraction must be in [0, 1]");
  require(topology.pico.radius_m <= topology.macro.radius_m,
          "pico.radius_m exceeds macro.radius_m");
  (void)build_scenario(ScenarioKind::HetNet, topology);
  for (const auto& p : ue_positions) {
    require(p.norm() <= topology.macro.radius_m, "ue_positions: point outside the macro disc");
  }
  require(channel.carrier_hz > 0.0, "channel.carrier_hz must be > 0");
  require(channel.shadowing.std_db >= 0.0, "channel.shadowing.std_db must be >= 0");
  require(channel.shadowing.decorrelation_m > 0.0, "channel.shadowing.decorrelation_m must be > 0");
  require(channel.fading.oscillators >= 1, "channel.fading.oscillators must be >= 1");
  require(handover_hysteresis_db >= 0.0, "handover.hysteresis_db must be >= 0");
  require(scheduler_params.tc_tti >= 1, "scheduler_params.tc_tti must be >= 1");
  require(scheduler_params.initial_avg_rate_bps > 0.0,
          "scheduler_params.initial_avg_rate_bps must be > 0");
  require(scheduler_params.exp_epsilon > 0.0 && scheduler_params.exp_k > 0.0 &&
              scheduler_params.exp_w0 > 0.0,
          "scheduler_params: EXP/PF constants must be > 0");
  traffic.video.qos.validate();
  traffic.voip.qos.validate();
  traffic.full_buffer.qos.validate();
  require(!traffic.video.params.frame_bytes.empty(), "traffic.video.frame_bytes is empty");
  for (int b : traffic.video.params.frame_bytes) {
    require(b > 0, "traffic.video.frame_bytes must be positive");
  }
  require(traffic.video.params.frames_per_second > 0.0, "traffic.video.fps must be > 0");
  require(traffic.video.params.max_packet_bytes > 0, "traffic.video.max_packet_bytes must be > 0");
  require(traffic.voip.params.packet_bytes > 0, "traffic.voip.packet_bytes must be > 0");
  require(traffic.voip.params.interval > SimTime::zero(), "traffic.voip.interval_ms must be > 0");
  require(traffic.voip.params.mean_on_s > 0.0, "traffic.voip.mean_on_s must be > 0");
  require(traffic.voip.params.mean_off_s >= 0.0, "traffic.voip.mean_off_s must be >= 0");
  require(traffic.full_buffer.packet_bytes > 0, "traffic.full_buffer.packet_bytes must be > 0");
  require(metrics_window_s >= 0.0, "metrics.window_s must be >= 0");
  require(kernel_threads >= 1, "kernel_threads must be >= 1");
}

void SweepSpec::validate() const {
  require(runs_per_point >= 1, "sweep.runs_per_point must be >= 1");
  require(workers >= 1, "sweep.workers must be >= 1");
  require(!user_counts.empty(), "sweep.user_counts is empty");
  for (int u : user_counts) require(u >= 0, "sweep.user_counts must be >= 0");
  require(!algorithms.empty(), "sweep.algorithms is empty");
  require(!scenarios.empty(), "sweep.scenarios is empty");
}

SchedulerKind parse_scheduler(std::string_view s) {
  if (s == "pf") return SchedulerKind::PF;
  if (s == "mlwdf") return SchedulerKind::MLWDF;
  if (s == "exppf" || s == "exp") return SchedulerKind::ExpPf;
  throw ConfigError("unknown scheduler '" + std::string(s) + "' (expected pf|mlwdf|exppf)");
}

ScenarioKind parse_scenario(std::string_view s) {
  if (s == "macro") return ScenarioKind::MacroOnly;
  if (s == "hetnet") return ScenarioKind::HetNet;
  throw ConfigError("unknown scenario '" + std::string(s) + "' (expected macro|hetnet)");
}

TrafficKind parse_traffic_kind(std::string_view s) {
  if (s == "video") return TrafficKind::Video;
  if (s == "voip") return TrafficKind::Voip;
  if (s == "full_buffer") return TrafficKind::FullBuffer;
  throw ConfigError("unknown traffic kind '" + std::string(s) + "'");
}

std::string_view to_string(ScenarioKind kind) {
  return kind == ScenarioKind::MacroOnly ? "macro" : "hetnet";
}

std::string_view to_string(TrafficKind kind) {
  switch (kind) {
    case TrafficKind::Video: return "video";
    case TrafficKind::Voip: return "voip";
    case TrafficKind::FullBuffer: return "full_buffer";
  }
  return "?";
}

LoadedConfig parse_config(std::string_view json_text) {
  json j = json::object();
  const auto first = json_text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) json_text = "{}";
  try {
    j = json::parse(json_text.begin(), json_text.end(), nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  LoadedConfig out;
  if (j.is_null()) j = json::object();
  ObjectReader root(j, "");
  try {
    read_run(root, out.run);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (auto s = root.child("sweep")) {
    read_sweep(*s, out.sweep);
    s->finish();
  }
  root.finish();
  out.run.validate();
  out.sweep.validate();
  return out;
}

LoadedConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace hetsim
