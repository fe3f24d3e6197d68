#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "hetsim/config.hpp"
#include "hetsim/errors.hpp"

using namespace hetsim;

TEST_CASE("an empty document yields the reference defaults") {
  const auto cfg = parse_config("");
  const RunConfig& r = cfg.run;
  CHECK(r.scenario == ScenarioKind::HetNet);
  CHECK(r.scheduler == SchedulerKind::MLWDF);
  CHECK(r.sim_duration_s == 30.0);
  CHECK(r.flow_duration_s == 20.0);
  CHECK(r.n_rbs() == 50);
  CHECK(r.n_ttis() == 30'000);
  CHECK(r.flow_ttis() == 20'000);
  CHECK(r.topology.macro.radius_m == 1000.0);
  CHECK(r.topology.macro.tx_power_dbm == 49.0);
  CHECK(r.topology.pico.radius_m == 100.0);
  CHECK(r.topology.pico.tx_power_dbm == 30.0);
  CHECK(r.topology.n_picos == 2);
  CHECK(r.ue_speed_kmh == 3.0);
  CHECK(r.ue_speed_mps() == doctest::Approx(0.833333333));
  CHECK(r.channel.carrier_hz == 2e9);
  CHECK(r.channel.noise_figure_db == 9.0);
  CHECK(r.channel.penetration_loss_db == 10.0);
  CHECK(r.channel.shadowing.std_db == 10.0);
  CHECK(r.traffic.video.qos.delay_threshold == SimTime{100'000});
  CHECK(r.traffic.video.qos.max_hol_violation_prob == 0.005);
  CHECK(r.traffic.voip.params.packet_bytes == 21);
  CHECK(r.traffic.video.params.frames_per_second == 25.0);
  CHECK(r.scheduler_params.tc_tti == 1000);
  CHECK(r.window_s() == 20.0);
  CHECK(cfg.sweep.user_counts.front() == 10);
  CHECK(cfg.sweep.user_counts.back() == 80);
  CHECK(cfg.sweep.runs_per_point == 5);
  CHECK(parse_config("{}").run.users == parse_config("").run.users);
}

TEST_CASE("overrides are applied") {
  const auto cfg = parse_config(R"({
    // comments are allowed
    "scenario": "macro",
    "scheduler": "exppf",
    "users": 40,
    "seed": 77,
    "sim_duration_s": 6,
    "flow_duration_s": 4,
    "bandwidth_mhz": 5,
    "placement": {"mode": "split", "macro_fraction": 0.5},
    "pico": {"radius_m": 50},
    "channel": {"fading": {"enabled": false}},
    "scheduler_params": {"log_base": "10"},
    "traffic": {"flows_per_ue": ["video"], "video": {"frame_bytes": [1210]}},
    "sweep": {"user_counts": [5, 15], "algorithms": ["pf", "exp"], "runs_per_point": 2}
  })");
  CHECK(cfg.run.scenario == ScenarioKind::MacroOnly);
  CHECK(cfg.run.scheduler == SchedulerKind::ExpPf);
  CHECK(cfg.run.users == 40);
  CHECK(cfg.run.seed == 77);
  CHECK(cfg.run.n_rbs() == 25);
  CHECK(cfg.run.placement.mode == PlacementMode::Split);
  CHECK(cfg.run.topology.pico.radius_m == 50.0);
  CHECK_FALSE(cfg.run.channel.fading.enabled);
  CHECK(cfg.run.scheduler_params.log_base == LogBase::Ten);
  CHECK(cfg.run.traffic.flows_per_ue.size() == 1);
  CHECK(cfg.run.traffic.video.params.frame_bytes == std::vector<int>{1210});
  CHECK(cfg.sweep.user_counts == std::vector<int>{5, 15});
  CHECK(cfg.sweep.algorithms[1] == SchedulerKind::ExpPf);
  CHECK(cfg.sweep.runs_per_point == 2);
}

TEST_CASE("invalid documents are rejected") {
  CHECK_THROWS_AS(parse_config(R"({"pico": {"radius_m": 1500}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"users": -1})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"scheduler": "rr"})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"scenario": "femto"})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"bandwidth_mhz": 7})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"sim_duration_s": 5, "flow_duration_s": 10})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"sim_duration_s": 0})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"traffic": {"video": {"max_violation_prob": 1.5}}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"users": "ten"})"), ConfigError);
  CHECK_THROWS_AS(parse_config("{ not json"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"sweep": {"runs_per_point": 0}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"ue_positions": [[5000, 0]]})"), ConfigError);
}

TEST_CASE("unknown keys are reported with their path") {
  try {
    parse_config(R"({"channel": {"shadowing": {"sigma": 8}}})");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("channel.shadowing.sigma") != std::string::npos);
  }
}

TEST_CASE("bandwidth to RB count") {
  CHECK(rb_count_for_bandwidth(1.4) == 6);
  CHECK(rb_count_for_bandwidth(3) == 15);
  CHECK(rb_count_for_bandwidth(5) == 25);
  CHECK(rb_count_for_bandwidth(10) == 50);
  CHECK(rb_count_for_bandwidth(15) == 75);
  CHECK(rb_count_for_bandwidth(20) == 100);
  CHECK_THROWS_AS(rb_count_for_bandwidth(12), ConfigError);
}

TEST_CASE("name parsing") {
  CHECK(parse_scheduler("pf") == SchedulerKind::PF);
  CHECK(parse_scheduler("mlwdf") == SchedulerKind::MLWDF);
  CHECK(parse_scheduler("exp") == SchedulerKind::ExpPf);
  CHECK(parse_scenario("hetnet") == ScenarioKind::HetNet);
  CHECK(to_string(SchedulerKind::ExpPf) == "exppf");
  CHECK(to_string(ScenarioKind::MacroOnly) == "macro");
  CHECK_THROWS_AS(parse_traffic_kind("ftp"), ConfigError);
}

TEST_CASE("loading from a file") {
  const auto path = std::filesystem::temp_directory_path() / "hetsim_cfg_test.json";
  {
    std::ofstream(path) << R"({"users": 12})";
  }
  CHECK(load_config(path.string()).run.users == 12);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_config("/nonexistent/hetsim.json"), ConfigError);
}
