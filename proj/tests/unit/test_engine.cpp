#include <cmath>
#include <set>
#include <sstream>

#include "doctest.h"
#include "hetsim/engine.hpp"
#include "hetsim/report.hpp"

using namespace hetsim;

namespace {

RunConfig small_config(SchedulerKind kind = SchedulerKind::MLWDF,
                       ScenarioKind scenario = ScenarioKind::HetNet) {
  RunConfig c;
  c.scenario = scenario;
  c.scheduler = kind;
  c.users = 4;
  c.seed = 11;
  c.sim_duration_s = 1.5;
  c.flow_duration_s = 1.0;
  c.record_wall_time = false;
  return c;
}

std::string summary_csv(const RunConfig& c) {
  std::ostringstream os;
  write_summary_header(os);
  write_summary_row(os, summarize(c, run_simulation(c)));
  return os.str();
}

}  // namespace

TEST_CASE("an empty network reports neutral metrics") {
  auto c = small_config();
  c.users = 0;
  const auto s = summarize(c, run_simulation(c));
  CHECK(s.throughput_bps_total == 0.0);
  CHECK(s.plr_video == 0.0);
  CHECK(s.fairness_eq11_video == 1.0);
  CHECK(s.jain_video == 1.0);
  CHECK(s.arrived_bits == 0);
}

TEST_CASE("clock advances one TTI per step and stops at the end") {
  Simulation sim(small_config());
  CHECK(sim.now() == SimTime{0});
  sim.step();
  CHECK(sim.now() == SimTime{1000});
  sim.step();
  CHECK(sim.tti() == 2);
  while (!sim.done()) sim.step();
  CHECK(sim.tti() == 1500);
  sim.step();
  CHECK(sim.tti() == 1500);
}

TEST_CASE("bits are conserved and cell capacity respected every TTI") {
  for (auto kind : {SchedulerKind::PF, SchedulerKind::MLWDF, SchedulerKind::ExpPf}) {
    auto c = small_config(kind);
    c.users = 8;
    Simulation sim(c);
    const std::int64_t cap = static_cast<std::int64_t>(c.n_rbs()) * 756;
    bool conserved = true, within_cap = true, rates_ok = true, single_grant = true;
    while (!sim.done()) {
      sim.step();
      for (const auto& q : sim.flows()) {
        const auto& st = sim.metrics().flow(q.flow_id());
        if (st.arrived_bits != st.transmitted_bits + st.discarded_bits + q.buffered_bits()) {
          conserved = false;
        }
      }
      for (const auto& alloc : sim.last_allocations()) {
        if (alloc.total_bits() > cap) within_cap = false;
        std::set<std::uint32_t> rbs;
        for (const auto& g : alloc.grants) {
          if (g.bits_served > g.rate_bits || g.bits_served <= 0) rates_ok = false;
          if (!rbs.insert(g.rb).second) single_grant = false;
        }
      }
    }
    CHECK(conserved);
    CHECK(within_cap);
    CHECK(rates_ok);
    CHECK(single_grant);
  }
}

TEST_CASE("no allocations once traffic stops and queues drain") {
  auto c = small_config(SchedulerKind::PF);
  Simulation sim(c);
  while (!sim.done()) sim.step();
  // Everything left has expired by the end: no arrivals in the last 0.5 s.
  for (const auto& q : sim.flows()) CHECK(q.empty());
  for (const auto& alloc : sim.last_allocations()) CHECK(alloc.grants.empty());
}

TEST_CASE("runs are reproducible for a seed") {
  for (auto kind : {SchedulerKind::PF, SchedulerKind::ExpPf}) {
    const auto c = small_config(kind);
    CHECK(summary_csv(c) == summary_csv(c));
    auto other = c;
    other.seed = 12;
    CHECK(summary_csv(c) != summary_csv(other));
  }
}

TEST_CASE("kernel thread count does not change results") {
  auto a = small_config(SchedulerKind::MLWDF);
  auto b = a;
  b.kernel_threads = 3;
  CHECK(summary_csv(a) == summary_csv(b));
}

TEST_CASE("a lone full-buffer UE close to the macro gets the whole carrier") {
  RunConfig c;
  c.scenario = ScenarioKind::MacroOnly;
  c.scheduler = SchedulerKind::PF;
  c.ue_positions = {{100.0, 0.0}};
  c.ue_speed_kmh = 0.0;
  c.channel.shadowing.enabled = false;
  c.channel.fading.enabled = false;
  c.traffic.flows_per_ue = {TrafficKind::FullBuffer};
  c.sim_duration_s = 0.5;
  c.flow_duration_s = 0.5;
  c.record_wall_time = false;

  Simulation sim(c);
  const double snr = sim.mean_rx_dbm(0, 0) - sim.noise_dbm_per_rb();
  CHECK(snr == doctest::Approx(49.0 - 10 * std::log10(50.0) - 90.5 - 10.0 + 112.44727494896694)
                   .epsilon(1e-9));
  while (!sim.done()) sim.step();
  const auto s = summarize(c, RunResult{sim.metrics(), {}, 0, sim.tti(), 0.0, {}});
  // 50 RB-pairs at the top MCS: 50 * 756 bits per ms.
  CHECK(s.throughput_bps_total == doctest::Approx(37.8e6).epsilon(1e-3));
}

TEST_CASE("each UE has one serving cell and handovers stay bounded") {
  auto c = small_config(SchedulerKind::PF);
  c.users = 6;
  c.ue_speed_kmh = 120.0;
  c.sim_duration_s = 3.0;
  c.flow_duration_s = 2.0;
  Simulation sim(c);
  while (!sim.done()) {
    sim.step();
    for (std::uint32_t u = 0; u < sim.ues().size(); ++u) {
      REQUIRE(sim.serving_cell(u) < sim.cells().size());
    }
  }
  // At most one handover per UE per TTI, in practice far fewer.
  CHECK(sim.handovers() <= static_cast<std::int64_t>(sim.ues().size()) * sim.tti());
  CHECK(sim.handovers() >= 0);

  auto fixed = small_config();
  fixed.ue_speed_kmh = 0.0;
  Simulation still(fixed);
  while (!still.done()) still.step();
  CHECK(still.handovers() == 0);
}

TEST_CASE("macro-only scenario serves everyone from cell 0") {
  auto c = small_config(SchedulerKind::PF, ScenarioKind::MacroOnly);
  Simulation sim(c);
  CHECK(sim.cells().size() == 1);
  CHECK(sim.ues().size() == 4);
  sim.step();
  for (std::uint32_t u = 0; u < sim.ues().size(); ++u) CHECK(sim.serving_cell(u) == 0);
  CHECK(sim.flows().size() == 8);
}

TEST_CASE("invalid configurations fail fast") {
  auto c = small_config();
  c.flow_duration_s = 5.0;
  CHECK_THROWS(Simulation{c});
}
