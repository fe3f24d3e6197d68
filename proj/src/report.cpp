#include "hetsim/report.hpp"

#include <cstdio>

namespace hetsim {
namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

const std::vector<std::string>& summary_columns() {
  static const std::vector<std::string> cols{
      "scenario",          "algorithm",          "users",
      "seed",              "throughput_bps_total", "throughput_bps_video",
      "plr_video",         "delay_ms_video_mean", "fairness_eq11_video",
      "jain_video",        "handovers",          "dropped_bits",
      "transmitted_bits",  "arrived_bits",       "wall_time_s"};
  return cols;
}

void write_summary_header(std::ostream& os) {
  const auto& cols = summary_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';
}

void write_summary_row(std::ostream& os, const RunSummary& r) {
  os << r.scenario << ',' << r.algorithm << ',' << r.users << ',' << r.seed << ','
     << num(r.throughput_bps_total) << ',' << num(r.throughput_bps_video) << ','
     << num(r.plr_video) << ',' << num(r.delay_ms_video_mean) << ','
     << num(r.fairness_eq11_video) << ',' << num(r.jain_video) << ',' << r.handovers << ','
     << r.dropped_bits << ',' << r.transmitted_bits << ',' << r.arrived_bits << ','
     << num(r.wall_time_s) << '\n';
}

void write_geometry_csv(std::ostream& os, std::span<const CellSite> cells) {
  os << "cell_id,kind,x,y,power\n";
  for (const auto& c : cells) {
    os << c.cell_id << ',' << (c.kind == CellKind::Macro ? "macro" : "pico") << ','
       << num(c.position.x) << ',' << num(c.position.y) << ',' << num(c.tx_power_dbm) << '\n';
  }
}

void write_trace_csv(std::ostream& os, std::span<const TtiTraceRow> rows) {
  os << "tti,cell_id,rbs_granted,bits_served,backlog_bits,backlogged_flows\n";
  for (const auto& r : rows) {
    os << r.tti << ',' << r.cell_id << ',' << r.rbs_granted << ',' << r.bits_served << ','
       << r.backlog_bits << ',' << r.backlogged_flows << '\n';
  }
}

}  // namespace hetsim
