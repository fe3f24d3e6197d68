#include "hetsim/sweep.hpp"

#include <fstream>
#include <limits>

#include <omp.h>

#include "hetsim/errors.hpp"
#include "hetsim/report.hpp"

namespace hetsim {

std::vector<SweepRow> run_sweep_rows(const RunConfig& base, const SweepSpec& spec) {
  spec.validate();
  std::vector<RunConfig> points;
  for (auto scenario : spec.scenarios) {
    for (auto algorithm : spec.algorithms) {
      for (int users : spec.user_counts) {
        for (int run = 0; run < spec.runs_per_point; ++run) {
          RunConfig c = base;
          c.scenario = scenario;
          c.scheduler = algorithm;
          c.users = users;
          c.seed = spec.root_seed + static_cast<std::uint64_t>(run);
          if (spec.workers > 1) c.kernel_threads = 1;
          points.push_back(std::move(c));
        }
      }
    }
  }

  std::vector<SweepRow> rows(points.size());
  const auto n = static_cast<std::int64_t>(points.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(spec.workers)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& c = points[static_cast<std::size_t>(i)];
    auto& row = rows[static_cast<std::size_t>(i)];
    try {
      row.summary = summarize(c, run_simulation(c));
    } catch (const std::exception& e) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      row.summary.scenario = std::string(to_string(c.scenario));
      row.summary.algorithm = std::string(to_string(c.scheduler));
      row.summary.users = c.users;
      row.summary.seed = c.seed;
      row.summary.throughput_bps_total = row.summary.throughput_bps_video = nan;
      row.summary.plr_video = row.summary.delay_ms_video_mean = nan;
      row.summary.fairness_eq11_video = row.summary.jain_video = nan;
      row.error = e.what();
    }
  }
  return rows;
}

std::vector<SweepRow> run_sweep(const RunConfig& base, const SweepSpec& spec,
                                const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  auto rows = run_sweep_rows(base, spec);

  std::ofstream summary(out_dir / "summary.csv");
  if (!summary) throw ConfigError("cannot write " + (out_dir / "summary.csv").string());
  write_summary_header(summary);
  bool any_failed = false;
  for (const auto& r : rows) {
    write_summary_row(summary, r.summary);
    any_failed = any_failed || !r.error.empty();
  }

  for (auto scenario : spec.scenarios) {
    std::ofstream geo(out_dir / ("geometry_" + std::string(to_string(scenario)) + ".csv"));
    write_geometry_csv(geo, build_scenario(scenario, base.topology));
  }

  if (any_failed) {
    std::ofstream f(out_dir / "failures.csv");
    f << "scenario,algorithm,users,seed,error\n";
    for (const auto& r : rows) {
      if (r.error.empty()) continue;
      std::string msg = r.error;
      for (auto& ch : msg) {
        if (ch == ',' || ch == '\n') ch = ';';
      }
      f << r.summary.scenario << ',' << r.summary.algorithm << ',' << r.summary.users << ','
        << r.summary.seed << ',' << msg << '\n';
    }
  }
  return rows;
}

}  // namespace hetsim
