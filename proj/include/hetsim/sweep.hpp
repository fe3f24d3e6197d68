#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hetsim/config.hpp"
#include "hetsim/engine.hpp"

namespace hetsim {

struct SweepRow {
  RunSummary summary;
  // Empty on success; the summary then carries the run's metrics.
  std::string error;
};

/// Every (scenario, algorithm, users, run) point of `spec` applied on top of
/// `base`, seeds root_seed + run index. Runs execute on up to spec.workers
/// threads; rows come back in sweep order. A failing run yields a row with its
/// error and the sweep carries on.
std::vector<SweepRow> run_sweep_rows(const RunConfig& base, const SweepSpec& spec);

/// Runs the sweep and writes summary.csv, geometry_<scenario>.csv and, when
/// any run failed, failures.csv into `out_dir`. Returns the rows.
std::vector<SweepRow> run_sweep(const RunConfig& base, const SweepSpec& spec,
                                const std::filesystem::path& out_dir);

}  // namespace hetsim
