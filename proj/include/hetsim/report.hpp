#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "hetsim/engine.hpp"

namespace hetsim {

// Bumped whenever the summary column set changes.
inline constexpr int kSummarySchemaVersion = 1;

const std::vector<std::string>& summary_columns();

void write_summary_header(std::ostream& os);
void write_summary_row(std::ostream& os, const RunSummary& row);

/// cell_id,kind,x,y,power
void write_geometry_csv(std::ostream& os, std::span<const CellSite> cells);

void write_trace_csv(std::ostream& os, std::span<const TtiTraceRow> rows);

}  // namespace hetsim
