#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "raidlay/ft_analysis.hpp"
#include "raidlay/reliability.hpp"
#include "raidlay/search.hpp"

namespace raidlay {

enum class Format { Table, Csv, Json };

Format parse_format(std::string_view name);

// Fixed 12-significant-digit rendering; the one number format every report
// uses, so identical values print identical bytes everywhere.
std::string format_value(double v);

// Scenario tables joined side by side, one mark column per layout.
struct FtRenderInput {
  int n_disks = 0;
  int failures = 0;
  std::vector<std::string> names;
  std::vector<std::vector<FtRow>> tables;
  std::vector<CoverageReport> reports;
};

std::string render_ft(const FtRenderInput& input, Format format);

// Curves in long form: one row per (t, layout, mode). `x_label` names the
// first column (t_hours for time grids, p for direct probability points).
std::string render_curves(const std::vector<ReliabilityCurve>& curves, Format format,
                          std::string_view x_label);

struct McRenderRow {
  std::string layout_name;
  double p = 0;
  MonteCarloResult result;
};

std::string render_mc(const std::vector<McRenderRow>& rows, Format format);

std::string render_candidates(const std::vector<CandidateScore>& ranked, std::size_t top,
                              Format format);

std::string render_replication(const ReplicationSearchResult& result, Format format);

}  // namespace raidlay
