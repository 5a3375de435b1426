#include "raidlay/report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace raidlay {

using ordered_json = nlohmann::ordered_json;

Format parse_format(std::string_view name) {
  if (name == "table") return Format::Table;
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  throw Error("unknown format '" + std::string(name) + "' (expected table, csv or json)");
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

const char* kCheck = "✓";  // the tables' check mark

std::string alive_label(const AliveSet& alive) {
  std::string out;
  for (int d : alive.indices()) {
    if (!out.empty()) out += " ";
    out += "D" + std::to_string(d);
  }
  return out.empty() ? "-" : out;
}

std::size_t display_width(std::string_view s) {
  std::size_t w = 0;
  for (char c : s)
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++w;
  return w;
}

std::string render_aligned(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows) {
    if (widths.size() < row.size()) widths.resize(row.size(), 0);
    for (std::size_t i = 0; i < row.size(); ++i)
      widths[i] = std::max(widths[i], display_width(row[i]));
  }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) line += "  ";
      line += row[i];
      if (i + 1 < row.size())
        line.append(widths[i] - display_width(row[i]), ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

std::string render_csv(const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += row[i];
    }
    out += "\n";
  }
  return out;
}

std::string coverage_ratio(const CoverageReport& report) {
  return std::to_string(report.recovered) + "/" + std::to_string(report.total);
}

ordered_json coverage_to_json(const CoverageReport& report) {
  ordered_json failing = ordered_json::array();
  for (const AliveSet& alive : report.failing) failing.push_back(alive.indices());
  return ordered_json{{"layout", report.layout_name}, {"n", report.n_disks},
                      {"f", report.failures},         {"total", report.total},
                      {"recovered", report.recovered}, {"failing", std::move(failing)}};
}

}  // namespace

std::string render_ft(const FtRenderInput& input, Format format) {
  if (format == Format::Json) {
    ordered_json out = ordered_json::array();
    for (const CoverageReport& report : input.reports) out.push_back(coverage_to_json(report));
    return out.dump(2) + "\n";
  }

  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header = {"active_disks"};
  header.insert(header.end(), input.names.begin(), input.names.end());
  rows.push_back(header);

  const std::size_t n_rows = input.tables.empty() ? 0 : input.tables.front().size();
  for (std::size_t r = 0; r < n_rows; ++r) {
    std::vector<std::string> row = {alive_label(input.tables.front()[r].alive)};
    for (const auto& table : input.tables) {
      bool ok = table[r].recoverable;
      row.push_back(format == Format::Csv ? (ok ? "1" : "0") : (ok ? kCheck : "x"));
    }
    rows.push_back(row);
  }

  std::vector<std::string> summary = {"coverage"};
  for (const CoverageReport& report : input.reports) summary.push_back(coverage_ratio(report));
  rows.push_back(summary);

  return format == Format::Csv ? render_csv(rows) : render_aligned(rows);
}

std::string render_curves(const std::vector<ReliabilityCurve>& curves, Format format,
                          std::string_view x_label) {
  if (format == Format::Json) {
    ordered_json out = ordered_json::array();
    for (const ReliabilityCurve& curve : curves) {
      ordered_json entry{{"layout", curve.layout_name}, {"mode", curve.mode}};
      entry[std::string(x_label)] = curve.t_hours;
      entry["reliability"] = curve.values;
      out.push_back(std::move(entry));
    }
    return out.dump(2) + "\n";
  }

  std::vector<std::vector<std::string>> rows;
  rows.push_back({std::string(x_label), "layout", "mode", "reliability"});
  for (const ReliabilityCurve& curve : curves) {
    for (std::size_t i = 0; i < curve.t_hours.size(); ++i) {
      rows.push_back({format_value(curve.t_hours[i]), curve.layout_name, curve.mode,
                      format_value(curve.values[i])});
    }
  }
  return format == Format::Csv ? render_csv(rows) : render_aligned(rows);
}

std::string render_mc(const std::vector<McRenderRow>& rows, Format format) {
  if (format == Format::Json) {
    ordered_json out = ordered_json::array();
    for (const McRenderRow& row : rows) {
      out.push_back(ordered_json{{"layout", row.layout_name},
                                 {"p", row.p},
                                 {"trials", row.result.trials},
                                 {"seed", row.result.seed},
                                 {"estimate", row.result.estimate},
                                 {"std_error", row.result.std_error}});
    }
    return out.dump(2) + "\n";
  }

  std::vector<std::vector<std::string>> table;
  table.push_back({"layout", "p", "trials", "seed", "estimate", "std_error"});
  for (const McRenderRow& row : rows) {
    table.push_back({row.layout_name, format_value(row.p), std::to_string(row.result.trials),
                     std::to_string(row.result.seed), format_value(row.result.estimate),
                     format_value(row.result.std_error)});
  }
  return format == Format::Csv ? render_csv(table) : render_aligned(table);
}

namespace {

std::string coverage_next_label(const CandidateScore& score) {
  return std::to_string(score.covered_next) + "/" + std::to_string(score.total_next) + " at f=" +
         std::to_string(score.ft_degree + 1);
}

}  // namespace

std::string render_candidates(const std::vector<CandidateScore>& ranked, std::size_t top,
                              Format format) {
  const std::size_t count = top == 0 ? ranked.size() : std::min(top, ranked.size());

  if (format == Format::Json) {
    ordered_json out = ordered_json::array();
    for (std::size_t i = 0; i < count; ++i) {
      const CandidateScore& score = ranked[i];
      out.push_back(ordered_json{{"rank", i + 1},
                                 {"candidate", score.descriptor},
                                 {"params", score.params},
                                 {"ft_degree", score.ft_degree},
                                 {"covered_next", score.covered_next},
                                 {"total_next", score.total_next}});
    }
    return out.dump(2) + "\n";
  }

  std::vector<std::vector<std::string>> rows;
  rows.push_back({"rank", "candidate", "ft_degree", "coverage_next"});
  for (std::size_t i = 0; i < count; ++i) {
    const CandidateScore& score = ranked[i];
    rows.push_back({std::to_string(i + 1), score.descriptor, std::to_string(score.ft_degree),
                    format == Format::Csv
                        ? std::to_string(score.covered_next) + "/" +
                              std::to_string(score.total_next)
                        : coverage_next_label(score)});
  }
  return format == Format::Csv ? render_csv(rows) : render_aligned(rows);
}

std::string render_replication(const ReplicationSearchResult& result, Format format) {
  if (format == Format::Json) {
    ordered_json out{{"candidates_examined", result.candidates_examined},
                     {"max_ft_degree", result.max_degree},
                     {"max_pair_covered", result.max_pair_covered},
                     {"pair_total", result.pair_total},
                     {"full_pair_coverage_exists", result.full_pair_coverage_exists},
                     {"best",
                      {{"candidate", result.best.descriptor},
                       {"ft_degree", result.best.ft_degree},
                       {"covered_next", result.best.covered_next},
                       {"total_next", result.best.total_next},
                       {"count_labeled", result.best_count_labeled},
                       {"count_classes", result.best_count_classes}}},
                     {"best_layout", serialize_layout(result.best_layout)}};
    return out.dump(2) + "\n";
  }

  std::ostringstream out;
  out << "candidates_examined   " << result.candidates_examined << "\n";
  out << "max_ft_degree         " << result.max_degree << "\n";
  out << "max_pair_coverage     " << result.max_pair_covered << "/" << result.pair_total << "\n";
  out << "full_pair_coverage    " << (result.full_pair_coverage_exists ? "yes" : "no") << "\n";
  out << "best_score            ft_degree " << result.best.ft_degree << ", coverage "
      << result.best.covered_next << "/" << result.best.total_next << " at f="
      << result.best.ft_degree + 1 << "\n";
  out << "best_count            " << result.best_count_labeled << " placements, "
      << result.best_count_classes << " up to relabeling\n";
  out << "best_layout           " << result.best.descriptor << "\n";
  out << serialize_layout(result.best_layout);
  return out.str();
}

}  // namespace raidlay
