#include "raidlay/cli.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "raidlay/report.hpp"

namespace raidlay {

namespace {

double parse_double(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size()) throw Error("");
    return v;
  } catch (...) {
    throw Error(std::string("invalid ") + what + ": '" + text + "'");
  }
}

}  // namespace

std::vector<double> parse_time_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : spec) {
    if (c == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);

  if (parts.size() == 1) return {parse_double(parts[0], "time")};
  if (parts.size() != 3)
    throw Error("time grid must be 'start:stop:step' or a single value, got '" + spec + "'");

  double start = parse_double(parts[0], "grid start");
  double stop = parse_double(parts[1], "grid stop");
  double step = parse_double(parts[2], "grid step");
  if (step <= 0) throw InvalidTime("grid step must be positive");
  if (stop < start) throw InvalidTime("grid stop must be >= start");

  std::vector<double> grid;
  for (std::size_t i = 0;; ++i) {
    double t = start + static_cast<double>(i) * step;
    if (t > stop + step * 1e-9) break;
    grid.push_back(std::min(t, stop));
  }
  return grid;
}

namespace {

std::vector<Layout> load_layouts(const RunConfig& config, std::ostream& err) {
  int sources = !config.schemes.empty();
  sources += !config.layout_file.empty();
  sources += !config.pp_offsets.empty();
  sources += !config.rp_offsets.empty();
  if (sources != 1)
    throw Error("exactly one of --scheme, --file, --pp, --rp must be given");

  std::vector<Layout> layouts;
  if (!config.schemes.empty()) {
    for (const std::string& name : config.schemes)
      layouts.push_back(generate_named(scheme_from_name(name), config.n_disks));
  } else if (!config.pp_offsets.empty()) {
    if (config.pp_offsets.size() != 4) throw Error("--pp expects a1,b1,a2,b2");
    layouts.push_back(generate_pp(config.n_disks, config.pp_offsets[0], config.pp_offsets[1],
                                  config.pp_offsets[2], config.pp_offsets[3]));
  } else if (!config.rp_offsets.empty()) {
    if (config.rp_offsets.size() != 3) throw Error("--rp expects rho,a,b");
    layouts.push_back(generate_rp(config.n_disks, config.rp_offsets[0], config.rp_offsets[1],
                                  config.rp_offsets[2]));
  } else {
    std::ifstream file(config.layout_file);
    if (!file) throw Error("cannot open layout file '" + config.layout_file + "'");
    std::stringstream buffer;
    buffer << file.rdbuf();
    std::vector<std::string> warnings;
    layouts.push_back(parse_layout(buffer.str(), &warnings));
    for (const std::string& w : warnings) err << "warning: " << w << "\n";
  }
  return layouts;
}

CurveMode parse_mode(const std::string& text) {
  if (text == "exact") return CurveMode::exact();
  if (text.rfind("koon:", 0) == 0) {
    int k = 0;
    const char* begin = text.data() + 5;
    auto [ptr, ec] = std::from_chars(begin, text.data() + text.size(), k);
    if (ec == std::errc() && ptr == text.data() + text.size()) return CurveMode::koon(k);
  }
  if (text == "ft") {
    // Guaranteed-tolerance mode: credit only the degree the layout certifies.
    return CurveMode::koon(-1);  // resolved per layout by the caller
  }
  throw Error("unknown mode '" + text + "' (expected exact, koon:<k> or ft)");
}

int run_layout(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::vector<Layout> layouts = load_layouts(config, err);
  for (const Layout& layout : layouts) out << serialize_layout(layout);
  return 0;
}

int run_ft(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::vector<Layout> layouts = load_layouts(config, err);
  Format format = parse_format(config.format);

  if (config.failures >= 0) {
    FtRenderInput input;
    input.n_disks = config.n_disks;
    input.failures = config.failures;
    for (const Layout& layout : layouts) {
      input.names.push_back(layout.name);
      input.tables.push_back(ft_table(layout, config.failures, config.max_exact_disks));
      input.reports.push_back(coverage(layout, config.failures, config.max_exact_disks));
    }
    out << render_ft(input, format);
  }

  if (config.degree || config.failures < 0) {
    for (const Layout& layout : layouts)
      out << layout.name << " ft_degree " << ft_degree(layout, config.max_exact_disks) << "\n";
  }
  return 0;
}

int run_rel(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::vector<Layout> layouts = load_layouts(config, err);
  Format format = parse_format(config.format);

  const bool point_mode = config.p >= 0;
  std::vector<double> grid;
  DiskModel model{config.lambda};
  if (!point_mode) grid = parse_time_grid(config.t_spec);

  std::vector<ReliabilityCurve> curves;
  for (const Layout& layout : layouts) {
    for (const std::string& mode_text : config.modes) {
      CurveMode mode = parse_mode(mode_text);
      if (mode.kind == CurveMode::Kind::Koon && mode.k < 0)
        mode.k = layout.n_disks - ft_degree(layout, config.max_exact_disks);
      if (point_mode) {
        ReliabilityCurve curve;
        curve.layout_name = layout.name;
        curve.mode = mode.label();
        curve.t_hours = {config.p};
        curve.values = {mode.kind == CurveMode::Kind::Exact
                            ? exact_reliability(layout, config.p, config.max_exact_disks)
                            : koon_reliability(mode.k, layout.n_disks, config.p)};
        curves.push_back(std::move(curve));
      } else {
        curves.push_back(reliability_curve(layout, model, grid, mode, config.max_exact_disks));
      }
    }
  }
  out << render_curves(curves, format, point_mode ? "p" : "t_hours");
  return 0;
}

int run_mc(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::vector<Layout> layouts = load_layouts(config, err);
  Format format = parse_format(config.format);
  if (config.p < 0) throw Error("mc requires --p");

  std::vector<McRenderRow> rows;
  for (const Layout& layout : layouts) {
    McRenderRow row;
    row.layout_name = layout.name;
    row.p = config.p;
    row.result = monte_carlo_reliability(layout, config.p, config.trials, config.seed);
    rows.push_back(std::move(row));
  }
  out << render_mc(rows, format);
  return 0;
}

int run_search(const RunConfig& config, std::ostream& out, std::ostream&) {
  Format format = parse_format(config.format);
  if (config.search_family == "pp") {
    out << render_candidates(search_pp_offsets(config.n_disks), config.top, format);
  } else if (config.search_family == "rp") {
    out << render_candidates(search_rp_offsets(config.n_disks), config.top, format);
  } else if (config.search_family == "replication") {
    out << render_replication(search_replication_placements(config.n_disks), format);
  } else {
    throw Error("unknown search family '" + config.search_family +
                "' (expected pp, rp or replication)");
  }
  return 0;
}

int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err) {
  switch (config.command) {
    case RunConfig::Command::Layout: return run_layout(config, out, err);
    case RunConfig::Command::Ft: return run_ft(config, out, err);
    case RunConfig::Command::Rel: return run_rel(config, out, err);
    case RunConfig::Command::Mc: return run_mc(config, out, err);
    case RunConfig::Command::Search: return run_search(config, out, err);
  }
  throw Error("invalid command");
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.out_path.empty()) return dispatch(config, out, err);
    std::ostringstream buffer;
    int code = dispatch(config, buffer, err);
    std::ofstream file(config.out_path, std::ios::binary);
    if (!file) throw Error("cannot open output file '" + config.out_path + "'");
    file << buffer.str();
    return code;
  } catch (const TooLargeForExact& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace raidlay
