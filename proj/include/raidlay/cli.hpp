#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "raidlay/ft_analysis.hpp"

namespace raidlay {

// One parsed invocation. The front end fills this in; run() does the work so
// the whole command path is testable without a process.
struct RunConfig {
  enum class Command { Layout, Ft, Rel, Mc, Search };

  Command command = Command::Layout;

  // Layout sources; exactly one of schemes / layout_file / pp / rp.
  std::vector<std::string> schemes;
  std::string layout_file;
  std::vector<int> pp_offsets;  // a1,b1,a2,b2
  std::vector<int> rp_offsets;  // rho,a,b
  int n_disks = 5;

  // ft
  int failures = -1;  // -1: not requested
  bool degree = false;

  // rel / mc
  double lambda = 1e-4;
  std::string t_spec = "0:10000:100";
  double p = -1;  // -1: not set
  std::vector<std::string> modes = {"exact"};
  std::uint64_t trials = 100000;
  std::uint64_t seed = 0;

  // search
  std::string search_family;  // pp | rp | replication
  std::size_t top = 0;        // 0: all

  std::string format = "table";
  std::string out_path;  // empty: stdout
  int max_exact_disks = kDefaultExactDiskLimit;
};

// Executes the command. Returns 0 on success, 1 on validation errors (one
// line on `err`), 2 when an exhaustive-enumeration guard refuses the size.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// "start:stop:step" (or a single value) to an ascending grid, stop included
// when the step lands on it.
std::vector<double> parse_time_grid(const std::string& spec);

}  // namespace raidlay
