#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "raidlay/decoder.hpp"
#include "raidlay/layout.hpp"

namespace raidlay {

// Exhaustive enumeration is refused above this many disks unless overridden
// (the CLI honors RAIDLAY_MAX_EXACT_DISKS).
inline constexpr int kDefaultExactDiskLimit = 24;

// Outcome of enumerating every scenario with a fixed failure count.
struct CoverageReport {
  std::string layout_name;
  int n_disks = 0;
  int failures = 0;
  std::uint64_t total = 0;
  std::uint64_t recovered = 0;
  std::vector<AliveSet> failing;  // alive sets of the unrecoverable scenarios

  bool full() const { return recovered == total; }
  double fraction() const { return total ? static_cast<double>(recovered) / total : 1.0; }
};

struct FtRow {
  AliveSet alive;
  bool recoverable = false;
};

// Judges all C(n, f) failed sets, enumerated in ascending failed-bitmask
// order so failing lists are byte-stable. Throws InvalidFailureCount when f
// is outside [0, n] and TooLargeForExact when n exceeds the guard.
CoverageReport coverage(const Layout& layout, int failures,
                        int max_exact_disks = kDefaultExactDiskLimit);

// Largest f whose every f' <= f has full coverage. A layout that cannot
// reconstruct all blocks even with every disk alive reports -1.
int ft_degree(const Layout& layout, int max_exact_disks = kDefaultExactDiskLimit);

// Scenario table in the papers' row order: alive sets ascending as index
// combinations (D0D1, D0D2, ..., D3D4), one row per scenario.
std::vector<FtRow> ft_table(const Layout& layout, int failures,
                            int max_exact_disks = kDefaultExactDiskLimit);

// Binomial coefficient as an exact integer count.
std::uint64_t choose(int n, int k);

}  // namespace raidlay
