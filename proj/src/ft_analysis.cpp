#include "raidlay/ft_analysis.hpp"

#include <bit>

namespace raidlay {

namespace {

void check_args(const Layout& layout, int failures, int max_exact_disks) {
  layout.validate();
  if (failures < 0 || failures > layout.n_disks)
    throw InvalidFailureCount("failure count " + std::to_string(failures) + " outside [0, " +
                              std::to_string(layout.n_disks) + "]");
  if (layout.n_disks > max_exact_disks)
    throw TooLargeForExact("exhaustive enumeration refused for n = " +
                           std::to_string(layout.n_disks) + " > " +
                           std::to_string(max_exact_disks) +
                           " disks; use Monte Carlo instead");
}

// Next bitmask with the same popcount (Gosper's hack).
std::uint64_t next_same_weight(std::uint64_t v) {
  std::uint64_t c = v & -v;
  std::uint64_t r = v + c;
  return (((r ^ v) >> 2) / c) | r;
}

}  // namespace

std::uint64_t choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) result = result * static_cast<std::uint64_t>(n - k + i) / i;
  return result;
}

CoverageReport coverage(const Layout& layout, int failures, int max_exact_disks) {
  check_args(layout, failures, max_exact_disks);

  CoverageReport report;
  report.layout_name = layout.name;
  report.n_disks = layout.n_disks;
  report.failures = failures;

  const std::uint64_t full = AliveSet::all(layout.n_disks).bits();
  std::uint64_t failed = failures == 0 ? 0 : (std::uint64_t{1} << failures) - 1;
  const std::uint64_t count = choose(layout.n_disks, failures);
  for (std::uint64_t i = 0; i < count; ++i) {
    AliveSet alive = AliveSet::from_bits(full & ~failed);
    ++report.total;
    if (is_fully_recoverable(layout, alive))
      ++report.recovered;
    else
      report.failing.push_back(alive);
    if (i + 1 < count) failed = next_same_weight(failed);
  }
  return report;
}

int ft_degree(const Layout& layout, int max_exact_disks) {
  int degree = -1;
  for (int f = 0; f <= layout.n_disks; ++f) {
    if (!coverage(layout, f, max_exact_disks).full()) break;
    degree = f;
  }
  return degree;
}

std::vector<FtRow> ft_table(const Layout& layout, int failures, int max_exact_disks) {
  check_args(layout, failures, max_exact_disks);

  const int n = layout.n_disks;
  const int alive_count = n - failures;
  std::vector<FtRow> rows;

  // Alive sets in ascending combination order, the tables' reading order.
  std::vector<int> idx(alive_count);
  for (int i = 0; i < alive_count; ++i) idx[i] = i;
  while (true) {
    AliveSet alive = AliveSet::from_indices(idx);
    rows.push_back({alive, is_fully_recoverable(layout, alive)});
    int i = alive_count - 1;
    while (i >= 0 && idx[i] == n - alive_count + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < alive_count; ++j) idx[j] = idx[j - 1] + 1;
  }
  return rows;
}

}  // namespace raidlay
